//! The input document format.
//!
//! ```text
//! # comment
//! algebra A = chain(2) x chain(3)
//! algebra B = chain(2)^2
//! op G on A: 0 -> 0; 1/3 -> 1/3
//! op M from B to C:
//!   (0,0) -> 0
//!   (1/2,1) -> 1/2
//! frame F: worlds 3; rel 1 2; rel 2 3
//! ```
//!
//! Indented lines continue the previous declaration; a line break there acts
//! like `;`. Fractions must be reduced and lie in the carrier.

use std::fmt;

use tensemv::frames::{FmFunction, Frame};
use tensemv::mv::{Element, FiniteMvAlgebra};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Algebra { name: String, algebra: FiniteMvAlgebra },
    Op { name: String, source: String, target: String, function: FmFunction },
    Frame { name: String, frame: Frame },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Algebra { name, .. } | Decl::Op { name, .. } | Decl::Frame { name, .. } => name,
        }
    }
}

/// A validated document: every name declared once, before use; every
/// table total.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpecDocument {
    decls: Vec<Decl>,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut doc = SpecDocument::default();
        for stmt in statements(text)? {
            let decl = Parser::new(&stmt)?.declaration(&doc)?;
            doc.decls.push(decl);
        }
        Ok(doc)
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    pub fn algebra(&self, name: &str) -> Result<&FiniteMvAlgebra, CliError> {
        match self.get(name) {
            Some(Decl::Algebra { algebra, .. }) => Ok(algebra),
            Some(_) => Err(CliError::usage(format!("'{name}' is not an algebra"))),
            None => Err(CliError::usage(format!("unknown algebra '{name}'"))),
        }
    }

    pub fn op(&self, name: &str) -> Result<&FmFunction, CliError> {
        match self.get(name) {
            Some(Decl::Op { function, .. }) => Ok(function),
            Some(_) => Err(CliError::usage(format!("'{name}' is not an operator"))),
            None => Err(CliError::usage(format!("unknown operator '{name}'"))),
        }
    }

    pub fn frame(&self, name: &str) -> Result<&Frame, CliError> {
        match self.get(name) {
            Some(Decl::Frame { frame, .. }) => Ok(frame),
            Some(_) => Err(CliError::usage(format!("'{name}' is not a frame"))),
            None => Err(CliError::usage(format!("unknown frame '{name}'"))),
        }
    }

    pub fn kind(&self, name: &str) -> Option<&'static str> {
        self.get(name).map(|d| match d {
            Decl::Algebra { .. } => "algebra",
            Decl::Op { .. } => "op",
            Decl::Frame { .. } => "frame",
        })
    }

    pub fn push(&mut self, decl: Decl) {
        self.decls.push(decl);
    }
}

impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            match d {
                Decl::Algebra { name, algebra } => writeln!(f, "algebra {name} = {algebra}")?,
                Decl::Op { name, source, target, function } => {
                    if source == target {
                        writeln!(f, "op {name} on {source}:")?;
                    } else {
                        writeln!(f, "op {name} from {source} to {target}:")?;
                    }
                    for line in function.render() {
                        writeln!(f, "  {line}")?;
                    }
                }
                Decl::Frame { name, frame } => {
                    write!(f, "frame {name}: worlds {}", frame.s_count())?;
                    for (s, t) in frame.edges() {
                        write!(f, "; rel {} {}", s + 1, t + 1)?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Slash,
    LParen,
    RParen,
    Comma,
    Arrow,
    Colon,
    Semi,
    Equals,
    Caret,
    /// A continuation line boundary; separates like `;`.
    Newline,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::Colon => write!(f, "':'"),
            Tok::Semi => write!(f, "';'"),
            Tok::Equals => write!(f, "'='"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Newline => write!(f, "line break"),
            Tok::End => write!(f, "end of declaration"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

/// Physical lines of one declaration, with 1-based line numbers.
type Statement = Vec<(usize, String)>;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn statements(text: &str) -> Result<Vec<Statement>, CliError> {
    let mut out: Vec<Statement> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(' ') || line.starts_with('\t');
        match out.last_mut() {
            Some(stmt) if indented => stmt.push((i + 1, line.to_string())),
            None if indented => {
                let col = line.len() - line.trim_start().len() + 1;
                return Err(CliError::parse(i + 1, col, "continuation line without a declaration"));
            }
            _ => out.push(vec![(i + 1, line.to_string())]),
        }
    }
    Ok(out)
}

fn tokenize(stmt: &Statement) -> Result<Vec<(Tok, Pos)>, CliError> {
    let mut toks = Vec::new();
    for (k, (line, text)) in stmt.iter().enumerate() {
        let chars: Vec<char> = text.chars().collect();
        if k > 0 {
            let col = chars.iter().take_while(|c| c.is_whitespace()).count() + 1;
            toks.push((Tok::Newline, Pos { line: *line, col }));
        }
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: *line, col: i + 1 };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| CliError::parse(pos.line, pos.col, format!("number {s} is too large")))?;
                toks.push((Tok::Int(n), pos));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            let tok = match c {
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                ';' => Tok::Semi,
                '=' => Tok::Equals,
                '^' => Tok::Caret,
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Tok::Arrow
                }
                _ => return Err(CliError::parse(pos.line, pos.col, format!("unexpected character '{c}'"))),
            };
            toks.push((tok, pos));
            i += 1;
        }
    }
    let end = stmt.last().map(|(l, t)| Pos { line: *l, col: t.chars().count() + 1 }).unwrap_or(Pos { line: 1, col: 1 });
    toks.push((Tok::End, end));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(stmt: &Statement) -> Result<Self, CliError> {
        Ok(Parser { toks: tokenize(stmt)?, at: 0 })
    }

    /// Parser over a single line of text, used for command-line arguments.
    fn from_str(text: &str) -> Result<Self, CliError> {
        Self::new(&vec![(1, text.to_string())])
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::parse(pos.line, pos.col, msg))
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, CliError> {
        let (t, p) = self.next();
        if t == want {
            Ok(p)
        } else {
            self.err(p, format!("expected {want}, found {t}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), CliError> {
        match self.next() {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => self.err(p, format!("expected {what}, found {t}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos, CliError> {
        match self.next() {
            (Tok::Ident(s), p) if s == kw => Ok(p),
            (t, p) => self.err(p, format!("expected '{kw}', found {t}")),
        }
    }

    fn int(&mut self, what: &str) -> Result<(u64, Pos), CliError> {
        match self.next() {
            (Tok::Int(n), p) => Ok((n, p)),
            (t, p) => self.err(p, format!("expected {what}, found {t}")),
        }
    }

    fn end(&mut self) -> Result<(), CliError> {
        match self.next() {
            (Tok::End, _) => Ok(()),
            (t, p) => self.err(p, format!("unexpected {t}")),
        }
    }

    fn declaration(&mut self, doc: &SpecDocument) -> Result<Decl, CliError> {
        let (kw, kp) = self.ident("a declaration")?;
        let decl = match kw.as_str() {
            "algebra" => {
                let (name, np) = self.ident("a name")?;
                self.fresh(doc, &name, np)?;
                self.expect(Tok::Equals)?;
                let algebra = self.algebra_expr()?;
                self.end()?;
                Decl::Algebra { name, algebra }
            }
            "op" => self.op(doc)?,
            "frame" => self.frame(doc)?,
            _ => return self.err(kp, format!("unknown declaration '{kw}'")),
        };
        Ok(decl)
    }

    fn fresh(&self, doc: &SpecDocument, name: &str, p: Pos) -> Result<(), CliError> {
        if doc.get(name).is_some() {
            return self.err(p, format!("'{name}' is already declared"));
        }
        Ok(())
    }

    fn algebra_expr(&mut self) -> Result<FiniteMvAlgebra, CliError> {
        let mut dens = Vec::new();
        loop {
            self.keyword("chain")?;
            self.expect(Tok::LParen)?;
            let (m, mp) = self.int("a chain denominator")?;
            self.expect(Tok::RParen)?;
            let m = u32::try_from(m).ok().filter(|&m| m > 0);
            let Some(m) = m else {
                return self.err(mp, "chain denominator must be a positive 32-bit integer");
            };
            let mut reps = 1;
            if *self.peek() == Tok::Caret {
                self.next();
                let (n, np) = self.int("an exponent")?;
                if n == 0 || n > 64 {
                    return self.err(np, "exponent must be between 1 and 64");
                }
                reps = n;
            }
            dens.extend(std::iter::repeat(m).take(reps as usize));
            match self.peek() {
                Tok::Ident(s) if s == "x" => {
                    self.next();
                }
                _ => break,
            }
        }
        let p = self.pos();
        FiniteMvAlgebra::new(dens).or_else(|e| self.err(p, e.to_string()))
    }

    fn op(&mut self, doc: &SpecDocument) -> Result<Decl, CliError> {
        let (name, np) = self.ident("a name")?;
        self.fresh(doc, &name, np)?;
        let (how, hp) = self.ident("'on' or 'from'")?;
        let ((source, sp), (target, tp)) = match how.as_str() {
            "on" => {
                let a = self.ident("an algebra name")?;
                (a.clone(), a)
            }
            "from" => {
                let a = self.ident("an algebra name")?;
                self.keyword("to")?;
                (a, self.ident("an algebra name")?)
            }
            _ => return self.err(hp, format!("expected 'on' or 'from', found '{how}'")),
        };
        let src = doc.algebra(&source).or_else(|e| self.err(sp, e.message))?.clone();
        let tgt = doc.algebra(&target).or_else(|e| self.err(tp, e.message))?.clone();
        self.expect(Tok::Colon)?;

        let mut table: Vec<Option<Element>> = vec![None; src.size()];
        loop {
            match self.peek() {
                Tok::End => break,
                Tok::Semi | Tok::Newline => {
                    self.next();
                    continue;
                }
                _ => {}
            }
            let xp = self.pos();
            let x = self.value(&src)?;
            self.expect(Tok::Arrow)?;
            let y = self.value(&tgt)?;
            let slot = &mut table[src.index_of(&x)];
            if slot.is_some() {
                return self.err(xp, format!("duplicate entry for {}", src.format_element(&x)));
            }
            *slot = Some(y);
            match self.peek() {
                Tok::Semi | Tok::Newline | Tok::End => {}
                t => {
                    let t = t.clone();
                    return self.err(self.pos(), format!("expected ';' or a new line, found {t}"));
                }
            }
        }
        let mut values = Vec::with_capacity(table.len());
        for (i, v) in table.into_iter().enumerate() {
            match v {
                Some(v) => values.push(v),
                None => {
                    return self.err(np, format!("non-total table: no entry for {}", src.format_element(&src.element_at(i))));
                }
            }
        }
        let function = FmFunction::new(src, tgt, values).or_else(|e| self.err(np, e.to_string()))?;
        Ok(Decl::Op { name, source, target, function })
    }

    fn fraction(&mut self, den: u32) -> Result<u32, CliError> {
        let (p, pp) = self.int("a fraction")?;
        let q = if *self.peek() == Tok::Slash {
            self.next();
            let (q, qp) = self.int("a denominator")?;
            if q == 0 {
                return self.err(qp, "zero denominator");
            }
            if gcd(p, q) != 1 {
                return self.err(pp, format!("fraction {p}/{q} is not reduced"));
            }
            q
        } else {
            1
        };
        if p > q || u64::from(den) % q != 0 {
            let shown = if q == 1 { p.to_string() } else { format!("{p}/{q}") };
            return self.err(pp, format!("{shown} is not in chain({den})"));
        }
        Ok((p * (u64::from(den) / q)) as u32)
    }

    fn value(&mut self, alg: &FiniteMvAlgebra) -> Result<Element, CliError> {
        let start = self.pos();
        let nums = if *self.peek() == Tok::LParen {
            self.next();
            let mut nums = Vec::new();
            for (i, &m) in alg.denominators().iter().enumerate() {
                if i > 0 {
                    self.expect(Tok::Comma)?;
                }
                nums.push(self.fraction(m)?);
            }
            if *self.peek() == Tok::Comma {
                return self.err(self.pos(), format!("too many coordinates for {alg}"));
            }
            self.expect(Tok::RParen)?;
            nums
        } else if alg.dim() == 1 {
            vec![self.fraction(alg.denominators()[0])?]
        } else {
            return self.err(start, format!("expected a {}-tuple for {alg}", alg.dim()));
        };
        alg.element(&nums).or_else(|e| self.err(start, e.to_string()))
    }

    fn frame(&mut self, doc: &SpecDocument) -> Result<Decl, CliError> {
        let (name, np) = self.ident("a name")?;
        self.fresh(doc, &name, np)?;
        self.expect(Tok::Colon)?;
        self.keyword("worlds")?;
        let (n, wp) = self.int("a world count")?;
        if n == 0 || n > 64 {
            return self.err(wp, "world count must be between 1 and 64");
        }
        let n = n as usize;
        let mut edges = Vec::new();
        loop {
            match self.next() {
                (Tok::End, _) => break,
                (Tok::Semi | Tok::Newline, _) => {
                    if let Tok::Ident(_) = self.peek() {
                        self.keyword("rel")?;
                        let mut pair = [0usize; 2];
                        for slot in &mut pair {
                            let (w, p) = self.int("a world number")?;
                            if w == 0 || w as usize > n {
                                return self.err(p, format!("world {w} is not in 1..{n}"));
                            }
                            *slot = w as usize - 1;
                        }
                        edges.push((pair[0], pair[1]));
                    }
                }
                (t, p) => return self.err(p, format!("expected ';', found {t}")),
            }
        }
        let frame = Frame::time(n, &edges).or_else(|e| self.err(wp, e.to_string()))?;
        Ok(Decl::Frame { name, frame })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Parses an algebra expression such as `chain(2) x chain(3)`.
pub fn parse_algebra(text: &str) -> Result<FiniteMvAlgebra, CliError> {
    let mut p = Parser::from_str(text)?;
    let a = p.algebra_expr()?;
    p.end()?;
    Ok(a)
}

/// Parses an element of `alg`, such as `1/3` or `(1/2,1)`.
pub fn parse_element(alg: &FiniteMvAlgebra, text: &str) -> Result<Element, CliError> {
    let mut p = Parser::from_str(text)?;
    let x = p.value(alg)?;
    p.end()?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tensemv::MvOps;

    const SAMPLE: &str = "\
# two algebras
algebra A = chain(3)
algebra B = chain(2) x chain(2)
op G on A: 0->0; 1/3->1/3; 2/3->2/3; 1->1
op M from B to C2:
  (0,0) -> 0
";

    #[test]
    fn chain_carrier() {
        let d = SpecDocument::parse("algebra A = chain(3)").unwrap();
        assert_eq!(d.algebra("A").unwrap().size(), 4);
    }

    #[test]
    fn identity_table() {
        let d = SpecDocument::parse("algebra A = chain(3)\nop G on A: 0->0; 1/3->1/3; 2/3->2/3; 1->1").unwrap();
        let g = d.op("G").unwrap();
        assert_eq!(*g, FmFunction::identity(FiniteMvAlgebra::chain(3)));
    }

    #[test]
    fn non_total_table_names_missing_element() {
        let e = SpecDocument::parse("algebra A = chain(3)\nop G on A: 0->0; 1/3->1/3; 1->1").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 4: non-total table: no entry for 2/3");
    }

    #[test]
    fn unknown_names_and_order() {
        let e = SpecDocument::parse(SAMPLE).unwrap_err();
        assert_eq!(e.to_string(), "line 5, column 16: unknown algebra 'C2'");
        let e = SpecDocument::parse("algebra A = chain(2)\nalgebra A = chain(3)").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 9: 'A' is already declared");
    }

    #[test]
    fn fraction_diagnostics() {
        let e = SpecDocument::parse("algebra A = chain(4)\nop G on A: 2/4 -> 1").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 12: fraction 2/4 is not reduced");
        let e = SpecDocument::parse("algebra A = chain(4)\nop G on A: 1/3 -> 1").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 12: 1/3 is not in chain(4)");
        let e = SpecDocument::parse("algebra A = chain(2)\nop G on A: 0 -> 0; 0 -> 1").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 20: duplicate entry for 0");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = SpecDocument::parse("algebra A = chain(2)\n  x").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 3: unexpected line break");
        let e = SpecDocument::parse("  algebra A = chain(2)").unwrap_err();
        assert_eq!((e.line, e.column), (Some(1), Some(3)));
        let e = SpecDocument::parse("algebra A = chain(2) $").unwrap_err();
        assert_eq!(e.to_string(), "line 1, column 22: unexpected character '$'");
        let e = SpecDocument::parse("frame F: worlds 2; rel 1 3").unwrap_err();
        assert_eq!(e.to_string(), "line 1, column 26: world 3 is not in 1..2");
    }

    #[test]
    fn frames_and_powers() {
        let d = SpecDocument::parse("algebra P = chain(2)^2 x chain(1)\nframe F: worlds 3; rel 1 2;\n  rel 2 3").unwrap();
        assert_eq!(d.algebra("P").unwrap().denominators(), &[2, 2, 1]);
        assert_eq!(d.frame("F").unwrap().edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(d.kind("F"), Some("frame"));
    }

    #[test]
    fn print_parse_roundtrip() {
        let text = "algebra A = chain(2) x chain(1)\nalgebra C = chain(2)\nop G from A to C:\n  (0,0) -> 0; (0,1) -> 0\n  (1/2,0) -> 1/2; (1/2,1) -> 1/2; (1,0) -> 1; (1,1) -> 1\nframe F: worlds 2; rel 2 1\n";
        let d = SpecDocument::parse(text).unwrap();
        let printed = d.to_string();
        assert_eq!(SpecDocument::parse(&printed).unwrap(), d);
        assert_eq!(printed.lines().next(), Some("algebra A = chain(2) x chain(1)"));
    }

    #[test]
    fn elements_from_arguments() {
        let a = parse_algebra("chain(2) x chain(3)").unwrap();
        assert_eq!(parse_element(&a, "(1/2,1)").unwrap(), a.element(&[1, 3]).unwrap());
        assert!(parse_element(&a, "1/2").is_err());
        let c = parse_algebra("chain(2)").unwrap();
        assert_eq!(parse_element(&c, "1").unwrap(), c.one());
    }
}
