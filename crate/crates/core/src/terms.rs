//! Terms over the MV signature: AST, surface syntax and evaluation.
//!
//! Surface syntax: variables are identifiers (`x`, `x1`, ...), `0` and `1`
//! are constants, `!t` is negation, and the binary connectives are
//! `*` (⊙), `+` (⊕), `&` (∧), `|` (∨) and `->` (→), binding in that order
//! from tightest to loosest. All binary connectives associate to the left.
//!
//! Children are reference counted. Builders such as
//! [`crate::dyadic::g_sequence`] reuse one child on both sides of a node,
//! and evaluation computes such a shared child once.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mv::{BinaryOp, Element, FiniteMvAlgebra, MvOps};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Neg(Arc<Term>),
    Bin(BinaryOp, Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn bin(op: BinaryOp, lhs: Term, rhs: Term) -> Term {
        Term::Bin(op, Arc::new(lhs), Arc::new(rhs))
    }

    /// `t op t` with a single shared child.
    pub fn square(op: BinaryOp, t: Term) -> Term {
        let child = Arc::new(t);
        Term::Bin(op, child.clone(), child)
    }

    pub fn negate(t: Term) -> Term {
        Term::Neg(Arc::new(t))
    }

    pub fn parse(src: &str) -> Result<Term> {
        Parser::new(src)?.parse_all()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Neg(t) => t.collect_vars(out),
            Term::Bin(_, a, b) => {
                a.collect_vars(out);
                if !Arc::ptr_eq(a, b) {
                    b.collect_vars(out);
                }
            }
        }
    }

    /// Number of nodes when the term is written out as a tree.
    pub fn size(&self) -> u64 {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Neg(t) => 1 + t.size(),
            Term::Bin(_, a, b) => {
                let sa = a.size();
                let sb = if Arc::ptr_eq(a, b) { sa } else { b.size() };
                1 + sa + sb
            }
        }
    }

    /// Evaluates the term in any MV-structure under a variable lookup.
    pub fn eval<A, F>(&self, alg: &A, env: &F) -> Result<A::Value>
    where
        A: MvOps,
        F: Fn(&str) -> Option<A::Value>,
    {
        Ok(match self {
            Term::Var(v) => env(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            Term::Zero => alg.zero(),
            Term::One => alg.one(),
            Term::Neg(t) => alg.neg(&t.eval(alg, env)?),
            Term::Bin(op, a, b) => {
                let va = a.eval(alg, env)?;
                let vb = if Arc::ptr_eq(a, b) { va.clone() } else { b.eval(alg, env)? };
                match op {
                    BinaryOp::Oplus => alg.oplus(&va, &vb),
                    BinaryOp::Odot => alg.odot(&va, &vb),
                    BinaryOp::Arrow => alg.arrow(&va, &vb),
                    BinaryOp::Join => alg.join(&va, &vb),
                    BinaryOp::Meet => alg.meet(&va, &vb),
                }
            }
        })
    }

    /// Evaluates a term in at most one variable, binding it to `x`.
    pub fn eval_unary<A: MvOps>(&self, alg: &A, x: &A::Value) -> Result<A::Value> {
        let vars = self.variables();
        if vars.len() > 1 {
            return Err(Error::Usage(format!(
                "expected a term in one variable, found {}",
                vars.into_iter().collect::<Vec<_>>().join(", ")
            )));
        }
        self.eval(alg, &|_| Some(x.clone()))
    }
}

/// Evaluates `t` in a finite algebra, validating every binding first.
pub fn eval_term(t: &Term, alg: &FiniteMvAlgebra, env: &HashMap<String, Element>) -> Result<Element> {
    for x in env.values() {
        alg.validate(x)?;
    }
    t.eval(alg, &|v| env.get(v).cloned())
}

fn op_symbol(op: BinaryOp) -> &'static str {
    match op {
        BinaryOp::Oplus => "+",
        BinaryOp::Odot => "*",
        BinaryOp::Arrow => "->",
        BinaryOp::Join => "|",
        BinaryOp::Meet => "&",
    }
}

/// Prints with a parenthesis around every compound operand, so the output
/// reparses to the same tree regardless of precedence.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Bin(..) => write!(f, "({t})"),
                _ => write!(f, "{t}"),
            }
        }
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Neg(t) => {
                f.write_str("!")?;
                operand(t, f)
            }
            Term::Bin(op, a, b) => {
                operand(a, f)?;
                f.write_str(op_symbol(*op))?;
                operand(b, f)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Bang,
    Op(BinaryOp),
    LParen,
    RParen,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

/// Binding strength, loosest first.
const LEVELS: [BinaryOp; 5] = [BinaryOp::Arrow, BinaryOp::Join, BinaryOp::Meet, BinaryOp::Oplus, BinaryOp::Odot];

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let chars: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '(' => toks.push((Tok::LParen, col)),
                ')' => toks.push((Tok::RParen, col)),
                '!' => toks.push((Tok::Bang, col)),
                '+' => toks.push((Tok::Op(BinaryOp::Oplus), col)),
                '*' => toks.push((Tok::Op(BinaryOp::Odot), col)),
                '&' => toks.push((Tok::Op(BinaryOp::Meet), col)),
                '|' => toks.push((Tok::Op(BinaryOp::Join), col)),
                '-' if chars.get(i + 1) == Some(&'>') => {
                    toks.push((Tok::Op(BinaryOp::Arrow), col));
                    i += 1;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i + 1 < chars.len() && chars[i + 1].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    let lit: String = chars[start..=i].iter().collect();
                    match lit.as_str() {
                        "0" => toks.push((Tok::Zero, col)),
                        "1" => toks.push((Tok::One, col)),
                        _ => {
                            return Err(Error::TermSyntax {
                                column: col,
                                message: format!("unknown constant `{lit}`"),
                            })
                        }
                    }
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_') {
                        i += 1;
                    }
                    toks.push((Tok::Ident(chars[start..=i].iter().collect()), col));
                }
                other => {
                    return Err(Error::TermSyntax {
                        column: col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
            i += 1;
        }
        Ok(Parser { toks, pos: 0, end_col: chars.len() + 1 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::TermSyntax { column: self.col(), message: message.into() })
    }

    fn parse_all(mut self) -> Result<Term> {
        if self.toks.is_empty() {
            return self.err("empty term");
        }
        let t = self.parse_level(0)?;
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(t)
    }

    fn parse_level(&mut self, level: usize) -> Result<Term> {
        if level == LEVELS.len() {
            return self.parse_unary();
        }
        let mut lhs = self.parse_level(level + 1)?;
        while self.peek() == Some(&Tok::Op(LEVELS[level])) {
            self.pos += 1;
            let rhs = self.parse_level(level + 1)?;
            lhs = Term::bin(LEVELS[level], lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Term::negate(self.parse_unary()?))
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.parse_level(0)?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(t)
            }
            Some(_) => self.err("expected a variable, constant, `!` or `(`"),
            None => self.err("unexpected end of term"),
        }
    }
}
