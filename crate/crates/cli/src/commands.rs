//! One function per CLI verb. Each returns a [`Report`] or an input error.

use std::collections::HashMap;

use serde_json::{json, Value};

use tensemv::dyadic::{synthesize_t_r, DyadicRational};
use tensemv::filters::{check_filter, check_prime, enumerate_ultrafilters, morphism_from_ultrafilter, ultrafilter_intersection};
use tensemv::frames::{check_strong_fm, check_tense_pair, induced_tense, strong_nmax, FmFunction, Frame, SizeLimits};
use tensemv::repr::{
    build_rho, frame_properties, operator_properties, verify_representation, verify_tense_representation, DiagramFailure,
    RepresentationVerdict, TenseVerdict,
};
use tensemv::states::{decompose_semistate, enumerate_semistates, is_strong_semistate, Decomposition};
use tensemv::suite::{run_suite, SUITE_NAMES};
use tensemv::terms::eval_term;
use tensemv::{FiniteMvAlgebra, MvOps, Rat, StandardMv, Term, ValuationTable};

use crate::doc::{parse_algebra, parse_element, Decl, SpecDocument};
use crate::error::CliError;
use crate::report::Report;

fn parse_dyadic(text: &str) -> Result<DyadicRational, CliError> {
    let bad = || CliError::usage(format!("'{text}' is not a fraction p/q"));
    let (p, q) = text.split_once('/').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    Ok(DyadicRational::from_fraction(p, q)?)
}

pub fn synth(r: &str, depth: u32, verify: Option<u32>) -> Result<Report, CliError> {
    let r = parse_dyadic(r)?;
    if r.exponent() > depth {
        return Err(CliError::usage(format!("{r} needs depth {}, limit is {depth}", r.exponent())));
    }
    let t = synthesize_t_r(&r);
    let mut rep = Report::new("synth");
    rep.line(t.to_string());
    rep.set("r", r.to_string());
    rep.set("term", t.to_string());
    if let Some(n) = verify {
        if n == 0 {
            return Err(CliError::usage("--verify needs a positive grid size"));
        }
        let std = StandardMv::<Rat>::new();
        let rv: Rat = r.value();
        let mut witness = None;
        for j in 0..=n {
            let x = Rat::new(i64::from(j), i64::from(n));
            let top = t.eval_unary(&std, &x)? == Rat::from_integer(1);
            if top != (x >= rv) {
                witness = Some(format!("x = {x}: t(x) = 1 is {top}"));
                break;
            }
        }
        rep.line(format!("checked {} grid points j/{n}", n + 1));
        rep.verdict(format!("t(x) = 1 iff x >= {r}"), witness);
    }
    Ok(rep)
}

pub fn eval(term: &str, algebra: &str, bindings: &[String]) -> Result<Report, CliError> {
    let t = Term::parse(term)?;
    let alg = parse_algebra(algebra)?;
    let mut env = HashMap::new();
    for b in bindings {
        let (name, value) =
            b.split_once('=').ok_or_else(|| CliError::usage(format!("binding '{b}' must look like name=value")))?;
        env.insert(name.trim().to_string(), parse_element(&alg, value.trim())?);
    }
    let v = eval_term(&t, &alg, &env)?;
    let mut rep = Report::new("eval");
    rep.line(alg.format_element(&v));
    rep.set("term", t.to_string());
    rep.set("algebra", alg.to_string());
    rep.set("value", alg.format_element(&v));
    Ok(rep)
}

pub fn ultrafilters(algebra: &str) -> Result<Report, CliError> {
    let alg = parse_algebra(algebra)?;
    let mut rep = Report::new("ultrafilters");
    rep.line(format!("{alg}: {} ultrafilters", alg.dim()));
    let mut rows = Vec::new();
    for u in enumerate_ultrafilters(&alg) {
        let i = u.support()[0];
        let k = i + 1;
        let atom = alg.format_element(u.generator());
        rep.line(format!("U{k} = {{x : x_{k} = 1}}, atom {atom}, morphism x -> x_{k}"));
        rows.push(json!({ "coordinate": k, "atom": atom, "size": u.members().len() }));
        let members = u.members();
        let filt = match check_filter(&alg, &members)? {
            Ok(()) => check_prime(&alg, &members)?,
            Err(w) => Err(w),
        };
        rep.verdict(format!("U{k} is a prime filter"), filt.err());
        let s = morphism_from_ultrafilter::<Rat>(&alg, &u)?;
        let kernel = (s.kernel() != members).then(|| "kernel differs from the filter".to_string());
        rep.verdict(format!("x -> x_{k} is a morphism with kernel U{k}"), s.table().morphism_violation().or(kernel));
    }
    let meet = ultrafilter_intersection(&alg);
    let shown: Vec<String> = meet.iter().map(|x| alg.format_element(x)).collect();
    rep.verdict(
        "ultrafilters intersect in {1}",
        (meet != vec![alg.one()]).then(|| format!("intersection {{{}}}", shown.join(", "))),
    );
    rep.set("algebra", alg.to_string());
    rep.set("ultrafilters", Value::Array(rows));
    Ok(rep)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckFlags {
    pub nmax: Option<u32>,
    pub semistate: bool,
    pub enumerate: bool,
    pub grid: u32,
}

fn one_or_two<'a>(names: &'a [String], verb: &str) -> Result<(&'a str, Option<&'a str>), CliError> {
    match names {
        [a] => Ok((a, None)),
        [a, b] => Ok((a, Some(b))),
        _ => Err(CliError::usage(format!("{verb} takes one or two names, got {}", names.len()))),
    }
}

pub fn check(doc: &SpecDocument, names: &[String], flags: CheckFlags) -> Result<Report, CliError> {
    let (first, second) = one_or_two(names, "check")?;
    if flags.enumerate {
        if second.is_some() {
            return Err(CliError::usage("--enumerate takes one algebra"));
        }
        return enumerate(doc.algebra(first)?, flags);
    }
    if flags.semistate {
        if second.is_some() {
            return Err(CliError::usage("--semistate takes one operator"));
        }
        return semistate(first, doc.op(first)?, flags);
    }
    let g = doc.op(first)?;
    let mut rep = Report::new("check");
    match second {
        None => {
            rep.line(format!("{first}: {} -> {}", g.source(), g.target()));
            let nmax = flags.nmax.unwrap_or_else(|| strong_nmax(g));
            rep.line(format!("nmax = {nmax}"));
            rep.set("nmax", nmax);
            rep.extend_axioms("", &check_strong_fm(g, nmax)?);
        }
        Some(second) => {
            let h = doc.op(second)?;
            rep.line(format!("tense pair ({first}, {second}) on {}", g.source()));
            let r = check_tense_pair(g, h)?;
            rep.extend_axioms("", &r.axioms);
            rep.flag("(ii) and (ii') agree", r.ii_agree);
            rep.flag("(vi) and (vi') agree", r.vi_agree);
        }
    }
    Ok(rep)
}

/// An operator into a chain read as a `[0,1]`-valued table.
fn as_valuation(g: &FmFunction) -> Result<ValuationTable<Rat>, CliError> {
    if !g.target().is_chain() {
        return Err(CliError::usage(format!("a semi-state needs a chain as target, got {}", g.target())));
    }
    let t = g.target();
    Ok(ValuationTable::from_fn(g.source().clone(), |x| t.value(&g.apply(x), 0))?)
}

fn decomposition_witness(src: &FiniteMvAlgebra, d: Decomposition) -> Option<String> {
    match d {
        Decomposition::Equal => None,
        Decomposition::Counterexample(x) => Some(format!("differs at {}", src.format_element(&x))),
    }
}

fn semistate(name: &str, g: &FmFunction, flags: CheckFlags) -> Result<Report, CliError> {
    let v = as_valuation(g)?;
    let src = g.source();
    let nmax = flags.nmax.unwrap_or(src.max_denominator() + 1);
    let mut rep = Report::new("check");
    rep.line(format!("{name}: {src} -> [0,1]"));
    rep.line(format!("nmax = {nmax}"));
    rep.set("nmax", nmax);
    let r = is_strong_semistate(&v, nmax)?;
    let semi = ["(i)", "(ii)", "(iii)", "(iv)", "(v)"].iter().all(|a| r.verdict(a) == Some(true));
    rep.extend_axioms("", &r);
    if semi {
        rep.verdict("meet of the morphisms above it", decomposition_witness(src, decompose_semistate(&v)?));
    }
    Ok(rep)
}

fn enumerate(alg: &FiniteMvAlgebra, flags: CheckFlags) -> Result<Report, CliError> {
    let found = enumerate_semistates::<Rat>(alg, flags.grid)?;
    let nmax = flags.nmax.unwrap_or(alg.max_denominator() + 1);
    let mut rep = Report::new("check");
    rep.line(format!("{} semi-states {alg} -> {{j/{}}}", found.len(), flags.grid));
    let mut tables = Vec::new();
    let mut strong = None;
    let mut decomposes = None;
    for (k, v) in found.iter().enumerate() {
        rep.line(format!("#{}: {}", k + 1, v.render().join("; ")));
        tables.push(Value::Array(v.values().iter().map(|x| Value::String(x.to_string())).collect()));
        let r = is_strong_semistate(v, nmax)?;
        if strong.is_none() {
            strong = r.failures().next().map(|c| format!("#{} {}: {}", k + 1, c.axiom, c.witness.clone().unwrap_or_default()));
        }
        if decomposes.is_none() {
            decomposes = decomposition_witness(alg, decompose_semistate(v)?).map(|w| format!("#{}: {w}", k + 1));
        }
    }
    rep.verdict("every semi-state is strong", strong);
    rep.verdict("every semi-state is a meet of morphisms", decomposes);
    rep.set("grid", flags.grid);
    rep.set("tables", Value::Array(tables));
    Ok(rep)
}

pub fn induce(doc: &SpecDocument, frame: &str, m: u32, force: bool) -> Result<Report, CliError> {
    let f = doc.frame(frame)?;
    let limits = if force { SizeLimits::unbounded() } else { SizeLimits::default() };
    let (g, h) = induced_tense(f, m, &limits)?;
    let mut out = SpecDocument::default();
    out.push(Decl::Algebra { name: "A".into(), algebra: g.source().clone() });
    out.push(Decl::Op { name: "G".into(), source: "A".into(), target: "A".into(), function: g });
    out.push(Decl::Op { name: "H".into(), source: "A".into(), target: "A".into(), function: h });
    let text = out.to_string();
    let mut rep = Report::new("induce");
    rep.lines.extend(text.lines().map(str::to_string));
    rep.set("document", text);
    Ok(rep)
}

fn edge_lines(rep: &mut Report, f: &Frame) {
    rep.lines.extend(f.edges().iter().map(|(s, t)| format!("{} {}", s + 1, t + 1)));
    let edges: Vec<Value> = f.edges().iter().map(|(s, t)| json!([s + 1, t + 1])).collect();
    rep.set("edges", Value::Array(edges));
}

fn diagram_witness(src: &FiniteMvAlgebra, f: &DiagramFailure) -> String {
    format!("x = {}, s = {}: {} vs meet {}", src.format_element(&f.x), f.s + 1, f.lhs, f.rhs)
}

pub fn represent(doc: &SpecDocument, names: &[String]) -> Result<Report, CliError> {
    let (first, second) = one_or_two(names, "represent")?;
    let g = doc.op(first)?;
    let mut rep = Report::new("represent");
    match second {
        None => {
            let r = verify_representation(g);
            edge_lines(&mut rep, &r.frame);
            let (word, witness) = match &r.verdict {
                RepresentationVerdict::Commutes => ("Commutes", None),
                RepresentationVerdict::Counterexample(f) => ("Counterexample", Some(diagram_witness(g.source(), f))),
            };
            rep.line(word);
            rep.set("verdict", word);
            rep.verdict("diagram commutes", witness);
        }
        Some(second) => {
            let h = doc.op(second)?;
            let r = verify_tense_representation(g, h)?;
            edge_lines(&mut rep, &r.rho_g);
            let word = if r.verdict == TenseVerdict::Embeds { "Embeds" } else { "Counterexample" };
            rep.line(word);
            rep.set("verdict", word);
            rep.flag(format!("relation of {second} is the inverse"), r.verdict != TenseVerdict::NotInverse);
            let (past, fut) = match &r.verdict {
                TenseVerdict::Diagram { past: false, failure } => (None, Some(diagram_witness(g.source(), failure))),
                TenseVerdict::Diagram { past: true, failure } => (Some(diagram_witness(g.source(), failure)), None),
                _ => (None, None),
            };
            if r.verdict != TenseVerdict::NotInverse {
                rep.verdict(format!("{first} diagram commutes"), fut);
                rep.verdict(format!("{second} diagram commutes"), past);
            }
        }
    }
    Ok(rep)
}

pub fn frame_props(doc: &SpecDocument, names: &[String]) -> Result<Report, CliError> {
    let mut rep = Report::new("frame-props");
    match names {
        [f] if doc.kind(f) == Some("frame") => {
            let fl = frame_properties(doc.frame(f)?)?;
            rep.line(format!("reflexive: {}", fl.reflexive));
            rep.line(format!("symmetric: {}", fl.symmetric));
            rep.line(format!("transitive: {}", fl.transitive));
            rep.set("reflexive", fl.reflexive);
            rep.set("symmetric", fl.symmetric);
            rep.set("transitive", fl.transitive);
        }
        [g, h] => {
            let (gf, hf) = (doc.op(g)?, doc.op(h)?);
            let op = operator_properties(gf, hf)?;
            let fl = frame_properties(&build_rho(gf))?;
            rep.line(format!("deflationary: {}", op.deflationary));
            rep.line(format!("equal: {}", op.equal));
            rep.line(format!("iterate above: {}", op.iterate_above));
            rep.set("deflationary", op.deflationary);
            rep.set("equal", op.equal);
            rep.set("iterate_above", op.iterate_above);
            rep.flag("deflationary => relation reflexive", !op.deflationary || fl.reflexive);
            rep.flag("equal => relation symmetric", !op.equal || fl.symmetric);
            rep.flag("iterate above => relation transitive", !op.iterate_above || fl.transitive);
        }
        _ => return Err(CliError::usage("frame-props takes a frame or two operators")),
    }
    Ok(rep)
}

pub fn suite(name: &str) -> Result<Report, CliError> {
    let names: Vec<&str> = if name == "all" { SUITE_NAMES.to_vec() } else { vec![name] };
    let mut rep = Report::new("suite");
    for n in names {
        let o = run_suite(n)?;
        rep.line(format!("{n}: {} cases", o.cases));
        for note in &o.notes {
            rep.line(format!("  {note}"));
        }
        let witness = o.failures.first().map(|f| format!("{} failures, first: {f}", o.failures.len()));
        rep.verdict(n, witness);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synth_examples() {
        let r = synth("3/4", 8, Some(1024)).unwrap();
        assert_eq!(r.lines[0], "(x*x)+(x*x)");
        assert!(r.passed());
        assert!(synth("3/512", 8, None).is_err());
        assert!(synth("2/4", 8, None).is_err());
        assert!(synth("x", 8, None).is_err());
    }

    #[test]
    fn eval_examples() {
        let r = eval("x+y", "chain(2) x chain(3)", &["x=(1/2,1/3)".into(), "y=(1/2,1/3)".into()]).unwrap();
        assert_eq!(r.lines, vec!["(1,2/3)"]);
        assert!(eval("x+y", "chain(2)", &["x=1".into()]).is_err());
    }

    #[test]
    fn check_fm5_violation() {
        let doc = SpecDocument::parse("algebra A = chain(4)\nop G on A: 0->0; 1/4->1/4; 1/2->1/4; 3/4->3/4; 1->1").unwrap();
        let r = check(&doc, &["G".into()], CheckFlags { grid: 4, ..Default::default() }).unwrap();
        assert_eq!(r.exit_code(), 1);
        let fm5 = r.verdicts.iter().find(|v| v.name == "FM5").unwrap();
        assert_eq!(fm5.witness.as_deref(), Some("x = 1/4: G(x)+G(x) = 1/2, G(x+x) = 1/4"));
    }

    #[test]
    fn represent_and_induce_roundtrip() {
        let doc = SpecDocument::parse("frame F: worlds 3; rel 1 2; rel 2 3").unwrap();
        let induced = induce(&doc, "F", 2, false).unwrap();
        let text = induced.data["document"].as_str().unwrap();
        let doc2 = SpecDocument::parse(text).unwrap();
        let r = represent(&doc2, &["G".into(), "H".into()]).unwrap();
        assert_eq!(r.lines, vec!["1 2", "2 3", "Embeds"]);
        assert!(r.passed());
    }
}
