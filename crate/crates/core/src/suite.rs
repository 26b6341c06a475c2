//! End-to-end verification suites. Each runner is exhaustive or seeded, so
//! repeated runs give identical outcomes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use num_traits::Zero;

use crate::dyadic::{dyadics_up_to, g_sequence, synthesize_t_r, BitSequence};
use crate::error::{Error, Result};
use crate::filters::{
    enumerate_filters, enumerate_ultrafilters, extend_filter_avoiding, is_filter, is_prime, morphism_from_ultrafilter,
    DEFAULT_DEPTH,
};
use crate::frames::{
    canonical_gstar, canonical_pstar, check_fm, check_tense_pair, induced_tense, strong_nmax, FmFunction, Frame,
    PowerElement, SizeLimits,
};
use crate::mv::{Element, FiniteMvAlgebra, MvOps};
use crate::repr::{
    build_rho, frame_properties, operator_properties, verify_duals, verify_representation, verify_tense_representation,
    RepresentationVerdict, TenseVerdict,
};
use crate::scalar::StandardMv;
use crate::states::{decompose_semistate, enumerate_semistates, is_strong_semistate, Decomposition};
use crate::valuation::ValuationTable;
use crate::Rat;

pub const SEED: u64 = 0x7e45_e3a1;

pub const SUITE_NAMES: [&str; 10] = [
    "threshold",
    "sandwich",
    "tense-axioms",
    "roundtrip",
    "duals",
    "semistates",
    "consts",
    "correspondence",
    "adjunction",
    "filters",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    /// Number of individual cases checked.
    pub cases: usize,
    /// One line per failed case, in case order.
    pub failures: Vec<String>,
    /// Counts worth reporting alongside the verdict.
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str, results: Vec<Option<String>>) -> Self {
        let cases = results.len();
        SuiteOutcome { name, cases, failures: results.into_iter().flatten().collect(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn note(mut self, s: String) -> Self {
        self.notes.push(s);
        self
    }
}

pub fn run_suite(name: &str) -> Result<SuiteOutcome> {
    Ok(match name {
        "threshold" => threshold(),
        "sandwich" => sandwich(SEED),
        "tense-axioms" => tense_axioms(SEED)?,
        "roundtrip" => roundtrip(SEED)?,
        "duals" => duals()?,
        "semistates" => semistates()?,
        "consts" => consts()?,
        "correspondence" => correspondence(SEED)?,
        "adjunction" => adjunction(SEED)?,
        "filters" => filters()?,
        _ => return Err(Error::Usage(format!("unknown suite '{name}'; expected one of {}", SUITE_NAMES.join(", ")))),
    })
}

fn grid(n: i64) -> Vec<Rat> {
    (0..=n).map(|j| Rat::new(j, n)).collect()
}

/// `t_r(x) = 1 ⟺ x ≥ r` for every dyadic of depth ≤ 8 on the grid `j/1024`.
pub fn threshold() -> SuiteOutcome {
    let xs = grid(1024);
    let std = StandardMv::<Rat>::new();
    let rs: Vec<_> = dyadics_up_to(DEFAULT_DEPTH).collect();
    let results = rs
        .par_iter()
        .flat_map_iter(|r| {
            let t = synthesize_t_r(r);
            let rv: Rat = r.value();
            let xs = &xs;
            let std = &std;
            xs.iter().map(move |x| {
                let top = t.eval_unary(std, x).map(|v| v == Rat::from_integer(1));
                match top {
                    Ok(top) if top == (*x >= rv) => None,
                    Ok(top) => Some(format!("r = {r}, x = {x}: t_r(x) = 1 is {top}")),
                    Err(e) => Some(format!("r = {r}, x = {x}: {e}")),
                }
            })
        })
        .collect();
    SuiteOutcome::new("threshold", results).note(format!("{} dyadics x {} grid points", rs.len(), xs.len()))
}

/// Random bit sequences of length 1..=10: the term is 1 from `d + 2⁻ᵏ` up and
/// 0 up to `d`.
pub fn sandwich(seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seqs: Vec<BitSequence> = (0..500)
        .map(|_| {
            let k = rng.gen_range(1..=10);
            BitSequence::new((0..k).map(|_| rng.gen_bool(0.5)).collect()).expect("length is in range")
        })
        .collect();
    let xs = grid(1024);
    let std = StandardMv::<Rat>::new();
    let results = seqs
        .par_iter()
        .flat_map_iter(|bits| {
            let t = g_sequence(bits);
            let d: Rat = bits.value();
            let upper = d + Rat::new(1, 1 << bits.len());
            let (xs, std) = (&xs, &std);
            xs.iter().map(move |x| {
                let v = match t.eval_unary(std, x) {
                    Ok(v) => v,
                    Err(e) => return Some(format!("{bits:?}, x = {x}: {e}")),
                };
                let bad = (*x >= upper && v != Rat::from_integer(1)) || (*x <= d && v != Rat::from_integer(0));
                bad.then(|| format!("bits {:?}, x = {x}: value {v}, window [{d}, {upper}]", bits.bits()))
            })
        })
        .collect();
    SuiteOutcome::new("sandwich", results).note(format!("{} sequences x {} grid points", seqs.len(), xs.len()))
}

/// The frames behind the tense suites: for each `m ∈ {1,2,3}`, all 16
/// relations on two worlds, then 50 seeded random relations on three.
pub fn tense_frames(seed: u64) -> Vec<(u32, Frame)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let three: Vec<Frame> = (0..50).map(|_| Frame::random(3, 3, &mut rng).expect("non-empty")).collect();
    let mut out = Vec::new();
    for m in 1..=3 {
        for code in 0..16 {
            out.push((m, Frame::from_code(2, code).expect("two worlds")));
        }
        out.extend(three.iter().map(|f| (m, f.clone())));
    }
    out
}

fn frame_label(m: u32, f: &Frame) -> String {
    let edges: Vec<String> = f.edges().iter().map(|(s, t)| format!("{}{}", s + 1, t + 1)).collect();
    format!("m = {m}, |T| = {}, rel {{{}}}", f.t_count(), edges.join(","))
}

fn induced(m: u32, f: &Frame) -> Result<(FmFunction, FmFunction)> {
    induced_tense(f, m, &SizeLimits::default())
}

pub fn tense_axioms(seed: u64) -> Result<SuiteOutcome> {
    let frames = tense_frames(seed);
    let results = frames
        .par_iter()
        .map(|(m, f)| -> Result<Option<String>> {
            let (g, h) = induced(*m, f)?;
            let r = check_tense_pair(&g, &h)?;
            Ok((!r.passed()).then(|| {
                let what = r
                    .axioms
                    .failures()
                    .next()
                    .map(|c| format!("{} {}", c.axiom, c.witness.as_deref().unwrap_or("")))
                    .unwrap_or_else(|| format!("equivalence flags ii {} vi {}", r.ii_agree, r.vi_agree));
                format!("{}: {what}", frame_label(*m, f))
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome::new("tense-axioms", results).note(format!("{} frames", frames.len())))
}

pub fn roundtrip(seed: u64) -> Result<SuiteOutcome> {
    let frames = tense_frames(seed);
    let results = frames
        .par_iter()
        .map(|(m, f)| -> Result<Option<String>> {
            let (g, h) = induced(*m, f)?;
            let built = build_rho(&g);
            if built != *f {
                return Ok(Some(format!("{}: rebuilt relation {:?}", frame_label(*m, f), built.edges())));
            }
            let rep = verify_tense_representation(&g, &h)?;
            Ok((rep.verdict != TenseVerdict::Embeds || rep.rho_h != rep.rho_g.inverse())
                .then(|| format!("{}: {:?}", frame_label(*m, f), rep.verdict)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome::new("roundtrip", results).note(format!("{} frames", frames.len())))
}

/// Every unary table on `C_m`, in base-`(m+1)` order of its values.
pub fn all_unary_tables(m: u32) -> Vec<FmFunction> {
    let c = FiniteMvAlgebra::chain(m);
    let n = c.size();
    let count = n.pow(n as u32);
    (0..count)
        .map(|mut code| {
            let table = (0..n)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            FmFunction::from_indices(c.clone(), c.clone(), table).expect("indices are in range")
        })
        .collect()
}

pub fn duals() -> Result<SuiteOutcome> {
    let tables: Vec<FmFunction> = [2, 3].iter().flat_map(|&m| all_unary_tables(m)).collect();
    let results = tables
        .par_iter()
        .map(|g| -> Result<(bool, Option<String>)> {
            if !check_fm(g).passed() {
                return Ok((false, None));
            }
            let label = || format!("{}: [{}]", g.source(), g.render().join("; "));
            if !verify_duals(g, strong_nmax(g))? {
                return Ok((true, Some(format!("{} fails the strong axioms", label()))));
            }
            let rep = verify_representation(g);
            Ok((true, (rep.verdict != RepresentationVerdict::Commutes).then(|| format!("{}: {:?}", label(), rep.verdict))))
        })
        .collect::<Result<Vec<_>>>()?;
    let fm = results.iter().filter(|(f, _)| *f).count();
    let out = SuiteOutcome::new("duals", results.into_iter().map(|(_, r)| r).collect());
    Ok(out.note(format!("{fm} of {} tables pass FM1-FM5", tables.len())))
}

pub fn semistates() -> Result<SuiteOutcome> {
    let a = FiniteMvAlgebra::new(vec![2, 2])?;
    let found = enumerate_semistates::<Rat>(&a, 4)?;
    let zero = a.zero();
    let one = Rat::from_integer(1);
    let results = found
        .par_iter()
        .map(|v| -> Result<Option<String>> {
            let label = || v.render().join("; ");
            let strong = is_strong_semistate(v, a.max_denominator() + 1)?;
            if let Some(c) = strong.failures().next() {
                return Ok(Some(format!("[{}]: {} {}", label(), c.axiom, c.witness.as_deref().unwrap_or(""))));
            }
            if decompose_semistate(v)? != Decomposition::Equal {
                return Ok(Some(format!("[{}]: not the meet of the morphisms above it", label())));
            }
            let nonzero_bottom = !v.get(&zero).is_zero();
            Ok((nonzero_bottom && !v.is_constant(&one)).then(|| format!("[{}]: s(0) != 0 but not constant 1", label())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome::new("semistates", results).note(format!("{} semi-states on {a} with values j/4", found.len())))
}

pub fn consts() -> Result<SuiteOutcome> {
    let mut results = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=6 {
        let c = FiniteMvAlgebra::chain(n);
        let found = enumerate_semistates::<Rat>(&c, n)?;
        let inclusion = ValuationTable::<Rat>::projection(c.clone(), 0);
        counts.push(found.len().to_string());
        results.push((!found.contains(&inclusion)).then(|| format!("{c}: inclusion not enumerated")));
        for v in &found {
            let bad = v.get(&c.zero()).is_zero() && *v != inclusion;
            results.push(bad.then(|| format!("{c}: [{}] has s(0) = 0 but is not the inclusion", v.render().join("; "))));
        }
    }
    Ok(SuiteOutcome::new("consts", results).note(format!("semi-states on chain(1..6): {}", counts.join(", "))))
}

/// Random time frame on 1 to 4 worlds.
fn random_frame(rng: &mut ChaCha8Rng) -> Frame {
    let n = rng.gen_range(1..=4);
    Frame::random(n, n, rng).expect("non-empty")
}

pub fn correspondence(seed: u64) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    let mut cases: Vec<(&'static str, u32, Frame)> = Vec::new();
    for _ in 0..100 {
        let f = random_frame(&mut rng);
        cases.push(("reflexive", rng.gen_range(1..=2), f.reflexive_closure()));
        let f = random_frame(&mut rng);
        cases.push(("symmetric", rng.gen_range(1..=2), f.symmetric_closure()));
        let f = random_frame(&mut rng);
        cases.push(("transitive", rng.gen_range(1..=2), f.transitive_closure()));
    }
    let forward = cases
        .par_iter()
        .map(|(class, m, f)| -> Result<Option<String>> {
            let fl = frame_properties(f)?;
            let (g, h) = induced(*m, f)?;
            let op = operator_properties(&g, &h)?;
            let ok = match *class {
                "reflexive" => fl.reflexive && op.deflationary,
                "symmetric" => fl.symmetric && op.equal,
                _ => fl.transitive && op.iterate_above,
            };
            Ok((!ok).then(|| format!("{class} {}: {fl:?} {op:?}", frame_label(*m, f))))
        })
        .collect::<Result<Vec<_>>>()?;

    let frames = tense_frames(seed);
    let backward = frames
        .par_iter()
        .map(|(m, f)| -> Result<(usize, Option<String>)> {
            let (g, h) = induced(*m, f)?;
            let op = operator_properties(&g, &h)?;
            let fl = frame_properties(&build_rho(&g))?;
            let triggered = usize::from(op.deflationary) + usize::from(op.equal) + usize::from(op.iterate_above);
            let ok = (!op.deflationary || fl.reflexive) && (!op.equal || fl.symmetric) && (!op.iterate_above || fl.transitive);
            Ok((triggered, (!ok).then(|| format!("operators {}: {op:?} {fl:?}", frame_label(*m, f)))))
        })
        .collect::<Result<Vec<_>>>()?;
    let triggered: usize = backward.iter().map(|(t, _)| t).sum();
    let results = forward.into_iter().chain(backward.into_iter().map(|(_, r)| r)).collect();
    Ok(SuiteOutcome::new("correspondence", results)
        .note(format!("{} sampled frames, {} operator pairs", cases.len(), frames.len()))
        .note(format!("{triggered} operator properties held and were transferred")))
}

fn adjoint_case(f: &Frame, m: u32, p: &PowerElement, q: &PowerElement) -> Result<Option<String>> {
    let lhs = q.le(&canonical_gstar(f, m, p)?);
    let rhs = canonical_pstar(f, m, q)?.le(p);
    Ok((lhs != rhs).then(|| {
        format!("rel {:?}, m = {m}, p = {:?}, q = {:?}: {lhs} vs {rhs}", f.edges(), p.numerators(), q.numerators())
    }))
}

pub fn adjunction(seed: u64) -> Result<SuiteOutcome> {
    let m = 2;
    let vectors: Vec<PowerElement> = FiniteMvAlgebra::power_of_chain(m, 2)?
        .elements()
        .map(|x| PowerElement::new(m, x.numerators().to_vec()))
        .collect::<Result<_>>()?;
    let mut results = Vec::new();
    for code in 0..16 {
        let f = Frame::from_code(2, code)?;
        for p in &vectors {
            for q in &vectors {
                results.push(adjoint_case(&f, m, p, q)?);
            }
        }
    }
    let exhaustive = results.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xad);
    for _ in 0..1000 {
        let f = Frame::random(4, 4, &mut rng)?;
        let p = PowerElement::random(4, 4, &mut rng);
        let q = PowerElement::random(4, 4, &mut rng);
        results.push(adjoint_case(&f, 4, &p, &q)?);
    }
    Ok(SuiteOutcome::new("adjunction", results).note(format!("{exhaustive} exhaustive cases, 1000 sampled")))
}

pub fn filters() -> Result<SuiteOutcome> {
    let mut results = Vec::new();

    let a = FiniteMvAlgebra::new(vec![2, 3, 4])?;
    let all = enumerate_filters(&a);
    let maximal: Vec<Vec<Element>> = all
        .iter()
        .filter(|f| f.is_proper() && !all.iter().any(|g| g.is_proper() && g != *f && f.is_subset_of(g)))
        .map(|f| f.members())
        .collect();
    let ufs = enumerate_ultrafilters(&a);
    results.push((ufs.len() != a.dim() || maximal.len() != a.dim())
        .then(|| format!("{} ultrafilters, {} maximal filters, {} coordinates", ufs.len(), maximal.len(), a.dim())));
    let atoms: Vec<Element> = a
        .boolean_skeleton()
        .into_iter()
        .filter(|b| b.numerators().iter().filter(|&&k| k > 0).count() == 1)
        .collect();
    let mut kernels = Vec::new();
    for (i, u) in ufs.iter().enumerate() {
        let members = u.members();
        results.push((!is_filter(&a, &members)? || !is_prime(&a, &members)?).then(|| format!("U{i} is not a prime filter")));
        results.push((!maximal.contains(&members)).then(|| format!("U{i} is not maximal")));
        results.push((!atoms.contains(u.generator()) || *u.generator() != a.atom(i)).then(|| format!("U{i} is not generated by atom {i}")));
        let s = morphism_from_ultrafilter::<Rat>(&a, u)?;
        results.push(s.table().morphism_violation().map(|w| format!("morphism of U{i}: {w}")));
        results.push((s.kernel() != members).then(|| format!("kernel of the morphism of U{i} differs from U{i}")));
        kernels.push(s.kernel());
    }
    kernels.sort();
    kernels.dedup();
    results.push((kernels.len() != ufs.len() || atoms.len() != ufs.len()).then(|| "correspondence is not one-to-one".to_string()));

    let b = FiniteMvAlgebra::new(vec![2, 3])?;
    let ubs = enumerate_ultrafilters(&b);
    let mut extended = 0;
    for f in enumerate_filters(&b).into_iter().filter(|f| f.is_proper()) {
        for x in b.elements() {
            let label = || format!("F = {}, x = {}", f.describe(), b.format_element(&x));
            let expect = dyadics_up_to(DEFAULT_DEPTH)
                .map(|r| synthesize_t_r(&r).eval_unary(&b, &x))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .any(|t| !f.contains(t));
            match extend_filter_avoiding(&b, &f, &x, DEFAULT_DEPTH) {
                Err(e) => results.push(Some(format!("{}: {e}", label()))),
                Ok(None) => results.push(expect.then(|| format!("{}: nothing returned", label()))),
                Ok(Some((u, r))) => {
                    extended += 1;
                    let members = u.members();
                    let contains_f = f.members().iter().all(|y| members.contains(y));
                    let i = u.ultrafilter_coordinate();
                    let below = i.is_some_and(|i| b.value::<Rat>(&x, i) < r.value());
                    let ok = expect && contains_f && ubs.contains(&u) && below;
                    results.push((!ok).then(|| format!("{}: U = {}, r = {r}", label(), u.describe())));
                }
            }
        }
    }
    Ok(SuiteOutcome::new("filters", results).note(format!("{extended} extensions on {b}")))
}
