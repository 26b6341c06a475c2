//! Semi-states, states and their decomposition into extremal states.
//!
//! Every check here is exhaustive over the carrier of the source algebra.
//! Reports name axioms `(i)` through `(x)`:
//!
//! | axiom  | statement                                   |
//! |--------|---------------------------------------------|
//! | (i)    | `s(1) = 1`                                  |
//! | (ii)   | `x ≤ y ⟹ s(x) ≤ s(y)`                       |
//! | (iii)  | `s(x) = s(y) = 1 ⟹ s(x⊙y) = 1`              |
//! | (iv)   | `s(x)⊙s(x) = s(x⊙x)`                        |
//! | (v)    | `s(x)⊕s(x) = s(x⊕x)`                        |
//! | (vi)   | `s(x)⊙s(y) ≤ s(x⊙y)`                        |
//! | (vii)  | `s(x)⊕s(y) ≤ s(x⊕y)`                        |
//! | (viii) | `s(x∧y) = s(x)∧s(y)`                        |
//! | (ix)   | `s(xⁿ) = s(x)ⁿ` for `1 ≤ n ≤ nmax`          |
//! | (x)    | `n×s(x) = s(n×x)` for `1 ≤ n ≤ nmax`        |

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mv::{Element, FiniteMvAlgebra, MvOps};
use crate::report::AxiomReport;
use crate::scalar::{Scalar, StandardMv};
use crate::valuation::{all_morphisms, MvMorphism, ValuationTable};

struct Ctx<'a, S> {
    v: &'a ValuationTable<S>,
    alg: &'a FiniteMvAlgebra,
    elems: Vec<Element>,
}

impl<'a, S: Scalar> Ctx<'a, S> {
    fn new(v: &'a ValuationTable<S>) -> Self {
        let alg = v.source();
        Ctx { v, alg, elems: alg.elements().collect() }
    }

    fn s(&self, x: &Element) -> &S {
        self.v.get(x)
    }

    fn f(&self, x: &Element) -> String {
        self.alg.format_element(x)
    }

    fn pairs(&self) -> impl Iterator<Item = (&Element, &Element)> {
        self.elems.iter().flat_map(move |x| self.elems.iter().map(move |y| (x, y)))
    }

    fn unit(&self) -> String {
        let one = self.alg.one();
        (*self.s(&one) != S::one()).then(|| format!("s(1) = {}", self.s(&one))).unwrap_or_default()
    }

    fn monotone(&self) -> Option<String> {
        self.pairs().find(|(x, y)| self.alg.leq(x, y) && self.s(x) > self.s(y)).map(|(x, y)| {
            format!("x = {} <= y = {} but s(x) = {} > s(y) = {}", self.f(x), self.f(y), self.s(x), self.s(y))
        })
    }

    fn top_closed(&self) -> Option<String> {
        self.pairs()
            .find(|(x, y)| {
                *self.s(x) == S::one() && *self.s(y) == S::one() && *self.s(&self.alg.odot(x, y)) != S::one()
            })
            .map(|(x, y)| {
                format!("s(x) = s(y) = 1 at x = {}, y = {} but s(x*y) = {}", self.f(x), self.f(y), self.s(&self.alg.odot(x, y)))
            })
    }

    fn bottom_closed(&self) -> Option<String> {
        self.pairs()
            .find(|(x, y)| {
                self.s(x).is_zero() && self.s(y).is_zero() && !self.s(&self.alg.oplus(x, y)).is_zero()
            })
            .map(|(x, y)| {
                format!("s(x) = s(y) = 0 at x = {}, y = {} but s(x+y) = {}", self.f(x), self.f(y), self.s(&self.alg.oplus(x, y)))
            })
    }

    fn square_odot(&self) -> Option<String> {
        self.elems.iter().find_map(|x| {
            let lhs = self.s(x).luk_prod(self.s(x));
            let rhs = self.s(&self.alg.odot(x, x));
            (lhs != *rhs).then(|| format!("x = {}: s(x)*s(x) = {lhs}, s(x*x) = {rhs}", self.f(x)))
        })
    }

    fn square_oplus(&self) -> Option<String> {
        self.elems.iter().find_map(|x| {
            let lhs = self.s(x).luk_sum(self.s(x));
            let rhs = self.s(&self.alg.oplus(x, x));
            (lhs != *rhs).then(|| format!("x = {}: s(x)+s(x) = {lhs}, s(x+x) = {rhs}", self.f(x)))
        })
    }

    fn super_odot(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let lhs = self.s(x).luk_prod(self.s(y));
            let rhs = self.s(&self.alg.odot(x, y));
            (lhs > *rhs).then(|| format!("x = {}, y = {}: s(x)*s(y) = {lhs} > s(x*y) = {rhs}", self.f(x), self.f(y)))
        })
    }

    fn super_oplus(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let lhs = self.s(x).luk_sum(self.s(y));
            let rhs = self.s(&self.alg.oplus(x, y));
            (lhs > *rhs).then(|| format!("x = {}, y = {}: s(x)+s(y) = {lhs} > s(x+y) = {rhs}", self.f(x), self.f(y)))
        })
    }

    fn meet_preserving(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let lhs = self.s(&self.alg.meet(x, y));
            let rhs = self.s(x).clone().min(self.s(y).clone());
            (*lhs != rhs).then(|| format!("x = {}, y = {}: s(x&y) = {lhs}, s(x)&s(y) = {rhs}", self.f(x), self.f(y)))
        })
    }

    fn powers(&self, nmax: u32) -> Option<String> {
        let std = StandardMv::<S>::new();
        (1..=nmax).find_map(|n| {
            self.elems.iter().find_map(|x| {
                let lhs = self.s(&self.alg.power(x, n));
                let rhs = std.power(self.s(x), n);
                (*lhs != rhs).then(|| format!("x = {}, n = {n}: s(x^n) = {lhs}, s(x)^n = {rhs}", self.f(x)))
            })
        })
    }

    fn multiples(&self, nmax: u32) -> Option<String> {
        let std = StandardMv::<S>::new();
        (1..=nmax).find_map(|n| {
            self.elems.iter().find_map(|x| {
                let lhs = std.n_times(n, self.s(x));
                let rhs = self.s(&self.alg.n_times(n, x));
                (lhs != *rhs).then(|| format!("x = {}, n = {n}: n*s(x) = {lhs}, s(n*x) = {rhs}", self.f(x)))
            })
        })
    }
}

fn non_empty(s: String) -> Option<String> {
    (!s.is_empty()).then_some(s)
}

/// Checks axioms (i)-(v).
pub fn is_semistate<S: Scalar>(v: &ValuationTable<S>) -> AxiomReport {
    let c = Ctx::new(v);
    let mut r = AxiomReport::new();
    r.check("(i)", || non_empty(c.unit()));
    r.check("(ii)", || c.monotone());
    r.check("(iii)", || c.top_closed());
    r.check("(iv)", || c.square_odot());
    r.check("(v)", || c.square_oplus());
    r
}

/// Checks axioms (i)-(x), with (ix) and (x) for `n = 1..=nmax`.
///
/// Powers and multiples of a chain element `k/m` stop changing once `n ≥ m`,
/// so `nmax = m + 1` already decides the axioms for every `n`.
pub fn is_strong_semistate<S: Scalar>(v: &ValuationTable<S>, nmax: u32) -> Result<AxiomReport> {
    let need = v.source().max_denominator() + 1;
    if nmax < need {
        return Err(Error::Usage(format!("nmax must be at least {need}, got {nmax}")));
    }
    let c = Ctx::new(v);
    let mut r = is_semistate(v);
    r.check("(vi)", || c.super_odot());
    r.check("(vii)", || c.super_oplus());
    r.check("(viii)", || c.meet_preserving());
    r.check("(ix)", || c.powers(nmax));
    r.check("(x)", || c.multiples(nmax));
    Ok(r)
}

/// Smallest admissible `nmax` for strong checks on `alg`.
pub fn default_nmax(alg: &FiniteMvAlgebra) -> u32 {
    alg.max_denominator() + 1
}

/// Pointwise minimum; the empty meet is the constant-1 table.
pub fn meet_tables<S: Scalar>(source: &FiniteMvAlgebra, tables: &[ValuationTable<S>]) -> Result<ValuationTable<S>> {
    let mut values = vec![S::one(); source.size()];
    for t in tables {
        if t.source() != source {
            return Err(Error::Structural(format!("table over {} in a meet over {source}", t.source())));
        }
        for (acc, v) in values.iter_mut().zip(t.values()) {
            if v < acc {
                *acc = v.clone();
            }
        }
    }
    ValuationTable::new(source.clone(), values)
}

/// Pointwise maximum; the empty join is the constant-0 table.
pub fn join_tables<S: Scalar>(source: &FiniteMvAlgebra, tables: &[ValuationTable<S>]) -> Result<ValuationTable<S>> {
    let mut values = vec![S::zero(); source.size()];
    for t in tables {
        if t.source() != source {
            return Err(Error::Structural(format!("table over {} in a join over {source}", t.source())));
        }
        for (acc, v) in values.iter_mut().zip(t.values()) {
            if v > acc {
                *acc = v.clone();
            }
        }
    }
    ValuationTable::new(source.clone(), values)
}

/// The morphisms `s` into `[0,1]` with `s ≥ v` pointwise.
pub fn morphisms_above<S: Scalar>(v: &ValuationTable<S>) -> Vec<MvMorphism<S>> {
    all_morphisms(v.source())
        .into_iter()
        .filter(|s| v.pointwise_le(s.table()))
        .collect()
}

/// The morphisms `s` into `[0,1]` with `s ≤ v` pointwise.
pub fn morphisms_below<S: Scalar>(v: &ValuationTable<S>) -> Vec<MvMorphism<S>> {
    all_morphisms(v.source())
        .into_iter()
        .filter(|s| s.table().pointwise_le(v))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// The table equals the meet (or join) of the selected morphisms.
    Equal,
    /// First element where the two differ.
    Counterexample(Element),
}

/// Compares a semi-state with the meet of the morphisms above it.
pub fn decompose_semistate<S: Scalar>(v: &ValuationTable<S>) -> Result<Decomposition> {
    if let Some(f) = is_semistate(v).failures().next() {
        return Err(Error::Usage(format!("not a semi-state: {} {}", f.axiom, f.witness.as_deref().unwrap_or(""))));
    }
    let above: Vec<ValuationTable<S>> = morphisms_above(v).into_iter().map(MvMorphism::into_table).collect();
    let meet = meet_tables(v.source(), &above)?;
    Ok(first_difference(v, &meet))
}

fn first_difference<S: Scalar>(a: &ValuationTable<S>, b: &ValuationTable<S>) -> Decomposition {
    match a.values().iter().zip(b.values()).position(|(x, y)| x != y) {
        None => Decomposition::Equal,
        Some(i) => Decomposition::Counterexample(a.source().element_at(i)),
    }
}

/// `v ≤ w` pointwise, computed both directly and through the 1-sets
/// (`v(x) = 1 ⟹ w(x) = 1`). The two must agree on semi-states.
pub fn compare_semistates<S: Scalar>(v: &ValuationTable<S>, w: &ValuationTable<S>) -> Result<bool> {
    if v.source() != w.source() {
        return Err(Error::Structural("semi-states over different algebras".into()));
    }
    for t in [v, w] {
        if !is_semistate(t).passed() {
            return Err(Error::Usage("both tables must be semi-states".into()));
        }
    }
    let pointwise = v.pointwise_le(w);
    let top_sets = v.values().iter().zip(w.values()).all(|(a, b)| *a != S::one() || *b == S::one());
    if pointwise != top_sets {
        return Err(Error::InvariantViolation(format!(
            "pointwise order says {pointwise}, 1-set inclusion says {top_sets}"
        )));
    }
    Ok(pointwise)
}

/// First witness against `s(1) = 1` and additivity on ⊙-orthogonal pairs.
pub fn state_violation<S: Scalar>(v: &ValuationTable<S>) -> Option<String> {
    let c = Ctx::new(v);
    if let Some(w) = non_empty(c.unit()) {
        return Some(w);
    }
    let zero = c.alg.zero();
    let found = c.pairs().find_map(|(x, y)| {
        if c.alg.odot(x, y) != zero {
            return None;
        }
        let lhs = c.s(&c.alg.oplus(x, y));
        let rhs = c.s(x).clone() + c.s(y).clone();
        (*lhs != rhs).then(|| format!("x = {}, y = {}: s(x+y) = {lhs}, s(x) + s(y) = {rhs}", c.f(x), c.f(y)))
    });
    found
}

pub fn is_state<S: Scalar>(v: &ValuationTable<S>) -> bool {
    state_violation(v).is_none()
}

/// The four conditions characterizing extremal states among states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalCriteria {
    /// (a) the state is an MV-morphism.
    pub morphism: AxiomCheckResult,
    /// (b) `s(x ∧ ¬x) = s(x) ∧ ¬s(x)`.
    pub complement_meet: AxiomCheckResult,
    /// (c) axiom (iv).
    pub square: AxiomCheckResult,
    /// (d) axiom (viii).
    pub meet: AxiomCheckResult,
}

/// `Ok` when the condition holds, otherwise a witness.
pub type AxiomCheckResult = std::result::Result<(), String>;

impl ExtremalCriteria {
    pub fn verdicts(&self) -> [bool; 4] {
        [self.morphism.is_ok(), self.complement_meet.is_ok(), self.square.is_ok(), self.meet.is_ok()]
    }

    pub fn all_agree(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&b| b == v[0])
    }
}

fn as_check(w: Option<String>) -> AxiomCheckResult {
    w.map_or(Ok(()), Err)
}

/// Evaluates conditions (a)-(d) on a state.
pub fn eqtkapr_check<S: Scalar>(v: &ValuationTable<S>) -> Result<ExtremalCriteria> {
    if let Some(w) = state_violation(v) {
        return Err(Error::Usage(format!("not a state: {w}")));
    }
    let c = Ctx::new(v);
    let complement_meet = c.elems.iter().find_map(|x| {
        let lhs = c.s(&c.alg.meet(x, &c.alg.neg(x)));
        let rhs = c.s(x).clone().min(c.s(x).luk_neg());
        (*lhs != rhs).then(|| format!("x = {}: s(x&!x) = {lhs}, s(x)&!s(x) = {rhs}", c.f(x)))
    });
    Ok(ExtremalCriteria {
        morphism: as_check(v.morphism_violation()),
        complement_meet: as_check(complement_meet),
        square: as_check(c.square_odot()),
        meet: as_check(c.meet_preserving()),
    })
}

/// Dual semi-state check: (i), (ii), (iii)', (iv), (v), plus whether the
/// table is the join of the morphisms below it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualReport {
    pub axioms: AxiomReport,
    /// `None` when an axiom failed and no decomposition was attempted.
    pub decomposition: Option<Decomposition>,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.axioms.passed() && self.decomposition == Some(Decomposition::Equal)
    }
}

pub fn dual_semistate_check<S: Scalar>(v: &ValuationTable<S>) -> Result<DualReport> {
    let c = Ctx::new(v);
    let mut axioms = AxiomReport::new();
    axioms.check("(i)", || non_empty(c.unit()));
    axioms.check("(ii)", || c.monotone());
    axioms.check("(iii)'", || c.bottom_closed());
    axioms.check("(iv)", || c.square_odot());
    axioms.check("(v)", || c.square_oplus());
    let decomposition = if axioms.passed() {
        let below: Vec<ValuationTable<S>> = morphisms_below(v).into_iter().map(MvMorphism::into_table).collect();
        Some(first_difference(v, &join_tables(v.source(), &below)?))
    } else {
        None
    };
    Ok(DualReport { axioms, decomposition })
}

/// A constraint over grid numerators, checked once all its elements have values.
#[derive(Debug, Clone, Copy)]
enum Constraint {
    Top,
    Monotone(usize, usize),
    TopClosed(usize, usize, usize),
    Square(usize, usize),
    Double(usize, usize),
}

/// Every semi-state `source → {0, 1/g, ..., 1}`, by depth-first search with
/// each axiom instance checked as soon as its elements are assigned.
///
/// The search is split on the value of the first element and run in
/// parallel; the output order does not depend on scheduling.
pub fn enumerate_semistates<S: Scalar>(source: &FiniteMvAlgebra, grid: u32) -> Result<Vec<ValuationTable<S>>> {
    if grid == 0 {
        return Err(Error::Usage("grid denominator must be positive".into()));
    }
    let n = source.size();
    let elems: Vec<Element> = source.elements().collect();
    let idx = |x: &Element| source.index_of(x);
    let mut due: Vec<Vec<Constraint>> = vec![Vec::new(); n];
    due[idx(&source.one())].push(Constraint::Top);
    for (i, x) in elems.iter().enumerate() {
        let sq = idx(&source.odot(x, x));
        due[i.max(sq)].push(Constraint::Square(i, sq));
        let db = idx(&source.oplus(x, x));
        due[i.max(db)].push(Constraint::Double(i, db));
        for (j, y) in elems.iter().enumerate() {
            if i != j && source.leq(x, y) {
                due[i.max(j)].push(Constraint::Monotone(i, j));
            }
            let k = idx(&source.odot(x, y));
            due[i.max(j).max(k)].push(Constraint::TopClosed(i, j, k));
        }
    }

    let g = grid;
    let holds = |vals: &[u32], c: &Constraint| match *c {
        Constraint::Top => vals[n - 1] == g,
        Constraint::Monotone(i, j) => vals[i] <= vals[j],
        Constraint::TopClosed(i, j, k) => !(vals[i] == g && vals[j] == g) || vals[k] == g,
        Constraint::Square(i, k) => (2 * vals[i]).saturating_sub(g) == vals[k],
        Constraint::Double(i, k) => (2 * vals[i]).min(g) == vals[k],
    };

    fn dfs(
        pos: usize,
        vals: &mut Vec<u32>,
        g: u32,
        due: &[Vec<Constraint>],
        holds: &dyn Fn(&[u32], &Constraint) -> bool,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == vals.len() {
            out.push(vals.clone());
            return;
        }
        for v in 0..=g {
            vals[pos] = v;
            if due[pos].iter().all(|c| holds(&vals[..], c)) {
                dfs(pos + 1, vals, g, due, holds, out);
            }
        }
    }

    let found: Vec<Vec<u32>> = (0..=g)
        .into_par_iter()
        .map(|first| {
            let mut vals = vec![0u32; n];
            vals[0] = first;
            let mut out = Vec::new();
            if due[0].iter().all(|c| holds(&vals[..], c)) {
                dfs(1, &mut vals, g, &due, &holds, &mut out);
            }
            out
        })
        .flatten()
        .collect();

    found
        .into_iter()
        .map(|vals| {
            let values = vals.iter().map(|&k| S::from_frac(i64::from(k), i64::from(g))).collect();
            ValuationTable::new(source.clone(), values)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn c2c2() -> FiniteMvAlgebra {
        FiniteMvAlgebra::new(vec![2, 2]).unwrap()
    }

    fn min_table(a: &FiniteMvAlgebra) -> ValuationTable<Rat> {
        ValuationTable::from_fn(a.clone(), |x| a.value::<Rat>(x, 0).min(a.value(x, 1))).unwrap()
    }

    fn proj(a: &FiniteMvAlgebra, i: usize) -> ValuationTable<Rat> {
        ValuationTable::projection(a.clone(), i)
    }

    #[test]
    fn semistate_examples() {
        let a = c2c2();
        assert!(is_semistate(&min_table(&a)).passed());

        let prod = ValuationTable::from_fn(a.clone(), |x| a.value::<Rat>(x, 0).luk_prod(&a.value(x, 1))).unwrap();
        let r = is_semistate(&prod);
        assert_eq!(r.verdict("(v)"), Some(false));
        let w = r.witness("(v)").unwrap();
        assert!(w.contains("x = (1/2,1/2)"), "{w}");

        for i in 0..2 {
            assert!(is_strong_semistate(&proj(&a, i), 3).unwrap().passed());
        }
    }

    #[test]
    fn strong_semistate_examples() {
        let a = c2c2();
        let r = is_strong_semistate(&min_table(&a), 3).unwrap();
        assert!(r.passed(), "{r}");
        assert!(is_strong_semistate(&min_table(&a), 2).is_err());
        // n = 0 is the convention s(x^0) = s(1) = 1 = s(x)^0.
        let t = min_table(&a);
        assert_eq!(*t.get(&a.power(&a.element(&[1, 1]).unwrap(), 0)), Rat::from_integer(1));
    }

    #[test]
    fn meet_examples() {
        let a = c2c2();
        assert_eq!(meet_tables(&a, &[proj(&a, 0), proj(&a, 1)]).unwrap(), min_table(&a));
        let v = min_table(&a);
        assert_eq!(meet_tables(&a, &[v.clone()]).unwrap(), v);
        let one = ValuationTable::constant(a.clone(), Rat::from_integer(1)).unwrap();
        assert_eq!(meet_tables(&a, &[v.clone(), one.clone()]).unwrap(), v);
        assert_eq!(meet_tables::<Rat>(&a, &[]).unwrap(), one);
        let other = ValuationTable::<Rat>::projection(FiniteMvAlgebra::chain(2), 0);
        assert!(meet_tables(&a, &[other]).is_err());
    }

    #[test]
    fn morphisms_above_examples() {
        let a = c2c2();
        assert_eq!(morphisms_above(&min_table(&a)).len(), 2);
        let one = ValuationTable::constant(a.clone(), Rat::from_integer(1)).unwrap();
        assert!(morphisms_above(&one).is_empty());
        let above = morphisms_above(&proj(&a, 0));
        assert_eq!(above.len(), 1);
        assert_eq!(above[0].table(), &proj(&a, 0));
    }

    #[test]
    fn decomposition_examples() {
        let a = c2c2();
        assert_eq!(decompose_semistate(&min_table(&a)).unwrap(), Decomposition::Equal);
        let one = ValuationTable::constant(a.clone(), Rat::from_integer(1)).unwrap();
        assert_eq!(decompose_semistate(&one).unwrap(), Decomposition::Equal);
        let c4 = FiniteMvAlgebra::chain(4);
        assert_eq!(decompose_semistate(&proj(&c4, 0)).unwrap(), Decomposition::Equal);
        let avg = ValuationTable::from_fn(a.clone(), |x| {
            (a.value::<Rat>(x, 0) + a.value::<Rat>(x, 1)) / Rat::from_integer(2)
        })
        .unwrap();
        assert!(decompose_semistate(&avg).is_err());
    }

    #[test]
    fn comparison_examples() {
        let a = c2c2();
        let (m, p1, p2) = (min_table(&a), proj(&a, 0), proj(&a, 1));
        assert!(compare_semistates(&m, &p1).unwrap());
        assert!(!compare_semistates(&p1, &p2).unwrap());
        assert!(!compare_semistates(&p2, &p1).unwrap());
        assert!(compare_semistates(&m, &m).unwrap());
    }

    #[test]
    fn state_examples() {
        let a = FiniteMvAlgebra::new(vec![2, 3]).unwrap();
        let p = proj(&a, 1);
        assert!(is_state(&p));
        let crit = eqtkapr_check(&p).unwrap();
        assert_eq!(crit.verdicts(), [true; 4]);

        let b = c2c2();
        let avg = ValuationTable::from_fn(b.clone(), |x| {
            (b.value::<Rat>(x, 0) + b.value::<Rat>(x, 1)) / Rat::from_integer(2)
        })
        .unwrap();
        assert!(is_state(&avg));
        let crit = eqtkapr_check(&avg).unwrap();
        assert_eq!(crit.verdicts(), [false; 4]);
        // Found by exhaustive scan: x = (0,1) has x*x = x, s(x) = 1/2, s(x)*s(x) = 0.
        assert_eq!(crit.square.unwrap_err(), "x = (0,1): s(x)*s(x) = 0, s(x*x) = 1/2");

        let one = ValuationTable::constant(b.clone(), Rat::from_integer(1)).unwrap();
        assert!(!is_state(&one));
        assert!(eqtkapr_check(&one).is_err());
    }

    #[test]
    fn dual_examples() {
        let a = c2c2();
        let max = ValuationTable::from_fn(a.clone(), |x| a.value::<Rat>(x, 0).max(a.value(x, 1))).unwrap();
        let r = dual_semistate_check(&max).unwrap();
        assert!(r.passed(), "{:?}", r);
        for i in 0..2 {
            assert!(dual_semistate_check(&proj(&a, i)).unwrap().passed());
        }
        let zero = ValuationTable::constant(a.clone(), Rat::from_integer(0)).unwrap();
        let r = dual_semistate_check(&zero).unwrap();
        assert_eq!(r.axioms.verdict("(i)"), Some(false));
        assert_eq!(r.decomposition, None);
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_algebra() {
        // Brute force over all 3^4 tables C3 -> {0, 1/2, 1}.
        let c3 = FiniteMvAlgebra::chain(3);
        let mut brute = Vec::new();
        for code in 0..81u32 {
            let values: Vec<Rat> = (0..4).map(|i| Rat::new(((code / 3u32.pow(i)) % 3) as i64, 2)).collect();
            let t = ValuationTable::new(c3.clone(), values).unwrap();
            if is_semistate(&t).passed() {
                brute.push(t);
            }
        }
        let found = enumerate_semistates::<Rat>(&c3, 2).unwrap();
        let mut a = brute.clone();
        let mut b = found.clone();
        a.sort_by(|x, y| x.values().cmp(y.values()));
        b.sort_by(|x, y| x.values().cmp(y.values()));
        assert_eq!(a, b);
        // Only the constant 1: 1/3 and 2/3 have no image on this grid.
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn enumeration_on_c2c2_finds_the_four_meets() {
        let a = c2c2();
        let found = enumerate_semistates::<Rat>(&a, 4).unwrap();
        let one = ValuationTable::constant(a.clone(), Rat::from_integer(1)).unwrap();
        let expected = [min_table(&a), proj(&a, 0), proj(&a, 1), one];
        assert_eq!(found.len(), 4);
        for e in &expected {
            assert!(found.contains(e));
        }
    }
}
