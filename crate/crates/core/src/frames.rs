//! Order-preserving maps between finite algebras, tense operator pairs, and
//! the operators a relational frame induces on a power of a chain.

use std::fmt;

use rand::Rng;

use crate::dyadic::{synthesize_t_r, DyadicRational};
use crate::error::{Error, Result};
use crate::mv::{Element, FiniteMvAlgebra, MvOps};
use crate::report::AxiomReport;

/// A total table `source → target`, stored by element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FmFunction {
    source: FiniteMvAlgebra,
    target: FiniteMvAlgebra,
    table: Vec<usize>,
}

impl FmFunction {
    pub fn new(source: FiniteMvAlgebra, target: FiniteMvAlgebra, values: Vec<Element>) -> Result<Self> {
        if values.len() != source.size() {
            return Err(Error::Structural(format!(
                "table has {} entries, {source} has {} elements",
                values.len(),
                source.size()
            )));
        }
        let mut table = Vec::with_capacity(values.len());
        for v in &values {
            target.validate(v)?;
            table.push(target.index_of(v));
        }
        Ok(FmFunction { source, target, table })
    }

    pub fn from_fn(source: FiniteMvAlgebra, target: FiniteMvAlgebra, f: impl Fn(&Element) -> Element) -> Result<Self> {
        let values = source.elements().map(|x| f(&x)).collect();
        Self::new(source, target, values)
    }

    /// Table given as target element indices, one per source index.
    pub fn from_indices(source: FiniteMvAlgebra, target: FiniteMvAlgebra, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.size() {
            return Err(Error::Structural(format!("table has {} entries, expected {}", table.len(), source.size())));
        }
        if let Some(&bad) = table.iter().find(|&&i| i >= target.size()) {
            return Err(Error::Structural(format!("index {bad} outside {target}")));
        }
        Ok(FmFunction { source, target, table })
    }

    pub fn identity(a: FiniteMvAlgebra) -> Self {
        let table = (0..a.size()).collect();
        FmFunction { source: a.clone(), target: a, table }
    }

    pub fn constant(source: FiniteMvAlgebra, target: FiniteMvAlgebra, c: &Element) -> Result<Self> {
        target.validate(c)?;
        let table = vec![target.index_of(c); source.size()];
        Ok(FmFunction { source, target, table })
    }

    pub fn source(&self) -> &FiniteMvAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteMvAlgebra {
        &self.target
    }

    pub fn indices(&self) -> &[usize] {
        &self.table
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.target.element_at(self.table[self.source.index_of(x)])
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FmFunction) -> Result<FmFunction> {
        if inner.target != self.source {
            return Err(Error::Structural(format!("cannot compose: {} vs {}", inner.target, self.source)));
        }
        let table = inner.table.iter().map(|&i| self.table[i]).collect();
        Ok(FmFunction { source: inner.source.clone(), target: self.target.clone(), table })
    }

    pub fn render(&self) -> Vec<String> {
        self.source
            .elements()
            .zip(&self.table)
            .map(|(x, &i)| {
                format!("{} -> {}", self.source.format_element(&x), self.target.format_element(&self.target.element_at(i)))
            })
            .collect()
    }
}

/// Exhaustive checks of the order-preserving axioms for `g: source → target`,
/// where the target is any algebra implementing [`MvOps`].
pub(crate) struct FmChecker<'a, T: MvOps, G: Fn(&Element) -> T::Value, D: Fn(&T::Value) -> String> {
    pub source: &'a FiniteMvAlgebra,
    pub target: &'a T,
    pub g: G,
    pub show: D,
    pub elems: Vec<Element>,
}

impl<'a, T, G, D> FmChecker<'a, T, G, D>
where
    T: MvOps,
    T::Value: PartialEq,
    G: Fn(&Element) -> T::Value,
    D: Fn(&T::Value) -> String,
{
    fn f(&self, x: &Element) -> String {
        self.source.format_element(x)
    }

    fn pairs(&self) -> impl Iterator<Item = (&Element, &Element)> {
        self.elems.iter().flat_map(move |x| self.elems.iter().map(move |y| (x, y)))
    }

    pub fn unit(&self) -> Option<String> {
        let v = (self.g)(&self.source.one());
        (v != self.target.one()).then(|| format!("G(1) = {}", (self.show)(&v)))
    }

    pub fn monotone(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let (gx, gy) = ((self.g)(x), (self.g)(y));
            (self.source.leq(x, y) && !self.target.leq(&gx, &gy)).then(|| {
                format!("x = {} <= y = {} but G(x) = {}, G(y) = {}", self.f(x), self.f(y), (self.show)(&gx), (self.show)(&gy))
            })
        })
    }

    pub fn top_closed(&self) -> Option<String> {
        let one = self.target.one();
        self.pairs().find_map(|(x, y)| {
            if (self.g)(x) != one || (self.g)(y) != one {
                return None;
            }
            let v = (self.g)(&self.source.odot(x, y));
            (v != one).then(|| format!("G(x) = G(y) = 1 at x = {}, y = {} but G(x*y) = {}", self.f(x), self.f(y), (self.show)(&v)))
        })
    }

    pub fn square_odot(&self) -> Option<String> {
        self.elems.iter().find_map(|x| {
            let gx = (self.g)(x);
            let lhs = self.target.odot(&gx, &gx);
            let rhs = (self.g)(&self.source.odot(x, x));
            (lhs != rhs).then(|| format!("x = {}: G(x)*G(x) = {}, G(x*x) = {}", self.f(x), (self.show)(&lhs), (self.show)(&rhs)))
        })
    }

    pub fn square_oplus(&self) -> Option<String> {
        self.elems.iter().find_map(|x| {
            let gx = (self.g)(x);
            let lhs = self.target.oplus(&gx, &gx);
            let rhs = (self.g)(&self.source.oplus(x, x));
            (lhs != rhs).then(|| format!("x = {}: G(x)+G(x) = {}, G(x+x) = {}", self.f(x), (self.show)(&lhs), (self.show)(&rhs)))
        })
    }

    pub fn super_odot(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let lhs = self.target.odot(&(self.g)(x), &(self.g)(y));
            let rhs = (self.g)(&self.source.odot(x, y));
            (!self.target.leq(&lhs, &rhs)).then(|| {
                format!("x = {}, y = {}: G(x)*G(y) = {} > G(x*y) = {}", self.f(x), self.f(y), (self.show)(&lhs), (self.show)(&rhs))
            })
        })
    }

    pub fn super_oplus(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let lhs = self.target.oplus(&(self.g)(x), &(self.g)(y));
            let rhs = (self.g)(&self.source.oplus(x, y));
            (!self.target.leq(&lhs, &rhs)).then(|| {
                format!("x = {}, y = {}: G(x)+G(y) = {} > G(x+y) = {}", self.f(x), self.f(y), (self.show)(&lhs), (self.show)(&rhs))
            })
        })
    }

    pub fn meet_preserving(&self) -> Option<String> {
        self.pairs().find_map(|(x, y)| {
            let lhs = self.target.meet(&(self.g)(x), &(self.g)(y));
            let rhs = (self.g)(&self.source.meet(x, y));
            (lhs != rhs).then(|| {
                format!("x = {}, y = {}: G(x)&G(y) = {}, G(x&y) = {}", self.f(x), self.f(y), (self.show)(&lhs), (self.show)(&rhs))
            })
        })
    }

    pub fn powers(&self, nmax: u32) -> Option<String> {
        (1..=nmax).find_map(|n| {
            self.elems.iter().find_map(|x| {
                let lhs = (self.g)(&self.source.power(x, n));
                let rhs = self.target.power(&(self.g)(x), n);
                (lhs != rhs).then(|| format!("x = {}, n = {n}: G(x^n) = {}, G(x)^n = {}", self.f(x), (self.show)(&lhs), (self.show)(&rhs)))
            })
        })
    }

    pub fn multiples(&self, nmax: u32) -> Option<String> {
        (1..=nmax).find_map(|n| {
            self.elems.iter().find_map(|x| {
                let lhs = self.target.n_times(n, &(self.g)(x));
                let rhs = (self.g)(&self.source.n_times(n, x));
                (lhs != rhs).then(|| format!("x = {}, n = {n}: n*G(x) = {}, G(n*x) = {}", self.f(x), (self.show)(&lhs), (self.show)(&rhs)))
            })
        })
    }
}

fn checker(g: &FmFunction) -> FmChecker<'_, FiniteMvAlgebra, impl Fn(&Element) -> Element + '_, impl Fn(&Element) -> String + '_> {
    FmChecker {
        source: &g.source,
        target: &g.target,
        g: move |x: &Element| g.apply(x),
        show: move |v: &Element| g.target.format_element(v),
        elems: g.source.elements().collect(),
    }
}

/// FM1-FM5.
pub fn check_fm(g: &FmFunction) -> AxiomReport {
    let c = checker(g);
    let mut r = AxiomReport::new();
    r.check("FM1", || c.unit());
    r.check("FM2", || c.monotone());
    r.check("FM3", || c.top_closed());
    r.check("FM4", || c.square_odot());
    r.check("FM5", || c.square_oplus());
    r
}

/// Smallest `nmax` that decides FM9 and FM10 for every `n`.
pub fn strong_nmax(g: &FmFunction) -> u32 {
    g.source.max_denominator().max(g.target.max_denominator()) + 1
}

/// FM1-FM10, with FM9 and FM10 checked for `n = 1..=nmax`.
pub fn check_strong_fm(g: &FmFunction, nmax: u32) -> Result<AxiomReport> {
    let need = strong_nmax(g);
    if nmax < need {
        return Err(Error::Usage(format!("nmax must be at least {need}, got {nmax}")));
    }
    let c = checker(g);
    let mut r = check_fm(g);
    r.check("FM6", || c.super_odot());
    r.check("FM7", || c.super_oplus());
    r.check("FM8", || c.meet_preserving());
    r.check("FM9", || c.powers(nmax));
    r.check("FM10", || c.multiples(nmax));
    Ok(r)
}

/// Verdicts for a candidate pair of tense operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TenseReport {
    /// `(i)`-`(vi)`, then `(ii')` and `(vi')`.
    pub axioms: AxiomReport,
    /// `(ii)` and `(ii')` gave the same verdict.
    pub ii_agree: bool,
    /// `(vi)` and `(vi')` gave the same verdict.
    pub vi_agree: bool,
}

impl TenseReport {
    pub fn passed(&self) -> bool {
        self.axioms.passed() && self.ii_agree && self.vi_agree
    }
}

fn first_of(a: Option<String>, b: impl FnOnce() -> Option<String>, tag_a: &str, tag_b: &str) -> Option<String> {
    a.map(|w| format!("{tag_a}: {w}")).or_else(|| b().map(|w| format!("{tag_b}: {w}")))
}

/// Checks `(G, H)` against the tense axioms on a common carrier.
pub fn check_tense_pair(g: &FmFunction, h: &FmFunction) -> Result<TenseReport> {
    if !g.is_endo() || !h.is_endo() || g.source != h.source {
        return Err(Error::Structural("tense operators must be endo-maps of one algebra".into()));
    }
    let a = &g.source;
    let (cg, ch) = (checker(g), checker(h));
    let elems = &cg.elems;
    let f = |x: &Element| a.format_element(x);
    let mut r = AxiomReport::new();

    r.check("(i)", || first_of(cg.unit(), || ch.unit(), "G", "H"));
    r.check("(ii)", || first_of(cg.super_odot(), || ch.super_odot(), "G", "H"));
    r.check("(iii)", || first_of(cg.super_oplus(), || ch.super_oplus(), "G", "H"));
    r.check("(iv)", || first_of(cg.square_odot(), || ch.square_odot(), "G", "H"));
    r.check("(v)", || first_of(cg.square_oplus(), || ch.square_oplus(), "G", "H"));

    let vi = |p: &FmFunction, q: &FmFunction| {
        elems.iter().find_map(|x| {
            let lhs = a.neg(&p.apply(&a.neg(&q.apply(x))));
            (!a.leq(&lhs, x)).then(|| format!("x = {}: result {}", f(x), f(&lhs)))
        })
    };
    r.check("(vi)", || first_of(vi(g, h), || vi(h, g), "!G!H(x) <= x", "!H!G(x) <= x"));

    let ii_prime = |p: &FmFunction| {
        elems.iter().find_map(|x| {
            elems.iter().find_map(|y| {
                let lhs = p.apply(&a.arrow(x, y));
                let rhs = a.arrow(&p.apply(x), &p.apply(y));
                (!a.leq(&lhs, &rhs)).then(|| format!("x = {}, y = {}: {} > {}", f(x), f(y), f(&lhs), f(&rhs)))
            })
        })
    };
    r.check("(ii')", || first_of(ii_prime(g), || ii_prime(h), "G", "H"));

    let vi_prime = |p: &FmFunction, q: &FmFunction| {
        elems.iter().find_map(|x| {
            let rhs = p.apply(&a.neg(&q.apply(&a.neg(x))));
            (!a.leq(x, &rhs)).then(|| format!("x = {}: result {}", f(x), f(&rhs)))
        })
    };
    r.check("(vi')", || first_of(vi_prime(g, h), || vi_prime(h, g), "x <= G!H!x", "x <= H!G!x"));

    let ii_agree = r.verdict("(ii)") == r.verdict("(ii')");
    let vi_agree = r.verdict("(vi)") == r.verdict("(vi')");
    Ok(TenseReport { axioms: r, ii_agree, vi_agree })
}

/// `t_r(G(x)) = G(t_r(x))` for every `x` of the source.
pub fn tr_commutation(g: &FmFunction, r: &DyadicRational) -> Result<bool> {
    let t = synthesize_t_r(r);
    for x in g.source.elements() {
        let lhs = t.eval_unary(&g.target, &g.apply(&x))?;
        let rhs = g.apply(&t.eval_unary(&g.source, &x)?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restriction to Boolean skeletons, as a map `C₁^n → C₁^k`.
pub fn restrict_to_skeleton(g: &FmFunction) -> Result<FmFunction> {
    let src = FiniteMvAlgebra::power_of_chain(1, g.source.dim())?;
    let tgt = FiniteMvAlgebra::power_of_chain(1, g.target.dim())?;
    let lift = |b: &Element| {
        let k: Vec<u32> = b.numerators().iter().zip(g.source.denominators()).map(|(&bit, &m)| bit * m).collect();
        g.source.element(&k)
    };
    let mut values = Vec::with_capacity(src.size());
    for b in src.elements() {
        let y = g.apply(&lift(&b)?);
        if !g.target.is_boolean(&y) {
            return Err(Error::InvariantViolation(format!(
                "G({}) = {} is not Boolean",
                g.source.format_element(&lift(&b)?),
                g.target.format_element(&y)
            )));
        }
        let bits: Vec<u32> = y.numerators().iter().map(|&k| u32::from(k > 0)).collect();
        values.push(tgt.element(&bits)?);
    }
    FmFunction::new(src, tgt, values)
}

/// A relation `R ⊆ S × T` on index sets `0..s` and `0..t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    s_count: usize,
    t_count: usize,
    rel: Vec<bool>,
}

impl Frame {
    pub fn new(s_count: usize, t_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if s_count == 0 || t_count == 0 {
            return Err(Error::Structural("frames need at least one world on each side".into()));
        }
        let mut rel = vec![false; s_count * t_count];
        for &(s, t) in edges {
            if s >= s_count || t >= t_count {
                return Err(Error::Structural(format!("edge ({}, {}) outside the frame", s + 1, t + 1)));
            }
            rel[s * t_count + t] = true;
        }
        Ok(Frame { s_count, t_count, rel })
    }

    /// Time frame on `n` worlds.
    pub fn time(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, n, edges)
    }

    /// The `code`-th relation on `n` worlds, bit `s*n + t` selecting `(s, t)`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        if n == 0 || n * n > 64 {
            return Err(Error::Usage(format!("cannot encode relations on {n} worlds")));
        }
        let rel = (0..n * n).map(|b| code >> b & 1 == 1).collect();
        Ok(Frame { s_count: n, t_count: n, rel })
    }

    pub fn random(s_count: usize, t_count: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut f = Self::new(s_count, t_count, &[])?;
        for e in f.rel.iter_mut() {
            *e = rng.gen_bool(0.5);
        }
        Ok(f)
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn t_count(&self) -> usize {
        self.t_count
    }

    pub fn is_time_frame(&self) -> bool {
        self.s_count == self.t_count
    }

    pub fn related(&self, s: usize, t: usize) -> bool {
        self.rel[s * self.t_count + t]
    }

    pub fn set(&mut self, s: usize, t: usize, on: bool) {
        self.rel[s * self.t_count + t] = on;
    }

    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.t_count).filter(move |&t| self.related(s, t))
    }

    pub fn predecessors(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.s_count).filter(move |&s| self.related(s, t))
    }

    /// Edges in row-major order, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.s_count)
            .flat_map(|s| self.successors(s).map(move |t| (s, t)))
            .collect()
    }

    pub fn inverse(&self) -> Frame {
        let mut f = Frame { s_count: self.t_count, t_count: self.s_count, rel: vec![false; self.rel.len()] };
        for (s, t) in self.edges() {
            f.set(t, s, true);
        }
        f
    }

    /// Closes the relation under the given property, for sampling frames of
    /// a class.
    pub fn reflexive_closure(&self) -> Frame {
        let mut f = self.clone();
        for i in 0..self.s_count.min(self.t_count) {
            f.set(i, i, true);
        }
        f
    }

    pub fn symmetric_closure(&self) -> Frame {
        let mut f = self.clone();
        for (s, t) in self.edges() {
            f.set(t, s, true);
        }
        f
    }

    pub fn transitive_closure(&self) -> Frame {
        let mut f = self.clone();
        let n = self.s_count;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if f.related(i, k) && f.related(k, j) {
                        f.set(i, j, true);
                    }
                }
            }
        }
        f
    }
}

/// Edge list, one `s t` pair per line, 1-based.
impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, t) in self.edges() {
            writeln!(f, "{} {}", s + 1, t + 1)?;
        }
        Ok(())
    }
}

/// A map from an index set into the chain `C_m`, stored as numerators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerElement {
    m: u32,
    values: Vec<u32>,
}

impl PowerElement {
    pub fn new(m: u32, values: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Structural("chain denominator must be positive".into()));
        }
        if let Some(v) = values.iter().find(|&&v| v > m) {
            return Err(Error::Structural(format!("{v}/{m} is outside the chain")));
        }
        Ok(PowerElement { m, values })
    }

    pub fn denominator(&self) -> u32 {
        self.m
    }

    pub fn numerators(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise order.
    pub fn le(&self, other: &PowerElement) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn random(m: u32, len: usize, rng: &mut impl Rng) -> Self {
        PowerElement { m, values: (0..len).map(|_| rng.gen_range(0..=m)).collect() }
    }
}

fn check_power(name: &str, p: &PowerElement, m: u32, len: usize) -> Result<()> {
    if p.m != m || p.values.len() != len {
        return Err(Error::Structural(format!(
            "{name} must have {len} values in chain({m}), got {} in chain({})",
            p.values.len(),
            p.m
        )));
    }
    Ok(())
}

/// `G*(p)(s) = min { p(t) : s R t }`, with the empty meet equal to 1.
pub fn canonical_gstar(frame: &Frame, m: u32, p: &PowerElement) -> Result<PowerElement> {
    check_power("p", p, m, frame.t_count)?;
    let values = (0..frame.s_count)
        .map(|s| frame.successors(s).map(|t| p.values[t]).min().unwrap_or(m))
        .collect();
    Ok(PowerElement { m, values })
}

/// `P*(q)(t) = max { q(s) : s R t }`, with the empty join equal to 0.
pub fn canonical_pstar(frame: &Frame, m: u32, q: &PowerElement) -> Result<PowerElement> {
    check_power("q", q, m, frame.s_count)?;
    let values = (0..frame.t_count)
        .map(|t| frame.predecessors(t).map(|s| q.values[s]).max().unwrap_or(0))
        .collect();
    Ok(PowerElement { m, values })
}

/// Guards on materializing `C_m^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimits {
    pub max_size: usize,
    pub max_worlds: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        SizeLimits { max_size: 20_000, max_worlds: 6 }
    }
}

impl SizeLimits {
    pub fn unbounded() -> Self {
        SizeLimits { max_size: usize::MAX, max_worlds: usize::MAX }
    }
}

/// The pair `(G, H)` a time frame induces on `C_m^T`; world `i` is
/// coordinate `i`.
pub fn induced_tense(frame: &Frame, m: u32, limits: &SizeLimits) -> Result<(FmFunction, FmFunction)> {
    if !frame.is_time_frame() {
        return Err(Error::Structural("induced operators need a frame with S = T".into()));
    }
    let n = frame.t_count;
    if n > limits.max_worlds {
        return Err(Error::Resource(format!("{n} worlds exceeds the limit of {}", limits.max_worlds)));
    }
    let size = (m as u128 + 1).checked_pow(n as u32);
    if size.map_or(true, |s| s > limits.max_size as u128) {
        return Err(Error::Resource(format!("chain({m})^{n} exceeds the limit of {} elements", limits.max_size)));
    }
    let a = FiniteMvAlgebra::power_of_chain(m, n)?;
    let inv = frame.inverse();
    let op = |f: &Frame| {
        FmFunction::from_fn(a.clone(), a.clone(), |x| {
            let p = PowerElement { m, values: x.numerators().to_vec() };
            let v = canonical_gstar(f, m, &p).expect("dimensions match");
            a.element(&v.values).expect("meets stay in the chain")
        })
    };
    Ok((op(frame)?, op(&inv)?))
}
