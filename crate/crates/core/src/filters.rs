//! Filters, ultrafilters, quotients and the ultrafilter/morphism
//! correspondence on finite products of chains.
//!
//! In a finite MV-algebra every filter is the up-set of a Boolean element
//! `b`, so a [`Filter`] is stored as its generator. For a product of chains
//! the up-set of `b` is `{x : x_i = 1 wherever b_i = 1}`, and the
//! ultrafilters are the up-sets of the atoms `e_i`, one per coordinate.

use std::collections::HashSet;

use crate::dyadic::{dyadics_up_to, synthesize_t_r, DyadicRational};
use crate::error::{Error, Result};
use crate::mv::{Element, FiniteMvAlgebra, MvOps};
use crate::scalar::Scalar;
use crate::valuation::MvMorphism;

/// Default bound on dyadic exponents tried when separating values.
pub const DEFAULT_DEPTH: u32 = 8;

/// The up-set of a Boolean element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    algebra: FiniteMvAlgebra,
    generator: Element,
}

impl Filter {
    pub fn up_set(algebra: &FiniteMvAlgebra, generator: Element) -> Result<Self> {
        algebra.validate(&generator)?;
        if !algebra.is_boolean(&generator) {
            return Err(Error::Usage(format!(
                "{} is not Boolean",
                algebra.format_element(&generator)
            )));
        }
        Ok(Filter { algebra: algebra.clone(), generator })
    }

    /// The ultrafilter `{x : x_i = 1}`.
    pub fn ultrafilter(algebra: &FiniteMvAlgebra, i: usize) -> Self {
        Filter { algebra: algebra.clone(), generator: algebra.atom(i) }
    }

    pub fn algebra(&self) -> &FiniteMvAlgebra {
        &self.algebra
    }

    pub fn generator(&self) -> &Element {
        &self.generator
    }

    /// Coordinates forced to 1 by membership.
    pub fn support(&self) -> Vec<usize> {
        self.generator
            .numerators()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.algebra.leq(&self.generator, x)
    }

    pub fn members(&self) -> Vec<Element> {
        self.algebra.elements().filter(|x| self.contains(x)).collect()
    }

    pub fn is_proper(&self) -> bool {
        self.generator != self.algebra.zero()
    }

    /// The coordinate of an ultrafilter, `None` for other filters.
    pub fn ultrafilter_coordinate(&self) -> Option<usize> {
        match self.support().as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn is_subset_of(&self, other: &Filter) -> bool {
        self.algebra.leq(&other.generator, &self.generator)
    }

    pub fn describe(&self) -> String {
        format!("up-set of {}", self.algebra.format_element(&self.generator))
    }
}

fn index_set(alg: &FiniteMvAlgebra, set: &[Element]) -> Result<HashSet<usize>> {
    set.iter()
        .map(|x| alg.validate(x).map(|_| alg.index_of(x)))
        .collect()
}

/// Checks (F1)-(F3) exhaustively; the error carries a counterexample.
pub fn check_filter(alg: &FiniteMvAlgebra, set: &[Element]) -> Result<Result<(), String>> {
    let members = index_set(alg, set)?;
    let fmt = |x: &Element| alg.format_element(x);
    if !members.contains(&alg.index_of(&alg.one())) {
        return Ok(Err("(F1) 1 is not a member".into()));
    }
    let elems: Vec<Element> = alg.elements().collect();
    let inside: Vec<&Element> = elems.iter().filter(|x| members.contains(&alg.index_of(x))).collect();
    for x in &inside {
        if let Some(y) = elems.iter().find(|y| alg.leq(x, y) && !members.contains(&alg.index_of(y))) {
            return Ok(Err(format!("(F2) {} is a member but {} >= it is not", fmt(x), fmt(y))));
        }
    }
    for x in &inside {
        for y in &inside {
            let z = alg.odot(x, y);
            if !members.contains(&alg.index_of(&z)) {
                return Ok(Err(format!("(F3) {} * {} = {} is not a member", fmt(x), fmt(y), fmt(&z))));
            }
        }
    }
    Ok(Ok(()))
}

pub fn is_filter(alg: &FiniteMvAlgebra, set: &[Element]) -> Result<bool> {
    Ok(check_filter(alg, set)?.is_ok())
}

/// Checks the filter axioms plus (P1) and (P2) exhaustively.
pub fn check_prime(alg: &FiniteMvAlgebra, set: &[Element]) -> Result<Result<(), String>> {
    if let Err(w) = check_filter(alg, set)? {
        return Ok(Err(w));
    }
    let members = index_set(alg, set)?;
    let fmt = |x: &Element| alg.format_element(x);
    if members.contains(&alg.index_of(&alg.zero())) {
        return Ok(Err("(P1) 0 is a member".into()));
    }
    let elems: Vec<Element> = alg.elements().collect();
    for x in &elems {
        for y in &elems {
            let j = alg.join(x, y);
            if members.contains(&alg.index_of(&j))
                && !members.contains(&alg.index_of(x))
                && !members.contains(&alg.index_of(y))
            {
                return Ok(Err(format!("(P2) {} | {} is a member, neither side is", fmt(x), fmt(y))));
            }
        }
    }
    Ok(Ok(()))
}

pub fn is_prime(alg: &FiniteMvAlgebra, set: &[Element]) -> Result<bool> {
    Ok(check_prime(alg, set)?.is_ok())
}

/// The smallest filter containing `gens`: the up-set of the idempotent
/// power of their ⊙-product. Improper when that power is 0.
pub fn generated_filter(alg: &FiniteMvAlgebra, gens: &[Element]) -> Result<Filter> {
    let Some((first, rest)) = gens.split_first() else {
        return Err(Error::Usage("at least one generator is required".into()));
    };
    alg.validate(first)?;
    let mut product = first.clone();
    for g in rest {
        alg.validate(g)?;
        product = alg.odot(&product, g);
    }
    let generator = alg.idempotent_power(&product);
    Filter::up_set(alg, generator)
}

/// Every filter, improper one included, in Boolean-skeleton order.
pub fn enumerate_filters(alg: &FiniteMvAlgebra) -> Vec<Filter> {
    alg.boolean_skeleton()
        .into_iter()
        .map(|b| Filter { algebra: alg.clone(), generator: b })
        .collect()
}

/// One ultrafilter per coordinate, in coordinate order.
pub fn enumerate_ultrafilters(alg: &FiniteMvAlgebra) -> Vec<Filter> {
    (0..alg.dim()).map(|i| Filter::ultrafilter(alg, i)).collect()
}

/// Intersection of all ultrafilters, computed from their member sets.
pub fn ultrafilter_intersection(alg: &FiniteMvAlgebra) -> Vec<Element> {
    let ufs = enumerate_ultrafilters(alg);
    alg.elements().filter(|x| ufs.iter().all(|u| u.contains(x))).collect()
}

/// `A/F` for a proper filter `F`: the product of the chains on `F`'s support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FiniteMvAlgebra,
    pub coords: Vec<usize>,
}

impl Quotient {
    /// The class `x/F`.
    pub fn project(&self, source: &FiniteMvAlgebra, x: &Element) -> Element {
        source.project(x, &self.coords)
    }
}

pub fn quotient(alg: &FiniteMvAlgebra, filter: &Filter) -> Result<Quotient> {
    if !filter.is_proper() {
        return Err(Error::Usage("quotient by the improper filter".into()));
    }
    let coords = filter.support();
    Ok(Quotient { algebra: alg.restrict(&coords)?, coords })
}

/// The morphism `x ↦ x_i` corresponding to the ultrafilter `{x : x_i = 1}`.
pub fn morphism_from_ultrafilter<S: Scalar>(alg: &FiniteMvAlgebra, u: &Filter) -> Result<MvMorphism<S>> {
    let i = u
        .ultrafilter_coordinate()
        .ok_or_else(|| Error::Usage(format!("{} is not an ultrafilter", u.describe())))?;
    Ok(MvMorphism::projection(alg.clone(), i))
}

/// On a chain: `s(x) = 1` implies `x ⊕ x = 1` for every `x`.
pub fn check_ot4<S: Scalar>(alg: &FiniteMvAlgebra, s: &MvMorphism<S>) -> Result<bool> {
    if !alg.is_chain() {
        return Err(Error::Usage(format!("{alg} is not linearly ordered")));
    }
    Ok(alg
        .elements()
        .all(|x| *s.apply(&x) != S::one() || alg.oplus(&x, &x) == alg.one()))
}

/// On a chain, over dyadics with exponent `<= depth`: `s(x) = 1` iff every
/// `t_r(x) = 1`, and `s(x) < r` for every `r` with `t_r(x) != 1`.
///
/// Returns `false` when `s(x) < 1` but no dyadic of the given depth
/// witnesses it.
pub fn check_t4<S: Scalar>(alg: &FiniteMvAlgebra, s: &MvMorphism<S>, x: &Element, depth: u32) -> Result<bool> {
    if !alg.is_chain() {
        return Err(Error::Usage(format!("{alg} is not linearly ordered")));
    }
    alg.validate(x)?;
    let sx = s.apply(x).clone();
    let mut all_top = true;
    for r in dyadics_up_to(depth) {
        let tx = synthesize_t_r(&r).eval_unary(alg, x)?;
        if tx != alg.one() {
            all_top = false;
            if sx >= r.value() {
                return Ok(false);
            }
        }
    }
    Ok((sx == S::one()) == all_top)
}

/// Finds a dyadic `r` with `t_r(x) ∉ F` and an ultrafilter `U ⊇ F` with
/// `x/U < r`. `None` when every tried `t_r(x)` lies in `F`.
pub fn extend_filter_avoiding(
    alg: &FiniteMvAlgebra,
    filter: &Filter,
    x: &Element,
    depth: u32,
) -> Result<Option<(Filter, DyadicRational)>> {
    if !filter.is_proper() {
        return Err(Error::Usage("the filter must be proper".into()));
    }
    alg.validate(x)?;
    for r in dyadics_up_to(depth) {
        let tx = synthesize_t_r(&r).eval_unary(alg, x)?;
        if filter.contains(&tx) {
            continue;
        }
        let found = enumerate_ultrafilters(alg).into_iter().find(|u| {
            let i = u.support()[0];
            // x_i / m_i < p / 2^e
            filter.is_subset_of(u)
                && u128::from(x.numerators()[i]) * u128::from(r.denominator())
                    < u128::from(r.numerator()) * u128::from(alg.denominators()[i])
        });
        return match found {
            Some(u) => Ok(Some((u, r))),
            None => Err(Error::InvariantViolation(format!(
                "t_{r}({}) is outside {} but no ultrafilter above it separates",
                alg.format_element(x),
                filter.describe()
            ))),
        };
    }
    Ok(None)
}
