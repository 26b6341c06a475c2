//! Finite MV-algebras presented as products of Łukasiewicz chains.
//!
//! `chain(m)` is `{0, 1/m, ..., 1}` with truncated addition. A product of
//! chains carries every operation coordinatewise. Elements store the integer
//! numerators `k_i` of their coordinates `k_i / m_i`, so every operation is
//! exact integer arithmetic; [`FiniteMvAlgebra::value`] converts a coordinate
//! to any [`Scalar`].

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The MV signature `(⊕, ¬, 0)` together with its derived operations.
///
/// Only `zero`, `one`, `neg` and `oplus` are required. The provided methods
/// follow the textbook definitions (`x ⊙ y = ¬(¬x ⊕ ¬y)`,
/// `x ∨ y = ¬(¬x ⊕ y) ⊕ y`, ...), so implementors that override them with
/// closed formulas can be tested against the defaults.
pub trait MvOps {
    type Value: Clone + PartialEq;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn neg(&self, x: &Self::Value) -> Self::Value;
    fn oplus(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;

    fn odot(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        self.neg(&self.oplus(&self.neg(x), &self.neg(y)))
    }

    fn arrow(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        self.oplus(&self.neg(x), y)
    }

    fn join(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        self.oplus(&self.neg(&self.oplus(&self.neg(x), y)), y)
    }

    fn meet(&self, x: &Self::Value, y: &Self::Value) -> Self::Value {
        self.neg(&self.join(&self.neg(x), &self.neg(y)))
    }

    fn leq(&self, x: &Self::Value, y: &Self::Value) -> bool {
        self.oplus(&self.neg(x), y) == self.one()
    }

    /// `n × x`, with `0 × x = 0`.
    fn n_times(&self, n: u32, x: &Self::Value) -> Self::Value {
        (0..n).fold(self.zero(), |acc, _| self.oplus(&acc, x))
    }

    /// `xⁿ`, with `x⁰ = 1`.
    fn power(&self, x: &Self::Value, n: u32) -> Self::Value {
        (0..n).fold(self.one(), |acc, _| self.odot(&acc, x))
    }

    /// `xⁿ` for the least `n ≥ 1` with `xⁿ = xⁿ⁺¹`.
    ///
    /// Only terminates on algebras where ⊙-powers stabilize, which holds for
    /// every finite algebra.
    fn idempotent_power(&self, x: &Self::Value) -> Self::Value {
        let mut cur = x.clone();
        loop {
            let next = self.odot(&cur, x);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }
}

/// Binary connectives of the MV signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Oplus,
    Odot,
    Arrow,
    Join,
    Meet,
}

/// An element of a [`FiniteMvAlgebra`]: coordinate `i` is `coords[i] / m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn numerators(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// A finite product of Łukasiewicz chains `C_{m_1} × ... × C_{m_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMvAlgebra {
    denominators: Vec<u32>,
    size: usize,
}

impl FiniteMvAlgebra {
    pub fn new(denominators: Vec<u32>) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::Structural("an algebra needs at least one chain".into()));
        }
        if let Some(pos) = denominators.iter().position(|&m| m == 0) {
            return Err(Error::Structural(format!("chain {pos} has denominator 0")));
        }
        let size = denominators
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m as usize + 1))
            .ok_or_else(|| Error::Resource("carrier size overflows usize".into()))?;
        Ok(FiniteMvAlgebra { denominators, size })
    }

    /// The chain `{0, 1/m, ..., 1}`. Panics when `m == 0`.
    pub fn chain(m: u32) -> Self {
        Self::new(vec![m]).expect("chain denominator must be positive")
    }

    /// The direct power `C_m^n`.
    pub fn power_of_chain(m: u32, n: usize) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn denominators(&self) -> &[u32] {
        &self.denominators
    }

    pub fn dim(&self) -> usize {
        self.denominators.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_chain(&self) -> bool {
        self.denominators.len() == 1
    }

    pub fn max_denominator(&self) -> u32 {
        self.denominators.iter().copied().max().unwrap_or(1)
    }

    pub fn element(&self, numerators: &[u32]) -> Result<Element> {
        let e = Element(numerators.to_vec());
        self.validate(&e)?;
        Ok(e)
    }

    /// Builds an element from coordinate values, each of which must lie in
    /// the carrier of its chain.
    pub fn element_from_values<S: Scalar>(&self, values: &[S]) -> Result<Element> {
        if values.len() != self.dim() {
            return Err(Error::Structural(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                values.len()
            )));
        }
        let coords = values
            .iter()
            .zip(&self.denominators)
            .enumerate()
            .map(|(i, (v, &m))| {
                v.scaled_numerator(m).ok_or_else(|| {
                    Error::Structural(format!("{v} is not in the carrier of chain({m}) at coordinate {i}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Element(coords))
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.0.len() == self.dim() && x.0.iter().zip(&self.denominators).all(|(k, m)| k <= m)
    }

    pub fn validate(&self, x: &Element) -> Result<()> {
        if x.0.len() != self.dim() {
            return Err(Error::Structural(format!(
                "element has {} coordinates, algebra {} has {}",
                x.0.len(),
                self,
                self.dim()
            )));
        }
        for (i, (k, m)) in x.0.iter().zip(&self.denominators).enumerate() {
            if k > m {
                return Err(Error::Structural(format!(
                    "coordinate {i} numerator {k} exceeds denominator {m}"
                )));
            }
        }
        Ok(())
    }

    /// Coordinate `i` of `x` as an exact scalar.
    pub fn value<S: Scalar>(&self, x: &Element, i: usize) -> S {
        S::from_frac(i64::from(x.0[i]), i64::from(self.denominators[i]))
    }

    pub fn values<S: Scalar>(&self, x: &Element) -> Vec<S> {
        (0..self.dim()).map(|i| self.value(x, i)).collect()
    }

    /// Position of `x` in the enumeration order of [`Self::elements`].
    pub fn index_of(&self, x: &Element) -> usize {
        x.0.iter()
            .zip(&self.denominators)
            .fold(0usize, |acc, (&k, &m)| acc * (m as usize + 1) + k as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        debug_assert!(index < self.size);
        let mut coords = vec![0u32; self.dim()];
        for (slot, &m) in coords.iter_mut().zip(&self.denominators).rev() {
            let base = m as usize + 1;
            *slot = (index % base) as u32;
            index /= base;
        }
        Element(coords)
    }

    /// All elements in lexicographic order (first coordinate most significant).
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).map(move |i| self.element_at(i))
    }

    /// Checked binary operation; fails when an operand does not belong to
    /// this algebra.
    pub fn apply(&self, op: BinaryOp, x: &Element, y: &Element) -> Result<Element> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(match op {
            BinaryOp::Oplus => self.oplus(x, y),
            BinaryOp::Odot => self.odot(x, y),
            BinaryOp::Arrow => self.arrow(x, y),
            BinaryOp::Join => self.join(x, y),
            BinaryOp::Meet => self.meet(x, y),
        })
    }

    pub fn checked_neg(&self, x: &Element) -> Result<Element> {
        self.validate(x)?;
        Ok(self.neg(x))
    }

    pub fn is_boolean(&self, x: &Element) -> bool {
        x.0.iter().zip(&self.denominators).all(|(&k, &m)| k == 0 || k == m)
    }

    /// The Boolean skeleton `{x : x ⊕ x = x}`: every 0/1 tuple, in
    /// enumeration order.
    pub fn boolean_skeleton(&self) -> Vec<Element> {
        let d = self.dim();
        let mut out: Vec<Element> = (0..1u64 << d)
            .map(|mask| {
                Element(
                    (0..d)
                        .map(|i| if mask >> (d - 1 - i) & 1 == 1 { self.denominators[i] } else { 0 })
                        .collect(),
                )
            })
            .collect();
        out.sort_by_key(|e| self.index_of(e));
        out
    }

    /// The atom `e_i` of the Boolean skeleton: 1 at coordinate `i`, 0 elsewhere.
    pub fn atom(&self, i: usize) -> Element {
        let mut coords = vec![0; self.dim()];
        coords[i] = self.denominators[i];
        Element(coords)
    }

    pub fn format_element(&self, x: &Element) -> String {
        let parts: Vec<String> = x
            .0
            .iter()
            .zip(&self.denominators)
            .map(|(&k, &m)| format_fraction(u64::from(k), u64::from(m)))
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap_or_default()
        } else {
            format!("({})", parts.join(","))
        }
    }

    /// Sub-product on the listed coordinates, with the matching projection.
    pub fn restrict(&self, coords: &[usize]) -> Result<FiniteMvAlgebra> {
        FiniteMvAlgebra::new(coords.iter().map(|&i| self.denominators[i]).collect())
    }

    pub fn project(&self, x: &Element, coords: &[usize]) -> Element {
        Element(coords.iter().map(|&i| x.0[i]).collect())
    }

    /// `x_i / m_i <= y_j / m_j` by cross multiplication.
    pub(crate) fn coord_le(&self, x: &Element, i: usize, other: &FiniteMvAlgebra, y: &Element, j: usize) -> bool {
        u64::from(x.0[i]) * u64::from(other.denominators[j]) <= u64::from(y.0[j]) * u64::from(self.denominators[i])
    }
}

/// `k/m` in lowest terms; `0` and `1` print bare.
pub fn format_fraction(k: u64, m: u64) -> String {
    let g = k.gcd(&m).max(1);
    let (p, q) = (k / g, m / g);
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

impl fmt::Display for FiniteMvAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.denominators.iter().map(|m| format!("chain({m})")).collect();
        f.write_str(&parts.join(" x "))
    }
}

impl MvOps for FiniteMvAlgebra {
    type Value = Element;

    fn zero(&self) -> Element {
        Element(vec![0; self.dim()])
    }

    fn one(&self) -> Element {
        Element(self.denominators.clone())
    }

    fn neg(&self, x: &Element) -> Element {
        Element(x.0.iter().zip(&self.denominators).map(|(&k, &m)| m - k).collect())
    }

    fn oplus(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.denominators)
                .map(|((&a, &b), &m)| (a + b).min(m))
                .collect(),
        )
    }

    fn odot(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.denominators)
                .map(|((&a, &b), &m)| (a + b).saturating_sub(m))
                .collect(),
        )
    }

    fn arrow(&self, x: &Element, y: &Element) -> Element {
        Element(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.denominators)
                .map(|((&a, &b), &m)| (m - a + b).min(m))
                .collect(),
        )
    }

    fn join(&self, x: &Element, y: &Element) -> Element {
        Element(x.0.iter().zip(&y.0).map(|(&a, &b)| a.max(b)).collect())
    }

    fn meet(&self, x: &Element, y: &Element) -> Element {
        Element(x.0.iter().zip(&y.0).map(|(&a, &b)| a.min(b)).collect())
    }

    fn leq(&self, x: &Element, y: &Element) -> bool {
        x.0.iter().zip(&y.0).all(|(a, b)| a <= b)
    }
}
