//! Dyadic rationals and the threshold terms built from `x⊕x` and `x⊙x`.
//!
//! `f₀(x) = x⊕x` and `f₁(x) = x⊙x` generate a clone of one-variable terms.
//! A bit sequence `(a₁, …, a_k)` selects the composite `f_{a_k} ∘ … ∘ f_{a₁}`,
//! which on `[0,1]` is 0 below `d = Σ aᵢ2⁻ⁱ`, 1 above `d + 2⁻ᵏ`, and climbs
//! in between. [`synthesize_t_r`] picks the sequence whose climb ends exactly
//! at `r`, giving a term with `t_r(x) = 1 ⟺ x ≥ r`.

use std::fmt;

use crate::error::{Error, Result};
use crate::mv::BinaryOp;
use crate::scalar::{Scalar, StandardMv};
use crate::terms::Term;

/// Largest exponent `m` accepted in `p / 2^m`.
pub const MAX_DYADIC_EXPONENT: u32 = 62;

/// A dyadic rational `p / 2^m` in `(0,1)` with `p` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicRational {
    exponent: u32,
    numerator: u64,
}

impl DyadicRational {
    pub fn new(numerator: u64, exponent: u32) -> Result<Self> {
        if exponent == 0 || exponent > MAX_DYADIC_EXPONENT {
            return Err(Error::Usage(format!(
                "dyadic exponent must be in 1..={MAX_DYADIC_EXPONENT}, got {exponent}"
            )));
        }
        if numerator % 2 == 0 {
            return Err(Error::Usage(format!("{numerator}/2^{exponent} is not in lowest terms")));
        }
        if numerator >= 1u64 << exponent {
            return Err(Error::Usage(format!("{numerator}/2^{exponent} is not below 1")));
        }
        Ok(DyadicRational { exponent, numerator })
    }

    /// Reads `num/den` as a dyadic rational in `(0,1)`.
    pub fn from_fraction(num: u64, den: u64) -> Result<Self> {
        if den == 0 || !den.is_power_of_two() || den == 1 {
            return Err(Error::Usage(format!("{num}/{den} is not a dyadic rational in (0,1)")));
        }
        Self::new(num, den.trailing_zeros())
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn denominator(&self) -> u64 {
        1u64 << self.exponent
    }

    pub fn value<S: Scalar>(&self) -> S {
        S::from_frac(self.numerator as i64, self.denominator() as i64)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

/// Every dyadic `p/2^m` in `(0,1)` with `m ≤ depth`, by `m` then `p`.
pub fn dyadics_up_to(depth: u32) -> impl Iterator<Item = DyadicRational> {
    (1..=depth.min(MAX_DYADIC_EXPONENT)).flat_map(|m| {
        (1..1u64 << m)
            .step_by(2)
            .map(move |p| DyadicRational { exponent: m, numerator: p })
    })
}

/// A nonempty finite 0/1 sequence, read as the dyadic `Σ aᵢ 2⁻ⁱ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSequence(Vec<bool>);

impl BitSequence {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Usage("bit sequence must be nonempty".into()));
        }
        if bits.len() > MAX_DYADIC_EXPONENT as usize {
            return Err(Error::Usage(format!("bit sequence longer than {MAX_DYADIC_EXPONENT}")));
        }
        Ok(BitSequence(bits))
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        Self::new(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The numerator of `Σ aᵢ 2⁻ⁱ` over `2^len`.
    pub fn scaled_value(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| acc * 2 + u64::from(b))
    }

    pub fn value<S: Scalar>(&self) -> S {
        S::from_frac(self.scaled_value() as i64, 1i64 << self.len())
    }
}

/// `g_{(a₁,…,a_k)} = f_{a_k} ∘ ⋯ ∘ f_{a₁}` as a term in `x`.
pub fn g_sequence(bits: &BitSequence) -> Term {
    bits.bits().iter().fold(Term::var("x"), |t, &bit| {
        let op = if bit { BinaryOp::Odot } else { BinaryOp::Oplus };
        Term::square(op, t)
    })
}

/// Where a point falls relative to the window `[d, d + 2⁻ᵏ]` of a bit sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// Above the window: the term evaluates to 1.
    One,
    /// Below the window: the term evaluates to 0.
    Zero,
    /// Inside the window, endpoints included.
    Ramp,
}

/// Classifies `x` against the window of `bits` and confirms the value of
/// `g_bits(x)` on the standard algebra outside the window.
pub fn threshold_bounds<S: Scalar>(bits: &BitSequence, x: &S) -> Result<Threshold> {
    if !x.is_unit() {
        return Err(Error::Usage(format!("{x} is outside [0,1]")));
    }
    let d: S = bits.value();
    let width = S::from_frac(1, 1i64 << bits.len());
    let upper = d.clone() + width;
    let value = g_sequence(bits).eval_unary(&StandardMv::<S>::new(), x)?;
    let class = if *x > upper {
        Threshold::One
    } else if *x < d {
        Threshold::Zero
    } else {
        return Ok(Threshold::Ramp);
    };
    let expected = if class == Threshold::One { S::one() } else { S::zero() };
    if value != expected {
        return Err(Error::InvariantViolation(format!(
            "g evaluated to {value} at {x}, expected {expected}"
        )));
    }
    Ok(class)
}

/// The threshold term `t_r`: `t_r(x) = 1` exactly when `x ≥ r`.
///
/// Built from the `m`-bit expansion of `r − 2⁻ᵐ`. Its last bit is 0, so the
/// outermost step is always `t ⊕ t`.
pub fn synthesize_t_r(r: &DyadicRational) -> Term {
    let m = r.exponent();
    let d = r.numerator() - 1;
    let bits = (1..=m).map(|i| (d >> (m - i)) & 1 == 1).collect();
    g_sequence(&BitSequence(bits))
}

/// The dyadic with least exponent strictly between `a` and `b`.
///
/// Walks down the dyadic tree from `1/2`; the first node inside `(a, b)` is
/// the unique one of least exponent.
pub fn separating_dyadic<S: Scalar>(a: &S, b: &S) -> Result<DyadicRational> {
    if !(a.is_unit() && b.is_unit()) || a >= b {
        return Err(Error::Usage(format!("need 0 <= a < b <= 1, got a = {a}, b = {b}")));
    }
    let (mut p, mut m) = (1u64, 1u32);
    loop {
        let v = S::from_frac(p as i64, 1i64 << m);
        if *a < v && v < *b {
            return DyadicRational::new(p, m);
        }
        if m == MAX_DYADIC_EXPONENT {
            return Err(Error::Resource(format!("no dyadic with exponent <= {m} between {a} and {b}")));
        }
        p = if v <= *a { 2 * p + 1 } else { 2 * p - 1 };
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::{FiniteMvAlgebra, MvOps};
    use crate::Rat;

    /// Piecewise-linear oracle: `clamp(2^k (x − d), 0, 1)`.
    fn ramp_oracle(bits: &BitSequence, x: Rat) -> Rat {
        let d: Rat = bits.value();
        let v = (x - d) * Rat::from_integer(1 << bits.len());
        v.max(Rat::from_integer(0)).min(Rat::from_integer(1))
    }

    fn grid(n: i64) -> impl Iterator<Item = Rat> {
        (0..=n).map(move |j| Rat::new(j, n))
    }

    #[test]
    fn g_sequence_shapes() {
        let g = |b: &[u8]| g_sequence(&BitSequence::from_bits(b).unwrap()).to_string();
        assert_eq!(g(&[0]), "x+x");
        assert_eq!(g(&[1, 0]), "(x*x)+(x*x)");
        assert_eq!(g(&[0, 0]), "(x+x)+(x+x)");
        assert!(BitSequence::new(vec![]).is_err());
    }

    #[test]
    fn threshold_examples() {
        let bits = BitSequence::from_bits(&[1, 0]).unwrap();
        assert_eq!(threshold_bounds(&bits, &Rat::new(7, 8)).unwrap(), Threshold::One);
        assert_eq!(threshold_bounds(&bits, &Rat::new(1, 4)).unwrap(), Threshold::Zero);
        assert_eq!(threshold_bounds(&bits, &Rat::new(5, 8)).unwrap(), Threshold::Ramp);
        let v = g_sequence(&bits).eval_unary(&StandardMv::<Rat>::new(), &Rat::new(5, 8)).unwrap();
        assert_eq!(v, Rat::new(1, 2));
        assert!(threshold_bounds(&bits, &Rat::new(3, 2)).is_err());
    }

    #[test]
    fn ramp_matches_oracle_on_grid() {
        let std = StandardMv::<Rat>::new();
        for len in 1..=6u32 {
            for code in 0..1u64 << len {
                let bits = BitSequence::new((0..len).map(|i| (code >> (len - 1 - i)) & 1 == 1).collect()).unwrap();
                let g = g_sequence(&bits);
                for x in grid(256) {
                    assert_eq!(g.eval_unary(&std, &x).unwrap(), ramp_oracle(&bits, x));
                }
            }
        }
    }

    #[test]
    fn doubling_identity_for_trailing_zero() {
        let std = StandardMv::<Rat>::new();
        for code in 0..64u64 {
            let prefix = BitSequence::new((0..6).map(|i| (code >> (5 - i)) & 1 == 1).collect()).unwrap();
            let mut with_zero = prefix.bits().to_vec();
            with_zero.push(false);
            let g = g_sequence(&BitSequence::new(with_zero).unwrap());
            let h = g_sequence(&prefix);
            for x in grid(128) {
                let hx = h.eval_unary(&std, &x).unwrap();
                assert_eq!(g.eval_unary(&std, &x).unwrap(), std.oplus(&hx, &hx));
            }
        }
    }

    #[test]
    fn synthesized_terms() {
        let t = |p, m| synthesize_t_r(&DyadicRational::new(p, m).unwrap()).to_string();
        assert_eq!(t(1, 1), "x+x");
        assert_eq!(t(3, 2), "(x*x)+(x*x)");
        assert_eq!(t(1, 2), "(x+x)+(x+x)");
        for r in dyadics_up_to(8) {
            assert!(matches!(synthesize_t_r(&r), Term::Bin(BinaryOp::Oplus, ..)));
        }
    }

    #[test]
    fn synthesized_terms_threshold_and_monotone() {
        let std = StandardMv::<Rat>::new();
        for r in dyadics_up_to(5) {
            let t = synthesize_t_r(&r);
            let rv: Rat = r.value();
            let mut prev = Rat::from_integer(0);
            for x in grid(64) {
                let v = t.eval_unary(&std, &x).unwrap();
                assert_eq!(v == Rat::from_integer(1), x >= rv, "r = {r}, x = {x}");
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn thresholds_inside_finite_chains() {
        for n in 1..=12u32 {
            let chain = FiniteMvAlgebra::chain(n);
            for r in dyadics_up_to(6) {
                let t = synthesize_t_r(&r);
                let rv: Rat = r.value();
                for x in chain.elements() {
                    let top = t.eval_unary(&chain, &x).unwrap() == chain.one();
                    assert_eq!(top, chain.value::<Rat>(&x, 0) >= rv);
                }
            }
        }
    }

    #[test]
    fn separating_examples() {
        let sep = |a: Rat, b: Rat| separating_dyadic(&a, &b).unwrap().to_string();
        assert_eq!(sep(Rat::from_integer(0), Rat::from_integer(1)), "1/2");
        assert_eq!(sep(Rat::new(1, 3), Rat::new(2, 3)), "1/2");
        assert_eq!(sep(Rat::new(5, 8), Rat::new(11, 16)), "21/32");
        assert!(separating_dyadic(&Rat::new(1, 2), &Rat::new(1, 2)).is_err());
        assert!(separating_dyadic(&Rat::new(2, 3), &Rat::new(1, 2)).is_err());
    }

    #[test]
    fn separating_agrees_with_linear_scan() {
        // Scan m = 1, 2, ... and p upward; the first dyadic strictly inside wins.
        let scan = |a: Rat, b: Rat| -> (u64, u32) {
            for m in 1..20u32 {
                for p in 1..(1u64 << m) {
                    let v = Rat::new(p as i64, 1 << m);
                    if a < v && v < b {
                        return (p, m);
                    }
                }
            }
            unreachable!()
        };
        for (ai, bi) in (0..=12).flat_map(|i| ((i + 1)..=12).map(move |j| (i, j))) {
            let (a, b) = (Rat::new(ai, 12), Rat::new(bi, 12));
            let r = separating_dyadic(&a, &b).unwrap();
            assert_eq!((r.numerator(), r.exponent()), scan(a, b));
        }
    }

    #[test]
    fn dyadic_construction() {
        assert_eq!(dyadics_up_to(8).count(), 255);
        assert!(DyadicRational::new(2, 2).is_err());
        assert!(DyadicRational::new(5, 2).is_err());
        assert!(DyadicRational::new(1, 0).is_err());
        assert_eq!(DyadicRational::from_fraction(3, 4).unwrap(), DyadicRational::new(3, 2).unwrap());
        assert!(DyadicRational::from_fraction(1, 3).is_err());
        assert!(DyadicRational::from_fraction(1, 1).is_err());
    }
}
