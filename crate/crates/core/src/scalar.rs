//! Exact truth-value scalars and the standard MV-algebra on `[0,1]`.
//!
//! Every computation over the real unit interval goes through [`Scalar`].
//! The trait is implemented for `Ratio<I>` with any integer type that can be
//! built from an `i64`, so `Ratio<i64>`, `Ratio<i128>` and `Ratio<BigInt>` all
//! work. Floating point types are deliberately not scalars: every check in
//! this crate relies on exact equality.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

use crate::mv::MvOps;

pub trait Scalar:
    Clone + Ord + Hash + fmt::Debug + fmt::Display + Num + Send + Sync + 'static
{
    /// Builds `num/den`. Panics when `den == 0`.
    fn from_frac(num: i64, den: i64) -> Self;

    /// Returns `k` when `self == k/den` with `0 <= k <= den`.
    fn scaled_numerator(&self, den: u32) -> Option<u32>;

    fn from_u32(n: u32) -> Self {
        Self::from_frac(i64::from(n), 1)
    }

    fn is_unit(&self) -> bool {
        *self >= Self::zero() && *self <= Self::one()
    }

    /// Truncated sum `min(1, a + b)`.
    fn luk_sum(&self, other: &Self) -> Self {
        (self.clone() + other.clone()).min(Self::one())
    }

    /// Łukasiewicz product `max(0, a + b - 1)`.
    fn luk_prod(&self, other: &Self) -> Self {
        let s = self.clone() + other.clone();
        if s <= Self::one() {
            Self::zero()
        } else {
            s - Self::one()
        }
    }

    fn luk_neg(&self) -> Self {
        Self::one() - self.clone()
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Clone + Hash + fmt::Debug + fmt::Display + ToPrimitive + From<i64>,
    I: Send + Sync + 'static,
{
    fn from_frac(num: i64, den: i64) -> Self {
        Ratio::new(I::from(num), I::from(den))
    }

    fn scaled_numerator(&self, den: u32) -> Option<u32> {
        let scaled = self.clone() * Ratio::from_integer(I::from(i64::from(den)));
        if !scaled.is_integer() {
            return None;
        }
        let k = scaled.to_integer().to_i64()?;
        if (0..=i64::from(den)).contains(&k) {
            u32::try_from(k).ok()
        } else {
            None
        }
    }
}

/// The standard MV-algebra `([0,1], ⊕, ¬, 0)` over an exact scalar type.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardMv<S>(PhantomData<S>);

impl<S: Scalar> StandardMv<S> {
    pub fn new() -> Self {
        StandardMv(PhantomData)
    }
}

impl<S: Scalar> MvOps for StandardMv<S> {
    type Value = S;

    fn zero(&self) -> S {
        S::zero()
    }

    fn one(&self) -> S {
        S::one()
    }

    fn neg(&self, x: &S) -> S {
        x.luk_neg()
    }

    fn oplus(&self, x: &S, y: &S) -> S {
        x.luk_sum(y)
    }

    fn odot(&self, x: &S, y: &S) -> S {
        x.luk_prod(y)
    }

    fn join(&self, x: &S, y: &S) -> S {
        x.clone().max(y.clone())
    }

    fn meet(&self, x: &S, y: &S) -> S {
        x.clone().min(y.clone())
    }

    fn leq(&self, x: &S, y: &S) -> bool {
        x <= y
    }
}
