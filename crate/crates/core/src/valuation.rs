//! Tables from a finite algebra into `[0,1]`, and the MV-morphisms among them.

use crate::error::{Error, Result};
use crate::mv::{Element, FiniteMvAlgebra, MvOps};
use crate::scalar::Scalar;

/// A total map from the carrier of a finite algebra into `[0,1]`, stored in
/// element-index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuationTable<S = crate::Rat> {
    source: FiniteMvAlgebra,
    values: Vec<S>,
}

impl<S: Scalar> ValuationTable<S> {
    pub fn new(source: FiniteMvAlgebra, values: Vec<S>) -> Result<Self> {
        if values.len() != source.size() {
            return Err(Error::Structural(format!(
                "table has {} entries, {} has {} elements",
                values.len(),
                source,
                source.size()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_unit()) {
            return Err(Error::Structural(format!(
                "value {v} at {} is outside [0,1]",
                source.format_element(&source.element_at(i))
            )));
        }
        Ok(ValuationTable { source, values })
    }

    pub fn from_fn(source: FiniteMvAlgebra, f: impl Fn(&Element) -> S) -> Result<Self> {
        let values = source.elements().map(|x| f(&x)).collect();
        Self::new(source, values)
    }

    pub fn constant(source: FiniteMvAlgebra, c: S) -> Result<Self> {
        let values = vec![c; source.size()];
        Self::new(source, values)
    }

    /// The coordinate projection `x ↦ x_i`.
    pub fn projection(source: FiniteMvAlgebra, i: usize) -> Self {
        let values = source.elements().map(|x| source.value(&x, i)).collect();
        ValuationTable { source, values }
    }

    pub fn source(&self) -> &FiniteMvAlgebra {
        &self.source
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn get(&self, x: &Element) -> &S {
        &self.values[self.source.index_of(x)]
    }

    pub fn at(&self, index: usize) -> &S {
        &self.values[index]
    }

    pub fn is_constant(&self, c: &S) -> bool {
        self.values.iter().all(|v| v == c)
    }

    /// `self(x) <= other(x)` for every `x`.
    pub fn pointwise_le(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// First witness of a failed homomorphism law, if any.
    pub fn morphism_violation(&self) -> Option<String> {
        let a = &self.source;
        let fmt = |x: &Element| a.format_element(x);
        if *self.get(&a.zero()) != S::zero() {
            return Some(format!("s(0) = {}", self.get(&a.zero())));
        }
        if *self.get(&a.one()) != S::one() {
            return Some(format!("s(1) = {}", self.get(&a.one())));
        }
        let elems: Vec<Element> = a.elements().collect();
        for (i, x) in elems.iter().enumerate() {
            let sx = &self.values[i];
            if *self.get(&a.neg(x)) != sx.luk_neg() {
                return Some(format!("s(!x) != !s(x) at x = {}", fmt(x)));
            }
            for (j, y) in elems.iter().enumerate() {
                let sy = &self.values[j];
                if *self.get(&a.oplus(x, y)) != sx.luk_sum(sy) {
                    return Some(format!("s(x+y) != s(x)+s(y) at x = {}, y = {}", fmt(x), fmt(y)));
                }
                if *self.get(&a.odot(x, y)) != sx.luk_prod(sy) {
                    return Some(format!("s(x*y) != s(x)*s(y) at x = {}, y = {}", fmt(x), fmt(y)));
                }
            }
        }
        None
    }

    pub fn render(&self) -> Vec<String> {
        self.source
            .elements()
            .zip(&self.values)
            .map(|(x, v)| format!("{} -> {}", self.source.format_element(&x), v))
            .collect()
    }
}

/// A valuation table verified to preserve `⊕`, `⊙`, `¬`, `0` and `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MvMorphism<S = crate::Rat> {
    table: ValuationTable<S>,
}

impl<S: Scalar> MvMorphism<S> {
    pub fn new(table: ValuationTable<S>) -> Result<Self> {
        match table.morphism_violation() {
            None => Ok(MvMorphism { table }),
            Some(w) => Err(Error::Usage(format!("not an MV-morphism: {w}"))),
        }
    }

    /// The projection onto coordinate `i`, which is always a morphism.
    pub fn projection(source: FiniteMvAlgebra, i: usize) -> Self {
        MvMorphism { table: ValuationTable::projection(source, i) }
    }

    pub fn table(&self) -> &ValuationTable<S> {
        &self.table
    }

    pub fn into_table(self) -> ValuationTable<S> {
        self.table
    }

    pub fn source(&self) -> &FiniteMvAlgebra {
        self.table.source()
    }

    pub fn apply(&self, x: &Element) -> &S {
        self.table.get(x)
    }

    /// `{x : s(x) = 1}`.
    pub fn kernel(&self) -> Vec<Element> {
        self.source()
            .elements()
            .zip(self.table.values())
            .filter(|(_, v)| **v == S::one())
            .map(|(x, _)| x)
            .collect()
    }
}

/// All MV-morphisms of a product of chains into `[0,1]`: one projection per
/// coordinate.
pub fn all_morphisms<S: Scalar>(source: &FiniteMvAlgebra) -> Vec<MvMorphism<S>> {
    (0..source.dim()).map(|i| MvMorphism::projection(source.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn projections_are_morphisms() {
        let a = FiniteMvAlgebra::new(vec![2, 3]).unwrap();
        for i in 0..2 {
            let t = ValuationTable::<Rat>::projection(a.clone(), i);
            assert_eq!(t.morphism_violation(), None);
        }
    }

    #[test]
    fn min_is_not_a_morphism() {
        let a = FiniteMvAlgebra::new(vec![2, 2]).unwrap();
        let t = ValuationTable::from_fn(a.clone(), |x| {
            a.value::<Rat>(x, 0).min(a.value(x, 1))
        })
        .unwrap();
        assert!(t.morphism_violation().is_some());
        assert!(MvMorphism::new(t).is_err());
    }

    #[test]
    fn table_validation() {
        let a = FiniteMvAlgebra::chain(2);
        assert!(ValuationTable::new(a.clone(), vec![Rat::from_integer(1); 2]).is_err());
        assert!(ValuationTable::new(a.clone(), vec![Rat::new(3, 2); 3]).is_err());
        assert!(ValuationTable::constant(a, Rat::new(1, 7)).is_ok());
    }

    #[test]
    fn kernel_of_projection() {
        let a = FiniteMvAlgebra::new(vec![2, 3]).unwrap();
        let s = MvMorphism::<Rat>::projection(a.clone(), 1);
        let k = s.kernel();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|x| x.numerators()[1] == 3));
    }
}
