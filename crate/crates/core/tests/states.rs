use proptest::prelude::*;

use tensemv::states::{
    compare_semistates, decompose_semistate, default_nmax, enumerate_semistates, is_semistate, is_strong_semistate,
    meet_tables, Decomposition,
};
use tensemv::{FiniteMvAlgebra, MvMorphism, Rat, Valuation, ValuationTable};

fn alg(d: &[u32]) -> FiniteMvAlgebra {
    FiniteMvAlgebra::new(d.to_vec()).unwrap()
}

/// Algebras of at most 25 elements with a grid that contains every
/// coordinate value.
fn small() -> Vec<(FiniteMvAlgebra, u32)> {
    vec![(alg(&[2, 2]), 4), (alg(&[4]), 4), (alg(&[1, 1, 1]), 2), (alg(&[2, 3]), 6), (alg(&[1, 3]), 3)]
}

#[test]
fn meets_of_semistates_are_strong_semistates() {
    for (a, g) in small() {
        assert!(a.size() <= 25);
        let found: Vec<Valuation> = enumerate_semistates(&a, g).unwrap();
        assert!(!found.is_empty());
        let nmax = default_nmax(&a);
        for v in &found {
            for w in &found {
                let m = meet_tables(&a, &[v.clone(), w.clone()]).unwrap();
                assert!(is_semistate(&m).passed(), "{a}: {:?}", is_semistate(&m).failures().next());
                assert!(is_strong_semistate(&m, nmax).unwrap().passed());
                // The order test never reports disagreement between its two readings.
                compare_semistates(v, w).unwrap();
            }
            assert_eq!(decompose_semistate(v).unwrap(), Decomposition::Equal);
        }
    }
}

#[test]
fn enumeration_is_complete_on_the_grid() {
    // Independent count: a semi-state on C2 x C2 with grid 4 is a meet of
    // projections, so there are 2^2 - 1 nonempty meets plus the constant 1.
    let a = alg(&[2, 2]);
    let found: Vec<Valuation> = enumerate_semistates(&a, 4).unwrap();
    let projections: Vec<Valuation> = (0..2).map(|i| ValuationTable::projection(a.clone(), i)).collect();
    let mut expected = vec![
        meet_tables(&a, &[]).unwrap(),
        projections[0].clone(),
        projections[1].clone(),
        meet_tables(&a, &projections).unwrap(),
    ];
    let mut got = found.clone();
    let key = |v: &Valuation| v.values().to_vec();
    expected.sort_by_key(key);
    got.sort_by_key(key);
    assert_eq!(got, expected);
}

#[test]
fn chain_semistates_vanishing_at_zero_are_the_inclusion() {
    for n in 1..=6 {
        let c = FiniteMvAlgebra::chain(n);
        let inclusion: Valuation = ValuationTable::projection(c.clone(), 0);
        for grid in [n, 2 * n] {
            for v in enumerate_semistates::<Rat>(&c, grid).unwrap() {
                if *v.get(&c.element(&[0]).unwrap()) == Rat::from_integer(0) {
                    assert_eq!(v, inclusion, "chain({n}), grid {grid}");
                }
            }
        }
    }
}

fn arb_meet_of_projections() -> impl Strategy<Value = (FiniteMvAlgebra, Vec<usize>, Vec<usize>)> {
    prop::collection::vec(1u32..=4, 1..=2)
        .prop_filter("at most 25 elements", |d| d.iter().map(|m| m + 1).product::<u32>() <= 25)
        .prop_flat_map(|dens| {
            let k = dens.len();
            let a = FiniteMvAlgebra::new(dens).unwrap();
            (Just(a), prop::sample::subsequence((0..k).collect::<Vec<_>>(), 0..=k), prop::sample::subsequence((0..k).collect::<Vec<_>>(), 0..=k))
        })
}

proptest! {
    #[test]
    fn meets_of_morphisms_stay_semistates((a, left, right) in arb_meet_of_projections()) {
        let meet = |coords: &[usize]| {
            let ts: Vec<Valuation> = coords.iter().map(|&i| MvMorphism::projection(a.clone(), i).into_table()).collect();
            meet_tables(&a, &ts).unwrap()
        };
        let (v, w) = (meet(&left), meet(&right));
        prop_assert!(is_semistate(&v).passed());
        let m = meet_tables(&a, &[v.clone(), w.clone()]).unwrap();
        prop_assert!(is_semistate(&m).passed());
        prop_assert!(is_strong_semistate(&m, default_nmax(&a)).unwrap().passed());
        prop_assert_eq!(compare_semistates(&v, &w).unwrap(), v.pointwise_le(&w));
    }
}
