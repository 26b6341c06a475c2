use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tensemv::frames::{
    canonical_gstar, canonical_pstar, check_fm, check_strong_fm, check_tense_pair, induced_tense,
    restrict_to_skeleton, strong_nmax, FmFunction, Frame, PowerElement, SizeLimits,
};
use tensemv::repr::{build_rho, verify_representation, verify_tense_representation, RepresentationVerdict, TenseVerdict};
use tensemv::suite::{all_unary_tables, SEED};
use tensemv::{FiniteMvAlgebra, MvOps};

fn fm_axioms_imply_the_rest(g: &FmFunction) -> bool {
    !check_fm(g).passed() || check_strong_fm(g, strong_nmax(g)).unwrap().passed()
}

fn skeleton_is_closed(g: &FmFunction) {
    let b = restrict_to_skeleton(g).unwrap();
    assert!(check_fm(&b).passed(), "skeleton restriction of {:?}", g.indices());
}

#[test]
fn unary_tables_on_small_chains() {
    let mut fm = 0;
    for m in [2, 3] {
        for g in all_unary_tables(m) {
            assert!(fm_axioms_imply_the_rest(&g), "chain({m}): {:?}", g.indices());
            if check_fm(&g).passed() {
                fm += 1;
                assert_eq!(verify_representation(&g).verdict, RepresentationVerdict::Commutes);
                skeleton_is_closed(&g);
            }
        }
    }
    assert!(fm > 0);
}

/// Each target coordinate is the meet of a subset of source coordinates.
fn meet_family(a: &FiniteMvAlgebra) -> Vec<FmFunction> {
    let k = a.dim();
    let subsets = 1usize << k;
    (0..subsets.pow(k as u32))
        .map(|mut code| {
            let picks: Vec<usize> = (0..k)
                .map(|_| {
                    let s = code % subsets;
                    code /= subsets;
                    s
                })
                .collect();
            FmFunction::from_fn(a.clone(), a.clone(), |x| {
                let ks: Vec<u32> = picks
                    .iter()
                    .enumerate()
                    .map(|(j, &s)| {
                        (0..k).filter(|i| s >> i & 1 == 1).map(|i| x.numerators()[i]).min().unwrap_or(a.denominators()[j])
                    })
                    .collect();
                a.element(&ks).unwrap()
            })
            .unwrap()
        })
        .collect()
}

#[test]
fn sampled_tables_on_a_square() {
    let a = FiniteMvAlgebra::power_of_chain(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let n = a.size();
    for _ in 0..2000 {
        let table: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let g = FmFunction::from_indices(a.clone(), a.clone(), table).unwrap();
        assert!(fm_axioms_imply_the_rest(&g), "{:?}", g.indices());
    }
    let family = meet_family(&a);
    assert_eq!(family.len(), 16);
    for g in &family {
        assert!(check_fm(g).passed());
        assert!(fm_axioms_imply_the_rest(g));
        assert_eq!(verify_representation(g).verdict, RepresentationVerdict::Commutes);
        skeleton_is_closed(g);
    }
}

fn gstar_oracle(f: &Frame, m: u32, p: &[u32]) -> Vec<u32> {
    (0..f.s_count())
        .map(|s| (0..f.t_count()).filter(|&t| f.related(s, t)).map(|t| p[t]).fold(m, u32::min))
        .collect()
}

fn arb_frame(max: usize) -> impl Strategy<Value = Frame> {
    (1..=max, 1..=max).prop_flat_map(|(s, t)| {
        prop::collection::vec(any::<bool>(), s * t).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> =
                (0..s * t).filter(|&i| bits[i]).map(|i| (i / t, i % t)).collect();
            Frame::new(s, t, &edges).unwrap()
        })
    })
}

fn arb_time_frame(max: usize) -> impl Strategy<Value = Frame> {
    (1..=max).prop_flat_map(|n| (0u64..1 << (n * n)).prop_map(move |code| Frame::from_code(n, code).unwrap()))
}

proptest! {
    #[test]
    fn canonical_operators_are_adjoint(
        (f, m, p, q) in (arb_frame(4), 1u32..=4).prop_flat_map(|(f, m)| {
            let (s, t) = (f.s_count(), f.t_count());
            (Just(f), Just(m), prop::collection::vec(0..=m, t), prop::collection::vec(0..=m, s))
        })
    ) {
        let p = PowerElement::new(m, p).unwrap();
        let q = PowerElement::new(m, q).unwrap();
        let g = canonical_gstar(&f, m, &p).unwrap();
        prop_assert_eq!(g.numerators(), &gstar_oracle(&f, m, p.numerators())[..]);
        let back = canonical_pstar(&f, m, &q).unwrap();
        prop_assert_eq!(q.le(&g), back.le(&p));
    }

    #[test]
    fn induced_pairs_roundtrip(f in arb_time_frame(3), m in 1u32..=2) {
        let (g, h) = induced_tense(&f, m, &SizeLimits::default()).unwrap();
        prop_assert!(check_tense_pair(&g, &h).unwrap().passed());
        prop_assert_eq!(build_rho(&g), f.clone());
        let rep = verify_tense_representation(&g, &h).unwrap();
        prop_assert_eq!(rep.verdict, TenseVerdict::Embeds);
        prop_assert_eq!(rep.rho_h, rep.rho_g.inverse());
        let b = restrict_to_skeleton(&g).unwrap();
        prop_assert!(check_fm(&b).passed());
    }

    #[test]
    fn random_square_tables(table in prop::collection::vec(0usize..9, 9)) {
        let a = FiniteMvAlgebra::power_of_chain(2, 2).unwrap();
        let g = FmFunction::from_indices(a.clone(), a.clone(), table).unwrap();
        prop_assert!(fm_axioms_imply_the_rest(&g));
        if check_fm(&g).passed() {
            prop_assert_eq!(g.apply(&a.one()), a.one());
        }
    }
}
