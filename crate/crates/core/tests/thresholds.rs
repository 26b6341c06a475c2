use proptest::prelude::*;

use tensemv::dyadic::{g_sequence, separating_dyadic, synthesize_t_r};
use tensemv::{BitSequence, DyadicRational, FiniteMvAlgebra, MvOps, Rat, StandardMv};

fn one() -> Rat {
    Rat::from_integer(1)
}

fn arb_dyadic() -> impl Strategy<Value = DyadicRational> {
    (1u32..=8).prop_flat_map(|m| (0u64..(1 << (m - 1))).prop_map(move |h| DyadicRational::new(2 * h + 1, m).unwrap()))
}

fn arb_bits() -> impl Strategy<Value = BitSequence> {
    prop::collection::vec(any::<bool>(), 1..=10).prop_map(|b| BitSequence::new(b).unwrap())
}

/// Independent oracle for the term of a bit sequence: apply `x ⊙ x` for a 1
/// and `x ⊕ x` for a 0, first bit innermost.
fn oracle(bits: &[bool], x: Rat) -> Rat {
    bits.iter().fold(x, |v, &b| {
        if b {
            (v + v - one()).max(Rat::from_integer(0))
        } else {
            (v + v).min(one())
        }
    })
}

proptest! {
    #[test]
    fn threshold_is_exact_on_the_grid(r in arb_dyadic(), j in 0i64..=1024) {
        let x = Rat::new(j, 1024);
        let std = StandardMv::<Rat>::new();
        let v = synthesize_t_r(&r).eval_unary(&std, &x).unwrap();
        prop_assert_eq!(v == one(), x >= r.value::<Rat>());
    }

    #[test]
    fn sequence_terms_match_the_oracle(bits in arb_bits(), j in 0i64..=1024) {
        let x = Rat::new(j, 1024);
        let std = StandardMv::<Rat>::new();
        prop_assert_eq!(g_sequence(&bits).eval_unary(&std, &x).unwrap(), oracle(bits.bits(), x));
    }

    #[test]
    fn sandwich_window(bits in arb_bits(), j in 0i64..=1024) {
        let x = Rat::new(j, 1024);
        let d: Rat = bits.value();
        let upper = d + Rat::new(1, 1 << bits.len());
        let v = g_sequence(&bits).eval_unary(&StandardMv::<Rat>::new(), &x).unwrap();
        if x >= upper {
            prop_assert_eq!(v, one());
        }
        if x <= d {
            prop_assert_eq!(v, Rat::from_integer(0));
        }
    }

    #[test]
    fn trailing_zero_doubles(prefix in prop::collection::vec(any::<bool>(), 1..=9), j in 0i64..=1024) {
        let x = Rat::new(j, 1024);
        let std = StandardMv::<Rat>::new();
        let mut longer = prefix.clone();
        longer.push(false);
        let short = g_sequence(&BitSequence::new(prefix).unwrap()).eval_unary(&std, &x).unwrap();
        let long = g_sequence(&BitSequence::new(longer).unwrap()).eval_unary(&std, &x).unwrap();
        prop_assert_eq!(long, std.oplus(&short, &short));
    }

    #[test]
    fn threshold_is_monotone(r in arb_dyadic(), i in 0i64..=1024, j in 0i64..=1024) {
        let (lo, hi) = (Rat::new(i.min(j), 1024), Rat::new(i.max(j), 1024));
        let std = StandardMv::<Rat>::new();
        let t = synthesize_t_r(&r);
        prop_assert!(t.eval_unary(&std, &lo).unwrap() <= t.eval_unary(&std, &hi).unwrap());
    }

    #[test]
    fn threshold_on_finite_chains(r in arb_dyadic(), n in 1u32..=20) {
        let c = FiniteMvAlgebra::chain(n);
        let t = synthesize_t_r(&r);
        for x in c.elements() {
            let k = i64::from(x.numerators()[0]);
            let top = t.eval_unary(&c, &x).unwrap() == c.one();
            prop_assert_eq!(top, Rat::new(k, i64::from(n)) >= r.value::<Rat>(), "k/n = {}/{}", k, n);
        }
    }

    #[test]
    fn separating_dyadic_lies_strictly_between(
        (p, q, den) in (1i64..1000).prop_flat_map(|den| (0..den).prop_flat_map(move |p| (Just(p), p + 1..=den, Just(den))))
    ) {
        let (a, b) = (Rat::new(p, den), Rat::new(q, den));
        let r = separating_dyadic(&a, &b).unwrap();
        let v: Rat = r.value();
        prop_assert!(a < v && v < b);
        // No dyadic with a smaller exponent fits.
        for e in 0..r.exponent() {
            let step = Rat::new(1, 1 << e);
            let first_above = (a / step).floor() * step + step;
            prop_assert!(first_above >= b);
        }
    }
}
