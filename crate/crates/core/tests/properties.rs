mod common;

use adic_lab::arithmetic::AdicApprox;
use adic_lab::classify::{
    equivalent, is_ring, n_isomorphic, omega_isomorphic, realize, ring_companion, self_dual,
};
use adic_lab::dynamics::{AffineElement, HSubgroup};
use adic_lab::lattice::{intersect, place_value, quotient_size, FracIdeal};
use adic_lab::supernatural::{canonical_pair_form, lambda_rho};
use adic_lab::{PrimeSet, SequenceSpec, Tail};
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn tail() -> impl Strategy<Value = Tail> {
    let entry = prop::sample::select(ENTRIES.to_vec());
    (
        prop::collection::vec(entry.clone(), 0..=3),
        prop::collection::vec(entry, 1..=3),
    )
        .prop_map(|(pre, per)| Tail::new(pre, per))
}

fn spec() -> impl Strategy<Value = SequenceSpec> {
    prop_oneof![
        8 => (tail(), tail()).prop_map(|(n, p)| SequenceSpec::periodic(n, p).unwrap()),
        1 => (2u64..5, -3i64..=3).prop_map(|(offset, center)| SequenceSpec::Increment { offset, center }),
    ]
}

/// An element of `N`: `k·w_{-d}`.
fn element(spec: &SequenceSpec, k: i64, d: i64) -> BigRational {
    place_value(spec, -d) * BigRational::from_integer(k.into())
}

fn digits_strategy() -> impl Strategy<Value = (i64, Vec<u64>)> {
    (-3i64..=1, prop::collection::vec(any::<u64>(), 12..20))
}

/// Random digits reduced into range for `spec`.
fn digits(spec: &SequenceSpec, floor: i64, raw: &[u64]) -> AdicApprox {
    let precision = floor + raw.len() as i64;
    AdicApprox::from_digits(spec, floor, precision, |i| {
        raw[(i - floor) as usize] % spec.entry(i)
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn spec_json_round_trip(a in spec()) {
        let back = SequenceSpec::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn reflections_are_involutions(a in spec(), n in -4i64..=4) {
        prop_assert!(a.shift(n).shift(n).same_sequence(&a));
        prop_assert!(a.translate(n).translate(-n).same_sequence(&a));
        for i in -8..8 {
            prop_assert_eq!(a.shift(n).entry(i), a.entry(n - i));
            prop_assert_eq!(a.translate(n).entry(i), a.entry(i + n));
        }
    }

    #[test]
    fn addition_laws(a in spec(), x in digits_strategy(), y in digits_strategy(), z in digits_strategy()) {
        let (x, y, z) = (digits(&a, x.0, &x.1), digits(&a, y.0, &y.1), digits(&a, z.0, &z.1));
        let j = x.precision().min(y.precision()).min(z.precision());
        prop_assert!(x.add(&y).unwrap().eq_mod(&y.add(&x).unwrap(), j).unwrap());
        let left = x.add(&y).unwrap().add(&z).unwrap();
        let right = x.add(&y.add(&z).unwrap()).unwrap();
        prop_assert!(left.eq_mod(&right, j).unwrap());
        let zero = AdicApprox::zero(&a, x.precision());
        prop_assert!(x.add(&x.negate()).unwrap().eq_mod(&zero, x.precision()).unwrap());
        prop_assert!(x.sub(&y).unwrap().add(&y).unwrap().eq_mod(&x, j).unwrap());
    }

    #[test]
    fn embedding_is_additive(a in spec(), k in -500i64..500, l in -500i64..500, d in 0i64..3, e in 0i64..3) {
        let (q, r) = (element(&a, k, d), element(&a, l, e));
        let lhs = AdicApprox::embed(&a, &q, 10).unwrap().add(&AdicApprox::embed(&a, &r, 10).unwrap()).unwrap();
        let rhs = AdicApprox::embed(&a, &(q + r), 10).unwrap();
        prop_assert!(lhs.eq_mod(&rhs, 10).unwrap());
    }

    #[test]
    fn truncation_matches_digit_sum(a in spec(), x in digits_strategy(), j in -4i64..9) {
        let x = digits(&a, x.0, &x.1);
        let direct: BigRational = (x.floor()..=j)
            .map(|i| place_value(&a, i) * BigRational::from_integer(BigInt::from(x.digit(i).unwrap_or(0))))
            .sum();
        prop_assert_eq!(x.truncation_value(j).unwrap(), direct);
    }

    #[test]
    fn division_keeps_the_promised_precision(a in spec(), k in -300i64..300, d in 0i64..3, e in 0u32..3) {
        let (p, _) = a.prime_sets();
        let Some(&prime) = p.listed().iter().next().filter(|_| p.is_finite()) else {
            return Ok(());
        };
        let n = BigInt::from(prime).pow(e);
        let h = BigRational::new(BigInt::one(), n.clone());
        let q = element(&a, k, d);
        let x = AdicApprox::embed(&a, &q, 12).unwrap();
        let y = x.scalar_mul(&h).unwrap();
        let jp = y.precision();
        // U_12 ⊆ n·U_{j'} and not n·U_{j'+1}
        let fits = |j: i64| (place_value(&a, 12) / (place_value(&a, j) * BigRational::from_integer(n.clone()))).is_integer();
        prop_assert!(fits(jp));
        prop_assert!(jp == 12 || !fits(jp + 1));
        let direct = AdicApprox::embed(&a, &(q * h), jp).unwrap();
        prop_assert!(y.eq_mod(&direct, jp).unwrap());
    }

    #[test]
    fn intersection_is_membership_and(m1 in 1u64..40, n1 in 1u64..40, m2 in 1u64..40, n2 in 1u64..40) {
        let (i, j) = (FracIdeal::new(m1, n1).unwrap(), FracIdeal::new(m2, n2).unwrap());
        let both = intersect(&i, &j);
        for den in 1..30i64 {
            for num in -60..60i64 {
                let q = rat(num, den);
                prop_assert_eq!(both.contains(&q), i.contains(&q) && j.contains(&q));
            }
        }
    }

    #[test]
    fn quotient_size_counts_cosets(m in 1u64..30, n in 1u64..30, h in 1u64..12) {
        let i = FracIdeal::new(m, n).unwrap();
        let inner = i.scale(&int(h as i64)).unwrap();
        prop_assert_eq!(quotient_size(&i, &inner).unwrap(), h.into());
        prop_assert_eq!(coset_count(&i, h), h);
    }

    #[test]
    fn pair_invariants(a in spec(), b in spec()) {
        let w = omega_isomorphic(&a, &b);
        prop_assert_eq!(w.is_some(), canonical_pair_form(&lambda_rho(&a).0, &lambda_rho(&a).1)
            == canonical_pair_form(&lambda_rho(&b).0, &lambda_rho(&b).1));
        if equivalent(&a, &b) {
            prop_assert!(w.as_ref().unwrap().is_trivial());
        }
        if w.is_some() {
            prop_assert_eq!(a.prime_sets().0, b.prime_sets().0);
            prop_assert!(n_isomorphic(&a, &b));
        }
        prop_assert_eq!(self_dual(&a).is_some(), omega_isomorphic(&a, &a.star()).is_some());
        let (l, r) = lambda_rho(&a);
        prop_assert_eq!(equivalent(&a, &a.sharp()), l == r);
    }

    #[test]
    fn realization_round_trip(a in spec()) {
        let (l, r) = lambda_rho(&a);
        let b = realize(&l, &r).unwrap();
        prop_assert_eq!(lambda_rho(&b), (l, r));
    }

    #[test]
    fn companions_are_rings(a in spec()) {
        let (p, _) = a.prime_sets();
        if p.is_empty() {
            return Ok(());
        }
        let gens = match &p {
            PrimeSet::Finite(s) => s.iter().map(|&q| int(q as i64)).collect(),
            PrimeSet::Cofinite(_) => vec![int(2)],
        };
        let b = ring_companion(&a, &HSubgroup::new(gens).unwrap()).unwrap();
        prop_assert!(is_ring(&b));
        prop_assert_eq!(lambda_rho(&b).0, lambda_rho(&a).0);
    }

    #[test]
    fn action_law(k1 in -50i64..50, k2 in -50i64..50, e1 in -2i32..=2, e2 in -2i32..=2, x in digits_strategy()) {
        let a = SequenceSpec::constant(6).unwrap();
        let h = |e: i32| BigRational::from_integer(BigInt::from(2)).pow(e);
        let g1 = AffineElement::new(element(&a, k1, 1), h(e1)).unwrap();
        let g2 = AffineElement::new(element(&a, k2, 0), h(e2) * BigRational::from_integer(BigInt::from(3))).unwrap();
        let x = digits(&a, x.0, &x.1);
        let lhs = g1.compose(&g2).act(&x).unwrap();
        let rhs = g1.act(&g2.act(&x).unwrap()).unwrap();
        let j = lhs.precision().min(rhs.precision());
        prop_assert!(lhs.eq_mod(&rhs, j).unwrap());
        let q = element(&a, k1 + k2, 2);
        prop_assert_eq!(g1.compose(&g2).act_rational(&q), g1.act_rational(&g2.act_rational(&q)));
    }
}
