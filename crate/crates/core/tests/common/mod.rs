//! Random generators and brute-force oracles shared by the integration tests.
//! The oracles read sequence entries directly and never call the
//! supernatural-number code they are checking.
#![allow(dead_code)]

use std::collections::BTreeMap;

use adic_lab::lattice::{place_value, FracIdeal};
use adic_lab::sequence::catalog;
use adic_lab::{SequenceSpec, Tail};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ENTRIES: [u64; 6] = [2, 3, 5, 6, 10, 15];
pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tail(rng: &mut impl Rng) -> Tail {
    let pre = rng.gen_range(0..=3);
    let per = rng.gen_range(1..=3);
    let pick = |rng: &mut dyn rand::RngCore, n| -> Vec<u64> {
        (0..n).map(|_| *ENTRIES.choose(rng).unwrap()).collect()
    };
    Tail::new(pick(rng, pre), pick(rng, per))
}

pub fn random_spec(rng: &mut impl Rng) -> SequenceSpec {
    SequenceSpec::periodic(random_tail(rng), random_tail(rng)).unwrap()
}

/// The five named sequences with known classifications.
pub fn named_specs() -> Vec<SequenceSpec> {
    vec![
        catalog::constant(2),
        catalog::three_at_zero(),
        catalog::three_at_negative(),
        catalog::two_then_three(),
        catalog::adeles(),
    ]
}

/// A random element `k·w_{-d}` of `N`.
pub fn random_n(rng: &mut impl Rng, spec: &SequenceSpec) -> BigRational {
    let d = rng.gen_range(0..4);
    let k: i64 = rng.gen_range(-60..=60);
    place_value(spec, -d) * BigRational::from_integer(k.into())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `v_p(n)` for a small integer.
pub fn vp(mut n: u64, p: u64) -> u64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Exponent of `p` along one direction, read off a long run of entries;
/// `None` when it keeps growing (infinite).
pub fn scan_exponent(spec: &SequenceSpec, p: u64, negative: bool) -> Option<u64> {
    const SPAN: i64 = 60;
    let idx = |k: i64| if negative { -1 - k } else { k };
    let first: u64 = (0..SPAN / 2).map(|k| vp(spec.entry(idx(k)), p)).sum();
    let second: u64 = (SPAN / 2..SPAN).map(|k| vp(spec.entry(idx(k)), p)).sum();
    if second > 0 {
        None
    } else {
        Some(first)
    }
}

pub type Profile = BTreeMap<u64, (Option<u64>, Option<u64>)>;

/// `(λ(p), ρ(p))` for each relevant prime, by scanning.
pub fn profile(spec: &SequenceSpec) -> Profile {
    PRIMES
        .iter()
        .map(|&p| {
            (
                p,
                (scan_exponent(spec, p, false), scan_exponent(spec, p, true)),
            )
        })
        .collect()
}

fn add(e: Option<u64>, k: i64) -> Option<i64> {
    e.map(|v| v as i64 + k)
}

/// Brute-force `(p, q)` search, exponents in `[0, 5]` at each relevant prime:
/// `pλ_a = qλ_b` and `qρ_a = pρ_b`.
pub fn omega_oracle(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    let (pa, pb) = (profile(a), profile(b));
    exponent_search(|p, e_p, e_q| {
        let (la, ra) = pa[&p];
        let (lb, rb) = pb[&p];
        add(la, e_p) == add(lb, e_q) && add(ra, e_q) == add(rb, e_p)
    })
}

/// Brute-force search for `pλ = qρ`.
pub fn self_dual_oracle(a: &SequenceSpec) -> bool {
    let pa = profile(a);
    exponent_search(|p, e_p, e_q| {
        let (l, r) = pa[&p];
        add(l, e_p) == add(r, e_q)
    })
}

/// Primes are independent, so the search splits into one search per prime.
fn exponent_search(ok: impl Fn(u64, i64, i64) -> bool) -> bool {
    PRIMES
        .iter()
        .all(|&p| (0..=5).any(|e_p| (0..=5).any(|e_q| ok(p, e_p, e_q))))
}

fn partial_products(spec: &SequenceSpec, negative: bool, n: i64) -> Vec<BigUint> {
    let mut acc = BigUint::one();
    let mut out = Vec::new();
    for k in 0..n {
        acc *= spec.entry(if negative { -1 - k } else { k });
        out.push(acc.clone());
    }
    out
}

/// Each partial product of `a` divides one of `b`, and conversely.
fn cofinal(a: &SequenceSpec, b: &SequenceSpec, negative: bool) -> bool {
    let pa = partial_products(a, negative, 30);
    let pb = partial_products(b, negative, 120);
    pa.iter().all(|x| pb.iter().any(|y| (y % x).is_zero()))
}

/// `a ∼ b` by comparing which lattice ideals `U_j` each chain reaches.
pub fn equivalent_oracle(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    cofinal(a, b, false) && cofinal(b, a, false) && cofinal(a, b, true) && cofinal(b, a, true)
}

/// Membership in `N` by scanning denominators of the negative tail.
pub fn in_n_oracle(spec: &SequenceSpec, q: &BigRational) -> bool {
    let den = q.denom().magnitude().clone();
    partial_products(spec, true, 60)
        .iter()
        .any(|w| (w % &den).is_zero())
}

/// A random ideal `(m/n)Z` in the lattice: `m` divides `a_0⋯a_{j-1}` and `n`
/// divides `a_{-1}⋯a_{-k}`.
pub fn random_ideal(rng: &mut impl Rng, spec: &SequenceSpec) -> FracIdeal {
    let j = rng.gen_range(0..4);
    let k = rng.gen_range(0..4);
    let m: u64 = (0..j).map(|i| random_divisor(rng, spec.entry(i))).product();
    let n: u64 = (0..k)
        .map(|i| random_divisor(rng, spec.entry(-1 - i)))
        .product();
    FracIdeal::new(m, n).unwrap()
}

fn random_divisor(rng: &mut impl Rng, e: u64) -> u64 {
    let divisors: Vec<u64> = (1..=e).filter(|d| e.is_multiple_of(*d)).collect();
    *divisors.choose(rng).unwrap()
}

/// `|I/hI|` for a positive integer `h`, by listing the residues of the first
/// `2h` multiples of the generator.
pub fn coset_count(ideal: &FracIdeal, h: u64) -> u64 {
    let g = ideal.generator();
    let hg = &g * BigRational::from_integer(BigInt::from(h));
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..(2 * h) as i64 {
        let t = &g * BigRational::from_integer(i.into());
        let r = (&t / &hg).floor();
        let rem = t - r * &hg;
        seen.insert(rem);
    }
    seen.len() as u64
}
