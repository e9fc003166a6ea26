//! Decision procedures for equivalence and isomorphism of a-adic systems,
//! the ring criterion, and sequence surgery.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::HSubgroup;
use crate::error::{AdicError, Result};
use crate::lattice::{in_u, FracIdeal};
use crate::primes::{factorize, PrimeSet};
use crate::sequence::{SequenceSpec, Tail, MAX_ENTRY};
use crate::supernatural::{
    canonical_pair_form, equivalent_pair, equivalent_single, lambda_rho, CanonicalPair,
    GenSupernatural, Witness,
};

/// `a ∼ b`: `λ_a = λ_b` and `ρ_a = ρ_b`.
pub fn equivalent(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    lambda_rho(a) == lambda_rho(b)
}

/// `Ω_a ≅ Ω_b`: a witness `(p, q)` with `pλ_a = qλ_b` and `qρ_a = pρ_b`.
pub fn omega_isomorphic(a: &SequenceSpec, b: &SequenceSpec) -> Option<Witness> {
    let (la, ra) = lambda_rho(a);
    let (lb, rb) = lambda_rho(b);
    equivalent_pair(&la, &ra, &lb, &rb)
}

pub fn delta_isomorphic(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    lambda_rho(a).0 == lambda_rho(b).0
}

pub fn n_equal(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    lambda_rho(a).1 == lambda_rho(b).1
}

/// `N_a = r·N_b` for some positive rational `r`.
pub fn n_isomorphic(a: &SequenceSpec, b: &SequenceSpec) -> bool {
    equivalent_single(&lambda_rho(a).1, &lambda_rho(b).1).is_some()
}

/// Witness `(p, q)` with `pλ = qρ`.
pub fn self_dual(a: &SequenceSpec) -> Option<Witness> {
    let (lambda, rho) = lambda_rho(a);
    equivalent_single(&lambda, &rho)
}

/// Ring criterion: at every prime `ρ(p) = 0`, or `ρ(p) = λ(p) = ∞`.
pub fn is_ring(a: &SequenceSpec) -> bool {
    let (lambda, rho) = lambda_rho(a);
    rho.finite_part().is_empty() && rho.inf_primes().is_subset(lambda.inf_primes())
}

fn prime_power_entries(factors: &BTreeMap<u64, u64>) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (&p, &e) in factors {
        if p > MAX_ENTRY {
            return Err(AdicError::OutOfRepresentableClass(format!(
                "prime {p} exceeds the entry bound"
            )));
        }
        let mut left = e;
        while left > 0 {
            let mut chunk = p;
            left -= 1;
            while left > 0 && chunk * p <= MAX_ENTRY {
                chunk *= p;
                left -= 1;
            }
            out.push(chunk);
        }
    }
    Ok(out)
}

fn realize_tail(s: &GenSupernatural) -> Result<Tail> {
    let primes = match s.inf_primes() {
        PrimeSet::Finite(ps) => ps,
        PrimeSet::Cofinite(_) => {
            return Err(AdicError::OutOfRepresentableClass(
                "cofinite infinity set on one side only".into(),
            ))
        }
    };
    let period = prime_power_entries(&primes.iter().map(|&p| (p, 1)).collect())?;
    Ok(Tail::new(prime_power_entries(s.finite_part())?, period))
}

/// A concrete sequence with the given `(λ, ρ)`.
///
/// Finite infinity sets become periods of primes with the finite exponents
/// in the preperiod. Cofinite sets are only representable when both sides are
/// infinite at every prime, giving the adele sequence.
pub fn realize(lambda: &GenSupernatural, rho: &GenSupernatural) -> Result<SequenceSpec> {
    let all = PrimeSet::all();
    match (lambda.inf_primes(), rho.inf_primes()) {
        (l, r) if *l == all && *r == all => Ok(SequenceSpec::Increment {
            offset: 2,
            center: 0,
        }),
        (PrimeSet::Finite(_), PrimeSet::Finite(_)) => {
            SequenceSpec::periodic(realize_tail(rho)?, realize_tail(lambda)?)
        }
        _ => Err(AdicError::OutOfRepresentableClass(
            "cofinite infinity set with exclusions".into(),
        )),
    }
}

/// A ring `b` with `λ_b = λ_a` and `ρ_b` infinite exactly on `P_a`, so that
/// `S_b = S_a`. Generators of `H` must lie in `S_a`.
pub fn ring_companion(a: &SequenceSpec, h: &HSubgroup) -> Result<SequenceSpec> {
    h.validate(a)?;
    let (p, _) = a.prime_sets();
    if p.is_empty() {
        return Err(AdicError::EmptyP);
    }
    let b = match (a, p) {
        (SequenceSpec::Increment { .. }, _) => a.clone(),
        (SequenceSpec::EventuallyPeriodic { nonneg, .. }, PrimeSet::Finite(ps)) => {
            let period = prime_power_entries(&ps.iter().map(|&q| (q, 1)).collect())?;
            SequenceSpec::periodic(Tail::new(vec![], period), nonneg.clone())?
        }
        (_, PrimeSet::Cofinite(_)) => {
            return Err(AdicError::OutOfRepresentableClass(
                "cofinite P on an eventually periodic sequence".into(),
            ))
        }
    };
    h.validate(&b)?;
    Ok(b)
}

/// `Some(p)` when every entry is a power of the single prime `p`, in which
/// case the a-adic numbers are the field `Q_p`.
pub fn is_integral_domain(a: &SequenceSpec) -> Option<u64> {
    let entries = a.distinct_entries()?;
    let mut prime = None;
    for e in entries {
        let f = factorize(e);
        if f.len() != 1 {
            return None;
        }
        let p = *f.keys().next().expect("one factor");
        if prime.is_some_and(|q| q != p) {
            return None;
        }
        prime = Some(p);
    }
    prime
}

/// The maximal open subring `R`, the closure of `Z[1/p : p ∈ P]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalRing {
    #[serde(rename = "P")]
    pub p: PrimeSet,
    /// Primes `P ∪ Q` whose signed products `±r` act as automorphisms.
    pub aut_primes: PrimeSet,
    /// `R` is all of `Ω`, i.e. the a-adic numbers form a ring.
    pub is_whole: bool,
}

impl MaximalRing {
    /// Whether the lattice ideal `I` belongs to `U_P`: it lies in `U` and its
    /// denominator only involves primes of `P`.
    pub fn contains_ideal(&self, spec: &SequenceSpec, ideal: &FracIdeal) -> bool {
        in_u(spec, ideal) && self.p.supports(ideal.den())
    }
}

pub fn maximal_open_ring(a: &SequenceSpec) -> MaximalRing {
    let (p, q) = a.prime_sets();
    MaximalRing {
        aut_primes: p.union(&q),
        p,
        is_whole: is_ring(a),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum SurgeryOp {
    /// Replace `a_i = c·d` by the consecutive entries `c, d`.
    Factor {
        i: i64,
        c: u64,
        d: u64,
    },
    /// Replace `a_i, a_{i+1}` by their product.
    Merge {
        i: i64,
    },
    /// Interchange `a_i` and `a_{i+1}`.
    Swap {
        i: i64,
    },
    /// Translate: `b_i = a_{i+n}`.
    Shift {
        n: i64,
    },
    Remove {
        i: i64,
    },
    /// Insert `c` as the new `a_i`, pushing later entries away from 0.
    Insert {
        i: i64,
        c: u64,
    },
    /// Replace `a` by `a*`.
    Reflect,
}

/// Position of `a_i` inside its tail, and whether it is on the negative side.
fn locate(i: i64) -> (usize, bool) {
    if i >= 0 {
        (i as usize, false)
    } else {
        ((-1 - i) as usize, true)
    }
}

fn edit_tail(tail: &Tail, pos: usize, f: impl FnOnce(&mut Vec<u64>)) -> Tail {
    let (mut head, period) = tail.unroll(pos + 2);
    f(&mut head);
    Tail::new(head, period)
}

fn surgery_err(msg: String) -> AdicError {
    AdicError::InvalidSurgery(msg)
}

fn apply(neg: &Tail, nonneg: &Tail, op: SurgeryOp) -> Result<SequenceSpec> {
    let (mut neg, mut nonneg) = (neg.clone(), nonneg.clone());
    let side = |is_neg: bool,
                neg: &mut Tail,
                nonneg: &mut Tail,
                pos: usize,
                f: &mut dyn FnMut(&mut Vec<u64>)| {
        let t = if is_neg { neg } else { nonneg };
        *t = edit_tail(t, pos, f);
    };
    let mut failure = None;
    match op {
        SurgeryOp::Factor { i, c, d } => {
            let (pos, is_neg) = locate(i);
            side(is_neg, &mut neg, &mut nonneg, pos, &mut |h| {
                if c < 2 || d < 2 || c.checked_mul(d) != Some(h[pos]) {
                    failure = Some(format!(
                        "{c}·{d} is not a nontrivial factorization of {}",
                        h[pos]
                    ));
                    return;
                }
                // the tail runs outward, so on the negative side d comes first
                let pair = if is_neg { [d, c] } else { [c, d] };
                h.splice(pos..=pos, pair);
            });
        }
        SurgeryOp::Merge { i } => {
            if i == -1 {
                return Err(surgery_err("cannot merge across index 0".into()));
            }
            let (pos, is_neg) = locate(i);
            // on the negative side a_{i+1} sits just inside a_i
            let inner = if is_neg { pos - 1 } else { pos };
            side(is_neg, &mut neg, &mut nonneg, pos, &mut |h| match h[inner]
                .checked_mul(h[inner + 1])
                .filter(|&m| m <= MAX_ENTRY)
            {
                Some(m) => {
                    h.splice(inner..=inner + 1, [m]);
                }
                None => failure = Some("merged entry exceeds the entry bound".into()),
            });
        }
        SurgeryOp::Swap { i: -1 } => {
            neg = edit_tail(&neg, 0, |_| ());
            nonneg = edit_tail(&nonneg, 0, |_| ());
            std::mem::swap(&mut neg.preperiod[0], &mut nonneg.preperiod[0]);
        }
        SurgeryOp::Swap { i } => {
            let (pos, is_neg) = locate(i);
            let inner = if is_neg { pos - 1 } else { pos };
            side(is_neg, &mut neg, &mut nonneg, pos, &mut |h| {
                h.swap(inner, inner + 1)
            });
        }
        SurgeryOp::Remove { i } => {
            let (pos, is_neg) = locate(i);
            side(is_neg, &mut neg, &mut nonneg, pos, &mut |h| {
                h.remove(pos);
            });
        }
        SurgeryOp::Insert { i, c } => {
            if !(2..=MAX_ENTRY).contains(&c) {
                return Err(surgery_err(format!("entry {c} is out of range")));
            }
            let (pos, is_neg) = locate(i);
            side(is_neg, &mut neg, &mut nonneg, pos, &mut |h| {
                h.insert(pos, c)
            });
        }
        SurgeryOp::Shift { .. } | SurgeryOp::Reflect => unreachable!("handled by the caller"),
    }
    if let Some(msg) = failure {
        return Err(surgery_err(msg));
    }
    SequenceSpec::periodic(neg, nonneg)
}

/// Applies `op` and reports whether `Ω` survives up to isomorphism. The
/// answer is recomputed from the invariants of both sequences.
pub fn sequence_surgery(a: &SequenceSpec, op: SurgeryOp) -> Result<(SequenceSpec, bool)> {
    let b = match (a, op) {
        (_, SurgeryOp::Shift { n }) => a.translate(n),
        (_, SurgeryOp::Reflect) => a.star(),
        (SequenceSpec::Increment { .. }, _) => {
            return Err(AdicError::OutOfRepresentableClass(format!(
                "{op:?} on an increment sequence"
            )))
        }
        (SequenceSpec::EventuallyPeriodic { neg, nonneg }, op) => apply(neg, nonneg, op)?,
    };
    let preserved = omega_isomorphic(a, &b).is_some();
    Ok((b, preserved))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub self_dual: bool,
    pub is_ring: bool,
    pub is_integral_domain: bool,
}

/// Invariants of one sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub lambda: GenSupernatural,
    pub rho: GenSupernatural,
    pub canonical_pair: CanonicalPair,
    #[serde(rename = "P")]
    pub p: PrimeSet,
    #[serde(rename = "Q")]
    pub q: PrimeSet,
    pub flags: Flags,
    pub self_dual_witness: Option<Witness>,
    pub integral_domain_prime: Option<u64>,
}

impl ClassificationReport {
    pub fn new(a: &SequenceSpec) -> Self {
        let (lambda, rho) = lambda_rho(a);
        let (p, q) = a.prime_sets();
        let witness = self_dual(a);
        let prime = is_integral_domain(a);
        ClassificationReport {
            canonical_pair: canonical_pair_form(&lambda, &rho),
            lambda,
            rho,
            p,
            q,
            flags: Flags {
                self_dual: witness.is_some(),
                is_ring: is_ring(a),
                is_integral_domain: prime.is_some(),
            },
            self_dual_witness: witness,
            integral_domain_prime: prime,
        }
    }

    /// Re-derives the flags from the stored invariants.
    pub fn is_consistent(&self) -> bool {
        let ring = self.rho.finite_part().is_empty()
            && self.rho.inf_primes().is_subset(self.lambda.inf_primes());
        let dual = equivalent_single(&self.lambda, &self.rho);
        self.flags.is_ring == ring
            && self.flags.self_dual == dual.is_some()
            && self.self_dual_witness == dual
            && self.flags.is_integral_domain == self.integral_domain_prime.is_some()
    }
}

/// Comparison of two sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub equivalent: bool,
    pub omega_isomorphic: bool,
    pub omega_witness: Option<Witness>,
    pub delta_isomorphic: bool,
    pub n_equal: bool,
    pub n_isomorphic: bool,
}

impl PairReport {
    pub fn new(a: &SequenceSpec, b: &SequenceSpec) -> Self {
        let witness = omega_isomorphic(a, b);
        PairReport {
            equivalent: equivalent(a, b),
            omega_isomorphic: witness.is_some(),
            omega_witness: witness,
            delta_isomorphic: delta_isomorphic(a, b),
            n_equal: n_equal(a, b),
            n_isomorphic: n_isomorphic(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::sequence::catalog::*;
    use num_bigint::BigUint;

    fn w(p: u32, q: u32) -> Witness {
        Witness {
            p: BigUint::from(p),
            q: BigUint::from(q),
        }
    }

    #[test]
    fn named_pairs() {
        assert!(equivalent(&constant(2), &constant(4)));
        let (a, b) = (three_at_zero(), three_at_negative());
        let r = PairReport::new(&a, &b);
        assert!(!r.equivalent && r.omega_isomorphic && !r.n_equal && r.n_isomorphic);
        assert!(r.omega_witness.is_some());
        assert_eq!(omega_isomorphic(&a, &a), Some(w(1, 1)));
        assert_eq!(omega_isomorphic(&constant(2), &constant(3)), None);
        let r = PairReport::new(&constant(2), &constant(4));
        assert!(r.equivalent && r.delta_isomorphic && r.n_equal && r.n_isomorphic);
    }

    #[test]
    fn duality() {
        assert_eq!(self_dual(&constant(5)), Some(w(1, 1)));
        assert_eq!(self_dual(&three_at_zero()), Some(w(1, 3)));
        assert_eq!(self_dual(&two_then_three()), None);
    }

    #[test]
    fn rings() {
        assert!(is_ring(&adeles()));
        assert!(is_ring(&three_at_zero()));
        assert!(!is_ring(&three_at_negative()));
        let h = HSubgroup::new(vec![int(2)]).unwrap();
        let b = ring_companion(&three_at_negative(), &h).unwrap();
        assert!(is_ring(&b));
        let a = three_at_zero();
        assert!(equivalent(&ring_companion(&a, &h).unwrap(), &a));
        assert_eq!(ring_companion(&adeles(), &h).unwrap(), adeles());
        let none = HSubgroup::new(vec![]).unwrap();
        assert_eq!(
            ring_companion(&two_then_three(), &none),
            Err(AdicError::EmptyP)
        );
    }

    #[test]
    fn domains() {
        assert_eq!(is_integral_domain(&constant(2)), Some(2));
        assert_eq!(is_integral_domain(&constant(4)), Some(2));
        assert_eq!(is_integral_domain(&three_at_zero()), None);
        assert_eq!(is_integral_domain(&adeles()), None);
    }

    #[test]
    fn maximal_ring() {
        let r = maximal_open_ring(&constant(2));
        assert!(r.is_whole);
        assert_eq!(r.p, PrimeSet::finite([2]));
        let r = maximal_open_ring(&three_at_negative());
        assert!(!r.is_whole);
        let spec = three_at_negative();
        assert!(r.contains_ideal(&spec, &"1/2".parse().unwrap()));
        assert!(!r.contains_ideal(&spec, &"1/3".parse().unwrap()));
        let spec = two_then_three();
        let r = maximal_open_ring(&spec);
        assert!(r.p.is_empty());
        assert!(r.contains_ideal(&spec, &"6".parse().unwrap()));
        assert!(!r.contains_ideal(&spec, &"1/2".parse().unwrap()));
    }

    #[test]
    fn realization() {
        for a in [
            three_at_zero(),
            three_at_negative(),
            two_then_three(),
            adeles(),
        ] {
            let (l, r) = lambda_rho(&a);
            assert!(equivalent(&realize(&l, &r).unwrap(), &a));
        }
        let big: BTreeMap<u64, u64> = [(2, 70), (3, 1)].into();
        let l = GenSupernatural::new(big, PrimeSet::finite([5])).unwrap();
        let r = GenSupernatural::infinite_on(PrimeSet::finite([7])).unwrap();
        let b = realize(&l, &r).unwrap();
        assert_eq!(lambda_rho(&b), (l, r));
        let cof = GenSupernatural::infinite_on(PrimeSet::cofinite([2])).unwrap();
        assert!(matches!(
            realize(&cof, &cof),
            Err(AdicError::OutOfRepresentableClass(_))
        ));
    }

    #[test]
    fn surgery() {
        let q2 = constant(2);
        let (b, kept) = sequence_surgery(&q2, SurgeryOp::Merge { i: 0 }).unwrap();
        assert!(kept);
        assert_eq!(b.window(-2, 3), vec![2, 2, 4, 2, 2]);
        let (b, kept) = sequence_surgery(&q2, SurgeryOp::Insert { i: 1, c: 3 }).unwrap();
        assert!(!kept);
        assert_eq!(b.window(-1, 4), vec![2, 2, 3, 2, 2]);
        let a = three_at_zero();
        let (b, kept) = sequence_surgery(&a, SurgeryOp::Swap { i: 0 }).unwrap();
        assert!(kept);
        assert_eq!(b.window(-1, 3), vec![2, 2, 3, 2]);
        let (b, _) = sequence_surgery(&a, SurgeryOp::Swap { i: -1 }).unwrap();
        assert!(b.same_sequence(&three_at_negative()));
        let (b, kept) =
            sequence_surgery(&constant(6), SurgeryOp::Factor { i: -2, c: 2, d: 3 }).unwrap();
        assert!(kept);
        assert_eq!(b.window(-4, 1), vec![6, 2, 3, 6, 6]);
        let (b, kept) = sequence_surgery(&a, SurgeryOp::Remove { i: 0 }).unwrap();
        assert!(!kept);
        assert!(b.same_sequence(&constant(2)));
        let (_, kept) = sequence_surgery(&two_then_three(), SurgeryOp::Reflect).unwrap();
        assert!(!kept);
        let (_, kept) = sequence_surgery(&a, SurgeryOp::Shift { n: 3 }).unwrap();
        assert!(kept);
        assert!(matches!(
            sequence_surgery(&adeles(), SurgeryOp::Merge { i: 0 }),
            Err(AdicError::OutOfRepresentableClass(_))
        ));
        assert!(sequence_surgery(&q2, SurgeryOp::Factor { i: 0, c: 2, d: 2 }).is_err());
        assert!(sequence_surgery(&q2, SurgeryOp::Merge { i: -1 }).is_err());
    }

    #[test]
    fn negative_side_merge() {
        let a = SequenceSpec::periodic(Tail::new(vec![3, 5], vec![2]), Tail::constant(2)).unwrap();
        // a_{-1} = 3, a_{-2} = 5; merging them puts 15 at index -1
        let (b, kept) = sequence_surgery(&a, SurgeryOp::Merge { i: -2 }).unwrap();
        assert!(kept);
        assert_eq!(b.window(-3, 1), vec![2, 2, 15, 2]);
        let (b, _) = sequence_surgery(&a, SurgeryOp::Swap { i: -2 }).unwrap();
        assert_eq!(b.window(-3, 0), vec![2, 3, 5]);
    }

    #[test]
    fn reports() {
        let r = ClassificationReport::new(&three_at_zero());
        assert!(r.is_consistent());
        assert!(r.flags.self_dual && r.flags.is_ring && !r.flags.is_integral_domain);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            serde_json::from_str::<ClassificationReport>(&json).unwrap(),
            r
        );
        let pr = PairReport::new(&three_at_zero(), &three_at_negative());
        let json = serde_json::to_string(&pr).unwrap();
        assert_eq!(serde_json::from_str::<PairReport>(&json).unwrap(), pr);
    }
}
