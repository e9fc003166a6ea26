//! Comparing sequences and reading off ring structure.

use adic_lab::classify::{
    is_integral_domain, maximal_open_ring, ring_companion, ClassificationReport, PairReport,
};
use adic_lab::dynamics::HSubgroup;
use adic_lab::rational::int;
use adic_lab::sequence::catalog::*;

fn main() {
    let (a, b) = (three_at_zero(), three_at_negative());
    println!(
        "{}",
        serde_json::to_string_pretty(&PairReport::new(&a, &b)).unwrap()
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&ClassificationReport::new(&a)).unwrap()
    );

    let r = maximal_open_ring(&b);
    println!(
        "three at -1: ring = {}, maximal ring over P = {}",
        r.is_whole, r.p
    );
    let c = ring_companion(&b, &HSubgroup::new(vec![int(2)]).unwrap()).unwrap();
    println!("ring companion: {}", c.to_json());

    for n in [2, 4, 6, 9] {
        println!(
            "constant {n}: integral domain over {:?}",
            is_integral_domain(&constant(n))
        );
    }
}
