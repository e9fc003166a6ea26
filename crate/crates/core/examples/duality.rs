//! Pairings with the reflected sequences and the annihilator of `O_j`.

use adic_lab::duality::{
    annihilator_level, pair_general, pair_sharp, pair_star, verify_annihilator,
};
use adic_lab::rational::{int, rat};
use adic_lab::sequence::catalog::*;
use adic_lab::{AdicApprox, Flavor};

fn main() {
    let a = three_at_zero();
    let star = a.star();
    let sharp = a.sharp();
    let e = |s, q| AdicApprox::embed(s, &q, 24).unwrap();

    println!(
        "<1, 1>*       = {}",
        pair_star(&e(&a, int(1)), &e(&star, int(1))).unwrap()
    );
    println!(
        "<1/2, 5/4>*   = {}",
        pair_star(&e(&a, rat(1, 2)), &e(&star, rat(5, 4))).unwrap()
    );
    println!(
        "<1/2, 1/2>#   = {}",
        pair_sharp(&e(&a, rat(1, 2)), &e(&sharp, rat(1, 2))).unwrap()
    );
    let b = a.shift(2);
    println!(
        "<1, 1>^(2)    = {}",
        pair_general(2, &e(&a, int(1)), &e(&b, int(1))).unwrap()
    );

    for j in -2..=2 {
        let level = annihilator_level(j, Flavor::Star);
        let ok = verify_annihilator(&a, j, Flavor::Star, 6).unwrap();
        println!("annihilator of O_{j} is O*_{level}: {ok}");
    }
}
