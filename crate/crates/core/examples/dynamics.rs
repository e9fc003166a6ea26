//! The ax+b action: composition, contraction, fixed points, modular index.

use adic_lab::dynamics::{
    contraction_witness, fixed_point_in_n, haar_index, AffineElement, HSubgroup,
};
use adic_lab::rational::{int, rat};
use adic_lab::sequence::catalog::*;
use adic_lab::{AdicApprox, FracIdeal};

fn main() {
    let q2 = constant(2);
    let g = AffineElement::new(int(1), int(2)).unwrap();
    println!("g = {g}, g·g = {}, g⁻¹ = {}", g.compose(&g), g.inverse());
    let x = AdicApprox::embed(&q2, &int(3), 8).unwrap();
    println!("g·3 = {}", g.act(&x).unwrap());

    let h = HSubgroup::new(vec![rat(1, 2)]).unwrap();
    let w = contraction_witness(&q2, &h, &int(5), &FracIdeal::integers()).unwrap();
    println!("contracts 5 + Z into 5 + 2Z: {w}");

    for g in [g.clone(), AffineElement::new(int(1), int(4)).unwrap()] {
        let fixed = serde_json::to_string(&fixed_point_in_n(&q2, &g)).unwrap();
        println!("fixed points of {g} in N: {fixed}");
    }

    for h in [int(2), rat(1, 8), int(16)] {
        println!("δ({h}) = {}", haar_index(&q2, &h).unwrap());
    }
}
