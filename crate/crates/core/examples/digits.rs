//! Digit arithmetic: embedding rationals, carrying, and a torsion element.

use adic_lab::rational::rat;
use adic_lab::sequence::catalog::*;
use adic_lab::AdicApprox;

fn main() {
    let q2 = constant(2);
    let half = AdicApprox::embed(&q2, &rat(1, 2), 6).unwrap();
    let other = AdicApprox::embed(&q2, &rat(-3, 4), 6).unwrap();
    println!("1/2   = {half}");
    println!("-3/4  = {other}");
    println!("sum   = {}", half.add(&other).unwrap());
    println!(
        "-1/4  = {}",
        AdicApprox::embed(&q2, &rat(-1, 4), 6).unwrap()
    );

    // with a_0 = 3 and every other entry 2, x = 1 + 3 + 12 + 48 + ... has order 3
    let a = three_at_zero();
    let x = AdicApprox::from_digits(&a, 0, 12, |i| u64::from(i == 0 || i % 2 == 1)).unwrap();
    println!("x     = {x}");
    println!("2x    = {}", x.scalar_mul_int(2));
    println!("3x    = {}", x.scalar_mul_int(3));

    let y = x.scalar_mul(&rat(1, 4)).unwrap();
    println!("x/4   = {y}  (two digits of precision spent)");
}
