//! Sequences, their reflections, and the invariants λ, ρ, P, Q.

use adic_lab::sequence::catalog::*;
use adic_lab::supernatural::lambda_rho;

fn main() {
    for (name, a) in [
        ("Q_2", constant(2)),
        ("three at zero", three_at_zero()),
        ("three at -1", three_at_negative()),
        ("two then three", two_then_three()),
        ("adeles", adeles()),
    ] {
        let (lambda, rho) = lambda_rho(&a);
        let (p, q) = a.prime_sets();
        println!("{name}");
        println!("  a_-3..a_3  {:?}", a.window(-3, 4));
        println!("  star       {:?}", a.star().window(-3, 4));
        println!("  sharp      {:?}", a.sharp().window(-3, 4));
        println!("  lambda = {lambda}, rho = {rho}");
        println!("  P = {p}, Q = {q}");
    }
    println!("{}", three_at_zero().to_json());
}
