//! Which edits to a sequence keep Ω up to isomorphism.

use adic_lab::classify::{sequence_surgery, SurgeryOp};
use adic_lab::sequence::catalog::*;

fn main() {
    let cases = [
        ("Q_2", constant(2), SurgeryOp::Merge { i: 0 }),
        (
            "constant 6",
            constant(6),
            SurgeryOp::Factor { i: 1, c: 2, d: 3 },
        ),
        ("three at zero", three_at_zero(), SurgeryOp::Swap { i: -1 }),
        ("three at zero", three_at_zero(), SurgeryOp::Shift { n: 2 }),
        ("three at zero", three_at_zero(), SurgeryOp::Remove { i: 0 }),
        ("Q_2", constant(2), SurgeryOp::Insert { i: 1, c: 3 }),
        ("two then three", two_then_three(), SurgeryOp::Reflect),
    ];
    for (name, a, op) in cases {
        let (b, preserved) = sequence_surgery(&a, op).unwrap();
        println!(
            "{name:<14} {op:?}: {:?} -> {:?}, preserved = {preserved}",
            a.window(-3, 4),
            b.window(-3, 4)
        );
    }
}
