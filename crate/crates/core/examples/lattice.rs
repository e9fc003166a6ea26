//! The lattice of subgroups `(m/n)Z` and its interaction with the chain `U_j`.

use adic_lab::lattice::{
    cofinal_index, generalized_index, in_u, intersect, quotient_size, u_chain, FracIdeal,
};
use adic_lab::sequence::catalog::*;

fn main() {
    let a = three_at_zero();
    for j in 0..5 {
        println!("U_{j} = ({})Z", u_chain(&a, j));
    }
    let i: FracIdeal = "3/4".parse().unwrap();
    let k: FracIdeal = "2/3".parse().unwrap();
    println!("({i})Z in lattice: {}", in_u(&a, &i));
    println!("({k})Z in lattice: {}", in_u(&a, &k));
    println!("({i})Z ∩ 6Z = ({})Z", intersect(&i, &"6".parse().unwrap()));
    println!(
        "first U_j inside ({i})Z: j = {}",
        cofinal_index(&a, &i).unwrap()
    );
    println!(
        "|Z / 12Z| = {}",
        quotient_size(&FracIdeal::integers(), &"12".parse().unwrap()).unwrap()
    );
    println!(
        "[Z : (1/2)Z] = {}",
        generalized_index(&FracIdeal::integers(), &"1/2".parse().unwrap())
    );
}
