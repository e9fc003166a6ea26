//! Exact arithmetic, duality and classification for a-adic number systems.
//!
//! A system is fixed by a doubly infinite sequence `a` of integers `>= 2`
//! (see [`SequenceSpec`]). From it come the place values `w_i`, the lattice
//! chain `U_j = w_j Z`, the dense subring `N`, the compact group `Ω` of
//! digit expansions, and the locally compact `Ω`-extension used for the
//! duality and dynamics routines.

pub mod arithmetic;
pub mod classify;
pub mod cli;
pub mod duality;
pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod primes;
pub mod rational;
pub mod sequence;
pub mod supernatural;

pub use arithmetic::{AdicApprox, DigitWindow};
pub use duality::{Angle, Flavor};
pub use dynamics::{AffineElement, FixedPoints, HSubgroup};
pub use error::{AdicError, Result};
pub use lattice::FracIdeal;
pub use primes::PrimeSet;
pub use sequence::{SequenceSpec, Tail};
pub use supernatural::{Exponent, GenSupernatural, Witness};
