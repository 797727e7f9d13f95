//! Reference computations that share no code with the engine: partition
//! combinatorics for nilpotent orbits, a brute-force min-norm solver, and
//! a finite-field instability search.

pub mod gf64;
pub mod min_norm;
pub mod partitions;

use num_rational::BigRational;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}
