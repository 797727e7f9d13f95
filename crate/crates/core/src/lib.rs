//! Exact instability and stratification computations for linear actions of
//! reductive groups, driven by root data.
//!
//! Everything is computed over the rationals. The main entry points are
//! [`stratification::enumerate_strata`], [`instability::torus_optimal`],
//! [`root_datum::mu_p`], and [`induction::induce`].

pub mod error;
pub mod exact_geometry;
pub mod induction;
pub mod instability;
pub mod rational;
pub mod realization;
pub mod relative_spec;
pub mod root_datum;
pub mod stratification;
pub mod weighted_module;

pub use error::{Error, Result};
pub use rational::{Rational, RationalMatrix, RationalVector};
