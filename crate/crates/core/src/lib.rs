//! Exact arithmetic for stable-rank computations: power residue symbols over
//! the Gaussian and Eisenstein integers, the Bass–Milnor–Serre invariant of
//! relative SL₂, unimodular rows in Z[x] and brute force over Z/n.

pub mod bms;
pub mod cli;
pub mod decimal;
pub mod error;
pub mod exact_arith;
pub mod finite_rings;
pub mod intpoly;
pub mod quad;
pub mod residue;
pub mod stability;

pub use error::{Error, Result};
pub use exact_arith::{Int, Rational};
pub use intpoly::{IntPoly, PolyRow};
pub use quad::{PrincipalIdeal, QuadInt, RingKind};
pub use residue::RootOfUnity;
