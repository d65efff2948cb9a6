//! Dimension and speciality of linear systems of hypersurfaces with
//! prescribed multiple base points on `(P^1)^n`.
//!
//! A system `L_(d_1,...,d_n)(m_1,...,m_r)` is modelled as a divisor class on
//! the blow-up of `(P^1)^n` at `r` points ([`DivisorClassY`]). The crate
//! provides:
//!
//! - [`lattice`]: the Picard lattices of the blow-ups of `(P^1)^n` and `P^n`,
//!   their intersection forms and Picard-Lefschetz reflections;
//! - [`weyl`]: reduction to standard form by Weyl reflections and the
//!   lattice isometry between the two blow-ups;
//! - [`dims`]: virtual, expected and fiber dimension counts;
//! - [`interp`]: a finite-field interpolation oracle and the exact monomial
//!   description of systems through at most two points;
//! - [`degen`]: the speciality-by-degeneration prover and the evaluator for
//!   the quadric conjecture on `(P^1)^3`;
//! - [`notation`]: the `(d_1,...,d_n)(m_1^e_1,...)` text form.
//!
//! Counts are reported both as section counts (`*count`, the affine
//! dimension of the space of polynomials) and as projective dimensions
//! (`*dim = *count - 1`).

pub mod degen;
pub mod dims;
mod error;
pub mod interp;
pub mod lattice;
pub mod notation;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{DivisorClassX, DivisorClassY, Root};
