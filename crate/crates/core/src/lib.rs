//! Admissible prime pairs and Euclidean certificates for the imaginary
//! quartic Galois fields of class number one.
//!
//! The crate builds each field exactly (integral basis, structure constants),
//! finds its torsion and an infinite-order unit, and searches for two degree
//! one primes `pi_1, pi_2` whose residue groups modulo `pi_i^2` are hit by the
//! unit group in the way that makes `{pi_1, pi_2}` an admissible set. The
//! result is a JSON certificate that can be re-verified from scratch.

pub mod admissible;
pub mod cli;
pub mod element;
pub mod error;
pub mod field;
pub mod linalg;
pub mod ntheory;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod residue;
pub mod units;

pub use element::NFElement;
pub use error::{Error, Result};
pub use field::{build_biquadratic, build_cyclic_quartic, FieldKind, FieldSpec};
