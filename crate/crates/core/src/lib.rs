//! p-adic height pairings on Tate curves.
//!
//! The crate evaluates the Mazur-Tate splitting of the Poincare biextension of
//! a Tate curve and the splitting cut out by the unit-root subspace of
//! Frobenius, and compares them. Supporting pieces: capped-precision `Q_p`
//! arithmetic, Frobenius matrices of good-reduction elliptic curves, a
//! log-pole de Rham reducer on split tori, and a global pairing over `Q`.

pub mod error;
pub mod padic;

pub use error::{Error, Result};
pub mod frobenius;
pub mod kedlaya;
pub mod derham;
pub mod curve;
pub mod tate;
pub mod splittings;
pub mod global;
