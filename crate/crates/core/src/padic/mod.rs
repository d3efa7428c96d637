//! Capped-precision p-adic numbers and the linear algebra built on them.

pub mod element;
pub mod hensel;
pub mod log;
pub mod matrix;
pub mod poly;
pub mod series;
pub mod teichmuller;

pub use element::{Padic, PadicJson};
pub use hensel::hensel_root;
pub use log::{log_unit, LogBranch, RhoFunctional, EXACT};
pub use matrix::PadicMatrix;
pub use poly::PadicPoly;
pub use series::PadicSeries;
pub use teichmuller::teichmuller;

/// Digits withheld from every equality check.
pub const COMPARISON_BUFFER: i64 = 5;
