//! The global pairing over `Q` for an elliptic curve with split
//! multiplicative reduction at `p`.

pub mod formal;
pub mod height;
pub mod local;
pub mod miller;
pub mod rational;
pub mod rho;
