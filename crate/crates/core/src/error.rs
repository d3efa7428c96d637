use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names are part of the machine-readable CLI surface, so keep them stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by an element whose known digits are all zero")]
    DivisionByIndistinguishableZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("element is not a p-adic unit")]
    NotAUnit,
    #[error("seed is not a simple root modulo p")]
    NonSimpleRoot,
    #[error("Frobenius module is not ordinary: slope-0 multiplicity {found}, expected {expected}")]
    NotOrdinary { found: usize, expected: usize },
    #[error("Hodge subspace meets the unit-root subspace")]
    DegenerateFiltration,
    #[error("semiabelian diagram inconsistent: {0}")]
    DiagramInconsistent(String),
    #[error("curve has bad reduction at p")]
    BadReduction,
    #[error("p = 2 (or another unsupported small prime) is not supported here")]
    EvenPrimeUnsupported,
    #[error("form is not closed")]
    NotClosed,
    #[error("form is not logarithmic: {0}")]
    NotLogarithmic(String),
    #[error("point is the identity class")]
    IdentityPoint,
    #[error("biextension points lie over different fibres")]
    IncompatibleFibers,
    #[error("biextension point is not in the formal part")]
    NotInFormalPart,
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
    #[error("unit-root constraint system is inconsistent or underdetermined: {0}")]
    ConstraintInconsistent(String),
    #[error("supports of divisor and cycle intersect")]
    SupportsIntersect,
    #[error("curve does not have split multiplicative reduction at p: {0}")]
    NotMultiplicative(String),
    #[error("evaluation point lies on the support of the function")]
    SupportHit,
    #[error("no auxiliary divisor avoids the supports")]
    DivisorChoiceUnavailable,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
