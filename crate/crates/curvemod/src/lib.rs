//! Invariants, normal forms and moduli decision procedures for divisors on
//! the projective line and plane algebraic curves, in exact arithmetic.

pub mod arith;
pub mod cli;
pub mod cubic;
pub mod divisor;
pub mod flex;
pub mod projective;
pub mod realcurves;
pub mod singularity;
pub mod stabilizer;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("zero form")]
    ZeroForm,
    #[error("degree too low: need at least {need}, got {got}")]
    DegreeTooLow { need: u32, got: u32 },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("extension too large: {0}")]
    ExtensionTooLarge(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("fewer than three distinct points")]
    TooFewDistinct,
    #[error("cross-ratio must avoid 0, 1 and infinity")]
    DegenerateRho,
    #[error("degree must be odd")]
    EvenDegree,
    #[error("a point has multiplicity above half the degree")]
    MaxMultTooLarge,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("a and b are both zero")]
    BothZero,
    #[error("point is not a flex")]
    NotAFlex,
    #[error("form is not irreducible")]
    NotIrreducible,
    #[error("wrong singularity type: {0}")]
    WrongSingularityType(String),
    #[error("curve contains a line")]
    ContainsLine,
    #[error("curve has a multiple component")]
    MultipleComponent,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("curves share a component")]
    CommonComponent,
    #[error("singular point is not isolated")]
    NonIsolated,
    #[error("parity violation: mu = {mu}, b = {b}")]
    ParityViolation { mu: u64, b: u64 },
    #[error("form is not squarefree")]
    NotSquarefree,
    #[error("negative geometric genus")]
    NegativeGenus,
    #[error("eigenvalues are not in the coefficient field")]
    NotInTower,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no such automorphism for n = {n}, p = {p}")]
    InfeasiblePair { n: u64, p: u64 },
    #[error("unknown type: {0}")]
    UnknownType(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Process exit code: 3 for honest failures of the exact/numeric
    /// machinery, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ExtensionTooLarge(_) | Error::NoConvergence(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
