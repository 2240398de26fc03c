//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("minimal polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible: {0}")]
    ReducibleDetected(String),
    #[error("degree {0} outside the supported range 1..=6")]
    UnsupportedDegree(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("Pfister slot must be nonzero")]
    ZeroSlot,
    #[error("diagonal entries must be nonzero")]
    ZeroEntry,
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("operation is only defined over the rational base field")]
    NonRationalField,
    #[error("operands belong to different quaternion algebras")]
    AlgebraMismatch,
    #[error("quaternion is not pure")]
    NotPure,
    #[error("pure quaternion is not invertible")]
    NotInvertible,
    #[error("ordering lies in the wrong stratum for this signature map")]
    WrongStratum,
    #[error("a reference form is required at split ordering {0}")]
    MissingReference(usize),
    #[error("reference form is degenerate at ordering {0}")]
    DegenerateReference(usize),
    #[error("polarization does not cover ordering {0}")]
    PartialPolarization(usize),
    #[error("sign function does not cover ordering {0} of the polarization domain")]
    DomainMismatch(usize),
    #[error("search budget of {budget} candidates exhausted")]
    SearchBudgetExceeded { budget: usize },
    #[error("spectrum label prime must be 0 or an odd prime, got {0}")]
    InvalidSpectrumPrime(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
