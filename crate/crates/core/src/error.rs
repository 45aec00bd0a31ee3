use thiserror::Error;

use crate::space::Parity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid scalar: zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("missing value for variable `{0}`")]
    MissingVariable(String),
    #[error("polynomial variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("a graded space needs positive dimension")]
    EmptySpace,
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("coderivations live over different spaces")]
    SpaceMismatch,
    #[error("coderivation is not parity-homogeneous; split it with `split_parity` first")]
    Inhomogeneous,
    #[error("expected an odd coderivation, found {0:?}")]
    NotOdd(Parity),
    #[error("expected an even coderivation, found {0:?}")]
    NotEven(Parity),
    #[error("coderivation is not a codifferential ({0} nonzero terms in [d,d])")]
    NotCodifferential(usize),
    #[error("expected terms of arity {expected}, found arity {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("target has parity {found:?} but the image of D lies in parity {expected:?}")]
    ParityMismatch { expected: Parity, found: Parity },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not preserve parity at entry ({row}, {col})")]
    ParityMixing { row: usize, col: usize },
    #[error("matrix has wrong shape: expected {expected_rows}x{expected_cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("shift map is not nilpotent")]
    NotNilpotent,
    #[error("term {term} lies outside the {sector} sector")]
    Sector { term: String, sector: String },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{0}` needs projective parameters (p:q)")]
    MissingParams(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid deformation basis: {0}")]
    BadBasis(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
