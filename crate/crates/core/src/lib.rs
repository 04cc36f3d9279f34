//! Exact computations with cyclotomic Hecke algebras of type G(l,1,n):
//! seminormal forms, deformed KLR generators, Gram determinants and the
//! graded cellular bases built from them.

pub mod graded;
pub mod gram;
pub mod klr;
pub mod report;
pub mod runner;
pub mod scalar;
pub mod seminormal;
pub mod tableaux;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid multipartition: {0}")]
    InvalidMultipartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("tableau is not standard: {0}")]
    NotStandard(String),
    #[error("charge does not separate standard tableaux: {0}")]
    ChargeNotSeparating(String),
    #[error("separation failure: {0}")]
    SeparationFailure(String),
    #[error("residue condition violated: {0}")]
    ResidueConditionViolated(String),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("not integral: {0}")]
    NotIntegral(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("cannot factor: {0}")]
    ZeroInput(String),
    #[error("not rational: {0}")]
    NotRational(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pole at x = 0: {0}")]
    PoleAtSpecialization(String),
    #[error("not p-integral: {0}")]
    NotPIntegral(String),
    #[error("elimination did not terminate: {0}")]
    NonTermination(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
