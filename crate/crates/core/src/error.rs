use thiserror::Error;

use crate::scalar::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inner series has nonzero constant term {0}; composition is undefined")]
    NonzeroConstantTerm(Rational),

    #[error("series cannot be reverted: {0}")]
    NotRevertible(&'static str),

    #[error("the zero braid sum has no residue")]
    ZeroResidue,

    #[error("seed must have filtration order 1, found {0}")]
    BadSeedOrder(String),

    #[error("strengthening step {step} applied out of order: Z_{degree} = {value}, expected {expected}")]
    StepOutOfOrder {
        step: usize,
        degree: usize,
        value: Box<Rational>,
        expected: Box<Rational>,
    },

    #[error("pair expansion requires the seed tau, got {0}")]
    SeedNotTau(String),

    #[error("expanded braid sum is not antisymmetric under q <-> p (exponent {0})")]
    NotAntisymmetric(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix dimensions do not agree: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("entry ({row}, {col}) is outside a {dim}x{dim} matrix")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
