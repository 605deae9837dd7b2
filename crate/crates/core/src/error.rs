use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not divisible: nonzero remainder {remainder}")]
    NotDivisible { remainder: String },

    #[error("{what} is not a unit in the coefficient ring")]
    NonUnit { what: &'static str },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("not divisible by x: constant term is {constant}")]
    NotDivisibleByX { constant: String },

    #[error("series has nonzero constant term {constant}")]
    NonZeroConstant { constant: String },

    #[error("series constant term must be 1, found {constant}")]
    ConstantNotOne { constant: String },

    #[error("series of order {order} is too short for this operation")]
    OrderTooSmall { order: usize },

    #[error("k must be nonzero")]
    ZeroK,

    #[error("{0}")]
    InvalidArgument(String),

    #[error("not a contraction: {0}")]
    NotContraction(String),

    #[error("Drake divisibility violated at n={n}: remainder {remainder}")]
    DrakeDivisibility { n: usize, remainder: String },

    #[error("oracle scale exceeded: {m} vertices, cap is {cap}")]
    OracleScale { m: usize, cap: usize },

    #[error("invalid Prüfer sequence: {0}")]
    InvalidPrufer(String),
}
