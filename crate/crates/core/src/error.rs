use thiserror::Error;

use crate::matrixgen::GeneratorRule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order {0}: n must be at least 2")]
    InvalidOrder(i64),

    #[error("order {n} exceeds the supported maximum of {max}")]
    OrderTooLarge { n: usize, max: usize },

    #[error("{}", precondition_message(*.rule, *.n))]
    Precondition { rule: GeneratorRule, n: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{what} = {value} is outside {range}")]
    Domain {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("orthogonal number {g} does not fit 4k - 2 - n for n = {n}")]
    FormulaMismatch { n: i64, g: i64 },

    #[error("inconsistent concurrence: r - (n - g)/4 is not an integer for n = {n}, r = {r}, g = {g}")]
    NonIntegralLambda { n: i64, r: i64, g: i64 },

    #[error("matrix is not symmetric: entry ({row},{col}) differs from its transpose")]
    NotSymmetric { row: usize, col: usize },

    #[error("concurrence diagonal is not constant (treatment {treatment})")]
    NonConstantDiagonal { treatment: usize },

    #[error("invalid matrix entry {value} at ({row},{col})")]
    InvalidEntry { row: usize, col: usize, value: i64 },

    #[error("usage: {0}")]
    Usage(String),

    #[error("json: {0}")]
    Json(String),
}

fn precondition_message(rule: GeneratorRule, n: usize) -> String {
    match rule {
        GeneratorRule::Type1Affine => format!("n must be prime for type 1 (got {n})"),
        GeneratorRule::Type2Product => format!("n+1 must be prime for type 2 (got n = {n})"),
        GeneratorRule::Type3CyclicSum => format!("n must be at least 2 for type 3 (got {n})"),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
