//! Exact scalar, polynomial and linear algebra: rationals, prime fields,
//! number fields, generic univariate/rational-function towers, integer and
//! rational matrices (SNF, HNF, determinant, characteristic polynomial, LLL),
//! and a small sparse multivariate polynomial type.

pub mod field;
pub mod intmat;
pub mod json;
pub mod lll;
pub mod matrix;
pub mod multipoly;
pub mod numberfield;
pub mod poly;
pub mod ratfunc;

pub use field::{FieldOps, Fp, Rational, QQ};
pub use matrix::Mat;
pub use numberfield::NumberField;
pub use ratfunc::{RatFunc, RatFuncField};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not square")]
    NonSquareMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("indefinite input where a definite form was required")]
    IndefiniteInput,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
