//! Exact arithmetic: big rationals, cyclotomic fields and matrices over them.

mod cyclotomic;
mod field;
mod matrix;

pub use cyclotomic::Cyclotomic;
pub use field::{cyclotomic_polynomial, CyclotomicField, DEFAULT_CONDUCTOR_CAP};
pub use matrix::CycMatrix;

use num_bigint::BigInt;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {requested} exceeds the configured cap {cap}")]
    ConductorOverflow { requested: u32, cap: u32 },
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("cannot lift an element of conductor {from} to conductor {to}")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix")]
    Singular,
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    use num_integer::Integer;
    a.lcm(&b)
}
