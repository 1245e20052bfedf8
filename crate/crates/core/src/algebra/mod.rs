//! Coordinate algebra: prime-power fields and quasifields.

mod field;
mod quasifield;

pub use field::{is_prime, prime_power, FieldOp, FiniteField, MAX_FIELD_ORDER};
pub use quasifield::{NonFieldWitness, Quasifield, QuasifieldKind, MAX_HALL_BASE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("degree {e} out of range for characteristic {p}")]
    DegreeOutOfRange { p: u32, e: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element {value} outside the field of order {order}")]
    Domain { value: u64, order: u64 },
    #[error("binary operation needs a second operand")]
    MissingOperand,
    #[error("quasifield order {0} out of range")]
    OrderOutOfRange(u64),
    #[error("invalid quasifield: {0}")]
    InvalidQuasifield(String),
}
