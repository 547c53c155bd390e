use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar used for weights, action matrices and polynomial
/// coefficients. Implemented for the machine integers and `BigInt`.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer does not fit the scalar type")
    }

    /// Addition that refuses to wrap.
    fn add_exact(&self, other: &Self) -> Self {
        self.checked_add(other)
            .unwrap_or_else(|| panic!("scalar overflow in {self} + {other}"))
    }

    fn mul_exact(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .unwrap_or_else(|| panic!("scalar overflow in {self} * {other}"))
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_ops() {
        assert_eq!(3i64.add_exact(&4), 7);
        assert_eq!(BigInt::from(6).mul_exact(&BigInt::from(7)), BigInt::from(42));
    }

    #[test]
    #[should_panic(expected = "scalar overflow")]
    fn overflow_is_loud() {
        let _ = i8::MAX.add_exact(&1);
    }
}
