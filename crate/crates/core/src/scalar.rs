//! Integer scalar abstraction shared by every engine.
//!
//! All computation in this crate is exact integer arithmetic. The engines are
//! generic over the scalar so that tables can be built over `i64` (the
//! default, see [`crate::Value`]) or `i128` when extra headroom is wanted.

use std::fmt;

use num_traits::{FromPrimitive, NumAssign, PrimInt, Signed};

/// Signed integer scalar used for sequence values, labels and indices.
///
/// Implemented by `i32`, `i64` and `i128` out of the box.
pub trait SequenceInt:
    PrimInt + Signed + NumAssign + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> SequenceInt for T where
    T: PrimInt
        + Signed
        + NumAssign
        + FromPrimitive
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Converts a `usize` index into the scalar, panicking when it does not fit.
pub(crate) fn from_usize<T: SequenceInt>(n: usize) -> T {
    T::from_usize(n).expect("index does not fit in the sequence scalar type")
}

/// Converts a `u32` parameter (shift or term count) into the scalar.
pub(crate) fn from_u32<T: SequenceInt>(n: u32) -> T {
    T::from_u32(n).expect("parameter does not fit in the sequence scalar type")
}

/// Converts a `u64` rank into the scalar, panicking when it does not fit.
pub(crate) fn from_u64<T: SequenceInt>(n: u64) -> T {
    T::from_u64(n).expect("rank does not fit in the sequence scalar type")
}

/// Exact `2^exp`. Panics when the power does not fit in `T`.
pub(crate) fn pow2<T: SequenceInt>(exp: u32) -> T {
    assert!(
        exp < max_pow2_exp::<T>(),
        "2^{exp} does not fit in the sequence scalar type"
    );
    T::one() << exp as usize
}

/// Largest exponent `e` such that `2^e` still fits in `T`.
pub(crate) fn max_pow2_exp<T: SequenceInt>() -> u32 {
    // one bit for the sign, one of headroom
    (std::mem::size_of::<T>() * 8) as u32 - 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow2_small_values() {
        assert_eq!(pow2::<i64>(0), 1);
        assert_eq!(pow2::<i64>(10), 1024);
        assert_eq!(pow2::<i32>(29), 1 << 29);
    }

    #[test]
    #[should_panic]
    fn pow2_overflow_panics() {
        pow2::<i32>(31);
    }
}
