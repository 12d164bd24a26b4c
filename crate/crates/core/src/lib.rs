//! Exact computation and cross-validation of the two-term meta-Fibonacci
//! family `h_s` and its relatives.
//!
//! Four mutually independent engines produce the same numbers:
//!
//! - [`recurrence`]: memoized forward iteration of the self-referencing
//!   recursions, with precise detection of sequence death;
//! - [`tree`]: label arithmetic and explicit snapshots of the infinite tree
//!   structure whose leaf counts realize `h_s`, including the chopping
//!   process;
//! - [`closedform`]: exact-integer closed forms (`ceil(n/2)`, the piecewise
//!   formula, the square-root form for `s = 1`);
//! - [`genfunc`]: truncated power series for the leaf indicator and leaf
//!   count.
//!
//! [`analysis`] compares the engines and verifies the counting laws;
//! [`bfile`] speaks the OEIS b-file interchange format.
//!
//! Everything is generic over a signed integer scalar (see
//! [`SequenceInt`]); [`Value`] fixes the default used by the type aliases
//! and the command-line front end.

pub mod analysis;
pub mod bfile;
pub mod closedform;
pub mod error;
pub mod genfunc;
pub mod recurrence;
mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use scalar::SequenceInt;

/// Default scalar: values and labels are 64-bit signed integers, with
/// lengths capped at 2^40 so linear growth can never overflow.
pub type Value = i64;

/// A computed sequence prefix over the default scalar.
pub type Table = recurrence::SequenceTable<Value>;

/// A recursion spec over the default scalar.
pub type Spec = recurrence::SequenceSpec<Value>;

/// A truncated power series over the default scalar.
pub type Series = genfunc::PowerSeries<Value>;

/// An explicit tree snapshot over the default scalar.
pub type Snapshot = tree::TreeSnapshot<Value>;
