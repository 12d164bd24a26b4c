//! Memoized forward evaluation of the self-referencing recursions.
//!
//! All four families share one evaluation loop: at index `n` each term reads
//! an already-computed entry at `p = n - inner_offset` and then the entry at
//! `q = n - (inner_offset - 1) - s - value(p)`. An argument is valid iff it
//! lies in `[1, n-1]`; the first violation stops the table and is reported as
//! sequence death rather than as an error.

use crate::error::{Error, Result};
use crate::scalar::{from_usize, SequenceInt};
use crate::Value;

/// Hard cap on table length. Values of the supported sequences grow at most
/// linearly in the index, so 64-bit arithmetic cannot overflow below this.
pub const MAX_LEN: u64 = 1 << 40;

/// Which self-referencing recursion drives the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `F(n) = F(n - F(n-1)) + F(n - 1 - F(n-2))`, two terms, no shift.
    Conolly,
    /// `T(n) = sum_{i<k} T(n - i - s - T(n-i-1))`, the k-term shifted form.
    GeneralizedConolly,
    /// `h(n) = sum_{j<k} h(n - 2j - s - h(n-2j-1))`, the even-index terms.
    EvenPart,
    /// `g(n) = sum_{j<k} g(n - (2j+1) - s - g(n-2j-2))`, the odd-index terms.
    OddPart,
}

impl Family {
    /// Number of summands, given the spec's `k`.
    fn term_count(self, k: u32) -> u32 {
        match self {
            Family::Conolly => 2,
            _ => k,
        }
    }

    /// Offset of the inner (self-referencing) argument of term `t`;
    /// the outer argument sits one closer to `n`.
    fn inner_offset(self, t: u32) -> u64 {
        match self {
            Family::Conolly | Family::GeneralizedConolly => t as u64 + 1,
            Family::EvenPart => 2 * t as u64 + 1,
            Family::OddPart => 2 * t as u64 + 2,
        }
    }

    /// Shift applied to the outer argument. The plain Conolly recursion has none.
    fn shift(self, s: u32) -> u32 {
        match self {
            Family::Conolly => 0,
            _ => s,
        }
    }
}

/// A recursion family together with its parameters and initial conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec<T = Value> {
    family: Family,
    s: u32,
    k: u32,
    initials: Vec<T>,
}

impl<T: SequenceInt> SequenceSpec<T> {
    /// Builds a spec with custom initial conditions.
    ///
    /// Initial values may be zero (the Conolly recursion is classically
    /// started from either `F(1) = 0` or `F(1) = 1`) but not negative.
    /// The recursion fires at index `len(initials) + 1`; initial conditions
    /// too short for the family's back-references simply make the sequence
    /// die at the first computed index.
    pub fn new(family: Family, s: u32, k: u32, initials: Vec<T>) -> Result<Self> {
        if initials.is_empty() {
            return Err(Error::InvalidSpec("initial conditions are empty".into()));
        }
        if initials.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidSpec(
                "initial conditions must be nonnegative".into(),
            ));
        }
        if family != Family::Conolly && k < 2 {
            return Err(Error::InvalidSpec(format!(
                "family {family:?} requires k >= 2, got {k}"
            )));
        }
        Ok(SequenceSpec {
            family,
            s,
            k: if family == Family::Conolly { 2 } else { k },
            initials,
        })
    }

    /// The canonical two-term even-part spec: `h_s(1..s+2) = 1`, `h_s(s+3) = 2`,
    /// recursion firing from `n = s + 4`.
    pub fn canonical_h(s: u32) -> Self {
        let mut initials = vec![T::one(); s as usize + 2];
        initials.push(T::one() + T::one());
        SequenceSpec {
            family: Family::EvenPart,
            s,
            k: 2,
            initials,
        }
    }

    /// The Jackson-Ruskey initial conditions for the generalized Conolly
    /// recursion: `T(j) = 1` for `j <= s+1` and `T(j) = j - s` for
    /// `s+2 <= j <= s+k`.
    pub fn jackson_ruskey(s: u32, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSpec(format!(
                "Jackson-Ruskey initial conditions require k >= 2, got {k}"
            )));
        }
        let mut initials = vec![T::one(); s as usize + 1];
        for j in s + 2..=s + k {
            initials.push(from_usize((j - s) as usize));
        }
        Ok(SequenceSpec {
            family: Family::GeneralizedConolly,
            s,
            k,
            initials,
        })
    }

    /// The original Conolly recursion with the two classical starts
    /// `(0, 1)` or `(1, 1)`.
    pub fn conolly(f1: T, f2: T) -> Result<Self> {
        Self::new(Family::Conolly, 0, 2, vec![f1, f2])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn initials(&self) -> &[T] {
        &self.initials
    }

    /// Evaluates the first `n_max` terms; see [`evaluate`].
    pub fn evaluate(&self, n_max: u64) -> Result<SequenceTable<T>> {
        evaluate(self, n_max)
    }
}

/// The spot where a recursion first demanded a value outside `[1, n-1]`.
///
/// Invariant: `offending_argument <= 0` or `offending_argument >= died_at`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeathReport {
    pub died_at: u64,
    pub offending_argument: i128,
}

/// Whether a table covers the full requested range or stopped early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableStatus {
    Alive,
    DiedAt(DeathReport),
}

/// An immutable computed prefix of one sequence, indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable<T = Value> {
    spec: SequenceSpec<T>,
    values: Vec<T>,
    status: TableStatus,
}

impl<T: SequenceInt> SequenceTable<T> {
    pub fn spec(&self) -> &SequenceSpec<T> {
        &self.spec
    }

    /// Number of computed terms; the table holds indices `1..=len`.
    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_alive(&self) -> bool {
        matches!(self.status, TableStatus::Alive)
    }

    /// Term at 1-based index `n`. Panics when `n` is outside the computed range.
    pub fn value(&self, n: u64) -> T {
        self.get(n)
            .unwrap_or_else(|| panic!("index {n} outside computed range 1..={}", self.len()))
    }

    pub fn get(&self, n: u64) -> Option<T> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize - 1).copied()
    }

    /// All computed terms; slot `i` holds the term at index `i + 1`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn last(&self) -> Option<T> {
        self.values.last().copied()
    }
}

/// Computes the table `spec(1..=n_max)` by forward iteration.
///
/// Initial conditions are copied verbatim; from `len(initials) + 1` on, each
/// term is the family's sum over already-computed entries. Death stops the
/// table at the first offending index and is recorded in the status, so the
/// returned table holds exactly the indices `1..died_at-1` in that case.
pub fn evaluate<T: SequenceInt>(spec: &SequenceSpec<T>, n_max: u64) -> Result<SequenceTable<T>> {
    if n_max == 0 {
        return Err(Error::ZeroLength);
    }
    if n_max > MAX_LEN {
        return Err(Error::LengthLimit(n_max));
    }

    let terms = spec.family.term_count(spec.k);
    let shift = spec.family.shift(spec.s) as i128;
    let mut values: Vec<T> = Vec::with_capacity(n_max.min(1 << 20) as usize);
    let mut status = TableStatus::Alive;

    'forward: for n in 1..=n_max {
        if n as usize <= spec.initials.len() {
            values.push(spec.initials[n as usize - 1]);
            continue;
        }
        let mut acc = T::zero();
        for t in 0..terms {
            let inner_offset = spec.family.inner_offset(t);
            // inner argument p = n - inner_offset, must land in [1, n-1]
            let p = n as i128 - inner_offset as i128;
            if p < 1 {
                status = TableStatus::DiedAt(DeathReport {
                    died_at: n,
                    offending_argument: p,
                });
                break 'forward;
            }
            let inner_value = values[p as usize - 1];
            // outer argument q = n - (inner_offset - 1) - shift - value(p)
            let q = n as i128
                - (inner_offset as i128 - 1)
                - shift
                - inner_value.to_i128().expect("scalar fits i128");
            if q < 1 || q >= n as i128 {
                status = TableStatus::DiedAt(DeathReport {
                    died_at: n,
                    offending_argument: q,
                });
                break 'forward;
            }
            acc = acc
                .checked_add(&values[q as usize - 1])
                .ok_or(Error::Overflow(n))?;
        }
        values.push(acc);
    }

    if let TableStatus::DiedAt(report) = status {
        debug_assert!(
            report.offending_argument <= 0 || report.offending_argument >= report.died_at as i128
        );
    }
    Ok(SequenceTable {
        spec: spec.clone(),
        values,
        status,
    })
}
