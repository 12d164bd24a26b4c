//! Cross-oracle comparison of the independent engines and exact counting
//! checks for the structural claims.

use std::collections::BTreeMap;

use crate::bfile::parse_bfile;
use crate::closedform::{h0, h1_closed, hs_piecewise, predicted_multiplicity};
use crate::error::{Error, Result};
use crate::genfunc::a_series;
use crate::recurrence::{SequenceSpec, SequenceTable, TableStatus};
use crate::scalar::{from_u32, from_u64, SequenceInt};
use crate::tree::leaf_count;
use crate::Value;

/// Genfunc coefficients participate in cross-checks up to this degree; the
/// quadratic convolution makes higher orders pointlessly slow.
pub const GENFUNC_CROSS_CHECK_ORDER: u64 = 2048;

/// Returns the first index `n` with `values[n+1] - values[n]` outside
/// `{0, 1}`, or `None` for a slowly growing table.
pub fn check_slow_growing<T: SequenceInt>(table: &SequenceTable<T>) -> Option<u64> {
    let values = table.values();
    for (offset, pair) in values.windows(2).enumerate() {
        let diff = pair[1] - pair[0];
        if diff < T::zero() || diff > T::one() {
            return Some(offset as u64 + 1);
        }
    }
    None
}

/// A complete value whose occurrence count differs from the prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityViolation<T> {
    pub value: T,
    pub expected: u64,
    pub actual: u64,
}

/// Occurrence counts of every complete value of a slowly growing table.
///
/// A value is complete once the last computed term strictly exceeds it:
/// monotonicity then rules out further occurrences beyond the prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyReport<T = Value> {
    pub s: u32,
    pub complete_up_to: T,
    pub counts: BTreeMap<T, u64>,
    pub violations: Vec<MultiplicityViolation<T>>,
}

/// Counts every complete value and flags counts that differ from
/// [`predicted_multiplicity`]. Errors when the table is not slowly growing,
/// since completeness relies on monotonicity.
pub fn frequency_report<T: SequenceInt>(table: &SequenceTable<T>) -> Result<FrequencyReport<T>> {
    if let Some(n) = check_slow_growing(table) {
        return Err(Error::NotSlowGrowing(n));
    }
    let s = table.spec().s();
    let last = table.last().expect("tables hold at least one term");
    let complete_up_to = last - T::one();
    let mut counts = BTreeMap::new();
    for &value in table.values() {
        if value <= complete_up_to {
            *counts.entry(value).or_insert(0u64) += 1;
        }
    }
    let violations = counts
        .iter()
        .filter(|&(&value, _)| value >= T::one())
        .filter_map(|(&value, &actual)| {
            let expected = predicted_multiplicity(s, value);
            (actual != expected).then_some(MultiplicityViolation {
                value,
                expected,
                actual,
            })
        })
        .collect();
    Ok(FrequencyReport {
        s,
        complete_up_to,
        counts,
        violations,
    })
}

/// Engine values at the first index where the engines disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch<T> {
    pub n: u64,
    pub values: Vec<(&'static str, T)>,
}

/// Outcome of comparing every applicable engine on a shared index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport<T = Value> {
    pub s: u32,
    pub n_max: u64,
    /// Degree up to which the generating-function engine participated.
    pub genfunc_order: u64,
    pub engines: Vec<&'static str>,
    pub first_mismatch: Option<Mismatch<T>>,
}

impl<T> CrossCheckReport<T> {
    pub fn is_consistent(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Computes `h_s(1..=n_max)` with every engine the formulas cover at this
/// `s` — recurrence, tree leaf count, the applicable closed forms, and the
/// leaf-count series — and reports the first disagreement.
pub fn cross_check<T: SequenceInt>(s: u32, n_max: u64) -> Result<CrossCheckReport<T>> {
    let table = SequenceSpec::<T>::canonical_h(s).evaluate(n_max)?;
    let genfunc_order = n_max.min(GENFUNC_CROSS_CHECK_ORDER);
    let series = a_series::<T>(s, genfunc_order as usize);

    let mut engines = vec!["recurrence", "tree"];
    if s == 0 {
        engines.push("h0");
    } else {
        engines.push("piecewise");
    }
    if s == 1 {
        engines.push("h1-closed");
    }
    engines.push("genfunc");

    for n in 1..=table.len() {
        let n_t: T = from_u64(n);
        let mut values: Vec<(&'static str, T)> = Vec::with_capacity(engines.len());
        values.push(("recurrence", table.value(n)));
        values.push(("tree", leaf_count(s, n_t)));
        if s == 0 {
            values.push(("h0", h0(n_t)));
        } else {
            values.push(("piecewise", hs_piecewise(s, n_t)));
        }
        if s == 1 {
            values.push(("h1-closed", h1_closed(n_t)));
        }
        if n <= genfunc_order {
            values.push(("genfunc", series.coefficient(n as usize)));
        }
        let reference = values[0].1;
        if values.iter().any(|&(_, v)| v != reference) {
            return Ok(CrossCheckReport {
                s,
                n_max,
                genfunc_order,
                engines,
                first_mismatch: Some(Mismatch { n, values }),
            });
        }
    }
    Ok(CrossCheckReport {
        s,
        n_max,
        genfunc_order,
        engines,
        first_mismatch: None,
    })
}

/// Occurrence counts of `k^r` in the shifted and unshifted Jackson-Ruskey
/// sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerFrequency<T> {
    pub r: u32,
    pub power: T,
    pub count_shifted: u64,
    pub count_base: u64,
    pub difference: i64,
}

/// Evaluates `T_{s,k}` and `T_{0,k}` far enough that `k^r` is complete for
/// every `r <= r_max`, and reports the occurrence counts side by side.
pub fn tsk_power_frequency<T: SequenceInt>(
    s: u32,
    k: u32,
    r_max: u32,
) -> Result<Vec<PowerFrequency<T>>> {
    let k_t: T = from_u32(k);
    let mut target = T::one();
    for _ in 0..r_max {
        target = target.checked_mul(&k_t).ok_or(Error::Overflow(0))?;
    }

    let shifted = evaluate_past(SequenceSpec::<T>::jackson_ruskey(s, k)?, target)?;
    let base = evaluate_past(SequenceSpec::<T>::jackson_ruskey(0, k)?, target)?;

    let mut out = Vec::with_capacity(r_max as usize);
    let mut power = T::one();
    for r in 1..=r_max {
        power *= k_t;
        let count_shifted = occurrences(&shifted, power);
        let count_base = occurrences(&base, power);
        out.push(PowerFrequency {
            r,
            power,
            count_shifted,
            count_base,
            difference: count_shifted as i64 - count_base as i64,
        });
    }
    Ok(out)
}

/// Doubles the evaluated prefix until the last term strictly exceeds
/// `target`, so every value up to `target` is complete.
fn evaluate_past<T: SequenceInt>(spec: SequenceSpec<T>, target: T) -> Result<SequenceTable<T>> {
    let mut n_max = 64u64;
    loop {
        let table = spec.evaluate(n_max)?;
        if let TableStatus::DiedAt(report) = table.status() {
            return Err(Error::Died {
                died_at: report.died_at,
                offending_argument: report.offending_argument,
            });
        }
        if let Some(n) = check_slow_growing(&table) {
            return Err(Error::NotSlowGrowing(n));
        }
        if table.last().expect("nonempty") > target {
            return Ok(table);
        }
        n_max *= 2;
    }
}

fn occurrences<T: SequenceInt>(table: &SequenceTable<T>, value: T) -> u64 {
    table.values().iter().filter(|&&v| v == value).count() as u64
}

/// First disagreement between a computed table and b-file fixture content.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfileMismatch<T> {
    pub n: u64,
    pub table_value: T,
    pub fixture_value: T,
}

/// Result of checking a table against a fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfileCheck<T> {
    pub terms_compared: u64,
    pub first_mismatch: Option<BfileMismatch<T>>,
}

/// Compares `table[n]` against the fixture entry at index `n + offset_shift`.
/// Fixture entries mapping outside the computed range are skipped.
pub fn compare_bfile<T: SequenceInt>(
    table: &SequenceTable<T>,
    fixture: &str,
    offset_shift: i64,
) -> Result<BfileCheck<T>> {
    let records: Vec<(T, T)> = parse_bfile(fixture)?;
    let mut terms_compared = 0;
    for (fixture_index, fixture_value) in records {
        let n = fixture_index.to_i128().expect("scalar fits i128") - offset_shift as i128;
        if n < 1 || n > table.len() as i128 {
            continue;
        }
        let n = n as u64;
        terms_compared += 1;
        let table_value = table.value(n);
        if table_value != fixture_value {
            return Ok(BfileCheck {
                terms_compared,
                first_mismatch: Some(BfileMismatch {
                    n,
                    table_value,
                    fixture_value,
                }),
            });
        }
    }
    Ok(BfileCheck {
        terms_compared,
        first_mismatch: None,
    })
}
