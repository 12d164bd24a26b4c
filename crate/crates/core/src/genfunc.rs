//! Truncated formal power series with exact integer coefficients, plus the
//! leaf-indicator and leaf-count series of the tree structure.
//!
//! Arithmetic is exact modulo `z^(N+1)`: the coefficient of `z^j` in any
//! result depends only on coefficients of `z^0..z^j` of the operands. The
//! only denominators needed are of the form `1 - z^m`, realized directly by
//! [`PowerSeries::geometric`].

use crate::error::{Error, Result};
use crate::scalar::SequenceInt;
use crate::Value;

/// A formal power series truncated after `z^order`, coefficient of `z^j`
/// stored at position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries<T = Value> {
    coeffs: Vec<T>,
}

impl<T: SequenceInt> PowerSeries<T> {
    /// Series with the given coefficients; the truncation order is
    /// `coefficients.len() - 1`.
    pub fn from_coefficients(coefficients: Vec<T>) -> Self {
        assert!(!coefficients.is_empty(), "a series has at least the z^0 coefficient");
        PowerSeries {
            coeffs: coefficients,
        }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    /// `z^exp`, or the zero series when the exponent lies beyond the
    /// truncation order.
    pub fn monomial(exp: usize, order: usize) -> Self {
        let mut series = Self::zero(order);
        if exp <= order {
            series.coeffs[exp] = T::one();
        }
        series
    }

    /// `1 / (1 - z^m)` as the geometric sum of `z^(j*m)`.
    pub fn geometric(m: usize, order: usize) -> Self {
        assert!(m >= 1, "geometric denominator exponent must be at least 1");
        let mut series = Self::zero(order);
        let mut exp = 0;
        while exp <= order {
            series.coeffs[exp] = T::one();
            exp += m;
        }
        series
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^j`. Panics beyond the truncation order.
    pub fn coefficient(&self, j: usize) -> T {
        self.coeffs[j]
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// Convolution product, truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![T::zero(); order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == T::zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(order - i + 1).enumerate() {
                let term = a.checked_mul(&b).expect("series coefficient overflow");
                coeffs[i + j] = coeffs[i + j]
                    .checked_add(&term)
                    .expect("series coefficient overflow");
            }
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn scale(&self, factor: T) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

/// Exponent guard: exponents are assembled in `u128` so that `s*i + 2^i`
/// never overflows before being compared to the truncation order.
fn fits(exp: u128, order: usize) -> Option<usize> {
    (exp <= order as u128).then_some(exp as usize)
}

/// The block series: `z` for `n = 0`, otherwise ones at the even exponents
/// `2, 4, ..., 2^n`.
pub fn c_series<T: SequenceInt>(n: u32, order: usize) -> PowerSeries<T> {
    if n == 0 {
        return PowerSeries::monomial(1, order);
    }
    let mut series = PowerSeries::zero(order);
    let limit = if n >= 64 { u128::MAX } else { 1u128 << n };
    let mut exp = 2u128;
    while exp <= limit {
        match fits(exp, order) {
            Some(e) => series.coeffs[e] = T::one(),
            None => break,
        }
        exp += 2;
    }
    series
}

/// The leaf-indicator series of the standard labeling:
/// `z + z^2/(1-z^2) * sum_{i>=1} z^(s*i + 2^i - 1) * (1 - z^(2^i))`.
///
/// The infinite sum stops at the first `i` whose leading exponent exceeds
/// the truncation order; later terms cannot touch retained coefficients.
pub fn d_series<T: SequenceInt>(s: u32, order: usize) -> PowerSeries<T> {
    let mut sum = PowerSeries::<T>::zero(order);
    for i in 1u32.. {
        let lead = s as u128 * i as u128 + (1u128 << i) - 1;
        let Some(lo) = fits(lead, order) else { break };
        sum.coeffs[lo] += T::one();
        if let Some(hi) = fits(lead + (1u128 << i), order) {
            sum.coeffs[hi] -= T::one();
        }
    }
    let factor = PowerSeries::monomial(2, order)
        .mul(&PowerSeries::geometric(2, order))
        .expect("orders match");
    PowerSeries::monomial(1, order)
        .add(&factor.mul(&sum).expect("orders match"))
        .expect("orders match")
}

/// The leaf-count series `A_s = D_s / (1 - z)`.
pub fn a_series<T: SequenceInt>(s: u32, order: usize) -> PowerSeries<T> {
    d_series::<T>(s, order)
        .mul(&PowerSeries::geometric(1, order))
        .expect("orders match")
}
