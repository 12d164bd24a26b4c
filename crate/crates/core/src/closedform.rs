//! Exact-integer closed-form evaluators for the two-term family.
//!
//! Everything here is pure integer arithmetic; square roots go through
//! [`isqrt`] so values near perfect squares are never at the mercy of
//! floating-point rounding.

use crate::scalar::{from_u32, max_pow2_exp, pow2, SequenceInt};

/// Largest `t` with `t*t <= m`, by Newton iteration seeded above the root.
///
/// Panics on negative input.
pub fn isqrt<T: SequenceInt>(m: T) -> T {
    assert!(!m.is_negative(), "isqrt of negative value");
    if m < from_u32(2) {
        return m;
    }
    let bits = (std::mem::size_of::<T>() * 8) as u32 - m.leading_zeros();
    // 2^ceil(bits/2) squares to at least 2^bits > m, so we start above the root
    let mut x: T = T::one() << bits.div_ceil(2) as usize;
    loop {
        let next = (x + m / x) >> 1;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// `h_0(n) = ceil(n / 2)`. Panics when `n < 1`.
pub fn h0<T: SequenceInt>(n: T) -> T {
    assert!(n >= T::one(), "h0 index must be at least 1");
    (n + T::one()) >> 1
}

/// Which piece of the piecewise formula an index falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeKind {
    /// `2^k + sk <= n < 2^(k+1) + sk`: the value ramps as `h_0(n - sk)`.
    Ramp,
    /// `2^(k+1) + sk <= n < 2^(k+1) + s(k+1)`: the value is pinned at `2^k`.
    Plateau,
}

/// The block exponent and piece selecting the closed form at one index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiecewiseRegime {
    pub k: u32,
    pub kind: RegimeKind,
}

/// Locates the unique regime containing `n`. For `s = 0` the plateau windows
/// are empty, so only ramps occur.
pub fn regime<T: SequenceInt>(s: u32, n: T) -> PiecewiseRegime {
    assert!(n >= T::one(), "regime index must be at least 1");
    let s_t: T = from_u32(s);
    for k in 0..max_pow2_exp::<T>() {
        let sk = s_t * from_u32(k);
        let ramp_start = pow2::<T>(k) + sk;
        let plateau_start = pow2::<T>(k + 1) + sk;
        let plateau_end = pow2::<T>(k + 1) + s_t * from_u32(k + 1);
        if n >= ramp_start && n < plateau_start {
            return PiecewiseRegime {
                k,
                kind: RegimeKind::Ramp,
            };
        }
        if n >= plateau_start && n < plateau_end {
            return PiecewiseRegime {
                k,
                kind: RegimeKind::Plateau,
            };
        }
    }
    unreachable!("regime windows cover every representable index")
}

/// The piecewise closed form for `h_s(n)`: `h_0(n - sk)` on a ramp, `2^k` on
/// a plateau. Stated for `s >= 1`; with `s = 0` it degenerates to [`h0`].
pub fn hs_piecewise<T: SequenceInt>(s: u32, n: T) -> T {
    let PiecewiseRegime { k, kind } = regime(s, n);
    match kind {
        RegimeKind::Ramp => h0(n - from_u32::<T>(s) * from_u32(k)),
        RegimeKind::Plateau => pow2(k),
    }
}

/// Prefix `b(0..=n)` of the square-root recursion
/// `b(n) = b(n-1) + floor(sqrt(b(n-1)))`, `b(0) = 1`.
pub fn b_prefix<T: SequenceInt>(n: u64) -> Vec<T> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut current = T::one();
    out.push(current);
    for _ in 0..n {
        current = current + isqrt(current);
        out.push(current);
    }
    out
}

/// `b(n)` by iterating the recursion.
pub fn b_recursive<T: SequenceInt>(n: u64) -> T {
    *b_prefix::<T>(n).last().unwrap()
}

/// Witty's closed form for the same sequence: for the unique `k` with
/// `2^k + k <= n < 2^(k+1) + k + 1`, `b(n-1) = 2^k + floor((n-k)^2 / 4)`.
///
/// The argument is `n - 1` itself, matching the recursion's indexing.
pub fn b_witty<T: SequenceInt>(n_minus_1: T) -> T {
    assert!(!n_minus_1.is_negative(), "b is defined from index 0");
    let n = n_minus_1 + T::one();
    for k in 0..max_pow2_exp::<T>() {
        let k_t: T = from_u32(k);
        let start = pow2::<T>(k) + k_t;
        let end = pow2::<T>(k + 1) + k_t + T::one();
        if n >= start && n < end {
            let d = n - k_t;
            return pow2::<T>(k) + d * d / from_u32(4);
        }
    }
    unreachable!("Witty windows cover every representable index")
}

/// Closed form for `h_1(n)`: with `k` such that `2^k + k <= n <= 2^(k+1) + k`,
/// `h_1(n) = floor(sqrt(2^k + floor((n-k)^2 / 4)))`.
pub fn h1_closed<T: SequenceInt>(n: T) -> T {
    assert!(n >= T::one(), "h1 index must be at least 1");
    for k in 0..max_pow2_exp::<T>() {
        let k_t: T = from_u32(k);
        let start = pow2::<T>(k) + k_t;
        let end = pow2::<T>(k + 1) + k_t;
        if n >= start && n <= end {
            let d = n - k_t;
            return isqrt(pow2::<T>(k) + d * d / from_u32(4));
        }
    }
    unreachable!("h1 windows cover every representable index")
}

/// How often a value appears in `h_s`: powers of 2 appear `s + 2` times,
/// everything else twice.
pub fn predicted_multiplicity<T: SequenceInt>(s: u32, v: T) -> u64 {
    assert!(v >= T::one(), "multiplicity is defined for positive values");
    if v & (v - T::one()) == T::zero() {
        s as u64 + 2
    } else {
        2
    }
}

/// Index of the last term of `h_s` equal to `2^(k-1)`, namely `2^k + s*k`.
pub fn last_index_of_power<T: SequenceInt>(s: u32, k: u32) -> T {
    assert!(k >= 1, "exponent must be at least 1");
    pow2::<T>(k) + from_u32::<T>(s) * from_u32(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0i64), 0);
        assert_eq!(isqrt(28i64), 5);
        assert_eq!(isqrt(1i64 << 52), 1 << 26);
    }

    #[test]
    fn isqrt_is_exact_near_squares() {
        for t in 0i64..2000 {
            let sq = t * t;
            assert_eq!(isqrt(sq), t);
            if t > 0 {
                assert_eq!(isqrt(sq - 1), t - 1);
                assert_eq!(isqrt(sq + 1), t);
            }
        }
    }

    #[test]
    #[should_panic(expected = "negative")]
    fn isqrt_rejects_negative() {
        isqrt(-1i64);
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(1i64), 1);
        assert_eq!(h0(50i64), 25);
        assert_eq!(h0(7i64), 4);
    }

    #[test]
    fn piecewise_examples() {
        assert_eq!(hs_piecewise(2, 4i64), 1);
        assert_eq!(hs_piecewise(3, 19i64), 5);
        assert_eq!(hs_piecewise(1, 11i64), 4);
    }

    #[test]
    fn regime_covers_s0_with_ramps_only() {
        for n in 1i64..=4096 {
            assert_eq!(regime(0, n).kind, RegimeKind::Ramp);
        }
    }

    #[test]
    fn b_recursion_examples() {
        assert_eq!(b_recursive::<i64>(0), 1);
        assert_eq!(b_recursive::<i64>(2), 3);
        assert_eq!(b_recursive::<i64>(6), 10);
        assert_eq!(b_prefix::<i64>(6), vec![1, 2, 3, 4, 6, 8, 10]);
    }

    #[test]
    fn b_witty_examples() {
        assert_eq!(b_witty(0i64), 1);
        assert_eq!(b_witty(2i64), 3);
        assert_eq!(b_witty(6i64), 10);
    }

    #[test]
    fn h1_closed_examples() {
        assert_eq!(h1_closed(12i64), 5);
        assert_eq!(h1_closed(1i64), 1);
        assert_eq!(h1_closed(50i64), 23);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(predicted_multiplicity(1, 4i64), 3);
        assert_eq!(predicted_multiplicity(0, 3i64), 2);
        assert_eq!(predicted_multiplicity(4, 6i64), 2);
    }

    #[test]
    fn last_index_examples() {
        assert_eq!(last_index_of_power::<i64>(1, 3), 11);
        assert_eq!(last_index_of_power::<i64>(0, 5), 32);
        assert_eq!(last_index_of_power::<i64>(3, 1), 5);
    }
}
