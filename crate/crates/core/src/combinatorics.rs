//! Exact binomials, big-integer logarithms and small subset helpers.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `C(n, k)` as an arbitrary-precision integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` when it fits in a `u128`.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(q: &BigRational) -> f64 {
    let num = q.numer().to_biguint().unwrap_or_default();
    let den = q.denom().to_biguint().unwrap_or_default();
    ln_biguint(&num) - ln_biguint(&den)
}

/// Best-effort conversion that survives very large or very small magnitudes.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    match q.to_f64() {
        Some(x) if x.is_finite() && (x != 0.0 || q.is_zero()) => x,
        _ => {
            let sign = if q.numer() < &BigInt::zero() { -1.0 } else { 1.0 };
            sign * ln_rational(&q.abs()).exp()
        }
    }
}

/// All `k`-subsets of `{0, .., n-1}` as bit masks, in lexicographic order of
/// their sorted member lists.
pub fn subset_masks(n: u32, k: u32) -> Vec<u64> {
    (0..n)
        .combinations(k as usize)
        .map(|c| c.into_iter().fold(0u64, |m, i| m | (1u64 << i)))
        .collect()
}

/// Iterator over the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros();
            mask &= mask - 1;
            Some(i)
        }
    })
}
