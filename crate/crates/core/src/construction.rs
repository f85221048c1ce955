//! Random non-colorable hypergraphs and the exact probabilities behind them.
//!
//! A uniformly random n-set of `v` vertices is *bad* under a coloring when
//! its vertices share a color. Sampling `m` such sets, with `m` chosen so
//! that `C(a, b)^v (1 - p)^m < 1`, leaves no proper (a:b)-coloring with
//! positive probability; at desk scale the result is certified by brute force.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::FractionalColoring;
use crate::combinatorics::{binomial, bits, ln_biguint, rational_to_f64};
use crate::error::{invalid, Error, Result};
use crate::exact::{brute_force_colorable, Budget};
use crate::hypergraph::{gen_random_uniform_with, Hypergraph};

/// `|S_y|` for every nonempty color set `y` contained in some vertex's set.
fn common_counts(chi: &FractionalColoring) -> HashMap<u64, u64> {
    let mut counts = HashMap::new();
    for set in chi.sets() {
        let full = set.mask();
        // every nonempty submask of the vertex's colors
        let mut sub = full;
        while sub != 0 {
            *counts.entry(sub).or_insert(0) += 1;
            sub = (sub - 1) & full;
        }
    }
    counts
}

fn check_vn(chi: &FractionalColoring, v: usize, n: usize) -> Result<()> {
    if chi.len() != v {
        return Err(Error::SizeMismatch {
            expected: v,
            found: chi.len(),
        });
    }
    if n == 0 || n > v {
        return Err(invalid(format!("need 1 <= n <= v, got n = {n}, v = {v}")));
    }
    Ok(())
}

/// `s_t` for `t = 1..=b` at a fixed color `x`: the sum of `C(|S_y|, n)` over
/// `t`-sets `y` containing `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSumTable {
    pub color: u32,
    pub n: usize,
    /// `sums[t - 1]` holds `s_t`.
    pub sums: Vec<BigUint>,
}

impl SSumTable {
    pub fn s(&self, t: usize) -> &BigUint {
        &self.sums[t - 1]
    }

    pub fn b(&self) -> usize {
        self.sums.len()
    }

    /// `s_1 >= s_j - s_{j+1} + ... +- s_b`.
    pub fn counting_inequality(&self, j: usize) -> bool {
        let mut tail = BigInt::zero();
        for (k, s) in self.sums.iter().enumerate().skip(j - 1) {
            let s = BigInt::from(s.clone());
            if (k + 1 - j) % 2 == 0 {
                tail += s;
            } else {
                tail -= s;
            }
        }
        BigInt::from(self.s(1).clone()) >= tail
    }

    /// Values of `j` in `1..=b` where [`Self::counting_inequality`] fails.
    pub fn counting_violations(&self) -> Vec<usize> {
        (1..=self.b()).filter(|&j| !self.counting_inequality(j)).collect()
    }

    /// `sum_i (-1)^(i+1) s_i / i`.
    pub fn alternating_sum(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, s) in self.sums.iter().enumerate() {
            let term = BigRational::new(BigInt::from(s.clone()), BigInt::from(i + 1));
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

pub fn s_sums(chi: &FractionalColoring, x: u32, v: usize, n: usize) -> Result<SSumTable> {
    check_vn(chi, v, n)?;
    if x >= chi.a() {
        return Err(invalid(format!("color {x} is outside the palette of size {}", chi.a())));
    }
    let b = chi.b() as usize;
    let mut sums = vec![BigUint::zero(); b];
    for (y, size) in common_counts(chi) {
        if y >> x & 1 == 1 {
            sums[y.count_ones() as usize - 1] += binomial(size, n as u64);
        }
    }
    Ok(SSumTable { color: x, n, sums })
}

/// `sum_{i=1}^b (-1)^(i+1) s_i / i >= s_1 / b`, compared exactly.
pub fn telescoping_check(table: &SSumTable, b: usize) -> bool {
    let lhs = table.alternating_sum();
    let rhs = BigRational::new(BigInt::from(table.s(1).clone()), BigInt::from(b));
    lhs >= rhs
}

/// Probability that a uniform n-set of the `v` vertices shares a color,
/// by inclusion-exclusion over color sets.
pub fn bad_prob_inclusion_exclusion(chi: &FractionalColoring, v: usize, n: usize) -> Result<BigRational> {
    check_vn(chi, v, n)?;
    let mut num = BigInt::zero();
    for (y, size) in common_counts(chi) {
        let term = BigInt::from(binomial(size, n as u64));
        if y.count_ones() % 2 == 1 {
            num += term;
        } else {
            num -= term;
        }
    }
    Ok(BigRational::new(num, BigInt::from(binomial(v as u64, n as u64))))
}

fn check_construction(v: usize, n: usize, a: u32, b: u32) -> Result<()> {
    if b == 0 || b > a {
        return Err(invalid(format!("need 1 <= b <= a, got a = {a}, b = {b}")));
    }
    if n == 0 || n > v {
        return Err(invalid(format!("need 1 <= n <= v, got n = {n}, v = {v}")));
    }
    let bv = b as u64 * v as u64;
    if bv % a as u64 != 0 {
        return Err(Error::Divisibility { a: a as u64, bv });
    }
    Ok(())
}

/// `a C(bv / a, n) / (b C(v, n))`, the convexity lower bound on the bad
/// probability under any coloring.
pub fn bad_prob_lower_p(v: usize, n: usize, a: u32, b: u32) -> Result<BigRational> {
    check_construction(v, n, a, b)?;
    let per_color = b as u64 * v as u64 / a as u64;
    let num = BigInt::from(a) * BigInt::from(binomial(per_color, n as u64));
    let den = BigInt::from(b) * BigInt::from(binomial(v as u64, n as u64));
    Ok(BigRational::new(num, den))
}

/// Above this many bits the certificate is checked in the log domain.
const EXACT_CERTIFICATE_BITS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCount {
    pub m: u64,
    /// Lower bound `p` as `"num/den"`.
    pub p: String,
    pub p_value: f64,
    /// `ln(C(a, b)^v (1 - p)^m)`; `-inf` when `p = 1`.
    pub ln_union_bound: f64,
    /// Whether `C(a, b)^v (1 - p)^m < 1`.
    pub certificate: bool,
    /// Whether the certificate was decided in exact integer arithmetic.
    pub exact: bool,
}

/// `m = ceil(b v ln(a e / b) / p)` together with the union-bound certificate.
pub fn edge_count_m(v: usize, n: usize, a: u32, b: u32) -> Result<EdgeCount> {
    let p = bad_prob_lower_p(v, n, a, b)?;
    let p_value = rational_to_f64(&p);
    let m = edge_count_for(v, a, b, p_value)?;
    let (certificate, exact, ln_union_bound) = union_bound(&p, v, a, b, m);
    Ok(EdgeCount {
        m,
        p: p.to_string(),
        p_value,
        ln_union_bound,
        certificate,
        exact,
    })
}

/// `ceil(b v ln(a e / b) / p)` for an arbitrary `p` in `(0, 1]`.
pub fn edge_count_for(v: usize, a: u32, b: u32, p: f64) -> Result<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("p must lie in (0, 1], got {p}")));
    }
    let raw = b as f64 * v as f64 * ((a as f64 / b as f64).ln() + 1.0) / p;
    if !raw.is_finite() || raw >= u64::MAX as f64 {
        return Err(invalid(format!("edge count {raw} does not fit in 64 bits")));
    }
    Ok(raw.ceil() as u64)
}

/// `C(a, b)^v (1 - p)^m < 1`, exactly when the numbers stay small.
pub fn union_bound(p: &BigRational, v: usize, a: u32, b: u32, m: u64) -> (bool, bool, f64) {
    let choices = binomial(a as u64, b as u64);
    let q = BigRational::one() - p;
    let ln_value = v as f64 * ln_biguint(&choices)
        + if q.is_zero() {
            f64::NEG_INFINITY
        } else {
            m as f64 * (-rational_to_f64(p)).ln_1p()
        };
    if q.is_zero() {
        return (true, true, ln_value);
    }
    let den = q.denom().magnitude();
    let num = q.numer().magnitude();
    let size = m.saturating_mul(den.bits()).saturating_add(v as u64 * choices.bits());
    if size <= EXACT_CERTIFICATE_BITS {
        let lhs = choices.pow(v as u32) * num.pow(m as u32);
        let rhs = den.pow(m as u32);
        (lhs < rhs, true, ln_value)
    } else {
        (ln_value < 0.0, false, ln_value)
    }
}

/// Nearest integer to `a n^2 / (2 b)`, raised to the next `v` with `a | b v`.
pub fn optimal_v(n: usize, a: u32, b: u32) -> Result<usize> {
    if b == 0 || b > a {
        return Err(invalid(format!("need 1 <= b <= a, got a = {a}, b = {b}")));
    }
    let (a64, b64, n64) = (a as u64, b as u64, n as u64);
    let v0 = (a64 * n64 * n64 + b64) / (2 * b64);
    let step = a64 / a64.gcd(&b64);
    let v = v0.div_ceil(step) * step;
    Ok((v as usize).max(n.div_ceil(step as usize) * step as usize))
}

/// `ln` of `(e / 2) n^2 (a / b)^n b (ln(a / b) + 1)`.
pub fn ln_thm2_edge_total(n: usize, a: u32, b: u32) -> Result<f64> {
    if b == 0 || a <= b {
        return Err(invalid(format!("need a > b >= 1, got a = {a}, b = {b}")));
    }
    let ratio = a as f64 / b as f64;
    Ok(1.0 - 2f64.ln() + 2.0 * (n as f64).ln() + n as f64 * ratio.ln() + (b as f64).ln() + (ratio.ln() + 1.0).ln())
}

pub fn thm2_edge_total(n: usize, a: u32, b: u32) -> Result<f64> {
    ln_thm2_edge_total(n, a, b).map(f64::exp)
}

/// Leading-order estimate `(a / b) (b / a)^n exp(-a n^2 / (2 b v))` of the
/// exact lower bound `p`.
pub fn approx_p(v: usize, n: usize, a: u32, b: u32) -> f64 {
    let (a, b, n, v) = (a as f64, b as f64, n as f64, v as f64);
    (a / b) * (b / a).powf(n) * (-a * n * n / (2.0 * b * v)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub v: usize,
    pub m: u64,
    pub seed: u64,
    pub attempts: usize,
}

impl ConstructionParams {
    /// Parameters with `v` from [`optimal_v`] and `m` from [`edge_count_m`].
    pub fn new(n: usize, a: u32, b: u32, seed: u64) -> Result<Self> {
        let v = optimal_v(n, a, b)?;
        Self::with_v(n, a, b, v, seed)
    }

    pub fn with_v(n: usize, a: u32, b: u32, v: usize, seed: u64) -> Result<Self> {
        let m = edge_count_m(v, n, a, b)?.m;
        Ok(ConstructionParams {
            n,
            a,
            b,
            v,
            m,
            seed,
            attempts: 100,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    pub hypergraph: Hypergraph,
    /// Brute force proved that no proper coloring exists.
    pub certified: bool,
    /// Whether the brute-force budget covered `C(a, b)^v`.
    pub certifiable: bool,
    /// A proper coloring of the last sample, when one was found.
    pub witness: Option<FractionalColoring>,
    pub attempts_used: usize,
}

/// Samples `m` independent uniform n-sets on `v` vertices and tries to prove
/// the result has no proper (a:b)-coloring. With `shrink`, fresh samples are
/// drawn until one is certified.
pub fn sample_and_certify(params: &ConstructionParams, shrink: bool, budget: &Budget) -> Result<Certification> {
    let ConstructionParams {
        n,
        a,
        b,
        v,
        m,
        seed,
        attempts,
    } = *params;
    check_construction(v, n, a, b)?;
    if attempts == 0 {
        return Err(invalid("attempts must be positive"));
    }
    let m = usize::try_from(m).map_err(|_| invalid(format!("m = {m} is too large to sample")))?;
    let required = binomial(a as u64, b as u64).pow(v as u32);
    let certifiable = required <= BigUint::from(budget.assignments);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rounds = if shrink { attempts } else { 1 };
    for attempt in 1..=rounds {
        let h = gen_random_uniform_with(v, n, m, false, &mut rng)?;
        if !certifiable {
            return Ok(Certification {
                hypergraph: h,
                certified: false,
                certifiable,
                witness: None,
                attempts_used: attempt,
            });
        }
        let witness = brute_force_colorable(&h, a, b, budget)?;
        if witness.is_none() || !shrink {
            return Ok(Certification {
                certified: witness.is_none(),
                hypergraph: h,
                certifiable,
                witness,
                attempts_used: attempt,
            });
        }
    }
    Err(Error::AttemptsExhausted { attempts })
}

/// Fraction of all n-sets whose vertices share a color, by direct scan.
pub fn bad_fraction_by_enumeration(chi: &FractionalColoring, n: usize) -> BigRational {
    let v = chi.len();
    let mut bad = 0u64;
    let mut total = 0u64;
    for set in itertools::Itertools::combinations(0..v, n) {
        total += 1;
        if chi.common_colors(&set) != 0 {
            bad += 1;
        }
    }
    BigRational::new(BigInt::from(bad), BigInt::from(total))
}

/// Per-color sizes `|chi^-1(x)|`.
pub fn color_class_sizes(chi: &FractionalColoring) -> Vec<u64> {
    let mut sizes = vec![0u64; chi.a() as usize];
    for set in chi.sets() {
        for c in bits(set.mask()) {
            sizes[c as usize] += 1;
        }
    }
    sizes
}

/// Relative error of [`approx_p`] against the exact `p`.
pub fn approx_p_relative_error(v: usize, n: usize, a: u32, b: u32) -> Result<f64> {
    let exact = bad_prob_lower_p(v, n, a, b)?;
    let approx = approx_p(v, n, a, b);
    let exact = exact.to_f64().unwrap_or(0.0);
    Ok(((approx - exact) / exact).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{random_fractional_coloring, sample_fractional};
    use crate::hypergraph::Hypergraph;
    use itertools::Itertools;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn random_chi(v: usize, a: u32, b: u32, seed: u64) -> FractionalColoring {
        let h = Hypergraph::new(v, 1, Vec::<Vec<usize>>::new()).unwrap();
        random_fractional_coloring(&h, a, b, seed).unwrap()
    }

    /// Rejection sample until every color is used `b v / a` times.
    fn balanced_chi(v: usize, a: u32, b: u32, seed: u64) -> FractionalColoring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = b as u64 * v as u64 / a as u64;
        loop {
            let chi = sample_fractional(v, a, b, &mut rng).unwrap();
            if color_class_sizes(&chi).iter().all(|&s| s == target) {
                return chi;
            }
        }
    }

    /// `s_t` by looping over all t-sets of colors and scanning vertices.
    fn s_oracle(chi: &FractionalColoring, x: u32, n: usize) -> Vec<BigUint> {
        (1..=chi.b() as usize)
            .map(|t| {
                (0..chi.a())
                    .combinations(t)
                    .filter(|y| y.contains(&x))
                    .map(|y| {
                        let size = chi.sets().iter().filter(|s| y.iter().all(|&c| s.contains(c))).count();
                        binomial(size as u64, n as u64)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn s_sums_examples() {
        let chi = FractionalColoring::constant(4, &[0, 1], 6).unwrap();
        let t = s_sums(&chi, 0, 6, 2).unwrap();
        assert_eq!(t.s(1), &binomial(6, 2));
        let t = s_sums(&chi, 3, 6, 2).unwrap();
        assert!(t.sums.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn s_sums_match_oracle() {
        for seed in 0..50 {
            let chi = random_chi(6, 4, 2, seed);
            for x in 0..4 {
                assert_eq!(s_sums(&chi, x, 6, 2).unwrap().sums, s_oracle(&chi, x, 2));
            }
        }
    }

    #[test]
    fn per_color_decomposition() {
        // sum over colors of the alternating s-sums equals the inclusion-exclusion numerator
        for seed in 0..50 {
            let chi = random_chi(8, 5, 3, seed);
            let total: BigRational = (0..5).map(|x| s_sums(&chi, x, 8, 2).unwrap().alternating_sum()).sum();
            let p = bad_prob_inclusion_exclusion(&chi, 8, 2).unwrap();
            assert_eq!(total / BigRational::from_integer(BigInt::from(binomial(8, 2))), p);
        }
    }

    #[test]
    fn telescoping_examples() {
        let t = SSumTable {
            color: 0,
            n: 2,
            sums: vec![BigUint::from(7u32)],
        };
        assert!(telescoping_check(&t, 1));
        let zero = SSumTable {
            color: 0,
            n: 2,
            sums: vec![BigUint::zero(); 3],
        };
        assert!(telescoping_check(&zero, 3));
        for seed in 0..500 {
            let chi = random_chi(8, 5, 3, seed);
            for x in 0..5 {
                let t = s_sums(&chi, x, 8, 2).unwrap();
                assert!(telescoping_check(&t, 3));
                assert!(t.counting_violations().is_empty());
            }
        }
    }

    #[test]
    fn counting_inequality_fails_for_four_colors() {
        let chi = FractionalColoring::constant(6, &[0, 1, 2, 3], 5).unwrap();
        let t = s_sums(&chi, 0, 5, 2).unwrap();
        assert_eq!(t.counting_violations(), vec![3]);
        assert!(telescoping_check(&t, 4));
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let chi = FractionalColoring::constant(5, &[1, 3], 7).unwrap();
        assert_eq!(bad_prob_inclusion_exclusion(&chi, 7, 3).unwrap(), q(1, 1));
        // b = 1 with equal classes: a C(v / a, n) / C(v, n)
        let chi = FractionalColoring::from_masks(3, 1, (0..9).map(|i| 1u64 << (i % 3))).unwrap();
        let expected = q(3, 84); // 3 C(3, 3) / C(9, 3)
        assert_eq!(bad_prob_inclusion_exclusion(&chi, 9, 3).unwrap(), expected);
        assert_eq!(bad_fraction_by_enumeration(&chi, 3), expected);
        for seed in 0..20 {
            let chi = random_chi(6, 3, 2, seed);
            assert_eq!(
                bad_prob_inclusion_exclusion(&chi, 6, 2).unwrap(),
                bad_fraction_by_enumeration(&chi, 2)
            );
        }
    }

    #[test]
    fn lower_p_examples() {
        assert_eq!(bad_prob_lower_p(7, 3, 4, 4).unwrap(), q(1, 1));
        let expected = BigRational::new(
            BigInt::from(2u32) * BigInt::from(binomial(50, 10)),
            BigInt::from(binomial(100, 10)),
        );
        assert_eq!(bad_prob_lower_p(100, 10, 4, 2).unwrap(), expected);
        assert_eq!(bad_prob_lower_p(5, 2, 4, 2), Err(Error::Divisibility { a: 4, bv: 10 }));
    }

    #[test]
    fn lower_p_bounds_balanced_and_random_colorings() {
        let p = bad_prob_lower_p(12, 3, 4, 2).unwrap();
        for seed in 0..100 {
            let chi = balanced_chi(12, 4, 2, seed);
            assert!(bad_prob_inclusion_exclusion(&chi, 12, 3).unwrap() >= p);
            let chi = random_chi(12, 4, 2, seed);
            assert!(bad_prob_inclusion_exclusion(&chi, 12, 3).unwrap() >= p);
        }
    }

    #[test]
    fn edge_count_examples() {
        let e = edge_count_m(4, 2, 2, 1).unwrap();
        assert_eq!((e.m, e.p.as_str()), (21, "1/3"));
        let e = edge_count_m(6, 2, 3, 2).unwrap();
        assert_eq!((e.m, e.p.as_str()), (29, "3/5"));
        let e = edge_count_m(12, 3, 4, 2).unwrap();
        assert_eq!((e.m, e.p.as_str()), (224, "2/11"));
        for (v, n, a, b) in [(6, 2, 3, 1), (8, 2, 4, 2), (12, 3, 4, 2), (4, 2, 2, 1), (6, 2, 3, 2)] {
            let e = edge_count_m(v, n, a, b).unwrap();
            assert!(e.certificate && e.exact, "({v},{n},{a},{b})");
            assert!(e.ln_union_bound < 0.0);
        }
        // full palette: p = 1 and m = b v
        let e = edge_count_m(5, 2, 3, 3).unwrap();
        assert_eq!(e.m, 15);
        assert!(e.certificate);
    }

    #[test]
    fn large_certificate_uses_log_domain() {
        let e = edge_count_m(100, 10, 4, 2).unwrap();
        assert!(e.certificate);
        let (_, exact, ln) = union_bound(&bad_prob_lower_p(100, 10, 4, 2).unwrap(), 100, 4, 2, e.m);
        assert_eq!(exact, e.exact);
        assert!((ln - e.ln_union_bound).abs() < 1e-9);
    }

    #[test]
    fn m_nonincreasing_in_p() {
        let mut ps: Vec<f64> = (4..=80)
            .step_by(2)
            .map(|v| rational_to_f64(&bad_prob_lower_p(v, 3, 4, 2).unwrap()))
            .filter(|&p| p > 0.0)
            .collect();
        ps.sort_by(f64::total_cmp);
        let ms: Vec<u64> = ps.iter().map(|&p| edge_count_for(12, 4, 2, p).unwrap()).collect();
        assert!(ms.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(
            edge_count_for(12, 4, 2, rational_to_f64(&bad_prob_lower_p(12, 3, 4, 2).unwrap())).unwrap(),
            224
        );
    }

    #[test]
    fn optimal_v_examples() {
        assert_eq!(optimal_v(10, 4, 2).unwrap(), 100);
        assert_eq!(optimal_v(2, 2, 1).unwrap(), 4);
        for n in 2..20 {
            for a in 2..9u32 {
                for b in 1..a {
                    let v = optimal_v(n, a, b).unwrap();
                    assert_eq!(b as usize * v % a as usize, 0);
                    assert!(v >= n);
                }
            }
        }
    }

    #[test]
    fn thm2_total_examples() {
        let t = thm2_edge_total(10, 4, 2).unwrap();
        let direct = std::f64::consts::E / 2.0 * 100.0 * 1024.0 * 2.0 * (2f64.ln() + 1.0);
        assert!((t - direct).abs() / direct < 1e-12);
        assert!((t / 4.71e5 - 1.0).abs() < 0.01);
        assert!(thm2_edge_total(10, 4, 4).is_err());
    }

    #[test]
    fn approx_p_converges_for_large_v() {
        let near = approx_p_relative_error(2000, 10, 4, 2).unwrap();
        let far = approx_p_relative_error(20, 10, 4, 2).unwrap();
        assert!(near < far);
        assert!(near < 0.05);
    }

    #[test]
    fn certify_small_cases() {
        let params = ConstructionParams::with_v(2, 2, 1, 4, 7).unwrap();
        assert_eq!(params.m, 21);
        let c = sample_and_certify(&params, true, &Budget::default()).unwrap();
        assert!(c.certified && c.certifiable);
        assert!(brute_force_colorable(&c.hypergraph, 2, 1, &Budget::default())
            .unwrap()
            .is_none());

        let params = ConstructionParams::with_v(2, 3, 2, 6, 7).unwrap();
        let c = sample_and_certify(&params, true, &Budget::default()).unwrap();
        assert!(c.certified);
        assert_eq!(c.attempts_used, 1);
    }

    #[test]
    fn certify_empty_sample() {
        let params = ConstructionParams {
            m: 0,
            ..ConstructionParams::with_v(2, 2, 1, 4, 0).unwrap()
        };
        let c = sample_and_certify(&params, false, &Budget::default()).unwrap();
        assert!(!c.certified);
        assert!(c.witness.is_some());
    }

    #[test]
    fn uncertifiable_sample_is_flagged() {
        let params = ConstructionParams::new(10, 4, 2, 0).unwrap();
        let c = sample_and_certify(&ConstructionParams { m: 5, ..params }, false, &Budget::default()).unwrap();
        assert!(!c.certifiable && !c.certified);
        assert_eq!(c.hypergraph.edge_count(), 5);
    }
}
