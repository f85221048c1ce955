//! Reserve-color repair: color with a reduced working palette, then fix
//! every monochromatic edge with colors held back for that purpose.
//!
//! Each reserve color is handed to at most `n - 1` vertices, so it can never
//! be common to a whole edge.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{sample_fractional, FractionalColoring, MAX_PALETTE};
use crate::combinatorics::{binomial, bits, rational_to_f64};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

/// Size of the working palette, `floor(a (n - 1) / n)`.
pub fn a_prime(a: u32, n: usize) -> Result<u32> {
    if a == 0 || n < 2 {
        return Err(invalid(format!(
            "a_prime needs a >= 1 and n >= 2, got a = {a}, n = {n}"
        )));
    }
    let (a, n) = (a as u64, n as u64);
    let ap = a * (n - 1) / n;
    debug_assert_eq!(a - ap, a.div_ceil(n));
    Ok(ap as u32)
}

/// Number of reserve colors, `a - a_prime(a, n)`.
pub fn reserve_size(a: u32, n: usize) -> Result<u32> {
    Ok(a - a_prime(a, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlonPrecondition {
    pub a_prime: u32,
    pub reserve: u32,
    /// `n <= a / b < n^(n - 1)`
    pub ratio_window: bool,
    /// `|E| <= (a' / b)^n / e`
    pub edge_budget: bool,
    pub edge_budget_value: f64,
    /// `a' (b / (a' - b + 1))^n <= 1`
    pub proof_condition: bool,
    /// `a - a' >= b`
    pub reserve_covers_b: bool,
}

impl AlonPrecondition {
    pub fn all(&self) -> bool {
        self.ratio_window && self.edge_budget && self.proof_condition && self.reserve_covers_b
    }
}

pub fn precondition_alon(h: &Hypergraph, a: u32, b: u32) -> Result<AlonPrecondition> {
    if b == 0 || b > a {
        return Err(invalid(format!("need 1 <= b <= a, got a = {a}, b = {b}")));
    }
    let n = h.uniformity();
    let ap = a_prime(a, n)?;
    let reserve = a - ap;

    let (a64, b64) = (a as u128, b as u128);
    let upper = (n as u128)
        .checked_pow(n as u32 - 1)
        .and_then(|p| p.checked_mul(b64))
        .unwrap_or(u128::MAX);
    let ratio_window = (n as u128) * b64 <= a64 && a64 < upper;

    let ln_budget = n as f64 * (ap as f64 / b as f64).ln() - 1.0;
    let edge_budget_value = ln_budget.exp();
    let edge_budget = if ap == 0 {
        h.edge_count() == 0
    } else if edge_budget_value.is_finite() {
        h.edge_count() as f64 <= edge_budget_value
    } else {
        true
    };

    let proof_condition = ap >= b && {
        let lhs = BigUint::from(ap) * BigUint::from(b).pow(n as u32);
        let rhs = BigUint::from(ap - b + 1).pow(n as u32);
        lhs <= rhs
    };

    Ok(AlonPrecondition {
        a_prime: ap,
        reserve,
        ratio_window,
        edge_budget,
        edge_budget_value,
        proof_condition,
        reserve_covers_b: reserve >= b,
    })
}

/// `m * sum_{k=1}^{b} k C(a', k) (C(a' - k, b - k) / C(a', b))^n`, exactly.
pub fn expected_recolorings_exact(a_prime: u32, b: u32, n: usize, m: usize) -> Result<BigRational> {
    if b == 0 || b > a_prime {
        return Err(invalid(format!("need 1 <= b <= a' , got a' = {a_prime}, b = {b}")));
    }
    let (ap, b64) = (a_prime as u64, b as u64);
    let total = BigInt::from(binomial(ap, b64));
    let mut sum = BigRational::zero();
    for k in 1..=b64 {
        let ratio = BigRational::new(BigInt::from(binomial(ap - k, b64 - k)), total.clone());
        let weight = BigInt::from(k) * BigInt::from(binomial(ap, k));
        sum += BigRational::from_integer(weight) * pow_rational(&ratio, n);
    }
    Ok(sum * BigRational::from_integer(BigInt::from(m)))
}

pub fn expected_recolorings_bound(a_prime: u32, b: u32, n: usize, m: usize) -> Result<f64> {
    expected_recolorings_exact(a_prime, b, n, m).map(|q| rational_to_f64(&q))
}

fn pow_rational(q: &BigRational, e: usize) -> BigRational {
    BigRational::new(q.numer().pow(e as u32), q.denom().pow(e as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlonParams {
    pub a: u32,
    pub b: u32,
    pub seed: u64,
    pub max_attempts: usize,
}

impl AlonParams {
    pub fn new(a: u32, b: u32, seed: u64) -> Self {
        AlonParams {
            a,
            b,
            seed,
            max_attempts: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairEvent {
    pub vertex: usize,
    pub edge: usize,
    pub removed: Vec<u32>,
    pub added: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairLedger {
    pub a_prime: u32,
    /// Usage of reserve color `a_prime + i` at index `i`.
    pub usage: Vec<usize>,
    pub events: Vec<RepairEvent>,
    /// 1-based index of the attempt that succeeded.
    pub attempt: usize,
}

impl RepairLedger {
    /// Total number of colors replaced.
    pub fn repairs(&self) -> usize {
        self.events.iter().map(|e| e.removed.len()).sum()
    }
}

pub fn solve_alon(h: &Hypergraph, params: &AlonParams) -> Result<(FractionalColoring, RepairLedger)> {
    let AlonParams {
        a,
        b,
        seed,
        max_attempts,
    } = *params;
    let n = h.uniformity();
    if a > MAX_PALETTE {
        return Err(invalid(format!("a = {a} exceeds the palette limit {MAX_PALETTE}")));
    }
    let ap = a_prime(a, n)?;
    if b == 0 || b > ap {
        return Err(invalid(format!("need 1 <= b <= a' = {ap}, got b = {b}")));
    }
    if max_attempts == 0 {
        return Err(invalid("max_attempts must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let working = sample_fractional(h.vertex_count(), ap, b, &mut rng)?;
        let masks: Vec<u64> = working.sets().iter().map(|s| s.mask()).collect();
        if let Some((masks, usage, events)) = repair(h, masks, a, ap) {
            let chi = FractionalColoring::from_masks(a, b, masks)?;
            let ledger = RepairLedger {
                a_prime: ap,
                usage,
                events,
                attempt,
            };
            return Ok((chi, ledger));
        }
    }
    Err(Error::AttemptsExhausted { attempts: max_attempts })
}

type Repaired = (Vec<u64>, Vec<usize>, Vec<RepairEvent>);

/// One repair pass; `None` when reserve capacity runs out.
fn repair(h: &Hypergraph, mut masks: Vec<u64>, a: u32, ap: u32) -> Option<Repaired> {
    let cap = h.uniformity() - 1;
    let mut usage = vec![0usize; (a - ap) as usize];
    let mut events = Vec::new();
    for (idx, edge) in h.edges().iter().enumerate() {
        let common = edge.iter().fold(u64::MAX, |acc, &v| acc & masks[v]);
        if common == 0 {
            continue;
        }
        let vertex = edge[0];
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for color in bits(common) {
            let slot = (0..usage.len()).find(|&r| usage[r] < cap && masks[vertex] & (1 << (ap + r as u32)) == 0)?;
            usage[slot] += 1;
            let fresh = ap + slot as u32;
            masks[vertex] = (masks[vertex] & !(1 << color)) | (1 << fresh);
            removed.push(color);
            added.push(fresh);
        }
        events.push(RepairEvent {
            vertex,
            edge: idx,
            removed,
            added,
        });
    }
    Some((masks, usage, events))
}

/// [`expected_recolorings_bound`] with `a', n, m` read off `h`.
pub fn expected_recolorings_for(h: &Hypergraph, a: u32, b: u32) -> Result<f64> {
    let ap = a_prime(a, h.uniformity())?;
    expected_recolorings_bound(ap, b, h.uniformity(), h.edge_count())
}
