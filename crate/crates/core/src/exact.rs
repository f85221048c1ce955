//! Exhaustive decision procedures and exact fractional chromatic numbers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coloring::{FractionalColoring, MAX_PALETTE};
use crate::combinatorics::{binomial, bits, subset_masks};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lp::{self, LinearProgram, LpOutcome, Relation, Sense};

pub const BUDGET_ENV: &str = "FRACHYP_BUDGET";

/// Limits on exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Upper limit on `C(a, b)^|V|` for brute-force coloring.
    pub assignments: u128,
    /// Upper limit on `|V|` for subset enumeration.
    pub max_vertices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            assignments: 100_000_000,
            max_vertices: 24,
        }
    }
}

impl Budget {
    /// Default budget with `FRACHYP_BUDGET` overriding the assignment limit.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            let parsed: f64 = raw
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{BUDGET_ENV}={raw:?} is not a number")))?;
            if !(parsed >= 1.0) {
                return Err(invalid(format!("{BUDGET_ENV} must be at least 1, got {raw}")));
            }
            budget.assignments = if parsed >= u128::MAX as f64 {
                u128::MAX
            } else {
                parsed as u128
            };
        }
        Ok(budget)
    }
}

fn check_ab(a: u32, b: u32) -> Result<()> {
    if b == 0 || b > a || a > MAX_PALETTE {
        return Err(invalid(format!(
            "need 1 <= b <= a <= {MAX_PALETTE}, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

/// First proper (a:b)-coloring in lexicographic order of per-vertex color
/// set indices, or `None` when none exists.
pub fn brute_force_colorable(h: &Hypergraph, a: u32, b: u32, budget: &Budget) -> Result<Option<FractionalColoring>> {
    check_ab(a, b)?;
    let v = h.vertex_count();
    let required = binomial(a as u64, b as u64).pow(v as u32);
    if required > BigUint::from(budget.assignments) {
        return Err(Error::BudgetExceeded {
            required: required.to_string(),
            budget: budget.assignments.to_string(),
        });
    }
    let choices = subset_masks(a, b);
    // edges checked once their largest vertex is assigned
    let mut closing = vec![Vec::new(); v];
    for (i, e) in h.edges().iter().enumerate() {
        closing[*e.last().expect("edges are nonempty")].push(i);
    }
    let mut masks = vec![0u64; v];
    if search(h, &choices, &closing, &mut masks, 0) {
        Ok(Some(FractionalColoring::from_masks(a, b, masks)?))
    } else {
        Ok(None)
    }
}

fn search(h: &Hypergraph, choices: &[u64], closing: &[Vec<usize>], masks: &mut [u64], v: usize) -> bool {
    if v == masks.len() {
        return true;
    }
    for &c in choices {
        masks[v] = c;
        let ok = closing[v]
            .iter()
            .all(|&e| h.edge(e).iter().fold(u64::MAX, |acc, &u| acc & masks[u]) == 0);
        if ok && search(h, choices, closing, masks, v + 1) {
            return true;
        }
    }
    false
}

/// Smallest `k` admitting a proper `k`-coloring, searched up to `|V|`.
pub fn chromatic_number(h: &Hypergraph, budget: &Budget) -> Result<u32> {
    let limit = (h.vertex_count() as u32).clamp(1, MAX_PALETTE);
    for k in 1..=limit {
        if brute_force_colorable(h, k, 1, budget)?.is_some() {
            return Ok(k);
        }
    }
    Err(Error::NotFound { a_max: limit })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSetFamily {
    pub vertex_count: usize,
    pub maximal_only: bool,
    /// Sorted vertex lists, ordered by their bit masks.
    pub sets: Vec<Vec<usize>>,
}

impl IndependentSetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub fn enumerate_independent_sets(h: &Hypergraph, maximal_only: bool, budget: &Budget) -> Result<IndependentSetFamily> {
    let v = h.vertex_count();
    if v > budget.max_vertices.min(63) {
        return Err(Error::BudgetExceeded {
            required: format!("2^{v} subsets"),
            budget: format!("2^{} subsets", budget.max_vertices.min(63)),
        });
    }
    let edges = h.edge_masks();
    let independent = |s: u64| edges.iter().all(|&e| e & !s != 0);
    let full = (1u64 << v) - 1;
    let masks: Vec<u64> = (0..=full)
        .into_par_iter()
        .filter(|&s| independent(s) && (!maximal_only || bits(full & !s).all(|x| !independent(s | 1 << x))))
        .collect();
    Ok(IndependentSetFamily {
        vertex_count: v,
        maximal_only,
        sets: masks
            .into_iter()
            .map(|m| bits(m).map(|x| x as usize).collect())
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Exact solution of the covering program over maximal independent sets, or
/// of its dual.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalLpResult {
    pub status: LpStatus,
    /// `None` unless the status is optimal.
    pub value: Option<BigRational>,
    pub independent_sets: Vec<Vec<usize>>,
    /// Weight `f(I)` on each independent set.
    pub set_weights: Vec<BigRational>,
    /// Weight `y(v)` on each vertex.
    pub vertex_weights: Vec<BigRational>,
}

fn incidence_rows(family: &IndependentSetFamily) -> Vec<Vec<BigRational>> {
    let mut rows = vec![vec![BigRational::zero(); family.len()]; family.vertex_count];
    for (j, set) in family.sets.iter().enumerate() {
        for &v in set {
            rows[v][j] = BigRational::one();
        }
    }
    rows
}

fn unsolved(status: LpStatus, family: IndependentSetFamily) -> RationalLpResult {
    RationalLpResult {
        status,
        value: None,
        independent_sets: family.sets,
        set_weights: Vec::new(),
        vertex_weights: Vec::new(),
    }
}

/// `min sum_I f(I)` subject to `sum_{I ∋ v} f(I) >= 1` for every vertex.
pub fn chi_f_primal(h: &Hypergraph, budget: &Budget) -> Result<RationalLpResult> {
    let family = enumerate_independent_sets(h, true, budget)?;
    let rows = incidence_rows(&family);
    let program = LinearProgram {
        sense: Sense::Minimize,
        objective: vec![BigRational::one(); family.len()],
        rows: rows
            .into_iter()
            .map(|r| (r, Relation::Ge, BigRational::one()))
            .collect(),
    };
    Ok(match lp::solve(&program) {
        LpOutcome::Optimal(s) => RationalLpResult {
            status: LpStatus::Optimal,
            value: Some(s.value),
            independent_sets: family.sets,
            set_weights: s.x,
            vertex_weights: s.duals,
        },
        LpOutcome::Infeasible => unsolved(LpStatus::Infeasible, family),
        LpOutcome::Unbounded => unsolved(LpStatus::Unbounded, family),
    })
}

/// `max sum_v y(v)` subject to `sum_{v ∈ I} y(v) <= 1` for every maximal
/// independent set, solved as its own program.
pub fn chi_f_dual(h: &Hypergraph, budget: &Budget) -> Result<RationalLpResult> {
    let family = enumerate_independent_sets(h, true, budget)?;
    let v = family.vertex_count;
    let program = LinearProgram {
        sense: Sense::Maximize,
        objective: vec![BigRational::one(); v],
        rows: family
            .sets
            .iter()
            .map(|set| {
                let mut row = vec![BigRational::zero(); v];
                for &x in set {
                    row[x] = BigRational::one();
                }
                (row, Relation::Le, BigRational::one())
            })
            .collect(),
    };
    Ok(match lp::solve(&program) {
        LpOutcome::Optimal(s) => RationalLpResult {
            status: LpStatus::Optimal,
            value: Some(s.value),
            independent_sets: family.sets,
            set_weights: s.duals,
            vertex_weights: s.x,
        },
        LpOutcome::Infeasible => unsolved(LpStatus::Infeasible, family),
        LpOutcome::Unbounded => unsolved(LpStatus::Unbounded, family),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgePacking {
    pub value: BigRational,
    pub edge_weights: Vec<BigRational>,
}

/// `max sum_e w(e)` subject to `sum_{e ∋ v} w(e) <= 1` for every vertex.
///
/// On graphs this is the fractional matching number, which is not the
/// fractional chromatic number in general.
pub fn edge_packing_lp(h: &Hypergraph) -> EdgePacking {
    let m = h.edge_count();
    let mut rows = vec![vec![BigRational::zero(); m]; h.vertex_count()];
    for (j, e) in h.edges().iter().enumerate() {
        for &v in e {
            rows[v][j] = BigRational::one();
        }
    }
    let program = LinearProgram {
        sense: Sense::Maximize,
        objective: vec![BigRational::one(); m],
        rows: rows
            .into_iter()
            .map(|r| (r, Relation::Le, BigRational::one()))
            .collect(),
    };
    match lp::solve(&program) {
        LpOutcome::Optimal(s) => EdgePacking {
            value: s.value,
            edge_weights: s.x,
        },
        // w = 0 is feasible and every edge is capped by its vertices
        other => unreachable!("edge packing program cannot be {other:?}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbSearchResult {
    pub ratio: BigRational,
    pub a: u32,
    pub b: u32,
    pub witness: FractionalColoring,
}

/// Smallest `a / b` with `1 <= b < a <= a_max` such that a proper
/// (a:b)-coloring exists. Pairs sharing a ratio are all tried, smallest `a`
/// first.
pub fn chi_f_via_ab_search(h: &Hypergraph, a_max: u32, budget: &Budget) -> Result<AbSearchResult> {
    if a_max > MAX_PALETTE {
        return Err(invalid(format!(
            "a_max = {a_max} exceeds the palette limit {MAX_PALETTE}"
        )));
    }
    let mut pairs: Vec<(BigRational, u32, u32)> = (2..=a_max)
        .flat_map(|a| (1..a).map(move |b| (BigRational::new(BigInt::from(a), BigInt::from(b)), a, b)))
        .collect();
    pairs.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    for (ratio, a, b) in pairs {
        if let Some(witness) = brute_force_colorable(h, a, b, budget)? {
            return Ok(AbSearchResult { ratio, a, b, witness });
        }
    }
    Err(Error::NotFound { a_max })
}
