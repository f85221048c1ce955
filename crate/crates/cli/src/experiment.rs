//! Seeded Monte Carlo sweeps over `(n, a, b, edge multiplier)` grids.

use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use frachyp::alon::{a_prime, expected_recolorings_bound, solve_alon, AlonParams};
use frachyp::theorem1::{bad_event_bounds, classify_failure, edge_budget_thm1, solve_theorem1, SolverParams};
use frachyp::{hypergraph::gen_random_uniform_with, Error, Result};

/// Half-width multiplier for the reported Wilson intervals.
pub const WILSON_Z: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theorem1,
    Alon,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub n: usize,
    pub a: u32,
    pub b: u32,
    /// Edge count as a multiple of the method's edge budget.
    pub multiplier: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub cells: Vec<Cell>,
    pub trials: usize,
    pub base_seed: u64,
    pub method: Method,
    pub vertices: usize,
}

impl ExperimentConfig {
    /// Full Cartesian grid over the given axes.
    pub fn grid(ns: &[usize], as_: &[u32], bs: &[u32], multipliers: &[f64]) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &n in ns {
            for &a in as_ {
                for &b in bs {
                    for &multiplier in multipliers {
                        cells.push(Cell { n, a, b, multiplier });
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialStatus {
    Proper,
    Failed,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub cell: usize,
    pub seed: u64,
    pub n: usize,
    pub a: u32,
    pub b: u32,
    pub edges: usize,
    pub status: TrialStatus,
    /// Recolorings (theorem1) or replaced colors (alon).
    pub events: usize,
    /// Bad-event flags `B1..B5`; all false for the alon method.
    pub bad_events: [bool; 5],
    pub attempts: usize,
    pub wall_micros: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wilson {
    pub low: f64,
    pub high: f64,
}

/// Wilson score interval for `successes` out of `trials` at `z`.
pub fn wilson(successes: usize, trials: usize, z: f64) -> Wilson {
    if trials == 0 {
        return Wilson { low: 0.0, high: 1.0 };
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Wilson {
        low: (center - half).max(0.0),
        high: (center + half).min(1.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: Cell,
    pub edges: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub success_interval: Wilson,
    pub bad_event_counts: [usize; 5],
    pub bad_event_freq: [f64; 5],
    pub bad_event_intervals: [Wilson; 5],
    /// Analytic bounds for theorem1 cells.
    pub bad_event_bounds: Option<[f64; 5]>,
    /// Classes whose Wilson lower end exceeds the analytic bound.
    pub flagged: [bool; 5],
    pub failures_unclassified: usize,
    pub mean_events: f64,
    /// Expected-repairs bound for alon cells.
    pub expected_events_bound: Option<f64>,
    pub wall_micros: u64,
}

impl CellSummary {
    pub fn any_flagged(&self) -> bool {
        self.flagged.iter().any(|&f| f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub cells: Vec<CellSummary>,
    pub trials: Vec<TrialRecord>,
}

impl ExperimentReport {
    /// Copy with all wall-clock fields zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.cells.iter_mut().for_each(|c| c.wall_micros = 0);
        r.trials.iter_mut().for_each(|t| t.wall_micros = 0);
        r
    }
}

/// Edge count for a cell: `floor(multiplier * budget)`.
pub fn cell_edges(cell: &Cell, method: Method) -> Result<usize> {
    let budget = match method {
        Method::Theorem1 => edge_budget_thm1(cell.n, cell.a, cell.b)?.value,
        Method::Alon => {
            let ap = a_prime(cell.a, cell.n)?;
            (cell.n as f64 * (ap as f64 / cell.b as f64).ln() - 1.0).exp()
        }
    };
    let m = (cell.multiplier * budget).floor();
    if !(cell.multiplier > 0.0) || !m.is_finite() || m > 1e8 {
        return Err(Error::InvalidParams(format!(
            "cell {cell:?} gives an unusable edge count {m}"
        )));
    }
    Ok(m as usize)
}

/// One trial, fully determined by `(cell, seed)`.
pub fn run_trial(config: &ExperimentConfig, index: usize, seed: u64) -> Result<TrialRecord> {
    let cell = config.cells[index];
    let edges = cell_edges(&cell, config.method)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = gen_random_uniform_with(config.vertices, cell.n, edges, false, &mut rng)?;
    let solver_seed = rng.next_u64();
    let (status, events, bad_events, attempts) = match config.method {
        Method::Theorem1 => {
            let outcome = solve_theorem1(&h, &SolverParams::new(cell.a, cell.b, solver_seed))?;
            let report = classify_failure(&h, &outcome)?;
            let status = if outcome.is_proper() {
                TrialStatus::Proper
            } else {
                TrialStatus::Failed
            };
            (status, outcome.events.len(), report.flags(), 1)
        }
        Method::Alon => match solve_alon(&h, &AlonParams::new(cell.a, cell.b, solver_seed)) {
            Ok((_, ledger)) => (TrialStatus::Proper, ledger.repairs(), [false; 5], ledger.attempt),
            Err(Error::AttemptsExhausted { attempts }) => (TrialStatus::Exhausted, 0, [false; 5], attempts),
            Err(e) => return Err(e),
        },
    };
    Ok(TrialRecord {
        cell: index,
        seed,
        n: cell.n,
        a: cell.a,
        b: cell.b,
        edges,
        status,
        events,
        bad_events,
        attempts,
        wall_micros: start.elapsed().as_micros() as u64,
    })
}

/// Commutative per-cell accumulator.
#[derive(Debug, Clone, Default)]
struct Tally {
    trials: usize,
    successes: usize,
    bad: [usize; 5],
    unclassified: usize,
    events: usize,
    micros: u64,
}

impl Tally {
    fn add(&mut self, t: &TrialRecord) {
        self.trials += 1;
        self.events += t.events;
        self.micros += t.wall_micros;
        match t.status {
            TrialStatus::Proper => self.successes += 1,
            TrialStatus::Failed if !t.bad_events.iter().any(|&f| f) => self.unclassified += 1,
            _ => {}
        }
        for (c, &f) in self.bad.iter_mut().zip(&t.bad_events) {
            *c += f as usize;
        }
    }
}

pub fn summarize(config: &ExperimentConfig, trials: &[TrialRecord]) -> Result<Vec<CellSummary>> {
    let mut tallies = vec![Tally::default(); config.cells.len()];
    for t in trials {
        tallies[t.cell].add(t);
    }
    config
        .cells
        .iter()
        .zip(tallies)
        .map(|(cell, tally)| {
            let edges = cell_edges(cell, config.method)?;
            let n = tally.trials;
            let freq = tally.bad.map(|c| if n == 0 { 0.0 } else { c as f64 / n as f64 });
            let intervals = tally.bad.map(|c| wilson(c, n, WILSON_Z));
            let (bounds, expected) = match config.method {
                Method::Theorem1 => {
                    let b = bad_event_bounds(cell.n, cell.a, cell.b, None)?;
                    (Some([b.b1, b.b2, b.b3, b.b4, b.b5]), None)
                }
                Method::Alon => {
                    let ap = a_prime(cell.a, cell.n)?;
                    (None, Some(expected_recolorings_bound(ap, cell.b, cell.n, edges)?))
                }
            };
            let mut flagged = [false; 5];
            if let Some(bounds) = bounds {
                for i in 0..5 {
                    flagged[i] = intervals[i].low > bounds[i];
                }
            }
            Ok(CellSummary {
                cell: *cell,
                edges,
                trials: n,
                successes: tally.successes,
                success_rate: if n == 0 { 0.0 } else { tally.successes as f64 / n as f64 },
                success_interval: wilson(tally.successes, n, WILSON_Z),
                bad_event_counts: tally.bad,
                bad_event_freq: freq,
                bad_event_intervals: intervals,
                bad_event_bounds: bounds,
                flagged,
                failures_unclassified: tally.unclassified,
                mean_events: if n == 0 { 0.0 } else { tally.events as f64 / n as f64 },
                expected_events_bound: expected,
                wall_micros: tally.micros,
            })
        })
        .collect()
}

/// Runs every cell for `trials` seeds `base_seed + i`, in parallel.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    if config.cells.is_empty() {
        return Err(Error::InvalidParams("experiment grid is empty".into()));
    }
    for cell in &config.cells {
        cell_edges(cell, config.method)?;
    }
    let jobs: Vec<(usize, u64)> = (0..config.cells.len())
        .flat_map(|c| (0..config.trials as u64).map(move |i| (c, config.base_seed.wrapping_add(i))))
        .collect();
    let trials = jobs
        .par_iter()
        .map(|&(c, seed)| run_trial(config, c, seed))
        .collect::<Result<Vec<_>>>()?;
    let cells = summarize(config, &trials)?;
    Ok(ExperimentReport {
        config: config.clone(),
        cells,
        trials,
    })
}
