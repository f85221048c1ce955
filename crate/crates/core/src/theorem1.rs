//! Randomized recoloring solver for (a:b)-colorings of sparse n-uniform
//! hypergraphs.
//!
//! Every vertex starts with a uniform random b-subset of `0..a` and a
//! uniform weight in `[0, 1)`. A vertex lighter than the threshold `p` that
//! lies in an initially monochromatic edge swaps one of the offending colors
//! for the next color (mod `a`) it does not already hold. Only initially
//! monochromatic edges trigger recoloring, and each vertex changes at most
//! one color.
//!
//! When the run ends with a monochromatic edge, [`classify_failure`] names
//! the bad event responsible:
//!
//! * `B1` an initially monochromatic edge whose vertices are all heavy;
//! * `B2` an edge that is initially monochromatic in two colors;
//! * `B3` a light vertex in two initially monochromatic edges of different colors;
//! * `B4` an edge made monochromatic by a recoloring triggered by another edge;
//! * `B5` the same, triggered by the edge itself.

use std::f64::consts::E;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{monochromatic_pairs, sample_fractional, ColorSet, FractionalColoring, MAX_PALETTE};
use crate::combinatorics::bits;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;

/// Weight threshold `(1/2) ln(n / ln n) / n` below which a vertex may recolor.
pub fn threshold_p(n: usize) -> Result<f64> {
    if n <= 2 {
        return Err(invalid(format!("threshold needs n >= 3, got {n}")));
    }
    let n = n as f64;
    Ok(0.5 * (n / n.ln()).ln() / n)
}

/// `2 <= b <= a - 2 <= n / (2 ln n)`.
pub fn in_theorem_regime(n: usize, a: u32, b: u32) -> bool {
    n >= 2 && b >= 2 && b + 2 <= a && f64::from(a - 2) <= n as f64 / (2.0 * (n as f64).ln())
}

/// Side conditions used when bounding the bad events: `a - b >= 2`,
/// `b >= 2`, `a >= 4`, `n > 5`, `a < n / ln n` and `a^{3/2} c < 1`.
pub fn proof_conditions_hold(n: usize, a: u32, b: u32, c: f64) -> bool {
    let (nf, af) = (n as f64, f64::from(a));
    a >= b + 2 && b >= 2 && a >= 4 && n > 5 && af < nf / nf.ln() && af.powf(1.5) * c < 1.0
}

/// Default constant `c = (a^3 b)^{-1/2}`.
pub fn default_c(a: u32, b: u32) -> f64 {
    (f64::from(a).powi(3) * f64::from(b)).powf(-0.5)
}

/// Edge count below which the solver succeeds with positive probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeBudget {
    /// `(a b^3)^{-1/2} (n / ln n)^{1/2} (a/b)^{n-1}`
    pub value: f64,
    pub ln_value: f64,
    /// `c (n / ln n)^{1/2} (a/b)^n` with `c = (a^3 b)^{-1/2}`; equal to `value`.
    pub proof_form_value: f64,
    pub regime_ok: bool,
    pub proof_conditions_ok: bool,
}

pub fn edge_budget_thm1(n: usize, a: u32, b: u32) -> Result<EdgeBudget> {
    if n < 2 || a == 0 || b == 0 {
        return Err(invalid(format!(
            "edge budget needs n >= 2 and a, b >= 1, got n = {n}, a = {a}, b = {b}"
        )));
    }
    let (nf, af, bf) = (n as f64, f64::from(a), f64::from(b));
    let ln_ratio = (af / bf).ln();
    let half_ln_n_over_ln = 0.5 * (nf / nf.ln()).ln();
    let ln_value = -0.5 * (af * bf.powi(3)).ln() + half_ln_n_over_ln + (nf - 1.0) * ln_ratio;
    let ln_proof = default_c(a, b).ln() + half_ln_n_over_ln + nf * ln_ratio;
    debug_assert!((ln_value - ln_proof).abs() <= 1e-12 * ln_value.abs().max(1.0));
    Ok(EdgeBudget {
        value: ln_value.exp(),
        ln_value,
        proof_form_value: ln_proof.exp(),
        regime_ok: in_theorem_regime(n, a, b),
        proof_conditions_ok: proof_conditions_hold(n, a, b, default_c(a, b)),
    })
}

/// Closed-form upper bounds on each bad event's probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BadEventBounds {
    pub c: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
    pub union: f64,
    pub regime_ok: bool,
    pub proof_conditions_ok: bool,
}

impl BadEventBounds {
    pub fn get(&self, class: BadEventClass) -> f64 {
        match class {
            BadEventClass::B1 => self.b1,
            BadEventClass::B2 => self.b2,
            BadEventClass::B3 => self.b3,
            BadEventClass::B4 => self.b4,
            BadEventClass::B5 => self.b5,
        }
    }
}

/// `B1 = a c`, `B2 = B5 = 1/n`, `B3 = a^3 c^2 b / (2e(a-b))`,
/// `B4 = a^3 c^2 / (e(a-b))`. `c` defaults to [`default_c`].
pub fn bad_event_bounds(n: usize, a: u32, b: u32, c: Option<f64>) -> Result<BadEventBounds> {
    if n == 0 || b == 0 || a <= b {
        return Err(invalid(format!(
            "bounds need n >= 1 and a > b >= 1, got n = {n}, a = {a}, b = {b}"
        )));
    }
    let c = c.unwrap_or_else(|| default_c(a, b));
    let (nf, af, bf) = (n as f64, f64::from(a), f64::from(b));
    let b1 = af * c;
    let b2 = 1.0 / nf;
    let b3 = af.powi(3) * c * c * bf / (2.0 * E * (af - bf));
    let b4 = af.powi(3) * c * c / (E * (af - bf));
    let b5 = 1.0 / nf;
    Ok(BadEventBounds {
        c,
        b1,
        b2,
        b3,
        b4,
        b5,
        union: b1 + b2 + b3 + b4 + b5,
        regime_ok: in_theorem_regime(n, a, b),
        proof_conditions_ok: proof_conditions_hold(n, a, b, c),
    })
}

/// The first color after `gamma` (cyclically mod `a`) missing from `cs`.
pub fn next_available_color(cs: ColorSet, gamma: u32) -> Result<u32> {
    let a = cs.palette_size();
    if !cs.contains(gamma) {
        return Err(invalid(format!("color {gamma} is not in the set {:?}", cs.members())));
    }
    if cs.len() == a {
        return Err(Error::FullPalette { palette: a });
    }
    (1..a)
        .map(|t| (gamma + t) % a)
        .find(|&c| !cs.contains(c))
        .ok_or(Error::FullPalette { palette: a })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub a: u32,
    pub b: u32,
    pub seed: u64,
    /// Replaces `threshold_p(n)` when set.
    pub p_override: Option<f64>,
}

impl SolverParams {
    pub fn new(a: u32, b: u32, seed: u64) -> Self {
        SolverParams {
            a,
            b,
            seed,
            p_override: None,
        }
    }
}

/// Per-vertex weights in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightAssignment {
    pub weights: Vec<f64>,
}

impl WeightAssignment {
    /// Vertices by increasing weight, ties broken by id.
    pub fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.weights.len()).collect();
        idx.sort_by(|&x, &y| self.weights[x].total_cmp(&self.weights[y]).then(x.cmp(&y)));
        idx
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecolorEvent {
    pub vertex: usize,
    pub removed_color: u32,
    pub added_color: u32,
    pub triggering_edge: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BadEventClass {
    B1,
    B2,
    B3,
    B4,
    B5,
}

impl BadEventClass {
    pub const ALL: [BadEventClass; 5] = [Self::B1, Self::B2, Self::B3, Self::B4, Self::B5];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for BadEventClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.index() + 1)
    }
}

/// A concrete witness of one bad event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadEvent {
    /// Initially monochromatic edge whose vertices all have weight `>= p`.
    HeavyMonochromatic { edge: usize, color: u32 },
    /// Edge initially monochromatic in two colors.
    DoubleMonochromatic { edge: usize, colors: (u32, u32) },
    /// Light vertex in two initially monochromatic edges with different colors.
    LightConflict {
        vertex: usize,
        edge_a: usize,
        color_a: u32,
        edge_b: usize,
        color_b: u32,
        overlap: usize,
    },
    /// `edge_a` ends monochromatic in `color_a`; the last vertex to gain
    /// `color_a` did so because `edge_b != edge_a` was monochromatic in `color_b`.
    CrossRecolor {
        edge_a: usize,
        color_a: u32,
        vertex: usize,
        edge_b: usize,
        color_b: u32,
        overlap: usize,
        offset: u32,
    },
    /// As `CrossRecolor`, with the triggering edge equal to `edge`.
    SelfRecolor {
        edge: usize,
        color_a: u32,
        vertex: usize,
        color_b: u32,
        offset: u32,
    },
}

impl BadEvent {
    pub fn class(&self) -> BadEventClass {
        match self {
            BadEvent::HeavyMonochromatic { .. } => BadEventClass::B1,
            BadEvent::DoubleMonochromatic { .. } => BadEventClass::B2,
            BadEvent::LightConflict { .. } => BadEventClass::B3,
            BadEvent::CrossRecolor { .. } => BadEventClass::B4,
            BadEvent::SelfRecolor { .. } => BadEventClass::B5,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadEventReport {
    pub witnesses: Vec<BadEvent>,
}

impl BadEventReport {
    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn has(&self, class: BadEventClass) -> bool {
        self.witnesses.iter().any(|w| w.class() == class)
    }

    /// Occurrence flag per class, indexed `B1..=B5`.
    pub fn flags(&self) -> [bool; 5] {
        let mut f = [false; 5];
        for w in &self.witnesses {
            f[w.class().index()] = true;
        }
        f
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SolveStatus {
    Proper,
    Failed(BadEventReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub threshold: f64,
    pub regime_ok: bool,
    pub initial_coloring: FractionalColoring,
    pub weights: WeightAssignment,
    pub events: Vec<RecolorEvent>,
    pub final_coloring: FractionalColoring,
    pub status: SolveStatus,
}

impl SolveOutcome {
    pub fn is_proper(&self) -> bool {
        matches!(self.status, SolveStatus::Proper)
    }
}

pub fn solve_theorem1(h: &Hypergraph, params: &SolverParams) -> Result<SolveOutcome> {
    let (a, b) = (params.a, params.b);
    if a > MAX_PALETTE || b == 0 || b >= a {
        return Err(invalid(format!(
            "solver needs 1 <= b < a <= {MAX_PALETTE}, got a = {a}, b = {b}"
        )));
    }
    let n = h.uniformity();
    let p = match params.p_override {
        Some(p) if p > 0.0 && p < 1.0 => p,
        Some(p) => return Err(invalid(format!("threshold must lie in (0, 1), got {p}"))),
        None => threshold_p(n)?,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let initial = sample_fractional(h.vertex_count(), a, b, &mut rng)?;
    let weights = WeightAssignment {
        weights: (0..h.vertex_count()).map(|_| rng.gen::<f64>()).collect(),
    };

    let mono = monochromatic_pairs(h, &initial)?;
    let mut trigger = vec![0u64; h.vertex_count()];
    for &(e, g) in &mono {
        for &v in h.edge(e) {
            trigger[v] |= 1 << g;
        }
    }
    let incidence = h.incidence();

    let mut final_coloring = initial.clone();
    let mut events = Vec::new();
    for v in weights.order() {
        let w = weights.weights[v];
        if w >= p {
            break;
        }
        let colors = trigger[v];
        if colors == 0 {
            continue;
        }
        let k = colors.count_ones() as usize;
        let pick = if k == 1 { 0 } else { rng.gen_range(0..k) };
        let gamma = bits(colors).nth(pick).expect("pick < popcount");
        let edge = incidence[v]
            .iter()
            .copied()
            .find(|&e| initial.common_colors(h.edge(e)) & (1 << gamma) != 0)
            .expect("trigger color comes from an incident edge");
        let cs = initial.get(v);
        let added = next_available_color(cs, gamma)?;
        *final_coloring.set_mut(v) = cs.replace(gamma, added);
        events.push(RecolorEvent {
            vertex: v,
            removed_color: gamma,
            added_color: added,
            triggering_edge: edge,
            weight: w,
        });
    }

    let mut outcome = SolveOutcome {
        threshold: p,
        regime_ok: in_theorem_regime(n, a, b),
        initial_coloring: initial,
        weights,
        events,
        final_coloring,
        status: SolveStatus::Proper,
    };
    let failed = h.edges().iter().any(|e| outcome.final_coloring.common_colors(e) != 0);
    if failed {
        outcome.status = SolveStatus::Failed(classify_failure(h, &outcome)?);
    }
    Ok(outcome)
}

/// Scans an outcome for every bad event. `B1`-`B3` depend only on the
/// initial data and are reported even for successful runs; `B4`/`B5` are
/// reported for each edge that ends monochromatic in a color it did not
/// initially share.
pub fn classify_failure(h: &Hypergraph, outcome: &SolveOutcome) -> Result<BadEventReport> {
    let initial = &outcome.initial_coloring;
    let fin = &outcome.final_coloring;
    let w = &outcome.weights.weights;
    let p = outcome.threshold;
    let a = initial.a();
    if initial.len() != h.vertex_count() || fin.len() != h.vertex_count() || w.len() != h.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: h.vertex_count(),
            found: initial.len(),
        });
    }

    let initial_common: Vec<u64> = h.edges().iter().map(|e| initial.common_colors(e)).collect();
    let mut witnesses = Vec::new();

    for (i, e) in h.edges().iter().enumerate() {
        let common = initial_common[i];
        if common != 0 && e.iter().all(|&v| w[v] >= p) {
            for color in bits(common) {
                witnesses.push(BadEvent::HeavyMonochromatic { edge: i, color });
            }
        }
        if common.count_ones() >= 2 {
            let mut cs = bits(common);
            let (c0, c1) = (cs.next().unwrap(), cs.next().unwrap());
            witnesses.push(BadEvent::DoubleMonochromatic {
                edge: i,
                colors: (c0, c1),
            });
        }
    }

    let incidence = h.incidence();
    for v in 0..h.vertex_count() {
        if w[v] >= p {
            continue;
        }
        let mono: Vec<(usize, u32)> = incidence[v]
            .iter()
            .flat_map(|&e| bits(initial_common[e]).map(move |c| (e, c)))
            .collect();
        let found = mono.iter().enumerate().find_map(|(i, &(ea, ca))| {
            mono[i + 1..]
                .iter()
                .find(|&&(eb, cb)| eb != ea && cb != ca)
                .map(|&(eb, cb)| (ea, ca, eb, cb))
        });
        if let Some((edge_a, color_a, edge_b, color_b)) = found {
            witnesses.push(BadEvent::LightConflict {
                vertex: v,
                edge_a,
                color_a,
                edge_b,
                color_b,
                overlap: overlap(h.edge(edge_a), h.edge(edge_b)),
            });
        }
    }

    for (i, e) in h.edges().iter().enumerate() {
        let fresh = fin.common_colors(e) & !initial_common[i];
        for color_a in bits(fresh) {
            // events are stored in processing order, so the last match is the
            // last vertex of the edge to gain color_a
            let last = outcome
                .events
                .iter()
                .rev()
                .find(|ev| ev.added_color == color_a && e.binary_search(&ev.vertex).is_ok())
                .expect("a color absent initially must have been added");
            let color_b = last.removed_color;
            let offset = (color_a + a - color_b) % a;
            witnesses.push(if last.triggering_edge == i {
                BadEvent::SelfRecolor {
                    edge: i,
                    color_a,
                    vertex: last.vertex,
                    color_b,
                    offset,
                }
            } else {
                BadEvent::CrossRecolor {
                    edge_a: i,
                    color_a,
                    vertex: last.vertex,
                    edge_b: last.triggering_edge,
                    color_b,
                    overlap: overlap(e, h.edge(last.triggering_edge)),
                    offset,
                }
            });
        }
    }

    Ok(BadEventReport { witnesses })
}

fn overlap(x: &[usize], y: &[usize]) -> usize {
    x.iter().filter(|v| y.binary_search(v).is_ok()).count()
}
