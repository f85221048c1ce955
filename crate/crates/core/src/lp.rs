//! Dense two-phase simplex over exact rationals.
//!
//! Sized for the small covering/packing programs used to compute fractional
//! chromatic numbers: a few dozen rows and columns. Bland's rule is used for
//! both the entering and leaving variable, so degenerate programs terminate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// `optimize c.x subject to rows, x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Q>,
    pub rows: Vec<(Vec<Q>, Relation, Q)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Q,
    pub x: Vec<Q>,
    /// One multiplier per row, signed so that `b.y == value` and `y` is
    /// feasible for the dual program.
    pub duals: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

pub fn int(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Q], j: usize) -> Q {
        let mut d = cost[j].clone();
        for (i, &bv) in self.basis.iter().enumerate() {
            if !cost[bv].is_zero() && !self.rows[i][j].is_zero() {
                d -= &cost[bv] * &self.rows[i][j];
            }
        }
        d
    }

    /// Maximizes `cost` over the current basis. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width)
                .find(|&j| allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.rows.len();

    // rhs >= 0 after optional negation
    let mut negated = vec![false; m];
    let mut rels = Vec::with_capacity(m);
    for (i, (coef, rel, rhs)) in lp.rows.iter().enumerate() {
        assert_eq!(coef.len(), n, "row {i} has the wrong number of coefficients");
        if rhs.is_negative() {
            negated[i] = true;
            rels.push(match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            });
        } else {
            rels.push(*rel);
        }
    }

    // columns: originals, one slack/surplus per inequality row, one artificial per >=/= row
    let mut col = n;
    let mut slack_col = vec![None; m];
    for (i, rel) in rels.iter().enumerate() {
        if *rel != Relation::Eq {
            slack_col[i] = Some(col);
            col += 1;
        }
    }
    let mut art_col = vec![None; m];
    for (i, rel) in rels.iter().enumerate() {
        if *rel != Relation::Le {
            art_col[i] = Some(col);
            col += 1;
        }
    }
    let width = col;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut id_col = Vec::with_capacity(m);
    for (i, (coef, _, rhs)) in lp.rows.iter().enumerate() {
        let sign = if negated[i] { -Q::one() } else { Q::one() };
        let mut row = vec![Q::zero(); width + 1];
        for (j, c) in coef.iter().enumerate() {
            row[j] = c * &sign;
        }
        row[width] = rhs * &sign;
        if let Some(s) = slack_col[i] {
            row[s] = if rels[i] == Relation::Le { Q::one() } else { -Q::one() };
        }
        let ident = match rels[i] {
            Relation::Le => slack_col[i].unwrap(),
            _ => art_col[i].unwrap(),
        };
        row[ident] = Q::one();
        rows.push(row);
        basis.push(ident);
        id_col.push(ident);
    }
    let mut t = Tableau { rows, basis, width };

    let is_art: Vec<bool> = (0..width).map(|j| art_col.contains(&Some(j))).collect();
    if is_art.iter().any(|&x| x) {
        let cost: Vec<Q> = is_art.iter().map(|&a| if a { -Q::one() } else { Q::zero() }).collect();
        let all = vec![true; width];
        t.optimize(&cost, &all);
        let infeasible = (0..m).any(|i| is_art[t.basis[i]] && !t.rhs(i).is_zero());
        if infeasible {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out where possible
        for i in 0..m {
            if is_art[t.basis[i]] {
                if let Some(j) = (0..width).find(|&j| !is_art[j] && !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                }
            }
        }
    }

    let flip = lp.sense == Sense::Minimize;
    let mut cost = vec![Q::zero(); width];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = if flip { -c.clone() } else { c.clone() };
    }
    let allowed: Vec<bool> = is_art.iter().map(|&a| !a).collect();
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Q::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs(i).clone();
        }
    }
    let mut value: Q = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    if value.is_zero() {
        value = Q::zero();
    }

    let duals = (0..m)
        .map(|i| {
            let mut y = Q::zero();
            for (r, &bv) in t.basis.iter().enumerate() {
                if !cost[bv].is_zero() {
                    y += &cost[bv] * &t.rows[r][id_col[i]];
                }
            }
            if negated[i] {
                y = -y;
            }
            if flip {
                y = -y;
            }
            y
        })
        .collect();

    LpOutcome::Optimal(LpSolution { value, x, duals })
}
