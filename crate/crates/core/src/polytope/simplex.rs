//! Dense two-phase primal simplex over exact rationals, with Bland's
//! rule for termination. Sized for desk-scale systems: tens of rows for
//! the region pipelines, a few hundred for the Shannon prover.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use super::{LinIneq, LinSystem, Rational, Relation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Rel {
    Le,
    Eq,
}

/// An LP in standard orientation: all structural variables nonnegative,
/// rows are `a.x REL b`.
pub(crate) struct StdLp {
    pub ncols: usize,
    pub rows: Vec<(Vec<Rational>, Rel, Rational)>,
}

pub(crate) enum StdOutcome {
    Infeasible {
        /// Row multipliers proving Farkas infeasibility.
        farkas: Vec<Rational>,
    },
    Unbounded,
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        /// One dual per input row, in input orientation.
        duals: Vec<Rational>,
    },
}

struct Tableau {
    /// m x (ncols_total + 1), last column is rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols_total: usize,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
    /// Per input row: (identity column, sign flip applied).
    identity: Vec<(usize, bool)>,
    n_struct: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols_total]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &factor;
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let mult = self.rows[i][col].clone();
            for j in 0..=self.ncols_total {
                let delta = &self.rows[row][j] * &mult;
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Maximize `cost` (length ncols_total). Returns None when
    /// unbounded. The basis on entry must be feasible.
    ///
    /// The reduced-cost row is maintained incrementally; entering
    /// columns are chosen by largest reduced cost, falling back to
    /// Bland's rule after a budget of degenerate pivots so the method
    /// still terminates on cycling instances.
    fn optimize(&mut self, cost: &[Rational]) -> Option<()> {
        // objrow[j] = c_j - z_j for the current basis.
        let mut objrow: Vec<Rational> = cost.to_vec();
        objrow.push(Rational::zero());
        for (k, row) in self.rows.iter().enumerate() {
            let cb = cost[self.basis[k]].clone();
            if cb.is_zero() {
                continue;
            }
            for (o, v) in objrow.iter_mut().zip(row.iter()) {
                if !v.is_zero() {
                    *o -= &cb * v;
                }
            }
        }
        let mut in_basis = vec![false; self.ncols_total];
        for &b in &self.basis {
            in_basis[b] = true;
        }
        let mut degenerate_streak = 0usize;
        let bland_after = 8 * (self.rows.len() + self.ncols_total);
        loop {
            let bland = degenerate_streak > bland_after;
            let mut entering: Option<usize> = None;
            for j in 0..self.ncols_total {
                if !self.allowed[j] || in_basis[j] || !objrow[j].is_positive() {
                    continue;
                }
                match entering {
                    None => entering = Some(j),
                    Some(_) if bland => break,
                    Some(e) => {
                        if objrow[j] > objrow[e] {
                            entering = Some(j);
                        }
                    }
                }
            }
            let col = match entering {
                Some(c) => c,
                None => return Some(()),
            };
            // Ratio test with Bland tie-break on basis column index.
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, ratio)) => {
                    if ratio.is_zero() {
                        degenerate_streak += 1;
                    } else {
                        degenerate_streak = 0;
                    }
                    in_basis[self.basis[row]] = false;
                    in_basis[col] = true;
                    self.pivot(row, col);
                    // Keep the reduced-cost row in sync with the pivot.
                    let mult = objrow[col].clone();
                    if !mult.is_zero() {
                        let prow = &self.rows[row];
                        for (o, v) in objrow.iter_mut().zip(prow.iter()) {
                            if !v.is_zero() {
                                *o -= &mult * v;
                            }
                        }
                    }
                }
                None => return None,
            }
        }
    }

    /// Simplex multipliers y = c_B B^-1, one per tableau row, computed
    /// from the current basis representation.
    fn row_prices(&self, cost: &[Rational]) -> Vec<Rational> {
        // In a contiguous tableau the row i of the current system is
        // (B^-1 A)_i, so y_i is recovered from the identity columns:
        // y' . e_i appears in the identity column of row i. Equivalent
        // and simpler: y_i = sum_k cost[basis_k] * (B^-1)_{k,i}; the
        // k-th row's entry at row i's identity column is (B^-1)_{k,i}
        // (up to the recorded sign flip).
        let mut y = vec![Rational::zero(); self.rows.len()];
        for (i, price) in y.iter_mut().enumerate() {
            let (col, flipped) = self.identity[i];
            let mut acc = Rational::zero();
            for (k, row) in self.rows.iter().enumerate() {
                let cb = &cost[self.basis[k]];
                if !cb.is_zero() && !row[col].is_zero() {
                    acc += cb * &row[col];
                }
            }
            *price = if flipped { -acc } else { acc };
        }
        y
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

pub(crate) fn solve(lp: &StdLp, objective: &[Rational]) -> StdOutcome {
    assert_eq!(objective.len(), lp.ncols);
    let m = lp.rows.len();
    if m == 0 {
        // Maximize over the nonnegative orthant with no constraints.
        if objective.iter().any(|c| c.is_positive()) {
            return StdOutcome::Unbounded;
        }
        return StdOutcome::Optimal {
            x: vec![Rational::zero(); lp.ncols],
            value: Rational::zero(),
            duals: vec![],
        };
    }
    let n_struct = lp.ncols;
    let n_slack = lp.rows.iter().filter(|(_, rel, _)| *rel == Rel::Le).count();
    let total = n_struct + n_slack + m; // artificials for every row
    let mut rows = Vec::with_capacity(m);
    let mut identity = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut allowed = vec![true; total];
    let mut slack_idx = 0usize;
    for (i, (coeffs, rel, rhs)) in lp.rows.iter().enumerate() {
        let flip = rhs.is_negative();
        let sign = if flip {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut row = vec![Rational::zero(); total + 1];
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = c * &sign;
        }
        let mut slack_col = None;
        if *rel == Rel::Le {
            let col = n_struct + slack_idx;
            slack_idx += 1;
            row[col] = sign.clone();
            slack_col = Some(col);
        }
        let art_col = n_struct + n_slack + i;
        row[art_col] = Rational::one();
        row[total] = rhs * &sign;
        // Start from the artificial basis except where the slack can
        // serve directly.
        let start = match slack_col {
            Some(col) if !flip => {
                allowed[art_col] = false;
                col
            }
            _ => art_col,
        };
        // Record the artificial column as the identity handle for dual
        // extraction; it is e_i by construction.
        identity.push((art_col, flip));
        basis.push(start);
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        basis,
        ncols_total: total,
        allowed,
        identity,
        n_struct,
    };
    // Phase 1: maximize -(sum of artificials in basis).
    let mut phase1 = vec![Rational::zero(); total];
    for i in 0..m {
        phase1[n_struct + n_slack + i] = -Rational::one();
    }
    // Clear the cost of artificials that never entered the basis.
    tab.optimize(&phase1)
        .expect("phase-1 objective is bounded by construction");
    let infeasibility: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n_struct + n_slack)
        .map(|(i, _)| tab.rhs(i).clone())
        .sum();
    if infeasibility.is_positive() {
        let y = tab.row_prices(&phase1);
        // Farkas multipliers in input orientation: phase-1 duals.
        return StdOutcome::Infeasible { farkas: y };
    }
    // Drive residual artificials out of the basis where possible.
    for i in 0..m {
        if tab.basis[i] >= n_struct + n_slack {
            if let Some(col) = (0..n_struct + n_slack)
                .find(|&j| tab.allowed[j] && !tab.rows[i][j].is_zero())
            {
                tab.pivot(i, col);
            }
        }
    }
    // Bar artificials from phase 2.
    for j in n_struct + n_slack..total {
        tab.allowed[j] = false;
    }
    let mut phase2 = vec![Rational::zero(); total];
    phase2[..n_struct].clone_from_slice(objective);
    if tab.optimize(&phase2).is_none() {
        return StdOutcome::Unbounded;
    }
    let x = tab.solution();
    let value: Rational = objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .sum();
    let duals = tab.row_prices(&phase2);
    StdOutcome::Optimal { x, value, duals }
}

// ---------------------------------------------------------------------
// Named-variable wrappers over LinSystem rows.
// ---------------------------------------------------------------------

/// Maximize a named linear objective subject to closed rows (Le or Eq
/// only; strict rows must be relaxed by the caller).
#[allow(dead_code)] // the optimum point aids debugging and tests
pub(crate) enum LpOutcome {
    Optimal(Rational, BTreeMap<String, Rational>),
    Unbounded,
    Infeasible,
}

pub(crate) fn maximize(
    objective: &BTreeMap<String, Rational>,
    rows: &[LinIneq],
    variables: &[String],
) -> LpOutcome {
    // Free variables split as x = xp - xm.
    let ncols = variables.len() * 2;
    let col = |name: &str| -> usize { variables.iter().position(|v| v == name).unwrap() * 2 };
    let std_rows = rows
        .iter()
        .map(|r| {
            debug_assert_ne!(r.relation, Relation::Lt, "caller must close strict rows");
            let mut coeffs = vec![Rational::zero(); ncols];
            for (v, c) in &r.coefficients {
                let j = col(v);
                coeffs[j] = c.clone();
                coeffs[j + 1] = -c.clone();
            }
            let rel = if r.relation == Relation::Eq {
                Rel::Eq
            } else {
                Rel::Le
            };
            (coeffs, rel, r.constant.clone())
        })
        .collect();
    let mut obj = vec![Rational::zero(); ncols];
    for (v, c) in objective {
        let j = col(v);
        obj[j] = c.clone();
        obj[j + 1] = -c.clone();
    }
    match solve(&StdLp { ncols, rows: std_rows }, &obj) {
        StdOutcome::Infeasible { .. } => LpOutcome::Infeasible,
        StdOutcome::Unbounded => LpOutcome::Unbounded,
        StdOutcome::Optimal { x, value, .. } => {
            let mut point = BTreeMap::new();
            for (i, v) in variables.iter().enumerate() {
                let val = &x[2 * i] - &x[2 * i + 1];
                point.insert(v.clone(), val);
            }
            LpOutcome::Optimal(value, point)
        }
    }
}

/// Feasibility verdict for a system with first-class strict rows.
#[derive(Debug, Clone)]
pub enum Feasibility {
    /// A witness point satisfying every row, strict rows strictly.
    Feasible(BTreeMap<String, Rational>),
    /// Nonnegative row multipliers certifying that no point exists
    /// (over the closed relaxation plus the strictness gap variable).
    Infeasible(Vec<Rational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Exact feasibility of a LinSystem. Strict rows are handled by a gap
/// variable t >= 0 added to each strict row's left side; the system is
/// strictly feasible iff max t > 0 (t capped at 1 to keep the LP
/// bounded).
pub fn is_feasible(system: &LinSystem) -> Feasibility {
    let nvars = system.variables.len();
    let ncols = nvars * 2 + 1; // split vars + gap variable t
    let t_col = nvars * 2;
    let col = |name: &str| -> usize {
        system
            .variables
            .iter()
            .position(|v| v == name)
            .expect("system invariant: row variables registered")
            * 2
    };
    let mut rows: Vec<(Vec<Rational>, Rel, Rational)> = Vec::new();
    for r in &system.rows {
        let mut coeffs = vec![Rational::zero(); ncols];
        for (v, c) in &r.coefficients {
            let j = col(v);
            coeffs[j] = c.clone();
            coeffs[j + 1] = -c.clone();
        }
        let rel = match r.relation {
            Relation::Eq => Rel::Eq,
            Relation::Le => Rel::Le,
            Relation::Lt => {
                coeffs[t_col] = Rational::one();
                Rel::Le
            }
        };
        rows.push((coeffs, rel, r.constant.clone()));
    }
    // Cap t so the LP stays bounded even when every strict row is slack.
    let mut cap = vec![Rational::zero(); ncols];
    cap[t_col] = Rational::one();
    rows.push((cap, Rel::Le, Rational::one()));
    let n_input_rows = system.rows.len();
    let mut obj = vec![Rational::zero(); ncols];
    obj[t_col] = Rational::one();
    match solve(&StdLp { ncols, rows }, &obj) {
        StdOutcome::Infeasible { farkas } => {
            Feasibility::Infeasible(farkas.into_iter().take(n_input_rows).collect())
        }
        StdOutcome::Unbounded => unreachable!("gap variable is capped"),
        StdOutcome::Optimal { x, value, duals } => {
            if value.is_positive() {
                let mut point = BTreeMap::new();
                for (i, v) in system.variables.iter().enumerate() {
                    point.insert(v.clone(), &x[2 * i] - &x[2 * i + 1]);
                }
                Feasibility::Feasible(point)
            } else {
                Feasibility::Infeasible(duals.into_iter().take(n_input_rows).collect())
            }
        }
    }
}
