//! Dense two-phase primal simplex with bounded variables.
//!
//! Variables without a finite lower bound are mirrored or split first. The
//! rest are shifted to `[0, hi - lo]`; finite upper bounds are handled
//! by the bounded-variable ratio test instead of extra rows. Pricing is
//! Dantzig's rule until `10 * num_vars` consecutive degenerate pivots have
//! been made in a phase, after which Bland's rule is used for the rest of
//! that phase.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear row `sum(coef * x[var]) (relation) rhs`, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A minimization LP with per-variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    /// `(lo, hi)` per variable; `lo` must be finite, `hi` may be `+inf`.
    pub bounds: Vec<(f64, f64)>,
}

impl LpModel {
    /// A model with zero objective and bounds `[0, +inf)` on every variable.
    pub fn new(num_vars: usize) -> Self {
        LpModel {
            num_vars,
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); num_vars],
        }
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// Objective value of an arbitrary point.
    pub fn objective_at(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    /// Largest absolute violation over all rows at `values`.
    pub fn max_constraint_violation(&self, values: &[f64]) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let lhs: f64 = c.terms.iter().map(|&(k, a)| a * values[k]).sum();
                match c.relation {
                    Relation::Le => (lhs - c.rhs).max(0.0),
                    Relation::Ge => (c.rhs - lhs).max(0.0),
                    Relation::Eq => (lhs - c.rhs).abs(),
                }
            })
            .fold(0.0, f64::max)
    }

    /// Largest absolute bound violation at `values`.
    pub fn max_bound_violation(&self, values: &[f64]) -> f64 {
        self.bounds
            .iter()
            .zip(values)
            .map(|(&(lo, hi), &x)| (lo - x).max(x - hi).max(0.0))
            .fold(0.0, f64::max)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::MalformedModel(msg));
        if self.objective.len() != self.num_vars {
            return bad(format!(
                "objective has {} coefficients for {} variables",
                self.objective.len(),
                self.num_vars
            ));
        }
        if self.bounds.len() != self.num_vars {
            return bad(format!("{} bounds for {} variables", self.bounds.len(), self.num_vars));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return bad("non-finite objective coefficient".into());
        }
        for (k, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo == f64::INFINITY || hi == f64::NEG_INFINITY || lo > hi {
                return bad(format!("variable {k} has invalid bounds [{lo}, {hi}]"));
            }
        }
        for (r, c) in self.constraints.iter().enumerate() {
            if !c.rhs.is_finite() {
                return bad(format!("row {r} has a non-finite right-hand side"));
            }
            for &(k, a) in &c.terms {
                if k >= self.num_vars {
                    return bad(format!("row {r} references variable {k} of {}", self.num_vars));
                }
                if !a.is_finite() {
                    return bad(format!("row {r} has a non-finite coefficient"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal objective; `+inf` when infeasible and `-inf` when unbounded.
    pub objective_value: f64,
    /// Variable values; empty unless the status is `Optimal`.
    pub values: Vec<f64>,
}

/// Solves `m` to optimality or reports infeasibility/unboundedness.
pub fn solve_lp(m: &LpModel) -> Result<LpSolution> {
    m.validate()?;
    if m.bounds.iter().all(|b| b.0.is_finite()) {
        return solve_finite_lower(m);
    }
    let (standard, columns) = finite_lower_form(m);
    let mut sol = solve_finite_lower(&standard)?;
    if sol.status == LpStatus::Optimal {
        sol.values = columns.iter().map(|col| col.value(&sol.values)).collect();
    }
    Ok(sol)
}

/// Where an original variable lives after removing infinite lower bounds.
enum Column {
    Same(usize),
    Mirrored(usize),
    Split(usize, usize),
}

impl Column {
    fn value(&self, v: &[f64]) -> f64 {
        match *self {
            Column::Same(k) => v[k],
            Column::Mirrored(k) => -v[k],
            Column::Split(pos, neg) => v[pos] - v[neg],
        }
    }
}

/// Rewrites `x` with an infinite lower bound as `-x'` when its upper bound
/// is finite and as `x+ - x-` when it is free.
fn finite_lower_form(m: &LpModel) -> (LpModel, Vec<Column>) {
    let mut columns = Vec::with_capacity(m.num_vars);
    let mut extra = 0;
    for (k, &(lo, hi)) in m.bounds.iter().enumerate() {
        columns.push(if lo.is_finite() {
            Column::Same(k)
        } else if hi.is_finite() {
            Column::Mirrored(k)
        } else {
            extra += 1;
            Column::Split(k, m.num_vars + extra - 1)
        });
    }
    let mut out = LpModel::new(m.num_vars + extra);
    for (k, col) in columns.iter().enumerate() {
        let (lo, hi) = m.bounds[k];
        let c = m.objective[k];
        match *col {
            Column::Same(_) => {
                out.objective[k] = c;
                out.bounds[k] = (lo, hi);
            }
            Column::Mirrored(_) => {
                out.objective[k] = -c;
                out.bounds[k] = (-hi, f64::INFINITY);
            }
            Column::Split(pos, neg) => {
                out.objective[pos] = c;
                out.objective[neg] = -c;
            }
        }
    }
    for con in &m.constraints {
        let mut terms = Vec::with_capacity(con.terms.len());
        for &(k, a) in &con.terms {
            match columns[k] {
                Column::Same(j) => terms.push((j, a)),
                Column::Mirrored(j) => terms.push((j, -a)),
                Column::Split(pos, neg) => {
                    terms.push((pos, a));
                    terms.push((neg, -a));
                }
            }
        }
        out.add_constraint(terms, con.relation, con.rhs);
    }
    (out, columns)
}

fn solve_finite_lower(m: &LpModel) -> Result<LpSolution> {
    let mut t = Tableau::build(m);
    let cap = 50 * (m.num_vars + m.num_constraints()).max(1);
    let degenerate_limit = 10 * m.num_vars.max(1);
    let mut iterations = 0;

    if t.num_artificial > 0 {
        t.set_phase_one_costs();
        match t.run(&mut iterations, cap, degenerate_limit)? {
            Outcome::Optimal => {}
            // The phase-one objective is bounded below by zero.
            Outcome::Unbounded => return Err(Error::NumericalFailure("phase one reported unbounded".into())),
        }
        let scale = 1.0 + t.rhs_scale;
        if t.objective > tol::FEASIBILITY * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                objective_value: f64::INFINITY,
                values: Vec::new(),
            });
        }
        t.drive_out_artificials();
    }

    t.set_phase_two_costs(m);
    match t.run(&mut iterations, cap, degenerate_limit)? {
        Outcome::Unbounded => {
            return Ok(LpSolution {
                status: LpStatus::Unbounded,
                objective_value: f64::NEG_INFINITY,
                values: Vec::new(),
            })
        }
        Outcome::Optimal => {}
    }

    let values = t.extract(m);
    let objective_value = t.objective + t.objective_offset;
    let violation = m.max_constraint_violation(&values);
    if violation > tol::FEASIBILITY {
        return Err(Error::NumericalFailure(format!(
            "returned point violates a constraint by {violation:e}"
        )));
    }
    Ok(LpSolution { status: LpStatus::Optimal, objective_value, values })
}

enum Outcome {
    Optimal,
    Unbounded,
}

enum Step {
    /// Entering variable moves to its opposite bound; basis unchanged.
    Flip,
    /// Pivot on this row; the leaving variable ends at its upper bound if true.
    Pivot(usize, bool),
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// Row-major `rows x cols`, the current `B^-1 A`.
    a: Vec<f64>,
    /// Values of the basic variables.
    beta: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    at_upper: Vec<bool>,
    upper: Vec<f64>,
    cost: Vec<f64>,
    reduced: Vec<f64>,
    objective: f64,
    objective_offset: f64,
    /// Columns that may never enter the basis.
    barred: Vec<bool>,
    first_artificial: usize,
    num_artificial: usize,
    rhs_scale: f64,
}

impl Tableau {
    fn build(m: &LpModel) -> Self {
        let nv = m.num_vars;
        let rows = m.num_constraints();
        let num_slack = m.constraints.iter().filter(|c| c.relation != Relation::Eq).count();

        // Shifted right-hand sides and row signs, so that every rhs is >= 0.
        let mut rhs = Vec::with_capacity(rows);
        let mut sign = Vec::with_capacity(rows);
        for c in &m.constraints {
            let shift: f64 = c.terms.iter().map(|&(k, a)| a * m.bounds[k].0).sum();
            let b = c.rhs - shift;
            sign.push(if b < 0.0 { -1.0 } else { 1.0 });
            rhs.push(b.abs());
        }
        // A slack with coefficient +1 after sign normalization can start basic.
        let slack_starts_basic: Vec<bool> = m
            .constraints
            .iter()
            .zip(&sign)
            .map(|(c, &s)| match c.relation {
                Relation::Le => s > 0.0,
                Relation::Ge => s < 0.0,
                Relation::Eq => false,
            })
            .collect();
        let num_artificial = slack_starts_basic.iter().filter(|&&b| !b).count();
        let first_artificial = nv + num_slack;
        let cols = first_artificial + num_artificial;

        let mut a = vec![0.0; rows * cols];
        let mut basis = vec![0; rows];
        let mut upper = vec![f64::INFINITY; cols];
        for (k, &(lo, hi)) in m.bounds.iter().enumerate() {
            upper[k] = hi - lo;
        }
        let mut slack = nv;
        let mut artificial = first_artificial;
        for (r, c) in m.constraints.iter().enumerate() {
            let row = &mut a[r * cols..(r + 1) * cols];
            for &(k, coef) in &c.terms {
                row[k] += sign[r] * coef;
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = sign[r];
                }
                Relation::Ge => {
                    row[slack] = -sign[r];
                }
                Relation::Eq => {}
            }
            if slack_starts_basic[r] {
                basis[r] = slack;
            } else {
                row[artificial] = 1.0;
                basis[r] = artificial;
                artificial += 1;
            }
            if c.relation != Relation::Eq {
                slack += 1;
            }
        }
        let mut is_basic = vec![false; cols];
        for &b in &basis {
            is_basic[b] = true;
        }
        let objective_offset = m.objective.iter().zip(&m.bounds).map(|(c, &(lo, _))| c * lo).sum();
        let rhs_scale = rhs.iter().copied().fold(0.0, f64::max);
        Tableau {
            rows,
            cols,
            a,
            beta: rhs,
            basis,
            is_basic,
            at_upper: vec![false; cols],
            upper,
            cost: vec![0.0; cols],
            reduced: vec![0.0; cols],
            objective: 0.0,
            objective_offset,
            barred: vec![false; cols],
            first_artificial,
            num_artificial,
            rhs_scale,
        }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * self.cols + c]
    }

    fn value_of_nonbasic(&self, j: usize) -> f64 {
        if self.at_upper[j] {
            self.upper[j]
        } else {
            0.0
        }
    }

    /// Recomputes reduced costs and the objective for the current `cost`.
    fn price(&mut self) {
        self.reduced.copy_from_slice(&self.cost);
        let mut objective = 0.0;
        for r in 0..self.rows {
            let cb = self.cost[self.basis[r]];
            objective += cb * self.beta[r];
            if cb != 0.0 {
                let row = &self.a[r * self.cols..(r + 1) * self.cols];
                for (d, &x) in self.reduced.iter_mut().zip(row) {
                    *d -= cb * x;
                }
            }
        }
        for j in 0..self.cols {
            if !self.is_basic[j] && self.at_upper[j] {
                objective += self.cost[j] * self.upper[j];
            }
        }
        for &b in &self.basis {
            self.reduced[b] = 0.0;
        }
        self.objective = objective;
    }

    fn set_phase_one_costs(&mut self) {
        self.cost.iter_mut().for_each(|c| *c = 0.0);
        for j in self.first_artificial..self.cols {
            self.cost[j] = 1.0;
        }
        self.price();
    }

    fn set_phase_two_costs(&mut self, m: &LpModel) {
        self.cost.iter_mut().for_each(|c| *c = 0.0);
        self.cost[..m.num_vars].copy_from_slice(&m.objective);
        for j in self.first_artificial..self.cols {
            self.barred[j] = true;
        }
        self.price();
    }

    /// Pivots basic artificials out where a structural column allows it.
    /// Rows where none does are redundant and keep their artificial at zero.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows {
            if self.basis[r] < self.first_artificial {
                continue;
            }
            let entering = (0..self.first_artificial)
                .filter(|&j| !self.is_basic[j])
                .find(|&j| self.at(r, j).abs() > tol::PIVOT);
            if let Some(j) = entering {
                self.beta[r] = 0.0;
                self.pivot(r, j, 0.0, 1.0, false);
            }
        }
    }

    fn choose_entering(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.cols {
            if self.is_basic[j] || self.barred[j] {
                continue;
            }
            let d = self.reduced[j];
            let direction = if !self.at_upper[j] && d < -tol::PIVOT {
                1.0
            } else if self.at_upper[j] && d > tol::PIVOT {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, direction));
            }
            if best.is_none_or(|(b, _)| d.abs() > self.reduced[b].abs()) {
                best = Some((j, direction));
            }
        }
        best
    }

    /// Bounded ratio test for column `j` moving in `direction`.
    fn ratio_test(&self, j: usize, direction: f64, bland: bool) -> Option<(f64, Step)> {
        const TIE: f64 = 1e-12;
        let mut best_step = self.upper[j];
        let mut best = if best_step.is_finite() { Some(Step::Flip) } else { None };
        let mut best_alpha = 0.0f64;
        for r in 0..self.rows {
            let alpha = direction * self.at(r, j);
            let (limit, to_upper) = if alpha > tol::PIVOT {
                ((self.beta[r] / alpha).max(0.0), false)
            } else if alpha < -tol::PIVOT {
                let u = self.upper[self.basis[r]];
                if !u.is_finite() {
                    continue;
                }
                (((u - self.beta[r]) / -alpha).max(0.0), true)
            } else {
                continue;
            };
            let better = match best {
                None => true,
                Some(_) if limit < best_step - TIE => true,
                Some(Step::Flip) => false,
                Some(Step::Pivot(row, _)) if limit <= best_step + TIE => {
                    if bland {
                        self.basis[r] < self.basis[row]
                    } else {
                        alpha.abs() > best_alpha.abs()
                    }
                }
                Some(_) => false,
            };
            if better {
                best_step = limit;
                best_alpha = alpha;
                best = Some(Step::Pivot(r, to_upper));
            }
        }
        best.map(|s| (best_step, s))
    }

    /// Moves column `j` by `step` in `direction`, then makes it basic in row `r`.
    fn pivot(&mut self, r: usize, j: usize, step: f64, direction: f64, leaving_to_upper: bool) {
        let entering_value = self.value_of_nonbasic(j) + direction * step;
        if step != 0.0 {
            for i in 0..self.rows {
                self.beta[i] -= direction * step * self.at(i, j);
            }
            self.objective += self.reduced[j] * direction * step;
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.at_upper[leaving] = leaving_to_upper;
        self.is_basic[j] = true;
        self.at_upper[j] = false;
        self.basis[r] = j;
        self.beta[r] = entering_value;

        let cols = self.cols;
        let p = self.at(r, j);
        let mut pivot_row: Vec<f64> = self.a[r * cols..(r + 1) * cols].to_vec();
        for x in &mut pivot_row {
            *x /= p;
        }
        pivot_row[j] = 1.0;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * cols + j];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.a[i * cols..(i + 1) * cols];
            for (x, &pr) in row.iter_mut().zip(&pivot_row) {
                *x -= f * pr;
            }
            row[j] = 0.0;
        }
        let f = self.reduced[j];
        if f != 0.0 {
            for (d, &pr) in self.reduced.iter_mut().zip(&pivot_row) {
                *d -= f * pr;
            }
            self.reduced[j] = 0.0;
        }
        self.a[r * cols..(r + 1) * cols].copy_from_slice(&pivot_row);
    }

    fn run(&mut self, iterations: &mut usize, cap: usize, degenerate_limit: usize) -> Result<Outcome> {
        let mut degenerate_run = 0;
        let mut bland = false;
        loop {
            let Some((j, direction)) = self.choose_entering(bland) else {
                return Ok(Outcome::Optimal);
            };
            *iterations += 1;
            if *iterations > cap {
                return Err(Error::NumericalFailure(format!(
                    "simplex made no final progress within {cap} iterations"
                )));
            }
            let Some((step, kind)) = self.ratio_test(j, direction, bland) else {
                return Ok(Outcome::Unbounded);
            };
            match kind {
                Step::Flip => {
                    for i in 0..self.rows {
                        self.beta[i] -= direction * step * self.at(i, j);
                    }
                    self.objective += self.reduced[j] * direction * step;
                    self.at_upper[j] = !self.at_upper[j];
                }
                Step::Pivot(r, to_upper) => self.pivot(r, j, step, direction, to_upper),
            }
            if step <= tol::PIVOT {
                degenerate_run += 1;
                if degenerate_run > degenerate_limit {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
        }
    }

    fn extract(&self, m: &LpModel) -> Vec<f64> {
        let mut shifted: Vec<f64> = (0..m.num_vars).map(|j| self.value_of_nonbasic(j)).collect();
        for (r, &b) in self.basis.iter().enumerate() {
            if b < m.num_vars {
                shifted[b] = self.beta[r];
            }
        }
        shifted.iter().zip(&m.bounds).map(|(&x, &(lo, hi))| (lo + x).clamp(lo, hi)).collect()
    }
}
