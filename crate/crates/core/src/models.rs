//! Mathematical programs for the p-centdian problem and its converse.
//!
//! Variable layout shared by the LP relaxation and the exported integer
//! programs: `x[i][j]` (vertex `i` served by facility `j`) at `i * n + j`,
//! `y[j]` (facility `j` open) at `n * n + j`, and the eccentricity bound `C`
//! last, at `n * n + n`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::simplex::{solve_lp, LpModel, LpStatus, Relation};
use crate::tol;

/// Choose exactly `p` facilities minimizing the centdian-distance.
#[derive(Debug, Clone, Copy)]
pub struct PdpInstance<'a> {
    pub dm: &'a DistanceMatrix,
    pub p: usize,
}

impl<'a> PdpInstance<'a> {
    pub fn new(dm: &'a DistanceMatrix, p: usize) -> Result<Self> {
        let n = dm.n();
        if p == 0 || p >= n {
            return Err(Error::InvalidInstance(format!("p must satisfy 0 < p < n (p = {p}, n = {n})")));
        }
        Ok(PdpInstance { dm, p })
    }
}

/// Choose as few facilities as possible with centdian-distance at most `budget`.
#[derive(Debug, Clone, Copy)]
pub struct CdpInstance<'a> {
    pub dm: &'a DistanceMatrix,
    pub budget: f64,
}

impl<'a> CdpInstance<'a> {
    pub fn new(dm: &'a DistanceMatrix, budget: f64) -> Result<Self> {
        if !(budget.is_finite() && budget > 0.0) {
            return Err(Error::InvalidInstance(format!(
                "budget must be a finite positive number, got {budget}"
            )));
        }
        Ok(CdpInstance { dm, budget })
    }
}

#[inline]
pub fn x_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

#[inline]
pub fn y_index(n: usize, j: usize) -> usize {
    n * n + j
}

#[inline]
pub fn c_index(n: usize) -> usize {
    n * n + n
}

/// Builds the LP relaxation: minimize `sum d(i,j) x[i][j] + C` subject to
/// unit assignment rows, `sum y = p`, `x[i][j] <= y[j]`, per-vertex cost
/// `<= C`, with `x, y` in `[0, 1]` and `C >= 0`.
///
/// Rows are emitted in that order: `n` assignment rows, one cardinality row,
/// `n * n` linking rows, `n` eccentricity rows.
pub fn build_lp_relaxation(inst: &PdpInstance<'_>) -> LpModel {
    let dm = inst.dm;
    let n = dm.n();
    let c = c_index(n);
    let mut m = LpModel::new(n * n + n + 1);
    for i in 0..n {
        for j in 0..n {
            m.objective[x_index(n, i, j)] = dm.get(i, j);
            m.bounds[x_index(n, i, j)] = (0.0, 1.0);
        }
        m.bounds[y_index(n, i)] = (0.0, 1.0);
    }
    m.objective[c] = 1.0;

    for i in 0..n {
        m.add_constraint((0..n).map(|j| (x_index(n, i, j), 1.0)).collect(), Relation::Eq, 1.0);
    }
    m.add_constraint((0..n).map(|j| (y_index(n, j), 1.0)).collect(), Relation::Eq, inst.p as f64);
    for i in 0..n {
        for j in 0..n {
            m.add_constraint(vec![(x_index(n, i, j), 1.0), (y_index(n, j), -1.0)], Relation::Le, 0.0);
        }
    }
    for i in 0..n {
        let mut terms: Vec<(usize, f64)> =
            (0..n).filter(|&j| dm.get(i, j) != 0.0).map(|j| (x_index(n, i, j), dm.get(i, j))).collect();
        terms.push((c, -1.0));
        m.add_constraint(terms, Relation::Le, 0.0);
    }
    m
}

/// An optimal solution of the LP relaxation.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    pub y: Vec<f64>,
    /// Row-major `n x n` assignment values.
    pub x: Vec<f64>,
    pub c: f64,
    pub objective: f64,
}

impl FractionalSolution {
    pub fn n(&self) -> usize {
        self.y.len()
    }

    #[inline]
    pub fn x(&self, i: usize, j: usize) -> f64 {
        self.x[i * self.y.len() + j]
    }

    /// Fractional assignment cost `sum_j d(i,j) x[i][j]` of every vertex.
    pub fn assignment_costs(&self, dm: &DistanceMatrix) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|i| dm.row(i).iter().zip(&self.x[i * n..(i + 1) * n]).map(|(d, x)| d * x).sum()).collect()
    }

    /// Checks the solution against the relaxation's constraints for `p`
    /// facilities, returning a description of the first violation.
    pub fn check(&self, dm: &DistanceMatrix, p: usize) -> core::result::Result<(), String> {
        let n = self.n();
        let ysum: f64 = self.y.iter().sum();
        if (ysum - p as f64).abs() > tol::FRACTIONAL_SUM {
            return Err(format!("facility values sum to {ysum}, expected {p}"));
        }
        for i in 0..n {
            let row = &self.x[i * n..(i + 1) * n];
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > tol::FRACTIONAL_SUM {
                return Err(format!("assignment row {i} sums to {s}"));
            }
            for (j, (&xij, &yj)) in row.iter().zip(&self.y).enumerate() {
                if xij > yj + tol::BOUND {
                    return Err(format!("x[{i}][{j}] = {xij} exceeds y[{j}] = {yj}"));
                }
            }
        }
        for (i, cost) in self.assignment_costs(dm).into_iter().enumerate() {
            if cost > self.c + tol::FEASIBILITY {
                return Err(format!("assignment cost of vertex {i} is {cost} > C = {}", self.c));
            }
        }
        Ok(())
    }
}

/// Solves the LP relaxation; its objective lower-bounds the exact optimum.
pub fn solve_relaxation(inst: &PdpInstance<'_>) -> Result<FractionalSolution> {
    let n = inst.dm.n();
    let model = build_lp_relaxation(inst);
    let sol = solve_lp(&model)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::NumericalFailure(format!(
            "relaxation reported {:?}, but it is always feasible and bounded",
            sol.status
        )));
    }
    let frac = FractionalSolution {
        y: sol.values[n * n..n * n + n].to_vec(),
        x: sol.values[..n * n].to_vec(),
        c: sol.values[c_index(n)],
        objective: sol.objective_value,
    };
    frac.check(inst.dm, inst.p).map_err(Error::NumericalFailure)?;
    Ok(frac)
}

/// Cheapest assignment for fixed facility values `y`.
///
/// Each vertex fills its unit demand from facilities in order of increasing
/// distance (ties by lower index), taking all of `y[j]` until the remainder
/// is smaller. Returns the row-major assignment and `C`, the largest
/// per-vertex cost. Every row cost is individually minimal for this `y`.
pub fn optimal_assignment(dm: &DistanceMatrix, y: &[f64], p: usize) -> Result<(Vec<f64>, f64)> {
    let n = dm.n();
    if y.len() != n {
        return Err(Error::InvalidFractional(format!("{} facility values for {n} vertices", y.len())));
    }
    if let Some(j) = y.iter().position(|&v| !(-tol::BOUND..=1.0 + tol::BOUND).contains(&v)) {
        return Err(Error::InvalidFractional(format!("y[{j}] = {} outside [0, 1]", y[j])));
    }
    let total: f64 = y.iter().sum();
    if total < 1.0 - tol::FRACTIONAL_SUM {
        return Err(Error::InvalidFractional(format!("facility values sum to {total} < 1 (p = {p})")));
    }

    let mut x = vec![0.0; n * n];
    let mut c = 0.0f64;
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let row = dm.row(i);
        order.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
        let xi = &mut x[i * n..(i + 1) * n];
        let mut filled = 0.0;
        let mut last = None;
        for &j in &order {
            let yj = y[j].max(0.0);
            if yj <= 0.0 {
                continue;
            }
            last = Some(j);
            if filled + yj >= 1.0 {
                xi[j] = 1.0 - filled;
                filled = 1.0;
                break;
            }
            xi[j] = yj;
            filled += yj;
        }
        // Only reachable when sum(y) falls short of 1 within tolerance.
        if filled < 1.0 {
            if let Some(j) = last {
                xi[j] += 1.0 - filled;
            }
        }
        let cost: f64 = row.iter().zip(xi.iter()).map(|(d, x)| d * x).sum();
        c = c.max(cost);
    }
    Ok((x, c))
}

/// Objective `sum d(i,j) x[i][j] + C` of an assignment.
pub fn assignment_objective(dm: &DistanceMatrix, x: &[f64], c: f64) -> f64 {
    dm.as_row_major().iter().zip(x).map(|(d, x)| d * x).sum::<f64>() + c
}

fn fmt_num(v: f64) -> String {
    format!("{v}")
}

fn write_linear(out: &mut String, terms: impl IntoIterator<Item = (f64, String)>) {
    let mut first = true;
    for (coef, name) in terms {
        if coef == 0.0 {
            continue;
        }
        let sign = if coef < 0.0 { "-" } else { "+" };
        let mag = coef.abs();
        if first {
            if coef < 0.0 {
                out.push_str(" -");
            }
        } else {
            let _ = write!(out, " {sign}");
        }
        if mag == 1.0 {
            let _ = write!(out, " {name}");
        } else {
            let _ = write!(out, " {} {name}", fmt_num(mag));
        }
        first = false;
    }
    if first {
        out.push_str(" 0");
    }
}

fn x_name(i: usize, j: usize) -> String {
    format!("x_{i}_{j}")
}

fn y_name(j: usize) -> String {
    format!("y_{j}")
}

fn write_shared_rows(out: &mut String, dm: &DistanceMatrix) {
    let n = dm.n();
    for i in 0..n {
        let _ = write!(out, " assign_{i}:");
        write_linear(out, (0..n).map(|j| (1.0, x_name(i, j))));
        out.push_str(" = 1\n");
    }
    for i in 0..n {
        for j in 0..n {
            let _ = write!(out, " link_{i}_{j}:");
            write_linear(out, [(1.0, x_name(i, j)), (-1.0, y_name(j))]);
            out.push_str(" <= 0\n");
        }
    }
    for i in 0..n {
        let _ = write!(out, " ecc_{i}:");
        write_linear(out, (0..n).map(|j| (dm.get(i, j), x_name(i, j))).chain([(-1.0, String::from("C"))]));
        out.push_str(" <= 0\n");
    }
}

fn write_tail(out: &mut String, n: usize) {
    out.push_str("Bounds\n C >= 0\nBinary\n");
    for i in 0..n {
        for j in 0..n {
            let _ = writeln!(out, " {}", x_name(i, j));
        }
    }
    for j in 0..n {
        let _ = writeln!(out, " {}", y_name(j));
    }
    out.push_str("End\n");
}

fn median_terms(dm: &DistanceMatrix) -> impl Iterator<Item = (f64, String)> + '_ {
    let n = dm.n();
    (0..n).flat_map(move |i| (0..n).map(move |j| (dm.get(i, j), x_name(i, j))))
}

/// The exact integer program for a p-centdian instance in CPLEX LP format.
pub fn export_pdp_ilp(inst: &PdpInstance<'_>) -> String {
    let dm = inst.dm;
    let n = dm.n();
    let mut out = String::new();
    let _ = writeln!(out, "\\ p-centdian integer program: n = {n}, p = {}", inst.p);
    out.push_str("Minimize\n obj:");
    write_linear(&mut out, median_terms(dm).chain([(1.0, String::from("C"))]));
    out.push_str("\nSubject To\n");
    write_shared_rows(&mut out, dm);
    out.push_str(" facilities:");
    write_linear(&mut out, (0..n).map(|j| (1.0, y_name(j))));
    let _ = writeln!(out, " = {}", inst.p);
    write_tail(&mut out, n);
    out
}

/// The exact integer program for a converse centdian instance in CPLEX LP format.
pub fn export_cdp_ilp(inst: &CdpInstance<'_>) -> String {
    let dm = inst.dm;
    let n = dm.n();
    let mut out = String::new();
    let _ = writeln!(out, "\\ converse centdian integer program: n = {n}, U = {}", fmt_num(inst.budget));
    out.push_str("Minimize\n obj:");
    write_linear(&mut out, (0..n).map(|j| (1.0, y_name(j))));
    out.push_str("\nSubject To\n");
    write_shared_rows(&mut out, dm);
    out.push_str(" budget:");
    write_linear(&mut out, median_terms(dm).chain([(1.0, String::from("C"))]));
    let _ = writeln!(out, " <= {}", fmt_num(inst.budget));
    write_tail(&mut out, n);
    out
}
