//! LP rounding through greedy set cover.
//!
//! The relaxation's fractional assignment cost `D(i)` of each vertex defines
//! a neighborhood `N(i)` of facilities within `(1 + eps) D(i)`. Every
//! neighborhood carries more than `eps / (1 + eps)` of fractional facility
//! mass, so covering all vertices by neighborhoods of fractionally open
//! facilities opens at most `(1 + 1/eps)(ln n + 1) p` of them, and serving
//! each vertex from a covering facility costs at most `(1 + eps) D(i)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{evaluate, CentdianEvaluation, DistanceMatrix};
use crate::models::{solve_relaxation, CdpInstance, FractionalSolution, PdpInstance};
use crate::tol;

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

/// Size guarantee `(1 + 1/eps)(ln n + 1) p` on a rounded solution.
pub fn cardinality_bound(n: usize, p: usize, epsilon: f64) -> f64 {
    (1.0 + 1.0 / epsilon) * (libm::log(n as f64) + 1.0) * p as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodStructure {
    /// Fractional assignment cost of each vertex.
    pub dtilde: Vec<f64>,
    pub epsilon: f64,
    /// Sorted facility candidates `j` with `d(i,j) <= (1 + eps) D(i)`.
    pub neighborhoods: Vec<Vec<usize>>,
}

impl NeighborhoodStructure {
    /// Fractional facility mass inside each neighborhood.
    pub fn masses(&self, y: &[f64]) -> Vec<f64> {
        self.neighborhoods.iter().map(|nb| nb.iter().map(|&j| y[j]).sum()).collect()
    }

    /// Smallest neighborhood mass; always above `eps / (1 + eps)` for a
    /// correct relaxation optimum.
    pub fn min_mass(&self, y: &[f64]) -> f64 {
        self.masses(y).into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn mass_threshold(&self) -> f64 {
        self.epsilon / (1.0 + self.epsilon)
    }
}

pub fn build_neighborhoods(
    frac: &FractionalSolution,
    dm: &DistanceMatrix,
    epsilon: f64,
) -> Result<NeighborhoodStructure> {
    check_epsilon(epsilon)?;
    if frac.n() != dm.n() {
        return Err(Error::InvalidFractional(format!(
            "fractional solution has {} vertices, metric has {}",
            frac.n(),
            dm.n()
        )));
    }
    let dtilde = frac.assignment_costs(dm);
    let neighborhoods = dtilde
        .iter()
        .enumerate()
        .map(|(i, &cost)| {
            let radius = (1.0 + epsilon) * cost + tol::NEIGHBORHOOD;
            (0..dm.n()).filter(|&j| dm.get(i, j) <= radius).collect()
        })
        .collect();
    Ok(NeighborhoodStructure { dtilde, epsilon, neighborhoods })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetCoverInstance {
    pub universe_size: usize,
    /// `(label, sorted elements)`.
    pub sets: Vec<(usize, Vec<usize>)>,
}

impl SetCoverInstance {
    /// One element per vertex; one set per facility `j` with `y[j]` above the
    /// LP noise floor, holding every vertex whose neighborhood contains `j`.
    pub fn from_neighborhoods(nb: &NeighborhoodStructure, y: &[f64]) -> Self {
        let n = nb.neighborhoods.len();
        let mut members = vec![Vec::new(); n];
        for (i, hood) in nb.neighborhoods.iter().enumerate() {
            for &j in hood {
                members[j].push(i);
            }
        }
        let sets = members.into_iter().enumerate().filter(|&(j, _)| y[j] > tol::LP_NOISE).collect();
        SetCoverInstance { universe_size: n, sets }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverSolution {
    /// Labels in the order the greedy picked them.
    pub chosen: Vec<usize>,
}

/// Greedy set cover: repeatedly take the set covering the most uncovered
/// elements, breaking ties by the smallest label.
pub fn greedy_set_cover(sc: &SetCoverInstance) -> Result<SetCoverSolution> {
    let mut coverable = vec![false; sc.universe_size];
    for (_, elements) in &sc.sets {
        for &e in elements {
            if e >= sc.universe_size {
                return Err(Error::InvalidInstance(format!(
                    "set element {e} outside a universe of {}",
                    sc.universe_size
                )));
            }
            coverable[e] = true;
        }
    }
    if let Some(element) = coverable.iter().position(|&c| !c) {
        return Err(Error::UncoverableElement { element });
    }

    let mut covered = vec![false; sc.universe_size];
    let mut remaining = sc.universe_size;
    let mut used = vec![false; sc.sets.len()];
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for (k, (label, elements)) in sc.sets.iter().enumerate() {
            if used[k] {
                continue;
            }
            let gain = elements.iter().filter(|&&e| !covered[e]).count();
            let better = match best {
                None => gain > 0,
                Some((b, g)) => gain > g || (gain == g && *label < sc.sets[b].0),
            };
            if better {
                best = Some((k, gain));
            }
        }
        let (k, _) = best.expect("an uncovered element always has a coverable set");
        used[k] = true;
        chosen.push(sc.sets[k].0);
        for &e in &sc.sets[k].1 {
            if !covered[e] {
                covered[e] = true;
                remaining -= 1;
            }
        }
    }
    Ok(SetCoverSolution { chosen })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    /// Sorted vertex indices.
    pub solution: Vec<usize>,
    pub evaluation: CentdianEvaluation,
    /// Relaxation optimum; a lower bound on the exact optimum at `p`.
    pub lp_lower_bound: f64,
    pub cardinality_bound: f64,
    /// Facility count the relaxation was solved for.
    pub p: usize,
    /// Smallest fractional facility mass over all neighborhoods.
    pub min_neighborhood_mass: f64,
}

/// Rounds the LP relaxation of a p-centdian instance.
///
/// The result costs at most `(1 + eps)` times the relaxation optimum and
/// opens at most `(1 + 1/eps)(ln n + 1) p` facilities. Any `eps > 0` is
/// accepted; `eps >= 1` keeps the cost guarantee but weakens the size bound.
pub fn apx_pdp(inst: &PdpInstance<'_>, epsilon: f64) -> Result<ApproxResult> {
    check_epsilon(epsilon)?;
    let dm = inst.dm;
    let frac = solve_relaxation(inst)?;
    let hoods = build_neighborhoods(&frac, dm, epsilon)?;
    let cover = SetCoverInstance::from_neighborhoods(&hoods, &frac.y);
    let picked = greedy_set_cover(&cover)?;
    let mut solution = picked.chosen;
    solution.sort_unstable();
    let evaluation = evaluate(dm, &solution)?;
    Ok(ApproxResult {
        solution,
        evaluation,
        lp_lower_bound: frac.objective,
        cardinality_bound: cardinality_bound(dm.n(), inst.p, epsilon),
        p: inst.p,
        min_neighborhood_mass: hoods.min_mass(&frac.y),
    })
}

/// Converse problem: rounds for `p = 1, 2, ...` and returns the first set
/// whose centdian-distance is within `(1 + eps)` of the budget.
///
/// Opening every vertex (distance zero) ends the search at `p = n` without
/// an LP solve.
pub fn apx_cdp(inst: &CdpInstance<'_>, epsilon: f64) -> Result<ApproxResult> {
    check_epsilon(epsilon)?;
    let dm = inst.dm;
    let n = dm.n();
    let target = (1.0 + epsilon) * inst.budget;
    for p in 1..n {
        let result = apx_pdp(&PdpInstance::new(dm, p)?, epsilon)?;
        if result.evaluation.centdian() <= target {
            return Ok(result);
        }
    }
    Ok(ApproxResult {
        solution: (0..n).collect(),
        evaluation: CentdianEvaluation { eccentricity: 0.0, median: 0.0 },
        lp_lower_bound: 0.0,
        cardinality_bound: cardinality_bound(n, n, epsilon),
        p: n,
        min_neighborhood_mass: 1.0,
    })
}
