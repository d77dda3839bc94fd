//! Reduction from dominating set to the p-centdian decision problem.
//!
//! Original edges get length 1 and every other pair its hop distance in the
//! original graph, so the reduced instance is the metric closure of the
//! unit-length graph. With `p = kappa` and budget `U = n - kappa + 1`, a set
//! of `kappa` facilities meets the budget exactly when every other vertex is
//! adjacent to one of them.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{binomial, is_dominating_set, solve_dsp_exact, solve_pdp_exact, DEFAULT_CAP};
use crate::graph::{metric_closure, DistanceMatrix, Edge, Graph};
use crate::models::PdpInstance;

/// Largest graph accepted by [`verify_equivalence`].
pub const MAX_VERIFY_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    /// Complete metric on the original vertices.
    pub distances: DistanceMatrix,
    pub p: usize,
    pub u_bound: f64,
}

impl ReductionOutput {
    pub fn instance(&self) -> PdpInstance<'_> {
        PdpInstance { dm: &self.distances, p: self.p }
    }

    /// The reduced instance as an explicit complete graph.
    pub fn complete_graph(&self) -> Graph {
        let n = self.distances.n();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| Edge::new(u, v, self.distances.get(u, v)))
            .collect();
        Graph::new(n, edges).expect("a complete graph on a valid metric is a valid graph")
    }
}

fn unit_lengths(g: &Graph) -> Graph {
    let edges = g.edges().iter().map(|e| Edge::new(e.u, e.v, 1.0)).collect();
    Graph::new(g.n(), edges).expect("relabeling lengths keeps a valid graph valid")
}

/// Builds the p-centdian instance for "does `g` have a dominating set of
/// size at most `kappa`?". Edge lengths of `g` are ignored.
pub fn dsp_to_pdp(g: &Graph, kappa: usize) -> Result<ReductionOutput> {
    let n = g.n();
    if kappa == 0 || kappa >= n {
        return Err(Error::InvalidKappa { kappa, n });
    }
    let distances = metric_closure(&unit_lengths(g))?;
    Ok(ReductionOutput { distances, p: kappa, u_bound: (n - kappa + 1) as f64 })
}

/// Checks both sides of the reduction with exact solvers: `true` when `g`
/// has a dominating set of size at most `kappa` exactly when the reduced
/// instance has optimum at most `n - kappa + 1`.
pub fn verify_equivalence(g: &Graph, kappa: usize) -> Result<bool> {
    let n = g.n();
    if n > MAX_VERIFY_VERTICES {
        return Err(Error::InstanceTooLarge {
            required: binomial(n, n / 2),
            cap: binomial(MAX_VERIFY_VERTICES, MAX_VERIFY_VERTICES / 2),
        });
    }
    let reduced = dsp_to_pdp(g, kappa)?;
    let dominated = solve_dsp_exact(g)?.len() <= kappa;
    let best = solve_pdp_exact(&reduced.instance(), DEFAULT_CAP)?;
    let within = best.evaluation.centdian() <= reduced.u_bound;
    Ok(dominated == within)
}

/// Pads a dominating set to exactly `kappa` vertices with the smallest
/// unused indices, giving a witness for the reduced instance.
pub fn pad_to_kappa(set: &[usize], kappa: usize, n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.to_vec();
    let mut next = 0;
    while out.len() < kappa && next < n {
        if !out.contains(&next) {
            out.push(next);
        }
        next += 1;
    }
    out.sort_unstable();
    out
}

/// Whether a facility set of the reduced instance dominates the original graph.
pub fn witness_dominates(g: &Graph, facilities: &[usize]) -> bool {
    is_dominating_set(g, facilities)
}
