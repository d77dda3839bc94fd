//! Exact optima by exhaustive enumeration of vertex subsets.
//!
//! Subsets of a fixed size are visited in lexicographic order. Distances to
//! the current subset are maintained per prefix length, so advancing to the
//! next subset only recomputes the levels whose member changed.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{CentdianEvaluation, DistanceMatrix, Graph};
use crate::models::{CdpInstance, PdpInstance};

/// Default limit on the number of subsets a single search may visit.
pub const DEFAULT_CAP: u128 = 50_000_000;

/// Largest graph accepted by [`solve_dsp_exact`].
pub const MAX_DSP_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    /// Sorted vertex indices.
    pub solution: Vec<usize>,
    pub evaluation: CentdianEvaluation,
    pub subsets_examined: u64,
}

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_cap(n: usize, k: usize, cap: u128) -> Result<()> {
    let required = binomial(n, k);
    if required > cap {
        Err(Error::InstanceTooLarge { required, cap })
    } else {
        Ok(())
    }
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), started: false }
    }

    /// Advances and returns the first position that changed, or `None` when done.
    fn advance(&mut self) -> Option<usize> {
        let k = self.idx.len();
        if !self.started {
            self.started = true;
            return if k <= self.n { Some(0) } else { None };
        }
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if self.idx[pos] < self.n - k + pos {
                self.idx[pos] += 1;
                for t in pos + 1..k {
                    self.idx[t] = self.idx[t - 1] + 1;
                }
                return Some(pos);
            }
        }
        None
    }
}

/// Walks all `k`-subsets in lexicographic order, handing each one and the
/// per-vertex distances to it to `visit`. Stops early when `visit` returns false.
fn scan_subsets(dm: &DistanceMatrix, k: usize, mut visit: impl FnMut(&[usize], &[f64]) -> bool) -> u64 {
    let n = dm.n();
    let mut combos = Combinations::new(n, k);
    // levels[t] holds distances to the first t + 1 members.
    let mut levels = vec![vec![0.0; n]; k];
    let mut examined = 0;
    while let Some(changed) = combos.advance() {
        for t in changed..k {
            let member = combos.idx[t];
            let (before, rest) = levels.split_at_mut(t);
            let level = &mut rest[0];
            for (v, out) in level.iter_mut().enumerate() {
                let d = dm.get(v, member);
                *out = if t == 0 { d } else { before[t - 1][v].min(d) };
            }
        }
        examined += 1;
        if !visit(&combos.idx, &levels[k - 1]) {
            break;
        }
    }
    examined
}

/// Best `p`-subset for the centdian-distance; the lexicographically smallest
/// one when several tie.
pub fn solve_pdp_exact(inst: &PdpInstance<'_>, cap: u128) -> Result<ExactResult> {
    let dm = inst.dm;
    check_cap(dm.n(), inst.p, cap)?;
    let mut best: Option<(f64, Vec<usize>, CentdianEvaluation)> = None;
    let examined = scan_subsets(dm, inst.p, |subset, dist| {
        let eval = CentdianEvaluation::from_distances(dist);
        let value = eval.centdian();
        if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
            best = Some((value, subset.to_vec(), eval));
        }
        true
    });
    let (_, solution, evaluation) = best.expect("at least one subset exists when 0 < p < n");
    Ok(ExactResult { solution, evaluation, subsets_examined: examined })
}

/// Smallest set with centdian-distance at most the budget, searching sizes
/// `1, 2, ...`; the lexicographically first feasible set of the smallest size.
pub fn solve_cdp_exact(inst: &CdpInstance<'_>, cap: u128) -> Result<ExactResult> {
    let dm = inst.dm;
    let n = dm.n();
    let mut examined = 0u64;
    for k in 1..n {
        check_cap(n, k, cap)?;
        let mut found = None;
        examined += scan_subsets(dm, k, |subset, dist| {
            let eval = CentdianEvaluation::from_distances(dist);
            if eval.centdian() <= inst.budget {
                found = Some((subset.to_vec(), eval));
                false
            } else {
                true
            }
        });
        if let Some((solution, evaluation)) = found {
            return Ok(ExactResult { solution, evaluation, subsets_examined: examined });
        }
    }
    // Every vertex open: all distances are zero and any positive budget is met.
    Ok(ExactResult {
        solution: (0..n).collect(),
        evaluation: CentdianEvaluation { eccentricity: 0.0, median: 0.0 },
        subsets_examined: examined + 1,
    })
}

/// Closed-neighborhood bitmasks of a graph with at most 64 vertices.
fn closed_neighborhoods(g: &Graph) -> Vec<u64> {
    g.neighbors()
        .iter()
        .enumerate()
        .map(|(v, adj)| adj.iter().fold(1u64 << v, |m, &u| m | (1u64 << u)))
        .collect()
}

/// Whether every vertex outside `set` is adjacent to a member of `set`.
/// Edge lengths are ignored.
pub fn is_dominating_set(g: &Graph, set: &[usize]) -> bool {
    let adj = g.neighbors();
    let mut covered = vec![false; g.n()];
    for &s in set {
        if s >= g.n() {
            return false;
        }
        covered[s] = true;
        for &u in &adj[s] {
            covered[u] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// Minimum dominating set, lexicographically smallest among the minimum ones.
pub fn solve_dsp_exact(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > MAX_DSP_VERTICES {
        return Err(Error::InstanceTooLarge {
            required: binomial(n, n / 2),
            cap: binomial(MAX_DSP_VERTICES, MAX_DSP_VERTICES / 2),
        });
    }
    let masks = closed_neighborhoods(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for k in 1..=n {
        let mut combos = Combinations::new(n, k);
        while combos.advance().is_some() {
            let cover = combos.idx.iter().fold(0u64, |m, &v| m | masks[v]);
            if cover == full {
                return Ok(combos.idx.clone());
            }
        }
    }
    Err(Error::NumericalFailure(format!("no dominating set found for a graph on {n} vertices")))
}
