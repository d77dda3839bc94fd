//! Seeded random instances.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so the same kind, size, parameters and seed give the same
//! edge list on every platform.

use centdian_core::{Edge, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenParams {
    /// Each pair is an edge with probability `prob`; integer lengths drawn
    /// uniformly from `min_weight..=max_weight`. Disconnected draws are
    /// joined by random spanning-tree edges.
    Gnp { prob: f64, min_weight: u32, max_weight: u32 },
    /// Points on the integer grid `[0, grid]^2`; complete graph with lengths
    /// `round(1000 * euclidean distance)`.
    Euclidean { grid: u32 },
}

impl GenParams {
    pub fn kind(&self) -> &'static str {
        match self {
            GenParams::Gnp { .. } => "gnp",
            GenParams::Euclidean { .. } => "euclidean",
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            GenParams::Gnp { prob, min_weight, max_weight } => {
                format!("gnp prob={prob} weights={min_weight}..{max_weight}")
            }
            GenParams::Euclidean { grid } => format!("euclidean grid={grid}"),
        }
    }
}

pub fn generate_instance(n: usize, params: GenParams, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(CliError::InvalidParams(format!("n must be at least 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match params {
        GenParams::Gnp { prob, min_weight, max_weight } => {
            if !(prob > 0.0 && prob <= 1.0) {
                return Err(CliError::InvalidParams(format!("prob must be in (0, 1], got {prob}")));
            }
            if min_weight > max_weight {
                return Err(CliError::InvalidParams(format!(
                    "min weight {min_weight} exceeds max weight {max_weight}"
                )));
            }
            Ok(gnp(n, prob, min_weight, max_weight, &mut rng))
        }
        GenParams::Euclidean { grid } => {
            if grid == 0 {
                return Err(CliError::InvalidParams("grid must be at least 1".into()));
            }
            let points: Vec<(i64, i64)> = (0..n)
                .map(|_| (rng.random_range(0..=grid) as i64, rng.random_range(0..=grid) as i64))
                .collect();
            Ok(euclidean_from_points(&points))
        }
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn gnp(n: usize, prob: f64, lo: u32, hi: u32, rng: &mut ChaCha8Rng) -> Graph {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(prob) {
                let w = rng.random_range(lo..=hi);
                edges.push((u, v, w));
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n {
        let a = order[k];
        let b = order[rng.random_range(0..k)];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            edges.push((a.min(b), a.max(b), rng.random_range(lo..=hi)));
        }
    }
    edges.sort_unstable();
    let edges = edges.into_iter().map(|(u, v, w)| Edge::new(u, v, w as f64)).collect();
    Graph::new(n, edges).expect("spanning-tree augmentation yields a connected graph")
}

/// Complete graph on explicit grid points, lengths `round(1000 * distance)`.
pub fn euclidean_from_points(points: &[(i64, i64)]) -> Graph {
    let n = points.len();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let dx = (points[u].0 - points[v].0) as f64;
            let dy = (points[u].1 - points[v].1) as f64;
            edges.push(Edge::new(u, v, (1000.0 * dx.hypot(dy)).round()));
        }
    }
    Graph::new(n, edges).expect("a complete graph on at least one point is connected")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_probability_is_complete() {
        let g = generate_instance(5, GenParams::Gnp { prob: 1.0, min_weight: 1, max_weight: 1 }, 3).unwrap();
        assert_eq!(g.edges().len(), 10);
        assert!(g.edges().iter().all(|e| e.w == 1.0));
    }

    #[test]
    fn same_seed_same_graph() {
        for params in
            [GenParams::Gnp { prob: 0.2, min_weight: 1, max_weight: 50 }, GenParams::Euclidean { grid: 30 }]
        {
            let a = generate_instance(12, params, 99).unwrap();
            let b = generate_instance(12, params, 99).unwrap();
            let c = generate_instance(12, params, 100).unwrap();
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn sparse_draws_are_connected() {
        for seed in 0..50 {
            let g = generate_instance(15, GenParams::Gnp { prob: 0.01, min_weight: 0, max_weight: 3 }, seed)
                .unwrap();
            assert!(g.edges().len() >= 14);
        }
    }

    #[test]
    fn collinear_points_add_up() {
        let g = euclidean_from_points(&[(0, 0), (1, 0), (2, 0)]);
        let w = |u, v| g.edges().iter().find(|e| e.u == u && e.v == v).unwrap().w;
        assert_eq!(w(0, 2), w(0, 1) + w(1, 2));
        assert_eq!(w(0, 1), 1000.0);
    }

    #[test]
    fn invalid_params() {
        let bad = [
            (1, GenParams::Euclidean { grid: 5 }),
            (4, GenParams::Gnp { prob: 0.0, min_weight: 1, max_weight: 2 }),
            (4, GenParams::Gnp { prob: 1.5, min_weight: 1, max_weight: 2 }),
            (4, GenParams::Gnp { prob: 0.5, min_weight: 3, max_weight: 2 }),
            (4, GenParams::Euclidean { grid: 0 }),
        ];
        for (n, p) in bad {
            assert!(matches!(generate_instance(n, p, 0), Err(CliError::InvalidParams(_))), "{p:?}");
        }
    }
}
