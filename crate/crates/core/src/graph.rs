//! Weighted undirected graphs, their metric closure, and evaluation of
//! candidate facility sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An undirected edge with a nonnegative length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge { u, v, w }
    }
}

/// A connected undirected graph on vertices `0..n`.
///
/// Construction validates every invariant, so a `Graph` value is always
/// connected with in-range endpoints, no self-loops and nonnegative lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for e in &edges {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if e.u == e.v {
                return Err(Error::SelfLoop { vertex: e.u });
            }
            if !e.w.is_finite() {
                return Err(Error::NonFiniteWeight { u: e.u, v: e.v });
            }
            if e.w < 0.0 {
                return Err(Error::NegativeWeight { u: e.u, v: e.v, w: e.w });
            }
        }
        let g = Graph { n, edges };
        if let Some(vertex) = g.first_unreachable() {
            return Err(Error::DisconnectedGraph { vertex });
        }
        Ok(g)
    }

    /// Builds a graph with every edge at unit length.
    pub fn unit(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Graph::new(n, pairs.iter().map(|&(u, v)| Edge::new(u, v, 1.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Adjacency lists ignoring edge lengths, sorted and deduplicated.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    fn first_unreachable(&self) -> Option<usize> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }
}

/// All-pairs shortest-path lengths, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a precomputed row-major matrix after checking that it is a
    /// finite, nonnegative, symmetric matrix with zero diagonal.
    ///
    /// The triangle inequality is not checked; the solvers only rely on it
    /// for their approximation guarantees.
    pub fn from_row_major(n: usize, d: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if d.len() != n * n {
            return Err(Error::InvalidInstance(alloc::format!(
                "distance matrix has {} entries, expected {}",
                d.len(),
                n * n
            )));
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::InvalidInstance(alloc::format!(
                    "distance matrix diagonal entry {i} is nonzero"
                )));
            }
            for j in 0..n {
                let x = d[i * n + j];
                if !x.is_finite() || x < 0.0 || x != d[j * n + i] {
                    return Err(Error::InvalidInstance(alloc::format!(
                        "distance matrix entry ({i}, {j}) is not a finite symmetric nonnegative value"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.d
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// Computes exact all-pairs shortest-path lengths (Floyd-Warshall).
///
/// Parallel edges keep the shortest length.
pub fn metric_closure(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n;
    let mut d = vec![f64::INFINITY; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    for e in &g.edges {
        let (a, b) = (e.u * n + e.v, e.v * n + e.u);
        if e.w < d[a] {
            d[a] = e.w;
            d[b] = e.w;
        }
    }
    for k in 0..n {
        let row_k: Vec<f64> = d[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == f64::INFINITY {
                continue;
            }
            let row_i = &mut d[i * n..(i + 1) * n];
            for (dij, &dkj) in row_i.iter_mut().zip(&row_k) {
                let via = dik + dkj;
                if via < *dij {
                    *dij = via;
                }
            }
        }
    }
    if let Some(pos) = d.iter().position(|x| x.is_infinite()) {
        return Err(Error::DisconnectedGraph { vertex: pos % n });
    }
    Ok(DistanceMatrix { n, d })
}

/// `d(v, H)`: distance from `v` to its nearest member of `h`.
pub fn distance_to_set(dm: &DistanceMatrix, v: usize, h: &[usize]) -> Result<f64> {
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    dm.check_vertex(v)?;
    let row = dm.row(v);
    let mut best = f64::INFINITY;
    for &u in h {
        dm.check_vertex(u)?;
        best = best.min(row[u]);
    }
    Ok(best)
}

/// Eccentricity, median-distance and their sum for a candidate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentdianEvaluation {
    pub eccentricity: f64,
    pub median: f64,
}

impl CentdianEvaluation {
    /// Builds an evaluation from per-vertex distances to the candidate set,
    /// summed in vertex order.
    pub fn from_distances(dist: &[f64]) -> Self {
        let mut eccentricity = 0.0f64;
        let mut median = 0.0;
        for &x in dist {
            eccentricity = eccentricity.max(x);
            median += x;
        }
        CentdianEvaluation { eccentricity, median }
    }

    /// The centdian-distance, eccentricity plus median-distance.
    #[inline]
    pub fn centdian(&self) -> f64 {
        self.eccentricity + self.median
    }
}

/// Evaluates a nonempty vertex set against every vertex of the metric.
pub fn evaluate(dm: &DistanceMatrix, h: &[usize]) -> Result<CentdianEvaluation> {
    if h.is_empty() {
        return Err(Error::EmptySet);
    }
    for &u in h {
        dm.check_vertex(u)?;
    }
    let dist = nearest_distances(dm, h);
    Ok(CentdianEvaluation::from_distances(&dist))
}

/// Per-vertex distance to a nonempty, in-range set.
pub(crate) fn nearest_distances(dm: &DistanceMatrix, h: &[usize]) -> Vec<f64> {
    (0..dm.n)
        .map(|v| {
            let row = dm.row(v);
            h.iter().map(|&u| row[u]).fold(f64::INFINITY, f64::min)
        })
        .collect()
}
