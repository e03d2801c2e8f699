//! Undirected graphs with positive edge weights.
//!
//! Only the magnitude of each edge is stored. Problem formulations choose
//! the sign of the coupling (`J = -w` for cuts and Hamiltonian cycles,
//! `J = +w` for partitioning) so one graph instance serves every solver.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Simple undirected graph: no self-loops, no parallel edges, weights > 0.
///
/// Edges are kept sorted with `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    /// Validates and canonicalizes an edge list.
    pub fn new(n: usize, edge_list: &[(usize, usize, f64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, w) in edge_list {
            if a >= n || b >= n {
                return Err(Error::NodeOutOfRange { edge: (a, b), n });
            }
            if a == b {
                return Err(Error::SelfLoop { node: a });
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::BadWeight { edge: (a, b), weight: w });
            }
            edges.push((a.min(b), a.max(b), w));
        }
        edges.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        for pair in edges.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                return Err(Error::DuplicateEdge { edge: (pair[0].0, pair[0].1) });
            }
        }
        Ok(Graph { n, edges })
    }

    /// Unit-weight graph from endpoint pairs.
    pub fn unweighted(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let list: Vec<_> = pairs.iter().map(|&(a, b)| (a, b, 1.0)).collect();
        Self::new(n, &list)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, 1.0));
            }
        }
        Graph { n, edges }
    }

    /// Cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("cycle needs at least 3 nodes"));
        }
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::unweighted(n, &pairs)
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i, 1.0)).collect();
        Graph { n, edges }
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|i| (0, i, 1.0)).collect();
        Graph { n: leaves + 1, edges }
    }

    /// The Petersen graph (10 nodes, 15 edges, 3-regular).
    pub fn petersen() -> Self {
        let mut pairs = Vec::with_capacity(15);
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::unweighted(10, &pairs).expect("petersen edge list is valid")
    }

    /// Möbius ladder on `n` nodes: the cycle plus antipodal chords.
    pub fn mobius_ladder(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::InvalidArgument("mobius ladder needs an even node count"));
        }
        if n < 6 {
            return Err(Error::InvalidArgument("mobius ladder needs at least 6 nodes"));
        }
        let mut pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        pairs.extend((0..n / 2).map(|i| (i, i + n / 2)));
        Self::unweighted(n, &pairs)
    }

    /// Erdős–Rényi `G(n, p)` sample; the same seed gives the same graph.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument("edge probability must lie in [0, 1]"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // always draw so the stream does not depend on p
                let u: f64 = rng.random();
                if u < p {
                    edges.push((i, j, 1.0));
                }
            }
        }
        Ok(Graph { n, edges })
    }

    /// Graph on the same nodes with exactly the missing pairs as edges.
    pub fn complement(&self) -> Result<Self> {
        if !self.is_unweighted() {
            return Err(Error::Weighted);
        }
        let adj = self.adjacency();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !adj[i * self.n + j] {
                    edges.push((i, j, 1.0));
                }
            }
        }
        Ok(Graph { n: self.n, edges })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, sorted, `i < j`.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.2 == 1.0)
    }

    /// Copy with every weight set to 1.
    pub fn to_unweighted(&self) -> Self {
        Graph {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j, _)| (i, j, 1.0)).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j, _) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Dense row-major boolean adjacency matrix.
    pub fn adjacency(&self) -> Vec<bool> {
        let mut adj = vec![false; self.n * self.n];
        for &(i, j, _) in &self.edges {
            adj[i * self.n + j] = true;
            adj[j * self.n + i] = true;
        }
        adj
    }

    /// Neighbour lists, ascending.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.n];
        for &(i, j, _) in &self.edges {
            nb[i].push(j);
            nb[j].push(i);
        }
        for list in &mut nb {
            list.sort_unstable();
        }
        nb
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.0, e.1).cmp(&key))
            .is_ok()
    }
}
