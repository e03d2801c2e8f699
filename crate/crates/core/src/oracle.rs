//! Exact solvers for small instances.
//!
//! These score configurations with their own loops and never call into the
//! decoding code, so agreement with the dynamics is independent evidence.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::DistanceMatrix;

/// Largest instance each oracle accepts. Larger requests are refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub cut: usize,
    /// Cap on `K^(n-1)` labelings enumerated by the cut oracle.
    pub cut_labelings: u64,
    pub tsp: usize,
    pub hamiltonian: usize,
    pub partition: usize,
    pub mis: usize,
    pub chromatic: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            cut: 16,
            cut_labelings: 1 << 30,
            tsp: 15,
            hamiltonian: 20,
            partition: 20,
            mis: 30,
            chromatic: 12,
        }
    }
}

fn within(problem: &'static str, n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::OverBudget { problem, n, max_n });
    }
    Ok(())
}

/// Optimal Max-K-Cut: weighted cut value, edge count and one optimal labeling.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCut {
    pub value: f64,
    pub cut_edges: usize,
    pub labels: Vec<usize>,
}

/// Enumerates every labeling with node 0 fixed to label 0.
pub fn exact_max_k_cut(g: &Graph, k: usize, budget: &OracleBudget) -> Result<ExactCut> {
    if k < 2 {
        return Err(Error::InvalidArgument("K must be at least 2"));
    }
    let n = g.node_count();
    within("maxkcut", n, budget.cut)?;
    let free = n.saturating_sub(1) as u32;
    match (k as u64).checked_pow(free) {
        Some(count) if count <= budget.cut_labelings => {}
        _ => return Err(Error::OverBudget { problem: "maxkcut", n, max_n: budget.cut }),
    }
    let mut labels = vec![0usize; n];
    let mut best = ExactCut { value: f64::NEG_INFINITY, cut_edges: 0, labels: labels.clone() };
    loop {
        let mut value = 0.0;
        let mut count = 0;
        for &(i, j, w) in g.edges() {
            if labels[i] != labels[j] {
                value += w;
                count += 1;
            }
        }
        if value > best.value {
            best = ExactCut { value, cut_edges: count, labels: labels.clone() };
        }
        // odometer over nodes 1..n
        let mut pos = 1;
        while pos < n {
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
        if pos >= n {
            break;
        }
    }
    if n == 0 {
        best.value = 0.0;
    }
    Ok(best)
}

/// Optimal closed tour starting at city 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTour {
    pub length: f64,
    pub tour: Vec<usize>,
}

/// Held-Karp dynamic program.
pub fn exact_tsp(d: &DistanceMatrix, budget: &OracleBudget) -> Result<ExactTour> {
    let n = d.len();
    within("tsp", n, budget.tsp)?;
    if n < 3 {
        let tour: Vec<usize> = (0..n).collect();
        let length = if n == 2 { 2.0 * d.get(0, 1) } else { 0.0 };
        return Ok(ExactTour { length, tour });
    }
    // subsets of cities 1..n as bitmasks over n-1 bits; cost[mask][last]
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut cost = vec![f64::INFINITY; (1 << m) * m];
    let mut parent = vec![usize::MAX; (1 << m) * m];
    for last in 0..m {
        cost[(1 << last) * m + last] = d.get(0, last + 1);
    }
    for mask in 1..=full {
        for last in 0..m {
            if mask & (1 << last) == 0 {
                continue;
            }
            let here = cost[mask * m + last];
            if !here.is_finite() {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let nm = mask | (1 << next);
                let c = here + d.get(last + 1, next + 1);
                if c < cost[nm * m + next] {
                    cost[nm * m + next] = c;
                    parent[nm * m + next] = last;
                }
            }
        }
    }
    let (mut last, mut length) = (0, f64::INFINITY);
    for l in 0..m {
        let c = cost[full * m + l] + d.get(l + 1, 0);
        if c < length {
            length = c;
            last = l;
        }
    }
    let mut tour = Vec::with_capacity(n);
    let mut mask = full;
    while last != usize::MAX {
        tour.push(last + 1);
        let p = parent[mask * m + last];
        mask &= !(1 << last);
        last = p;
    }
    tour.push(0);
    tour.reverse();
    Ok(ExactTour { length, tour })
}

/// Minimum over all permutations with city 0 first. Only for `n <= 10`.
pub fn brute_force_tsp(d: &DistanceMatrix) -> Result<ExactTour> {
    let n = d.len();
    within("tsp-permutations", n, 10)?;
    if n < 3 {
        return exact_tsp(d, &OracleBudget::default());
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = ExactTour { length: f64::INFINITY, tour: Vec::new() };
    // Heap's algorithm over cities 1..n
    let mut c = vec![0usize; rest.len()];
    let mut visit = |rest: &[usize]| {
        let mut len = d.get(0, rest[0]) + d.get(rest[rest.len() - 1], 0);
        for w in rest.windows(2) {
            len += d.get(w[0], w[1]);
        }
        if len < best.length {
            best.length = len;
            best.tour = core::iter::once(0).chain(rest.iter().copied()).collect();
        }
    };
    visit(&rest);
    let mut i = 0;
    while i < rest.len() {
        if c[i] < i {
            if i % 2 == 0 {
                rest.swap(0, i);
            } else {
                rest.swap(c[i], i);
            }
            visit(&rest);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactHamiltonian {
    /// Visiting order of a Hamiltonian cycle.
    Cycle(Vec<usize>),
    /// A Hamiltonian path; no cycle exists.
    Path(Vec<usize>),
    None,
}

/// Backtracking search for a Hamiltonian cycle, then for a path.
pub fn exact_hamiltonian(g: &Graph, budget: &OracleBudget) -> Result<ExactHamiltonian> {
    let n = g.node_count();
    within("hamiltonian", n, budget.hamiltonian.min(31))?;
    if n == 0 {
        return Ok(ExactHamiltonian::None);
    }
    if n == 1 {
        return Ok(ExactHamiltonian::Path(vec![0]));
    }
    let nb = g.neighbours();
    let mut adj = vec![0u32; n];
    for (i, list) in nb.iter().enumerate() {
        for &j in list {
            adj[i] |= 1 << j;
        }
    }
    if !connected(&adj) {
        return Ok(ExactHamiltonian::None);
    }
    let mut search = Backtrack { adj: &adj, n, path: Vec::with_capacity(n) };
    if n >= 3 && nb.iter().all(|l| l.len() >= 2) {
        search.path.push(0);
        if search.extend(1, true) {
            return Ok(ExactHamiltonian::Cycle(search.path));
        }
        search.path.clear();
    }
    // a path must start at a degree-1 node if one exists
    let ends: Vec<usize> = (0..n).filter(|&v| nb[v].len() == 1).collect();
    if ends.len() > 2 {
        return Ok(ExactHamiltonian::None);
    }
    let starts: Vec<usize> = if ends.is_empty() { (0..n).collect() } else { ends };
    for s in starts {
        search.path.clear();
        search.path.push(s);
        if search.extend(1 << s, false) {
            return Ok(ExactHamiltonian::Path(search.path));
        }
    }
    Ok(ExactHamiltonian::None)
}

fn connected(adj: &[u32]) -> bool {
    let n = adj.len();
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier & (1 << v) != 0 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

struct Backtrack<'a> {
    adj: &'a [u32],
    n: usize,
    path: Vec<usize>,
}

impl Backtrack<'_> {
    fn extend(&mut self, used: u32, close: bool) -> bool {
        let last = *self.path.last().expect("path is seeded");
        if self.path.len() == self.n {
            return !close || self.adj[last] & 1 != 0;
        }
        let free = !used & ((1u64 << self.n) - 1) as u32;
        // an unvisited node with no unvisited or endpoint neighbours is a dead end
        if close {
            for v in 0..self.n {
                if free & (1 << v) != 0 {
                    let exits = self.adj[v] & (free | 1 | (1 << last));
                    if exits.count_ones() < 2 {
                        return false;
                    }
                }
            }
        }
        let mut cand = self.adj[last] & free;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.path.push(v);
            if self.extend(used | (1 << v), close) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Minimum cut over all balanced bipartitions; labels mark the side of each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBisection {
    pub cut_edges: usize,
    pub labels: Vec<usize>,
}

pub fn exact_balanced_partition(g: &Graph, budget: &OracleBudget) -> Result<ExactBisection> {
    let n = g.node_count();
    if n % 2 == 1 {
        return Err(Error::InvalidArgument("balanced partition needs an even node count"));
    }
    within("partition", n, budget.partition.min(31))?;
    if n == 0 {
        return Ok(ExactBisection { cut_edges: 0, labels: Vec::new() });
    }
    let half = (n / 2) as u32;
    let mut best = (usize::MAX, 0u32);
    // node 0 always on side 0 halves the enumeration
    for mask in 0u32..(1 << n) {
        if mask & 1 != 0 || mask.count_ones() != half {
            continue;
        }
        let cut = g
            .edges()
            .iter()
            .filter(|e| (mask >> e.0 & 1) != (mask >> e.1 & 1))
            .count();
        if cut < best.0 {
            best = (cut, mask);
        }
    }
    let labels = (0..n).map(|v| (best.1 >> v & 1) as usize).collect();
    Ok(ExactBisection { cut_edges: best.0, labels })
}

/// Maximum independent set by branch and bound.
pub fn exact_mis(g: &Graph, budget: &OracleBudget) -> Result<Vec<usize>> {
    let n = g.node_count();
    within("mis", n, budget.mis.min(64))?;
    let mut adj = vec![0u64; n];
    for &(i, j, _) in g.edges() {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u64;
    mis_branch(&adj, all, 0, &mut best);
    Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
}

fn mis_branch(adj: &[u64], cand: u64, chosen: u64, best: &mut u64) {
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    // nodes of degree <= 1 among the candidates can always be taken
    let mut pick = None;
    let mut max_deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & cand).count_ones();
        if deg <= 1 {
            let next = cand & !(1 << v) & !adj[v];
            mis_branch(adj, next, chosen | 1 << v, best);
            return;
        }
        if deg > max_deg || pick.is_none() {
            max_deg = deg;
            pick = Some(v);
        }
    }
    let v = pick.expect("candidate set is nonempty");
    mis_branch(adj, cand & !(1 << v) & !adj[v], chosen | 1 << v, best);
    mis_branch(adj, cand & !(1 << v), chosen, best);
}

/// Chromatic number by testing K-colorability for K = 1, 2, ...
pub fn exact_chromatic(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    let n = g.node_count();
    within("chromatic", n, budget.chromatic)?;
    if n == 0 {
        return Ok(0);
    }
    let nb = g.neighbours();
    // color high-degree nodes first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(nb[v].len()));
    for k in 1..=n {
        let mut colors = vec![usize::MAX; n];
        if color(&nb, &order, 0, k, 0, &mut colors) {
            return Ok(k);
        }
    }
    Ok(n)
}

fn color(nb: &[Vec<usize>], order: &[usize], at: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
    if at == order.len() {
        return true;
    }
    let v = order[at];
    // a fresh color is interchangeable with any other fresh color
    for c in 0..k.min(used + 1) {
        if nb[v].iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if color(nb, order, at + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}
