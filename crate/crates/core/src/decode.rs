//! Turning settled phases into labels, tours and scores.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::energy::positions;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{angular_distance, floor, wrap_2pi};
use crate::metric::DistanceMatrix;

/// Nearest grid label of every phase on the `2πk/order` grid and the largest
/// distance from a phase to its grid point.
///
/// A phase exactly halfway between two grid points takes the lower label.
pub fn snap_phases(phases: &[f64], order: usize) -> (Vec<usize>, f64) {
    let order = order.max(1);
    let step = TAU / order as f64;
    let mut worst: f64 = 0.0;
    let labels = phases
        .iter()
        .map(|&p| {
            let p = wrap_2pi(p);
            let x = p / step;
            let base = floor(x);
            let k = if x - base > 0.5 { base as usize + 1 } else { base as usize };
            let k = k % order;
            worst = worst.max(angular_distance(p, step * k as f64));
            k
        })
        .collect();
    (labels, worst)
}

/// Edge counts of a labeling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutValue {
    pub cut_edges: usize,
    pub internal_edges: usize,
    pub weighted_cut: f64,
}

fn check_len(len: usize, g: &Graph) -> Result<()> {
    if len != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), found: len });
    }
    Ok(())
}

pub fn cut_value(labels: &[usize], g: &Graph) -> Result<CutValue> {
    check_len(labels.len(), g)?;
    let mut v = CutValue { cut_edges: 0, internal_edges: 0, weighted_cut: 0.0 };
    for &(i, j, w) in g.edges() {
        if labels[i] != labels[j] {
            v.cut_edges += 1;
            v.weighted_cut += w;
        } else {
            v.internal_edges += 1;
        }
    }
    Ok(v)
}

/// Labels read off a Max-K-Cut run.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedPartition {
    pub labels: Vec<usize>,
    pub discreteness: f64,
    pub cut_edges: usize,
    pub internal_edges: usize,
}

pub fn decode_partition(phases: &[f64], k: usize, g: &Graph) -> Result<DecodedPartition> {
    let (labels, discreteness) = snap_phases(phases, k);
    let cut = cut_value(&labels, g)?;
    Ok(DecodedPartition {
        labels,
        discreteness,
        cut_edges: cut.cut_edges,
        internal_edges: cut.internal_edges,
    })
}

/// Cyclic visiting order read off a tour or cycle run.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodedTour {
    /// Canonical order: starts at node 0, then the smaller of its two neighbours.
    pub order: Vec<usize>,
    /// Every grid slot holds exactly one oscillator.
    pub valid: bool,
    pub discreteness: f64,
}

/// Snaps to the `2πk/n` grid. When the slots are not a bijection the order
/// falls back to ranking by phase and `valid` is false.
pub fn decode_tour(phases: &[f64], n: usize) -> Result<DecodedTour> {
    if phases.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: phases.len() });
    }
    let (slots, discreteness) = snap_phases(phases, n);
    let mut by_slot = vec![usize::MAX; n];
    let mut valid = true;
    for (node, &s) in slots.iter().enumerate() {
        if by_slot[s] != usize::MAX {
            valid = false;
            break;
        }
        by_slot[s] = node;
    }
    let order = if valid {
        by_slot
    } else {
        let mut rank: Vec<usize> = (0..n).collect();
        rank.sort_by(|&a, &b| wrap_2pi(phases[a]).total_cmp(&wrap_2pi(phases[b])).then(a.cmp(&b)));
        rank
    };
    Ok(DecodedTour { order: canonical_cycle(&order), valid, discreteness })
}

/// Representative of a cyclic order under rotation and reflection.
pub fn canonical_cycle(order: &[usize]) -> Vec<usize> {
    let n = order.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| order[i]).unwrap_or(0);
    let forward: Vec<usize> = (0..n).map(|t| order[(start + t) % n]).collect();
    let backward: Vec<usize> = (0..n).map(|t| order[(start + n - t) % n]).collect();
    forward.min(backward)
}

/// Closed tour length.
pub fn tour_length(order: &[usize], d: &DistanceMatrix) -> Result<f64> {
    let n = d.len();
    positions(order, n)?;
    Ok((0..n).map(|t| d.get(order[t], order[(t + 1) % n])).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HamiltonianStatus {
    Cycle,
    PathOnly,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonianCheck {
    pub status: HamiltonianStatus,
    /// Consecutive pairs of the cyclic order that are not edges.
    pub missing_edges: usize,
}

pub fn check_hamiltonian(order: &[usize], g: &Graph) -> Result<HamiltonianCheck> {
    let n = g.node_count();
    positions(order, n)?;
    let missing = (0..n).filter(|&t| !g.has_edge(order[t], order[(t + 1) % n])).count();
    let status = match missing {
        0 => HamiltonianStatus::Cycle,
        1 => HamiltonianStatus::PathOnly,
        _ => HamiltonianStatus::Neither,
    };
    Ok(HamiltonianCheck { status, missing_edges: missing })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionReport {
    /// `|n0 - n1|`.
    pub imbalance: usize,
    pub cut_edges: usize,
}

pub fn partition_report(labels: &[usize], g: &Graph) -> Result<PartitionReport> {
    check_len(labels.len(), g)?;
    if labels.iter().any(|&l| l > 1) {
        return Err(Error::MalformedConfiguration("bipartition labels must be 0 or 1"));
    }
    let ones = labels.iter().filter(|&&l| l == 1).count();
    let zeros = labels.len() - ones;
    let cut_edges = g.edges().iter().filter(|e| labels[e.0] != labels[e.1]).count();
    Ok(PartitionReport { imbalance: zeros.abs_diff(ones), cut_edges })
}

/// Internal edges per label class and the largest edge-free class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSets {
    pub internal_edges: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Nodes of the largest class without internal edges (lowest label on
    /// ties); empty if every class has an internal edge.
    pub largest: Vec<usize>,
}

pub fn independent_sets_from(labels: &[usize], g: &Graph) -> Result<IndependentSets> {
    check_len(labels.len(), g)?;
    let classes = labels.iter().max().map_or(0, |&m| m + 1);
    let mut internal_edges = vec![0; classes];
    let mut class_sizes = vec![0; classes];
    for &l in labels {
        class_sizes[l] += 1;
    }
    for &(i, j, _) in g.edges() {
        if labels[i] == labels[j] {
            internal_edges[labels[i]] += 1;
        }
    }
    let best = (0..classes)
        .filter(|&c| internal_edges[c] == 0 && class_sizes[c] > 0)
        .fold(None, |acc: Option<usize>, c| match acc {
            Some(b) if class_sizes[b] >= class_sizes[c] => Some(b),
            _ => Some(c),
        });
    let largest = best.map_or_else(Vec::new, |b| (0..labels.len()).filter(|&i| labels[i] == b).collect());
    Ok(IndependentSets { internal_edges, class_sizes, largest })
}
