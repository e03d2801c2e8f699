//! Lyapunov energies, discrete objectives and the checks that tie them together.
//!
//! For a designed network the energy is
//!
//! ```text
//! E = -(order·C1/2) Σ_{i≠j} J_ij cos(Δφ_ij + f(Δφ_ij)) - Csync Σ_i cos(order·φ_i)
//! ```
//!
//! and for the partition network
//!
//! ```text
//! E = -Σ_{i≠j} J_ij (2N·C1 cos(φ̄ - π/2) + C2 cos Δφ_ij) - Csync Σ_i cos(2φ_i)
//! ```
//!
//! Outside the bump zones of `f` both satisfy `∂E/∂φ_i = -order · dφ_i/dt`,
//! so `dE/dt = -order Σ (dφ_i/dt)² ≤ 0`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use crate::coupling::PhaseInteraction;
use crate::dynamics::{mean_phase, Constants, Drive, Network};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{angular_distance, cos, sin, wrap_2pi};
use crate::metric::DistanceMatrix;

/// Lyapunov energy of `phases` under the given constants.
pub fn lyapunov_energy(net: &Network, phases: &[f64], c: &Constants) -> f64 {
    let order = net.order() as f64;
    let injection: f64 = phases.iter().map(|&p| cos(order * p)).sum::<f64>() * c.c_sync;
    match &net.drive {
        Drive::Designed => {
            let fi = net.interaction();
            let plain = fi.is_zero();
            let pair: f64 = net
                .couplings()
                .iter()
                .map(|&(i, j, jij)| {
                    let d = phases[i] - phases[j];
                    jij * if plain { cos(d) } else { fi.alignment(d) }
                })
                .sum();
            // the ordered double sum counts each pair twice
            -order * c.c1 * pair - injection
        }
        Drive::Partition { total, .. } => {
            let n = phases.len() as f64;
            let balance = cos(mean_phase(phases) - FRAC_PI_2);
            let pair: f64 =
                net.couplings().iter().map(|&(i, j, jij)| jij * cos(phases[i] - phases[j])).sum();
            -2.0 * total * 2.0 * n * c.c1 * balance - 2.0 * c.c2 * pair - injection
        }
    }
}

/// Ising Hamiltonian `H = -Σ_{i<j} J_ij s_i s_j` with `J = -w` on edges.
pub fn ising_hamiltonian(spins: &[i8], g: &Graph) -> Result<f64> {
    if spins.len() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), found: spins.len() });
    }
    if spins.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::MalformedConfiguration("spins must be +1 or -1"));
    }
    Ok(g.edges().iter().map(|&(i, j, w)| w * f64::from(spins[i] * spins[j])).sum())
}

/// Discrete objective `-Σ_{i<j} J_ij cos(Δθ_ij + f(Δθ_ij))` with every
/// oscillator placed on its grid slot `θ_i = 2π·slot_i/order`.
///
/// Covers Max-K-Cut (slots are labels), TSP and Hamiltonian cycle (slots are
/// tour positions). Not defined for partition networks.
pub fn grid_objective(net: &Network, slots: &[usize]) -> Result<f64> {
    if !matches!(net.drive, Drive::Designed) {
        return Err(Error::InvalidArgument("grid objective needs a designed network"));
    }
    let thetas = grid_angles(slots, net.order(), net.len())?;
    let fi = net.interaction();
    Ok(-net
        .couplings()
        .iter()
        .map(|&(i, j, jij)| {
            let d = thetas[i] - thetas[j];
            jij * cos(d + fi.eval(d))
        })
        .sum::<f64>())
}

fn grid_angles(slots: &[usize], order: usize, n: usize) -> Result<Vec<f64>> {
    if slots.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: slots.len() });
    }
    if slots.iter().any(|&s| s >= order) {
        return Err(Error::MalformedConfiguration("slot outside 0..order"));
    }
    Ok(slots.iter().map(|&s| TAU * s as f64 / order as f64).collect())
}

/// Max-K-Cut objective of a labeling: each edge adds `w·cos(Δθ + f)`, i.e.
/// `+w` if internal and `-w` if cut.
pub fn max_k_cut_objective(labels: &[usize], g: &Graph, fi: &PhaseInteraction) -> Result<f64> {
    let k = fi.grid_order();
    let thetas = grid_angles(labels, k, g.node_count())?;
    Ok(g
        .edges()
        .iter()
        .map(|&(i, j, w)| {
            let d = thetas[i] - thetas[j];
            w * cos(d + fi.eval(d))
        })
        .sum())
}

/// Position of every node in a cyclic order, validating the permutation.
pub(crate) fn positions(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: order.len() });
    }
    let mut pos = alloc::vec![usize::MAX; n];
    for (slot, &node) in order.iter().enumerate() {
        if node >= n || pos[node] != usize::MAX {
            return Err(Error::MalformedConfiguration("tour is not a permutation"));
        }
        pos[node] = slot;
    }
    Ok(pos)
}

/// TSP objective `Σ_{i<j} D_ij cos(Δθ_ij + f_TSP(Δθ_ij))` of a tour.
///
/// Equals `2·length - Σ_{i<j} D_ij` for any valid tour.
pub fn tsp_objective(tour: &[usize], d: &DistanceMatrix, fi: &PhaseInteraction) -> Result<f64> {
    let n = d.len();
    let pos = positions(tour, n)?;
    let mut h = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let dt = TAU * (pos[i] as f64 - pos[j] as f64) / n as f64;
            h += d.get(i, j) * cos(dt + fi.eval(dt));
        }
    }
    Ok(h)
}

/// Hamiltonian cycle objective `Σ_edges cos(Δθ + f_HC(Δθ))` of a cyclic order.
pub fn hamiltonian_objective(order: &[usize], g: &Graph, fi: &PhaseInteraction) -> Result<f64> {
    let n = g.node_count();
    let pos = positions(order, n)?;
    Ok(g
        .edges()
        .iter()
        .map(|&(i, j, _)| {
            let dt = TAU * (pos[i] as f64 - pos[j] as f64) / n as f64;
            cos(dt + fi.eval(dt))
        })
        .sum())
}

/// Partition objective for a bipartition `labels ∈ {0, 1}` (phases 0 and π):
/// `-Σ_edges w (A·cos(θ̄ - π/2) + B·cos Δθ)`, reading the N-th root of the
/// spin product as `exp(i θ̄)` with `θ̄` the mean phase.
pub fn partition_objective(labels: &[usize], g: &Graph, a: f64, b: f64) -> Result<f64> {
    let thetas = grid_angles(labels, 2, g.node_count())?;
    let balance = cos(mean_phase(&thetas) - FRAC_PI_2);
    Ok(-g
        .edges()
        .iter()
        .map(|&(i, j, w)| w * (a * balance + b * cos(thetas[i] - thetas[j])))
        .sum::<f64>())
}

/// `|E(grid phases) - (order·C1·H(labels) - N·Csync)|` for a designed network.
pub fn discrete_equivalence_gap(net: &Network, labels: &[usize], c: &Constants) -> Result<f64> {
    let h = grid_objective(net, labels)?;
    let phases = grid_angles(labels, net.order(), net.len())?;
    let e = lyapunov_energy(net, &phases, c);
    let n = net.len() as f64;
    Ok((e - (net.order() as f64 * c.c1 * h - n * c.c_sync)).abs())
}

/// Summary of an energy trace.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTraceReport {
    pub total_steps: usize,
    /// `(step, ΔE)` for every step whose energy rose by more than the tolerance.
    pub violations: Vec<(usize, f64)>,
    /// Largest increase seen (0 if the trace never rises).
    pub max_uptick: f64,
    pub monotone_fraction: f64,
}

/// Flags every recorded step with `ΔE > tol`.
pub fn check_energy_monotone(energies: &[f64], tol: f64) -> Result<EnergyTraceReport> {
    if energies.len() < 2 {
        return Err(Error::InvalidArgument("energy trace needs at least two samples"));
    }
    let total_steps = energies.len() - 1;
    let mut violations = Vec::new();
    let mut max_uptick: f64 = 0.0;
    for (s, w) in energies.windows(2).enumerate() {
        let de = w[1] - w[0];
        max_uptick = max_uptick.max(de);
        if de > tol {
            violations.push((s + 1, de));
        }
    }
    let monotone_fraction = 1.0 - violations.len() as f64 / total_steps as f64;
    Ok(EnergyTraceReport { total_steps, violations, max_uptick, monotone_fraction })
}

/// Minimum distance, in sigmas, from a coupled pair's separation to a bump
/// center for the gradient identity to be checked.
pub const FLAT_ZONE_SIGMAS: f64 = 5.0;

/// Checks that every coupled pair sits at least `FLAT_ZONE_SIGMAS·σ` from
/// every bump center of the network's offset.
pub fn check_flat_zone(net: &Network, phases: &[f64]) -> Result<()> {
    let fi = net.interaction();
    if fi.is_zero() {
        return Ok(());
    }
    let limit = FLAT_ZONE_SIGMAS * fi.sigma();
    let centers = fi.centers();
    for &(i, j, _) in net.couplings() {
        let d = phases[i] - phases[j];
        let dist = centers.iter().map(|&c| angular_distance(d, c)).fold(f64::INFINITY, f64::min);
        if dist < limit {
            return Err(Error::NotInFlatZone { pair: (i, j), distance: dist });
        }
    }
    Ok(())
}

/// Central-difference `∂E/∂φ_i` against `-order·dφ_i/dt`.
///
/// Returns `max_i |fd_i - an_i| / max_i |an_i|`, the error relative to the
/// largest gradient component.
pub fn gradient_consistency(net: &Network, phases: &[f64], c: &Constants, h: f64) -> Result<f64> {
    let n = net.len();
    if phases.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: phases.len() });
    }
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("finite-difference step must be positive"));
    }
    check_flat_zone(net, phases)?;
    if matches!(net.drive, Drive::Partition { .. }) {
        // the mean phase jumps where a phase wraps through 0
        if phases.iter().any(|&p| {
            let w = wrap_2pi(p);
            w < 2.0 * h || TAU - w < 2.0 * h
        }) {
            return Err(Error::InvalidArgument("phase within the difference step of the wrap point"));
        }
    }
    let v = net.phase_velocity(phases, c)?;
    let order = net.order() as f64;
    let mut work: Vec<f64> = phases.to_vec();
    let mut max_err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..n {
        let p = work[i];
        work[i] = p + h;
        let up = lyapunov_energy(net, &work, c);
        work[i] = p - h;
        let down = lyapunov_energy(net, &work, c);
        work[i] = p;
        let fd = (up - down) / (2.0 * h);
        let an = -order * v[i];
        max_err = max_err.max((fd - an).abs());
        scale = scale.max(an.abs());
    }
    if scale == 0.0 {
        return Ok(if max_err == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(max_err / scale)
}

/// Single forced oscillator: `∂E/∂φ = order·Csync·sin(order·φ)` exactly.
pub fn injection_gradient(phase: f64, order: usize, c_sync: f64) -> f64 {
    order as f64 * c_sync * sin(order as f64 * phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::default_sigma;
    use crate::dynamics::BalanceWeight;
    use alloc::vec;
    use core::f64::consts::PI;

    fn pair_net() -> Network {
        Network::max_k_cut_default(&Graph::complete(2), 2).unwrap()
    }

    #[test]
    fn two_spin_energy() {
        let c = Constants::new(0.5, 1.0);
        assert!((lyapunov_energy(&pair_net(), &[0.0, PI], &c) + 3.0).abs() < 1e-12);
        assert!((lyapunov_energy(&pair_net(), &[0.0, 0.0], &c) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_energy_is_zero() {
        let net = Network::max_k_cut_default(&Graph::empty(4), 3).unwrap();
        let c = Constants::new(2.0, 0.0);
        assert_eq!(lyapunov_energy(&net, &[0.1, 1.0, 2.0, 5.0], &c), 0.0);
    }

    #[test]
    fn ising_examples() {
        let g = Graph::complete(2);
        assert_eq!(ising_hamiltonian(&[1, 1], &g).unwrap(), 1.0);
        assert_eq!(ising_hamiltonian(&[1, -1], &g).unwrap(), -1.0);
        assert!(ising_hamiltonian(&[1, 0], &g).is_err());
    }

    #[test]
    fn triangle_k3_objective() {
        let g = Graph::complete(3);
        let fi = PhaseInteraction::max_k_cut(3, default_sigma(3)).unwrap();
        assert!((max_k_cut_objective(&[0, 1, 2], &g, &fi).unwrap() + 3.0).abs() < 1e-9);
        assert!((max_k_cut_objective(&[1, 1, 1], &g, &fi).unwrap() - 3.0).abs() < 1e-12);
        assert!(max_k_cut_objective(&[0, 1, 3], &g, &fi).is_err());
    }

    #[test]
    fn equivalence_gap_examples() {
        let c = Constants::new(0.5, 1.0);
        assert!(discrete_equivalence_gap(&pair_net(), &[0, 1], &c).unwrap() < 1e-12);
        let net = Network::max_k_cut_default(&Graph::empty(5), 4).unwrap();
        let gap = discrete_equivalence_gap(&net, &[0, 1, 2, 3, 0], &Constants::new(1.3, 0.0));
        assert_eq!(gap.unwrap(), 0.0);
    }

    #[test]
    fn monotone_examples() {
        let r = check_energy_monotone(&[3.0, 2.0, 1.0], 1e-6).unwrap();
        assert!(r.violations.is_empty() && r.monotone_fraction == 1.0);
        let r = check_energy_monotone(&[1.0, 1.0, 1.0], 1e-6).unwrap();
        assert!(r.violations.is_empty());
        let r = check_energy_monotone(&[0.0, 1.0], 1e-6).unwrap();
        assert_eq!(r.violations, vec![(1, 1.0)]);
        assert_eq!(r.max_uptick, 1.0);
        assert_eq!(r.monotone_fraction, 0.0);
        assert!(check_energy_monotone(&[1.0], 1e-6).is_err());
    }

    #[test]
    fn single_oscillator_gradient_is_exact() {
        let net = Network::max_k_cut_default(&Graph::empty(1), 2).unwrap();
        let c = Constants::new(1.0, 1.3);
        for phi in [0.2, 1.0, 2.5, 4.0] {
            let v = net.phase_velocity(&[phi], &c).unwrap()[0];
            assert!((injection_gradient(phi, 2, 1.3) + 2.0 * v).abs() < 1e-15);
            assert!(gradient_consistency(&net, &[phi], &c, 1e-5).unwrap() < 1e-8);
        }
    }

    #[test]
    fn max_cut_gradient_identity() {
        let g = Graph::random(8, 0.5, 3).unwrap();
        let net = Network::max_k_cut_default(&g, 2).unwrap();
        let phases: Vec<f64> = (0..8).map(|i| 0.77 * i as f64 + 0.1).collect();
        let err = gradient_consistency(&net, &phases, &Constants::new(1.7, 0.8), 1e-5).unwrap();
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn bump_zone_is_rejected() {
        let net = Network::max_k_cut_default(&Graph::complete(2), 3).unwrap();
        let phases = [TAU / 3.0, 0.0];
        assert!(matches!(
            gradient_consistency(&net, &phases, &Constants::new(1.0, 1.0), 1e-5),
            Err(Error::NotInFlatZone { .. })
        ));
    }

    #[test]
    fn partition_gradient_identity() {
        let g = Graph::random(8, 0.5, 5).unwrap();
        let net = Network::graph_partition(&g, BalanceWeight::Total).unwrap();
        let phases: Vec<f64> = (0..8).map(|i| 0.61 * i as f64 + 0.3).collect();
        let c = Constants { c1: 0.5, c_sync: 1.0, c2: 1.0 };
        assert!(gradient_consistency(&net, &phases, &c, 1e-5).unwrap() < 1e-6);
    }

    #[test]
    fn partition_objective_rewards_balance() {
        let g = Graph::cycle(4).unwrap();
        let balanced = partition_objective(&[0, 0, 1, 1], &g, 1.0, 1.0).unwrap();
        let lopsided = partition_objective(&[0, 0, 0, 1], &g, 1.0, 1.0).unwrap();
        assert!(balanced < lopsided);
    }
}
