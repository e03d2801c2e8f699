//! Phase dynamics of the coupled-oscillator network.
//!
//! For the cut, tour and cycle formulations every oscillator obeys
//!
//! ```text
//! dφ_i/dt = -C1(t) Σ_j J_ij sin(Δφ_ij + f(Δφ_ij)) - Csync sin(order·φ_i)
//! ```
//!
//! and for balanced bipartitioning
//!
//! ```text
//! dφ_i/dt = -2 C1 B_i sin(φ̄ - π/2) - C2 Σ_j J_ij sin(Δφ_ij) - Csync sin(2φ_i)
//! ```
//!
//! with `φ̄` the mean phase and `B_i` the balance weight (see [`BalanceWeight`]).
//! C1 follows a linear annealing ramp from `c1_start` to `A` over the horizon.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coupling::{default_sigma, PhaseInteraction};
use crate::energy::lyapunov_energy;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{cos, round, sin, sqrt, wrap_2pi};
use crate::metric::DistanceMatrix;

/// Problem family a network encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// Max-K-Cut (`K = 2` is MaxCut), `J = -w`.
    MaxKCut,
    /// Traveling salesman, `J = -D` (optionally normalized).
    Tsp,
    /// Hamiltonian cycle / path, `J = -1` on edges.
    Hamiltonian,
    /// Balanced bipartition, `J = +w`.
    GraphPartition,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::MaxKCut => "maxkcut",
            ProblemKind::Tsp => "tsp",
            ProblemKind::Hamiltonian => "hamiltonian",
            ProblemKind::GraphPartition => "partition",
        }
    }
}

/// How the balance drive of the partition dynamics is weighted per node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BalanceWeight {
    /// Every node feels the total coupling `Σ_{i<j} J_ij`. The dynamics are
    /// then exactly `-1/2 ∂E/∂φ_i` of the partition energy.
    #[default]
    Total,
    /// Node `i` feels its own weighted degree `Σ_j J_ij` (balance term kept
    /// inside the neighbour sum). Not a gradient flow.
    Degree,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Drive {
    Designed,
    Partition { weights: Vec<f64>, total: f64 },
}

/// Oscillator network: couplings, phase interaction and injection order.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    pairs: Vec<(usize, usize, f64)>,
    interaction: PhaseInteraction,
    order: usize,
    kind: ProblemKind,
    pub(crate) drive: Drive,
}

impl Network {
    /// Max-K-Cut network with `J = -w`, injection order `k`.
    pub fn max_k_cut(g: &Graph, k: usize, sigma: f64) -> Result<Self> {
        let interaction = PhaseInteraction::max_k_cut(k, sigma)?;
        Ok(Self::designed(g.node_count(), negated(g), interaction, k, ProblemKind::MaxKCut))
    }

    /// Max-K-Cut with the default width `π/(8K)`.
    pub fn max_k_cut_default(g: &Graph, k: usize) -> Result<Self> {
        Self::max_k_cut(g, k, default_sigma(k.max(1)))
    }

    /// TSP network. With `normalize` the couplings are `-D/max(D)`.
    pub fn tsp(d: &DistanceMatrix, sigma: f64, normalize: bool) -> Result<Self> {
        let n = d.len();
        let interaction = PhaseInteraction::tsp(n, sigma)?;
        let scale = if normalize && d.max() > 0.0 { 1.0 / d.max() } else { 1.0 };
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let dij = d.get(i, j);
                if dij != 0.0 {
                    pairs.push((i, j, -dij * scale));
                }
            }
        }
        Ok(Self::designed(n, pairs, interaction, n, ProblemKind::Tsp))
    }

    /// Hamiltonian cycle network with `J = -1` on every edge.
    pub fn hamiltonian(g: &Graph, sigma: f64) -> Result<Self> {
        let n = g.node_count();
        let interaction = PhaseInteraction::hamiltonian(n, sigma)?;
        let pairs = g.edges().iter().map(|&(i, j, _)| (i, j, -1.0)).collect();
        Ok(Self::designed(n, pairs, interaction, n, ProblemKind::Hamiltonian))
    }

    /// Balanced-bipartition network with `J = +w`, injection order 2.
    pub fn graph_partition(g: &Graph, balance: BalanceWeight) -> Result<Self> {
        let n = g.node_count();
        let pairs: Vec<_> = g.edges().to_vec();
        let total: f64 = pairs.iter().map(|e| e.2).sum();
        let weights = match balance {
            BalanceWeight::Total => vec![total; n],
            BalanceWeight::Degree => {
                let mut w = vec![0.0; n];
                for &(i, j, v) in &pairs {
                    w[i] += v;
                    w[j] += v;
                }
                w
            }
        };
        Ok(Network {
            n,
            pairs,
            interaction: PhaseInteraction::zero(2, default_sigma(2))?,
            order: 2,
            kind: ProblemKind::GraphPartition,
            drive: Drive::Partition { weights, total },
        })
    }

    /// Network from explicit couplings `(i, j, J_ij)`, `i != j`.
    pub fn custom(
        n: usize,
        couplings: &[(usize, usize, f64)],
        interaction: PhaseInteraction,
        order: usize,
        kind: ProblemKind,
    ) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidArgument("injection order must be at least 1"));
        }
        let mut pairs = Vec::with_capacity(couplings.len());
        for &(i, j, v) in couplings {
            if i >= n || j >= n {
                return Err(Error::NodeOutOfRange { edge: (i, j), n });
            }
            if i == j {
                return Err(Error::SelfLoop { node: i });
            }
            pairs.push((i.min(j), i.max(j), v));
        }
        Ok(Self::designed(n, pairs, interaction, order, kind))
    }

    fn designed(
        n: usize,
        pairs: Vec<(usize, usize, f64)>,
        interaction: PhaseInteraction,
        order: usize,
        kind: ProblemKind,
    ) -> Self {
        Network { n, pairs, interaction, order, kind, drive: Drive::Designed }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Nonzero couplings `(i, j, J_ij)` with `i < j`.
    pub fn couplings(&self) -> &[(usize, usize, f64)] {
        &self.pairs
    }

    pub fn interaction(&self) -> &PhaseInteraction {
        &self.interaction
    }

    /// Harmonic order of the injected signal; also the number of grid points.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    /// Sets the injection order (and grid). Mostly useful for experiments.
    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order.max(1);
        self
    }

    /// Writes `dφ/dt` into `out`.
    pub fn velocity(&self, phases: &[f64], c: &Constants, out: &mut [f64]) -> Result<()> {
        if phases.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: phases.len() });
        }
        if out.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: out.len() });
        }
        let order = self.order as f64;
        match &self.drive {
            Drive::Designed => {
                for (v, &p) in out.iter_mut().zip(phases) {
                    *v = -c.c_sync * sin(order * p);
                }
                let plain = self.interaction.is_zero();
                for &(i, j, jij) in &self.pairs {
                    let d = phases[i] - phases[j];
                    let s = if plain { sin(d) } else { self.interaction.drive(d) };
                    out[i] -= c.c1 * jij * s;
                    out[j] += c.c1 * jij * s;
                }
            }
            Drive::Partition { weights, .. } => {
                let balance = sin(mean_phase(phases) - FRAC_PI_2);
                for ((v, &p), &w) in out.iter_mut().zip(phases).zip(weights) {
                    *v = -c.c_sync * sin(2.0 * p) - 2.0 * c.c1 * w * balance;
                }
                for &(i, j, jij) in &self.pairs {
                    let s = sin(phases[i] - phases[j]);
                    out[i] -= c.c2 * jij * s;
                    out[j] += c.c2 * jij * s;
                }
            }
        }
        Ok(())
    }

    /// Allocating form of [`Network::velocity`].
    pub fn phase_velocity(&self, phases: &[f64], c: &Constants) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n];
        self.velocity(phases, c, &mut out)?;
        Ok(out)
    }
}

fn negated(g: &Graph) -> Vec<(usize, usize, f64)> {
    g.edges().iter().map(|&(i, j, w)| (i, j, -w)).collect()
}

/// Mean of the phases taken in `[0, 2π)`.
pub fn mean_phase(phases: &[f64]) -> f64 {
    if phases.is_empty() {
        return 0.0;
    }
    phases.iter().map(|&p| wrap_2pi(p)).sum::<f64>() / phases.len() as f64
}

/// Coupling constants in effect at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub c1: f64,
    pub c_sync: f64,
    /// Cut weight of the partition dynamics; unused elsewhere.
    pub c2: f64,
}

impl Constants {
    pub fn new(c1: f64, c_sync: f64) -> Self {
        Constants { c1, c_sync, c2: 1.0 }
    }
}

/// Default ceiling on `A / Csync` above which clusters tend to destabilize.
pub const STABILITY_CEILING: f64 = 70.0;

/// Linear C1 ramp plus the constant injection and partition weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub c1_start: f64,
    /// C1 reached at `t = horizon`.
    pub anneal_target: f64,
    /// Total simulated time (one time unit = one cycle).
    pub horizon: f64,
    pub c_sync: f64,
    pub c2: f64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { c1_start: 1.0, anneal_target: 10.0, horizon: 100.0, c_sync: 1.0, c2: 1.0 }
    }
}

impl Schedule {
    /// Schedule holding C1 fixed.
    pub fn constant(c1: f64, c_sync: f64, horizon: f64) -> Self {
        Schedule { c1_start: c1, anneal_target: c1, horizon, c_sync, c2: 1.0 }
    }

    pub fn c1_at(&self, t: f64) -> f64 {
        if self.horizon <= 0.0 {
            return self.c1_start;
        }
        self.c1_start + t * (self.anneal_target - self.c1_start) / self.horizon
    }

    pub fn constants_at(&self, t: f64) -> Constants {
        Constants { c1: self.c1_at(t), c_sync: self.c_sync, c2: self.c2 }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.c1_start, self.anneal_target, self.horizon, self.c_sync, self.c2]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidArgument("schedule values must be finite"));
        }
        if !(self.horizon > 0.0) {
            return Err(Error::InvalidArgument("horizon must be positive"));
        }
        if self.c_sync < 0.0 {
            return Err(Error::InvalidArgument("Csync must be nonnegative"));
        }
        Ok(())
    }

    /// True when the peak `C1 / Csync` exceeds `ceiling`.
    pub fn exceeds_stability_ceiling(&self, ceiling: f64) -> bool {
        let peak = self.c1_start.max(self.anneal_target);
        if self.c_sync == 0.0 {
            return peak > 0.0;
        }
        peak / self.c_sync > ceiling
    }
}

/// Explicit fixed-step integrators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    #[default]
    Euler,
    Rk4,
}

/// Phases (radians, kept in `[0, 2π)`) at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorState {
    pub phases: Vec<f64>,
    pub t: f64,
}

impl OscillatorState {
    pub fn new(phases: Vec<f64>, t: f64) -> Self {
        let phases = phases.into_iter().map(wrap_2pi).collect();
        OscillatorState { phases, t }
    }

    /// Uniform random phases in `[0, 2π)`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let phases = (0..n).map(|_| wrap_2pi(TAU * rng.random::<f64>())).collect();
        OscillatorState { phases, t: 0.0 }
    }
}

/// Integration settings for one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub dt: f64,
    pub integrator: Integrator,
    /// Time between energy samples.
    pub record_every: f64,
    /// Also keep sampled phase vectors.
    pub record_phases: bool,
    pub seed: u64,
    /// Standard deviation of additive phase noise per unit time. Off at 0.
    pub noise: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dt: 0.01,
            integrator: Integrator::Euler,
            record_every: 0.1,
            record_phases: false,
            seed: 0,
            noise: 0.0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidArgument("dt must be positive"));
        }
        if !(self.record_every.is_finite() && self.record_every > 0.0) {
            return Err(Error::InvalidArgument("recording interval must be positive"));
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) {
            return Err(Error::InvalidArgument("noise must be nonnegative"));
        }
        Ok(())
    }
}

/// One recorded sample of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub energy: f64,
    pub c1: f64,
    /// Present when phases were recorded.
    pub phases: Option<Vec<f64>>,
}

/// Outcome of [`run`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_state: OscillatorState,
    pub samples: Vec<Sample>,
    pub step_count: u64,
    pub seed: u64,
}

impl RunResult {
    /// `(t, E)` pairs.
    pub fn energy_trace(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.t, s.energy)).collect()
    }

    pub fn initial_energy(&self) -> f64 {
        self.samples.first().map_or(f64::NAN, |s| s.energy)
    }

    pub fn final_energy(&self) -> f64 {
        self.samples.last().map_or(f64::NAN, |s| s.energy)
    }
}

/// Reusable buffers for [`step_with`].
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    k: [Vec<f64>; 4],
    tmp: Vec<f64>,
}

impl Workspace {
    pub fn new(n: usize) -> Self {
        Workspace { k: core::array::from_fn(|_| vec![0.0; n]), tmp: vec![0.0; n] }
    }
}

/// Advances `state` by one step of size `dt`. C1 is taken at the step start.
pub fn step(
    net: &Network,
    state: &OscillatorState,
    schedule: &Schedule,
    dt: f64,
    integrator: Integrator,
) -> Result<OscillatorState> {
    let mut next = state.clone();
    let mut ws = Workspace::new(net.len());
    step_with(net, &mut next, schedule, dt, integrator, 0, &mut ws)?;
    Ok(next)
}

/// In-place step; `index` is reported if a phase turns non-finite.
pub fn step_with(
    net: &Network,
    state: &mut OscillatorState,
    schedule: &Schedule,
    dt: f64,
    integrator: Integrator,
    index: u64,
    ws: &mut Workspace,
) -> Result<()> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument("dt must be positive"));
    }
    let n = net.len();
    if state.phases.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: state.phases.len() });
    }
    if ws.tmp.len() != n {
        *ws = Workspace::new(n);
    }
    let c = schedule.constants_at(state.t);
    let Workspace { k, tmp } = ws;
    match integrator {
        Integrator::Euler => {
            net.velocity(&state.phases, &c, &mut k[0])?;
            for (p, v) in state.phases.iter_mut().zip(&k[0]) {
                *p += dt * v;
            }
        }
        Integrator::Rk4 => {
            let [k1, k2, k3, k4] = k;
            net.velocity(&state.phases, &c, k1)?;
            for ((t, p), v) in tmp.iter_mut().zip(&state.phases).zip(k1.iter()) {
                *t = p + 0.5 * dt * v;
            }
            net.velocity(tmp, &c, k2)?;
            for ((t, p), v) in tmp.iter_mut().zip(&state.phases).zip(k2.iter()) {
                *t = p + 0.5 * dt * v;
            }
            net.velocity(tmp, &c, k3)?;
            for ((t, p), v) in tmp.iter_mut().zip(&state.phases).zip(k3.iter()) {
                *t = p + dt * v;
            }
            net.velocity(tmp, &c, k4)?;
            for (i, p) in state.phases.iter_mut().enumerate() {
                *p += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
    }
    for (node, p) in state.phases.iter_mut().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinitePhase { step: index, node });
        }
        *p = wrap_2pi(*p);
    }
    state.t += dt;
    Ok(())
}

/// Integrates from uniform random phases (drawn from `cfg.seed`) to the horizon.
///
/// Energy is sampled every `cfg.record_every` time units, at `t = 0` and at
/// the horizon. The result depends only on `(net, schedule, cfg)`.
pub fn run(net: &Network, schedule: &Schedule, cfg: &RunConfig) -> Result<RunResult> {
    schedule.validate()?;
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let initial = OscillatorState::random(net.len(), &mut rng);
    run_from(net, schedule, cfg, initial, &mut rng)
}

/// Integrates from a given initial state.
pub fn run_from(
    net: &Network,
    schedule: &Schedule,
    cfg: &RunConfig,
    initial: OscillatorState,
    rng: &mut impl Rng,
) -> Result<RunResult> {
    schedule.validate()?;
    cfg.validate()?;
    let n = net.len();
    if initial.phases.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: initial.phases.len() });
    }
    let steps = round(schedule.horizon / cfg.dt).max(1.0) as u64;
    let stride = (round(cfg.record_every / cfg.dt) as u64).max(1);
    let mut state = initial;
    let start = state.t;
    let mut samples = Vec::with_capacity((steps / stride + 2) as usize);
    let record = |state: &OscillatorState, samples: &mut Vec<Sample>| {
        let c = schedule.constants_at(state.t);
        samples.push(Sample {
            t: state.t,
            energy: lyapunov_energy(net, &state.phases, &c),
            c1: c.c1,
            phases: cfg.record_phases.then(|| state.phases.clone()),
        });
    };
    record(&state, &mut samples);
    let mut ws = Workspace::new(n);
    let noise_scale = cfg.noise * sqrt(cfg.dt);
    for s in 0..steps {
        step_with(net, &mut state, schedule, cfg.dt, cfg.integrator, s, &mut ws)?;
        // recompute t from the step index so long runs end exactly at the horizon
        state.t = start + (s + 1) as f64 * cfg.dt;
        if noise_scale > 0.0 {
            for p in state.phases.iter_mut() {
                *p = wrap_2pi(*p + noise_scale * standard_normal(rng));
            }
        }
        if (s + 1) % stride == 0 || s + 1 == steps {
            record(&state, &mut samples);
        }
    }
    Ok(RunResult { final_state: state, samples, step_count: steps, seed: cfg.seed })
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; u1 in (0, 1]
    let u1 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    sqrt(-2.0 * libm::log(u1)) * cos(TAU * u2)
}

/// Maximum wrapped distance from any phase to the nearest point of the
/// `2πk/order` grid.
pub fn discreteness(phases: &[f64], order: usize) -> f64 {
    crate::decode::snap_phases(phases, order).1
}
