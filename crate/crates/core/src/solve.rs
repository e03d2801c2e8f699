//! End-to-end solvers: build the network, run restarts, decode, keep the best.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::coupling::default_sigma;
use crate::decode::{
    check_hamiltonian, cut_value, decode_tour, independent_sets_from, partition_report,
    snap_phases, tour_length, HamiltonianStatus,
};
use crate::dynamics::{run, BalanceWeight, Network, ProblemKind, RunConfig, RunResult, Schedule};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::DistanceMatrix;

/// Runs independent restarts. Results must come back in seed order.
pub trait Executor: Sync {
    fn map(&self, seeds: &[u64], job: &(dyn Fn(u64) -> Result<Trial> + Sync)) -> Vec<Result<Trial>>;
}

/// Runs restarts one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map(&self, seeds: &[u64], job: &(dyn Fn(u64) -> Result<Trial> + Sync)) -> Vec<Result<Trial>> {
        seeds.iter().map(|&s| job(s)).collect()
    }
}

/// Parameters shared by all solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub schedule: Schedule,
    /// `run.seed` is the first restart seed; restart `r` uses `run.seed + r`.
    pub run: RunConfig,
    pub restarts: usize,
    /// Bump width; `None` picks `π/(8·order)`.
    pub sigma: Option<f64>,
    /// Scale TSP couplings to `-D/max(D)`.
    pub normalize_distances: bool,
    pub balance: BalanceWeight,
    /// Start the coloring search at a greedy clique size instead of 2.
    pub coloring_lower_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            schedule: Schedule::default(),
            run: RunConfig::default(),
            restarts: 20,
            sigma: None,
            normalize_distances: true,
            balance: BalanceWeight::Total,
            coloring_lower_bound: false,
        }
    }
}

impl SolverConfig {
    /// Partition constants: C1 = 0.5 held fixed, C2 = 1, Csync = 1.
    pub fn partition_default() -> Self {
        SolverConfig {
            schedule: Schedule { c1_start: 0.5, anneal_target: 0.5, horizon: 100.0, c_sync: 1.0, c2: 1.0 },
            ..SolverConfig::default()
        }
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.restarts as u64).map(|r| self.run.seed.wrapping_add(r)).collect()
    }

    fn sigma_for(&self, order: usize) -> f64 {
        self.sigma.unwrap_or_else(|| default_sigma(order))
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("at least one restart is required"));
        }
        self.schedule.validate()?;
        self.run.validate()
    }
}

/// Summary of one restart.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub seed: u64,
    /// Cut value, tour length, missing cycle edges or bisection cut.
    pub score: f64,
    /// Cut: always. Tour: slots form a bijection. Cycle: all edges present.
    /// Partition: perfectly balanced.
    pub valid: bool,
    /// `|n0 - n1|` for partitions, otherwise 0.
    pub imbalance: usize,
    pub discreteness: f64,
    pub initial_energy: f64,
    pub final_energy: f64,
    /// Labels, or the canonical visiting order for tours and cycles.
    pub solution: Vec<usize>,
}

/// All restarts of one solve and the index of the best.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub kind: ProblemKind,
    pub trials: Vec<Trial>,
    pub best: usize,
}

impl SolveOutcome {
    pub fn best(&self) -> &Trial {
        &self.trials[self.best]
    }

    /// Ranking key, smaller is better: validity first, then the score.
    pub fn rank(kind: ProblemKind, t: &Trial) -> (bool, usize, f64) {
        match kind {
            ProblemKind::MaxKCut => (false, 0, -t.score),
            ProblemKind::Tsp | ProblemKind::Hamiltonian => (!t.valid, 0, t.score),
            ProblemKind::GraphPartition => (!t.valid, t.imbalance, t.score),
        }
    }

    fn new(kind: ProblemKind, trials: Vec<Trial>) -> Self {
        let mut best = 0;
        for (i, t) in trials.iter().enumerate().skip(1) {
            let (a, b) = (Self::rank(kind, t), Self::rank(kind, &trials[best]));
            // strict improvement only; equal keys keep the lower seed
            let better = a.partial_cmp(&b).is_some_and(|o| o.is_lt())
                || (a == b && t.seed < trials[best].seed);
            if better {
                best = i;
            }
        }
        SolveOutcome { kind, trials, best }
    }
}

/// Solvers bound to a configuration and an executor for restarts.
pub struct Solver<'e> {
    pub config: SolverConfig,
    exec: &'e dyn Executor,
}

impl Solver<'static> {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config, exec: &Sequential }
    }
}

type Decoder<'a> = Box<dyn Fn(&RunResult) -> Result<(f64, bool, usize, Vec<usize>)> + Sync + 'a>;

impl<'e> Solver<'e> {
    pub fn with_executor(config: SolverConfig, exec: &'e dyn Executor) -> Self {
        Solver { config, exec }
    }

    fn restarts(&self, net: &Network, decode: Decoder<'_>) -> Result<SolveOutcome> {
        self.config.validate()?;
        let job = |seed: u64| -> Result<Trial> {
            let cfg = RunConfig { seed, ..self.config.run };
            let r = run(net, &self.config.schedule, &cfg)?;
            let (score, valid, imbalance, solution) = decode(&r)?;
            let discreteness = snap_phases(&r.final_state.phases, net.order()).1;
            Ok(Trial {
                seed,
                score,
                valid,
                imbalance,
                discreteness,
                initial_energy: r.initial_energy(),
                final_energy: r.final_energy(),
                solution,
            })
        };
        let trials = self.exec.map(&self.config.seeds(), &job).into_iter().collect::<Result<Vec<_>>>()?;
        Ok(SolveOutcome::new(net.kind(), trials))
    }

    /// Max-K-Cut network for this configuration.
    pub fn max_k_cut_network(&self, g: &Graph, k: usize) -> Result<Network> {
        if k < 2 {
            return Err(Error::InvalidArgument("K must be at least 2"));
        }
        Network::max_k_cut(g, k, self.config.sigma_for(k))
    }

    /// Best of the restarts by weighted cut.
    pub fn max_k_cut(&self, g: &Graph, k: usize) -> Result<SolveOutcome> {
        let net = self.max_k_cut_network(g, k)?;
        self.restarts(
            &net,
            Box::new(move |r| {
                let (labels, _) = snap_phases(&r.final_state.phases, k);
                let cut = cut_value(&labels, g)?;
                Ok((cut.weighted_cut, true, 0, labels))
            }),
        )
    }

    /// Smallest K whose best Max-K-Cut labeling has no internal edge.
    pub fn chromatic_search(&self, g: &Graph) -> Result<ColoringResult> {
        let n = g.node_count();
        if n == 0 {
            return Err(Error::InvalidArgument("graph has no nodes"));
        }
        if g.edge_count() == 0 {
            let labels = alloc::vec![0; n];
            return Ok(ColoringResult { colors: 1, labels, proper: true, attempts: Vec::new() });
        }
        let top = g.max_degree() + 1;
        let start = if self.config.coloring_lower_bound { greedy_clique(g).max(2) } else { 2 };
        let mut attempts = Vec::new();
        for k in start..=top {
            let outcome = self.max_k_cut(g, k)?;
            let labels = outcome.best().solution.clone();
            attempts.push((k, outcome));
            if cut_value(&labels, g)?.internal_edges == 0 {
                assert!(
                    g.edges().iter().all(|e| labels[e.0] != labels[e.1]),
                    "accepted coloring has a monochromatic edge"
                );
                return Ok(ColoringResult { colors: k, labels, proper: true, attempts });
            }
        }
        let (k, last) = attempts.last().expect("at least one K was tried");
        let labels = last.best().solution.clone();
        Ok(ColoringResult { colors: *k, labels, proper: false, attempts })
    }

    /// Largest edge-free color class seen during the coloring search.
    pub fn approximate_mis(&self, g: &Graph) -> Result<Vec<usize>> {
        if g.node_count() == 0 {
            return Ok(Vec::new());
        }
        let coloring = self.chromatic_search(g)?;
        let mut best = independent_sets_from(&coloring.labels, g)?.largest;
        for (_, outcome) in &coloring.attempts {
            for t in &outcome.trials {
                let set = independent_sets_from(&t.solution, g)?.largest;
                if set.len() > best.len() {
                    best = set;
                }
            }
        }
        if best.is_empty() {
            best.push(0);
        }
        assert!(
            best.iter().all(|&a| best.iter().all(|&b| !g.has_edge(a, b))),
            "independent set contains an edge"
        );
        Ok(best)
    }

    /// Independent set of the complement, checked to be a clique.
    pub fn approximate_max_clique(&self, g: &Graph) -> Result<Vec<usize>> {
        let clique = self.approximate_mis(&g.complement()?)?;
        for (x, &a) in clique.iter().enumerate() {
            for &b in &clique[x + 1..] {
                assert!(g.has_edge(a, b), "clique nodes {a} and {b} are not adjacent");
            }
        }
        Ok(clique)
    }

    pub fn tsp_network(&self, d: &DistanceMatrix) -> Result<Network> {
        let n = d.len();
        if n < 3 {
            return Err(Error::InvalidArgument("TSP needs at least 3 cities"));
        }
        Network::tsp(d, self.config.sigma_for(n), self.config.normalize_distances)
    }

    /// Shortest valid tour over the restarts.
    pub fn tsp(&self, d: &DistanceMatrix) -> Result<SolveOutcome> {
        let net = self.tsp_network(d)?;
        let n = d.len();
        self.restarts(
            &net,
            Box::new(move |r| {
                let tour = decode_tour(&r.final_state.phases, n)?;
                Ok((tour_length(&tour.order, d)?, tour.valid, 0, tour.order))
            }),
        )
    }

    pub fn hamiltonian_network(&self, g: &Graph) -> Result<Network> {
        let n = g.node_count();
        if n < 3 {
            return Err(Error::InvalidArgument("Hamiltonian cycle needs at least 3 nodes"));
        }
        Network::hamiltonian(g, self.config.sigma_for(n))
    }

    /// Ranks cycle over path over neither, then by missing edges.
    pub fn hamiltonian(&self, g: &Graph) -> Result<SolveOutcome> {
        let net = self.hamiltonian_network(g)?;
        let n = g.node_count();
        self.restarts(
            &net,
            Box::new(move |r| {
                let tour = decode_tour(&r.final_state.phases, n)?;
                let check = check_hamiltonian(&tour.order, g)?;
                let cycle = check.status == HamiltonianStatus::Cycle;
                Ok((check.missing_edges as f64, cycle, 0, tour.order))
            }),
        )
    }

    pub fn partition_network(&self, g: &Graph) -> Result<Network> {
        if g.node_count() % 2 == 1 {
            return Err(Error::InvalidArgument("graph partitioning needs an even node count"));
        }
        Network::graph_partition(g, self.config.balance)
    }

    /// Minimum cut among balanced restarts; otherwise least imbalance, then cut.
    pub fn graph_partition(&self, g: &Graph) -> Result<SolveOutcome> {
        let net = self.partition_network(g)?;
        self.restarts(
            &net,
            Box::new(move |r| {
                let (labels, _) = snap_phases(&r.final_state.phases, 2);
                let rep = partition_report(&labels, g)?;
                Ok((rep.cut_edges as f64, rep.imbalance == 0, rep.imbalance, labels))
            }),
        )
    }
}

/// Outcome of the coloring search.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoringResult {
    /// Accepted K, or the last K tried when `proper` is false.
    pub colors: usize,
    pub labels: Vec<usize>,
    /// False when no proper coloring was found up to `Δ + 1` colors.
    pub proper: bool,
    /// Every K tried with its restarts.
    pub attempts: Vec<(usize, SolveOutcome)>,
}

fn greedy_clique(g: &Graph) -> usize {
    let nb = g.neighbours();
    let mut best = 1;
    for v in 0..g.node_count() {
        let mut clique = alloc::vec![v];
        let mut cand = nb[v].clone();
        cand.sort_by_key(|&u| core::cmp::Reverse(nb[u].len()));
        for u in cand {
            if clique.iter().all(|&c| g.has_edge(c, u)) {
                clique.push(u);
            }
        }
        best = best.max(clique.len());
    }
    best
}

pub fn solve_max_k_cut(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<SolveOutcome> {
    Solver::new(cfg.clone()).max_k_cut(g, k)
}

pub fn chromatic_search(g: &Graph, cfg: &SolverConfig) -> Result<ColoringResult> {
    Solver::new(cfg.clone()).chromatic_search(g)
}

pub fn approximate_mis(g: &Graph, cfg: &SolverConfig) -> Result<Vec<usize>> {
    Solver::new(cfg.clone()).approximate_mis(g)
}

pub fn approximate_max_clique(g: &Graph, cfg: &SolverConfig) -> Result<Vec<usize>> {
    Solver::new(cfg.clone()).approximate_max_clique(g)
}

pub fn solve_tsp(d: &DistanceMatrix, cfg: &SolverConfig) -> Result<SolveOutcome> {
    Solver::new(cfg.clone()).tsp(d)
}

pub fn solve_hamiltonian(g: &Graph, cfg: &SolverConfig) -> Result<SolveOutcome> {
    Solver::new(cfg.clone()).hamiltonian(g)
}

pub fn solve_graph_partition(g: &Graph, cfg: &SolverConfig) -> Result<SolveOutcome> {
    Solver::new(cfg.clone()).graph_partition(g)
}
