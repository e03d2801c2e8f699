use oscsolve_core::decode::cut_value;
use oscsolve_core::dynamics::{run_from, Integrator, OscillatorState};
use oscsolve_core::energy::max_k_cut_objective;
use oscsolve_core::oracle::{self, OracleBudget};
use oscsolve_core::solve::{Solver, SolverConfig};
use oscsolve_core::{DistanceMatrix, Graph, Network, RunConfig, Schedule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quick(restarts: usize) -> SolverConfig {
    SolverConfig {
        schedule: Schedule { horizon: 30.0, ..Schedule::default() },
        restarts,
        ..SolverConfig::default()
    }
}

fn endpoint(net: &Network, init: &[f64], dt: f64, integrator: Integrator) -> Vec<f64> {
    let sched = Schedule::constant(1.0, 1.0, 1.0);
    let cfg = RunConfig { dt, integrator, record_every: 1.0, ..RunConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let state = OscillatorState::new(init.to_vec(), 0.0);
    run_from(net, &sched, &cfg, state, &mut rng).unwrap().final_state.phases
}

fn wrapped_max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| oscsolve_core::math::angular_distance(*x, *y))
        .fold(0.0, f64::max)
}

#[test]
fn integrators_converge_at_their_order() {
    let g = Graph::petersen();
    let net = Network::max_k_cut(&g, 3, 0.25).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let init: Vec<f64> = (0..10).map(|_| rng.random::<f64>() * 6.0).collect();
    let reference = endpoint(&net, &init, 1e-4, Integrator::Rk4);

    let e1 = wrapped_max_diff(&endpoint(&net, &init, 0.02, Integrator::Euler), &reference);
    let e2 = wrapped_max_diff(&endpoint(&net, &init, 0.01, Integrator::Euler), &reference);
    let euler = (e1 / e2).log2();
    assert!((euler - 1.0).abs() < 0.2, "Euler order {euler}");

    let r1 = wrapped_max_diff(&endpoint(&net, &init, 0.1, Integrator::Rk4), &reference);
    let r2 = wrapped_max_diff(&endpoint(&net, &init, 0.05, Integrator::Rk4), &reference);
    let rk4 = (r1 / r2).log2();
    assert!(rk4 > 3.5, "RK4 order {rk4}");
}

#[test]
fn two_cut_objective_counts_internal_minus_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..20 {
        let g = Graph::random(12, 0.4, seed).unwrap();
        let net = Network::max_k_cut_default(&g, 2).unwrap();
        let labels: Vec<usize> = (0..12).map(|_| rng.random_range(0..2)).collect();
        let cut = cut_value(&labels, &g).unwrap();
        let h = max_k_cut_objective(&labels, &g, net.interaction()).unwrap();
        let expected = cut.internal_edges as f64 - cut.cut_edges as f64;
        assert!((h - expected).abs() < 1e-9, "{h} vs {expected}");
    }
}

#[test]
fn heuristic_never_beats_the_oracle() {
    let budget = OracleBudget::default();
    let solver = Solver::new(quick(4));
    for seed in 0..6 {
        let g = Graph::random(10, 0.5, seed).unwrap();
        for k in [2, 3] {
            let exact = oracle::exact_max_k_cut(&g, k, &budget).unwrap().value;
            let got = solver.max_k_cut(&g, k).unwrap().best().score;
            assert!(got <= exact + 1e-9, "k={k}: {got} > {exact}");
        }
        let mis = solver.approximate_mis(&g).unwrap().len();
        assert!(mis <= oracle::exact_mis(&g, &budget).unwrap().len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..3 {
        let pts: Vec<(f64, f64)> = (0..6).map(|_| (rng.random(), rng.random())).collect();
        let rows: Vec<Vec<f64>> = pts
            .iter()
            .map(|a| pts.iter().map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()).collect())
            .collect();
        let d = DistanceMatrix::from_rows(&rows).unwrap();
        let exact = oracle::exact_tsp(&d, &budget).unwrap().length;
        let o = solver.tsp(&d).unwrap();
        if o.best().valid {
            assert!(o.best().score >= exact - 1e-9);
        }
    }
}

#[test]
fn more_restarts_never_hurt() {
    let g = Graph::random(14, 0.3, 2).unwrap();
    let mut last = f64::NEG_INFINITY;
    for r in 1..=5 {
        let o = Solver::new(quick(r)).max_k_cut(&g, 3).unwrap();
        assert!(o.best().score >= last);
        last = o.best().score;
    }
}

#[test]
fn restart_seeds_are_consecutive() {
    let g = Graph::mobius_ladder(8).unwrap();
    let mut cfg = quick(5);
    cfg.run.seed = 40;
    let o = Solver::new(cfg).max_k_cut(&g, 2).unwrap();
    let seeds: Vec<u64> = o.trials.iter().map(|t| t.seed).collect();
    assert_eq!(seeds, vec![40, 41, 42, 43, 44]);
}
