//! Coupled-oscillator computational models for combinatorial optimization.
//!
//! Every problem is encoded as a network of phase oscillators whose
//! dynamics descend a Lyapunov energy. A designed, 2π-periodic odd phase
//! offset `f(Δφ)` shapes the pairwise interaction so that the discrete
//! configurations we want (cut edges, adjacent tour slots, ...) sit at the
//! energy minima, and an injected harmonic `-Csync·sin(order·φ)` pins the
//! settled phases to the grid `{2πk/order}`.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and
//! threaded restarts live in the `oscsolve` crate.
//!
//! Module map:
//! - [`graph`]: undirected weighted graphs and generators.
//! - [`metric`]: validated symmetric distance matrices.
//! - [`coupling`]: Gaussian-bump phase interactions for Max-K-Cut, TSP and
//!   Hamiltonian cycle.
//! - [`dynamics`]: the phase ODE, annealing schedule and integrators.
//! - [`energy`]: Lyapunov energies, discrete objectives and checks.
//! - [`decode`]: phase snapping and solution scoring.
//! - [`solve`]: end-to-end solvers with restarts.
//! - [`oracle`]: exact small-instance solvers.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coupling;
pub mod decode;
pub mod dynamics;
pub mod energy;
mod error;
pub mod graph;
pub mod math;
pub mod metric;
pub mod oracle;
pub mod solve;

pub use coupling::{BumpSpec, PhaseInteraction};
pub use dynamics::{
    Integrator, Network, OscillatorState, ProblemKind, RunConfig, RunResult, Schedule,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use metric::DistanceMatrix;
