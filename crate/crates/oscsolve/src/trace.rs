//! Trajectory tables.

use std::fmt::Write as _;
use std::path::Path;

use oscsolve_core::RunResult;

use crate::error::{Result, ShellError};

/// Above this many oscillators only energies are written unless phases are asked for.
pub const PHASE_COLUMN_LIMIT: usize = 100;

/// CSV with header `t,phi_0,...,phi_{n-1},energy,C1`, one row per recorded sample.
///
/// Phase columns appear only when the run recorded phases.
pub fn format_trajectory(run: &RunResult) -> String {
    let n = run.final_state.phases.len();
    let with_phases = run.samples.iter().all(|s| s.phases.is_some()) && !run.samples.is_empty();
    let mut out = String::from("t");
    if with_phases {
        for i in 0..n {
            let _ = write!(out, ",phi_{i}");
        }
    }
    out.push_str(",energy,C1\n");
    for s in &run.samples {
        let _ = write!(out, "{}", s.t);
        if let Some(p) = s.phases.as_ref().filter(|_| with_phases) {
            for v in p {
                let _ = write!(out, ",{v}");
            }
        }
        let _ = writeln!(out, ",{},{}", s.energy, s.c1);
    }
    out
}

pub fn write_trajectory(run: &RunResult, path: &Path) -> Result<()> {
    std::fs::write(path, format_trajectory(run)).map_err(|e| ShellError::io(path, e))
}
