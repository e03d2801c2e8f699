//! Parallel restarts on a rayon pool.

use oscsolve_core::solve::{Executor, Trial};
use oscsolve_core::Result as CoreResult;
use rayon::prelude::*;

use crate::error::{Result, ShellError};

/// Environment variable holding the number of worker threads.
pub const THREADS_VAR: &str = "OSC_OPT_THREADS";

/// Runs restarts on a dedicated pool. Output order follows the seed order,
/// so results do not depend on the thread count.
pub struct RayonExecutor {
    pool: rayon::ThreadPool,
}

impl RayonExecutor {
    /// `None` lets rayon pick (one thread per core).
    pub fn new(threads: Option<usize>) -> Result<Self> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t);
        }
        let pool = builder.build().map_err(|e| ShellError::Usage(e.to_string()))?;
        Ok(RayonExecutor { pool })
    }

    /// Reads the thread count from `OSC_OPT_THREADS`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(THREADS_VAR) {
            Ok(v) => {
                let t: usize = v
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&t| t > 0)
                    .ok_or_else(|| ShellError::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
                Self::new(Some(t))
            }
            Err(_) => Self::new(None),
        }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for RayonExecutor {
    fn map(&self, seeds: &[u64], job: &(dyn Fn(u64) -> CoreResult<Trial> + Sync)) -> Vec<CoreResult<Trial>> {
        self.pool.install(|| seeds.par_iter().map(|&s| job(s)).collect())
    }
}
