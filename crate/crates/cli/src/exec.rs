//! Thread-pool executor for scans.

use adiasweep_core::analysis::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Environment variable capping the number of scan threads.
pub const THREADS_VAR: &str = "ADIASWEEP_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum ThreadsError {
    #[error("{THREADS_VAR} must be a positive integer, found {0:?}")]
    Invalid(String),
    #[error(transparent)]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Runs jobs on a rayon pool; results keep input order.
pub struct RayonExecutor {
    pool: Option<ThreadPool>,
}

impl RayonExecutor {
    /// Uses rayon's global pool.
    pub fn global() -> Self {
        RayonExecutor { pool: None }
    }

    pub fn with_threads(threads: usize) -> Result<Self, ThreadsError> {
        if threads == 0 {
            return Err(ThreadsError::Invalid("0".into()));
        }
        let pool = ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(RayonExecutor { pool: Some(pool) })
    }

    /// Honors [`THREADS_VAR`] when set.
    pub fn from_env() -> Result<Self, ThreadsError> {
        match std::env::var(THREADS_VAR) {
            Err(_) => Ok(Self::global()),
            Ok(v) => {
                let n = v.trim().parse().map_err(|_| ThreadsError::Invalid(v.clone()))?;
                Self::with_threads(n)
            }
        }
    }
}

impl Executor for RayonExecutor {
    fn map<I, O, F>(&self, items: &[I], f: F) -> Vec<O>
    where
        I: Sync,
        O: Send,
        F: Fn(&I) -> O + Sync + Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            None => items.par_iter().map(f).collect(),
        }
    }
}
