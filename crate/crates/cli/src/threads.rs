use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{CliError, Result};

pub const THREADS_ENV: &str = "HAWKSTEER_THREADS";

/// Thread count requested through `HAWKSTEER_THREADS`; `0` or unset means
/// rayon's default.
pub fn requested_threads() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(CliError::Usage(format!("{THREADS_ENV}: {e}"))),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))),
    }
}

pub fn pool(threads: usize) -> Result<ThreadPool> {
    Ok(ThreadPoolBuilder::new().num_threads(threads).build()?)
}

pub fn pool_from_env() -> Result<ThreadPool> {
    pool(requested_threads()?)
}
