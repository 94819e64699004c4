//! Worker pool for data-parallel sweeps. Results always come back in input
//! order, so callers can fold them sequentially and stay independent of the
//! worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub(crate) struct Workers {
    pool: Option<rayon::ThreadPool>,
    count: usize,
}

impl Workers {
    pub(crate) fn new(count: usize) -> Result<Self> {
        let count = count.max(1);
        let pool = if count == 1 {
            None
        } else {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(count)
                    .build()
                    .map_err(|e| Error::Workers(e.to_string()))?,
            )
        };
        Ok(Workers { pool, count })
    }

    /// Positions handed out per round.
    pub(crate) fn batch(&self) -> u64 {
        64 * self.count as u64
    }

    pub(crate) fn map<T, F>(&self, items: &[u64], f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match &self.pool {
            None => items.iter().map(|&i| f(i)).collect(),
            Some(pool) => pool.install(|| items.par_iter().map(|&i| f(i)).collect()),
        }
    }
}
