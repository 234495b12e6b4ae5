use std::sync::Arc;

use permclass_core::enumerator::{Driver, Search, Tally};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "PERMCLASS_THREADS";

/// Folds shards on a rayon pool. Shard results are merged in shard order,
/// so output never depends on the number of workers.
#[derive(Clone)]
pub struct Parallel {
    pool: Arc<ThreadPool>,
}

impl Parallel {
    pub fn new(threads: usize) -> Self {
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .expect("thread pool");
        Parallel { pool: Arc::new(pool) }
    }

    /// Worker count from `PERMCLASS_THREADS`, else the available parallelism.
    pub fn from_env() -> Self {
        Parallel::new(threads_from_env())
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

impl std::fmt::Debug for Parallel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Parallel").field("threads", &self.threads()).finish()
    }
}

impl Driver for Parallel {
    fn fold<S, T, F>(&self, search: &S, fold: F) -> T
    where
        S: Search,
        T: Tally,
        F: Fn(&mut T, &[u8], usize) + Sync,
    {
        let shards = search.shards();
        let parts: Vec<T> = self.pool.install(|| {
            shards
                .par_iter()
                .map(|shard| {
                    let mut part = T::default();
                    search.visit_shard(shard, &mut |seq, inv| fold(&mut part, seq, inv));
                    part
                })
                .collect()
        });
        let mut acc = T::default();
        for part in parts {
            acc.merge(part);
        }
        acc
    }
}
