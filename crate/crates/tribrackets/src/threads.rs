//! Worker-pool configuration shared by enumeration and batch invariant runs.

use once_cell::sync::OnceCell;
use rayon::ThreadPool;

static POOL: OnceCell<ThreadPool> = OnceCell::new();

/// The process-wide worker pool. `TRIBRACKET_THREADS` caps the worker count;
/// unset or unparsable values fall back to available parallelism. Read once
/// on first use.
pub fn pool() -> &'static ThreadPool {
    POOL.get_or_init(|| {
        let requested = std::env::var("TRIBRACKET_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v >= 1);
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = requested {
            builder = builder.num_threads(t);
        }
        builder.build().expect("worker pool construction cannot fail")
    })
}

#[cfg(test)]
mod tests {
    #[test]
    fn pool_is_usable() {
        let total: u64 = super::pool().install(|| {
            use rayon::prelude::*;
            (0u64..100).into_par_iter().sum()
        });
        assert_eq!(total, 4950);
    }
}
