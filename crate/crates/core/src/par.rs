//! Execution mode switch for the data-parallel inner loops.
//!
//! With the `parallel` feature the helpers dispatch to rayon unless the
//! process-wide mode is set to [`Execution::Sequential`]. Without the
//! feature every helper runs sequentially. Results never depend on the mode.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Sets the process-wide execution mode.
pub fn set_execution(mode: Execution) {
    MODE.store(
        match mode {
            Execution::Sequential => 0,
            Execution::Parallel => 1,
        },
        Ordering::Relaxed,
    );
}

/// Mode actually in effect; always sequential when built without `parallel`.
pub fn execution() -> Execution {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// Configures the global rayon pool size. A no-op without `parallel`.
/// Fails silently if the pool was already initialised.
pub fn configure_threads(jobs: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

/// `(lo..hi).map(f).collect()`, in index order.
pub fn map_range<T, F>(lo: usize, hi: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution() == Execution::Parallel && hi > lo + 1 {
        use rayon::prelude::*;
        return (lo..hi).into_par_iter().map(f).collect();
    }
    (lo..hi).map(f).collect()
}

/// `items.iter().map(f).collect()`, in input order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution() == Execution::Parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Runs two closures, concurrently when parallel.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if execution() == Execution::Parallel {
        return rayon::join(a, b);
    }
    (a(), b())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_preserves_order() {
        let v = map_range(3, 200, |i| i * i);
        assert_eq!(v.len(), 197);
        assert!(v.iter().enumerate().all(|(j, &x)| x == (j + 3) * (j + 3)));
    }

    #[test]
    fn map_slice_preserves_order() {
        let items: Vec<u32> = (0..50).collect();
        assert_eq!(map_slice(&items, |x| x + 1), (1..51).collect::<Vec<_>>());
    }
}
