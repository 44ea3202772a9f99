//! Data-parallel sweeps with a sequential fallback.
//!
//! With the `parallel` feature, [`Exec::Parallel`] fans work out over the
//! rayon pool; without it every sweep runs on the calling thread. Results are
//! returned in input order either way, so outputs never depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map with per-worker scratch state (e.g. a memoizing
/// rewriter), created lazily by `init`.
pub fn map_init<T, S, R, I, F>(exec: Exec, items: &[T], init: I, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map_init(&init, |s, x| f(s, x)).collect();
    }
    let _ = exec;
    let mut state = init();
    items.iter().map(|x| f(&mut state, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Exec::Sequential, &xs, |x| x * x);
        let b = map(Exec::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        let c = map_init(Exec::Parallel, &xs, || 1u64, |s, x| {
            *s += 1;
            x + 1
        });
        assert_eq!(c, (1..=1000).collect::<Vec<_>>());
    }
}
