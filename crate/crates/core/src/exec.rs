//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the [`Execution::Parallel`] mode runs on the
//! rayon pool; without it both modes run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `f` applied to every element, in input order.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// `f` applied to every integer in `lo..=hi`, in order.
pub fn map_range<U, F>(exec: Execution, lo: u64, hi: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (lo..=hi).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (lo..=hi).map(f).collect()
}

/// Like [`map_range`] for fallible `f`; the error for the smallest failing
/// input wins.
pub fn try_map_range<U, E, F>(exec: Execution, lo: u64, hi: u64, f: F) -> Result<Vec<U>, E>
where
    U: Send,
    E: Send,
    F: Fn(u64) -> Result<U, E> + Sync + Send,
{
    map_range(exec, lo, hi, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let a = map_range(Execution::Sequential, 1, 100, |m| m * m);
        let b = map_range(Execution::Parallel, 1, 100, |m| m * m);
        assert_eq!(a, b);
        let xs: Vec<u64> = (0..50).collect();
        assert_eq!(
            map(Execution::Sequential, &xs, |x| x + 1),
            map(Execution::Parallel, &xs, |x| x + 1)
        );
    }

    #[test]
    fn first_error_wins() {
        let r: Result<Vec<u64>, u64> =
            try_map_range(Execution::Parallel, 1, 50, |m| if m % 7 == 0 { Err(m) } else { Ok(m) });
        assert_eq!(r, Err(7));
    }
}
