//! Sequential or data-parallel execution of independent work items.

use serde::{Deserialize, Serialize};

/// How sweeps iterate over their work items. `Parallel` runs on the rayon
/// pool when the `parallel` feature is enabled and sequentially otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `f` applied to each item, in order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Whether `f` holds for every index in `0..n`.
    pub fn all(self, n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> bool {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().all(f);
        }
        (0..n).all(f)
    }

    /// Some index in `0..n` satisfying `f`, the least one when sequential.
    pub fn find(self, n: usize, f: impl Fn(usize) -> bool + Sync + Send) -> Option<usize> {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().find_first(|&i| f(i));
        }
        (0..n).find(|&i| f(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u32> = (0..100).collect();
        let seq = Execution::Sequential.map(&items, |x| x * x);
        let par = Execution::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(Execution::Parallel.find(100, |i| i * i > 50), Some(8));
        assert!(Execution::Sequential.all(10, |i| i < 10));
    }
}
