use beta_trees::enumerate::{shapes, Shape};
use beta_trees::verify::{Driver, TreeFold};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

/// Folds over trees on a worker pool, one tree shape per task.
///
/// Results equal those of [`beta_trees::verify::Sequential`] because every
/// fold merges commutatively.
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `jobs = None` uses one worker per available core.
    pub fn new(jobs: Option<usize>) -> Result<Parallel, ThreadPoolBuildError> {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(j) = jobs {
            builder = builder.num_threads(j.max(1));
        }
        Ok(Parallel { pool: builder.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Driver for Parallel {
    fn fold<F: TreeFold>(&self, n: u32, fold: &F) -> F::Acc {
        let work: Vec<Shape> = shapes(n).collect();
        self.pool.install(|| {
            work.par_iter()
                .fold(
                    || fold.init(),
                    |mut acc, shape| {
                        shape.for_each_labeling(|t| fold.visit(&mut acc, t));
                        acc
                    },
                )
                .reduce(
                    || fold.init(),
                    |mut a, b| {
                        fold.merge(&mut a, b);
                        a
                    },
                )
        })
    }
}
