//! embedq scores how well a transformed embedding preserves the local and
//! global shape of its original dataset.
//!
//! The score pair lives in [0, 1] per component (1 = perfect preservation):
//!
//! * **local**: compares each sample's distance to its cluster median,
//!   normalized by the cluster radius, across the two spaces;
//! * **global**: compares relative pairwise gaps among cluster medians
//!   (plus the whole-data median) across the two spaces.
//!
//! The shared cluster structure comes either from class labels (supervised)
//! or from agglomerative clustering of the original space (unsupervised).
//! Both paths run in O(n·p) auxiliary memory once the assignment exists, so
//! they scale to sample counts where rank-based metrics cannot allocate
//! their n x n matrices. Those rank-based metrics (trustworthiness,
//! continuity, LCMC, and the co-ranking matrix behind them) are included
//! in [`baselines`] for comparison studies.
//!
//! # Quick start
//!
//! ```
//! use embedq::data::{ClusterAssignment, DataMatrix};
//! use embedq::cmet::{cmet_score, ClusterSource};
//!
//! let original = DataMatrix::new(4, 1, vec![0.0, 2.0, 10.0, 14.0])?;
//! let embedded = DataMatrix::new(4, 1, vec![0.0, 2.0, 10.0, 10.0])?;
//! let labels = ClusterAssignment::new(vec![0, 0, 1, 1])?;
//!
//! let score = cmet_score(&original, &embedded, ClusterSource::Labels(labels))?;
//! assert!((score.local - (1.0 - 2.0_f64.sqrt() / 2.0)).abs() < 1e-12);
//! assert!(score.global > 0.9);
//! # Ok::<(), embedq::error::Error>(())
//! ```
//!
//! # Runnable examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release --example worked_example
//! cargo run --release --example supervised_vs_unsupervised
//! cargo run --release --example sensitivity_sweep
//! cargo run --release --example baseline_comparison
//! cargo run --release --example generate_datasets
//! cargo run --release --example polynomial_lift_pipeline
//! cargo run --release --example scaling_bench
//! ```
//!
//! The `embedq` binary wraps the same functionality as subcommands
//! (`score`, `sweep`, `baseline`, `gen`, `bench`); see the README.

pub mod baselines;
pub mod cli;
pub mod clustering;
pub mod cmet;
pub mod data;
pub mod datagen;
pub mod dr;
pub mod error;
pub mod memtrack;
pub mod report;

pub use cmet::{cmet_score, ClusterSource, CmetScore, Mode};
pub use data::{ClusterAssignment, DataMatrix};
pub use error::{Error, Result};

/// Applies the `EMBEDQ_THREADS` environment variable to the global rayon
/// pool. A missing or malformed value leaves the default; repeated calls
/// after the pool exists are ignored.
pub fn init_thread_pool_from_env() {
    if let Ok(raw) = std::env::var("EMBEDQ_THREADS") {
        if let Ok(threads) = raw.trim().parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
