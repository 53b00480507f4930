//! The 2 -> 9 -> 2 stress protocol: lift two-dimensional data into nine
//! polynomial features, reduce back to two dimensions with PCA, and score the
//! result against the original.
//!
//! ```bash
//! cargo run --release --example polynomial_lift_pipeline
//! ```

use embedq::cmet::{cmet_score, ClusterSource};
use embedq::data::DataMatrix;
use embedq::datagen::{gen_rings, lift_2_9};
use embedq::dr::{fit_pca, transform};
use embedq::report::ScoreReport;

fn main() -> embedq::Result<()> {
    // A single point first: the nine feature columns in order.
    let probe = DataMatrix::new(1, 2, vec![2.0, -1.0])?;
    println!("lift(2, -1) = {:?}", lift_2_9(&probe)?.row(0));

    let ds = gen_rings(500, 42)?;
    let lifted = lift_2_9(&ds.data)?;
    println!(
        "\nrings {}x{} -> lifted {}x{}",
        ds.data.rows(),
        ds.data.cols(),
        lifted.rows(),
        lifted.cols()
    );

    let back = transform(&fit_pca(&lifted, 2)?, &lifted)?;
    let score = cmet_score(&ds.data, &back, ClusterSource::Labels(ds.labels.clone()))?;
    println!(
        "scored 2->9->2 embedding: local {:.6}, global {:.6}",
        score.local, score.global
    );

    // The same thing the `score` subcommand would print.
    let report = ScoreReport {
        dataset: "rings".into(),
        embedding: "rings_2_9_2".into(),
        seed: 42,
        ..Default::default()
    }
    .with_cmet(&score);
    println!("\nreport JSON:\n{}", report.to_json());
    Ok(())
}
