//! Scores a four-point toy pair end to end and prints every intermediate
//! quantity: cluster medians, radii, normalized distances, median-gap
//! matrices, and the final score pair.
//!
//! ```bash
//! cargo run --release --example worked_example
//! ```

use embedq::cmet::{cmet_score, median_gap_matrix, normalized_distances, ClusterSource};
use embedq::data::{cluster_summary, ClusterAssignment, DataMatrix};

fn main() -> embedq::Result<()> {
    // Original: two clusters {0, 2} and {10, 14}. Embedding: the second
    // cluster collapses onto a single value.
    let original = DataMatrix::new(4, 1, vec![0.0, 2.0, 10.0, 14.0])?;
    let embedded = DataMatrix::new(4, 1, vec![0.0, 2.0, 10.0, 10.0])?;
    let labels = ClusterAssignment::new(vec![0, 0, 1, 1])?;

    let summary = cluster_summary(&original, &labels)?;
    let summary_emb = cluster_summary(&embedded, &labels)?;
    println!("original medians + whole-data median:");
    for k in 0..3 {
        println!("  row {k}: {:?}", summary.median(k));
    }
    println!("original radii: {:?}", summary.radii());
    println!(
        "embedded radii: {:?}  (collapsed cluster falls back to 1)",
        summary_emb.radii()
    );

    let d = normalized_distances(&original, &labels, &summary)?;
    let d_prime = normalized_distances(&embedded, &labels, &summary_emb)?;
    println!("\nnormalized distances d  = {d:?}");
    println!("normalized distances d' = {d_prime:?}");

    let gamma = median_gap_matrix(&summary);
    let gamma_prime = median_gap_matrix(&summary_emb);
    println!("\nmedian-gap matrix, original (rows 0..=c, last = whole data):");
    for k in 0..gamma.size() {
        let row: Vec<f64> = (0..gamma.size()).map(|l| gamma.get(k, l)).collect();
        println!("  {row:.3?}");
    }
    println!("median-gap matrix, embedded:");
    for k in 0..gamma_prime.size() {
        let row: Vec<f64> = (0..gamma_prime.size())
            .map(|l| gamma_prime.get(k, l))
            .collect();
        println!("  {row:.3?}");
    }

    let score = cmet_score(&original, &embedded, ClusterSource::Labels(labels))?;
    println!(
        "\nlocal  = {:.15}  (closed form: 1 - sqrt(2)/2)",
        score.local
    );
    println!(
        "global = {:.15}  (closed form: 1 - (20/99)/sqrt(6))",
        score.global
    );

    assert!((score.local - (1.0 - 2.0_f64.sqrt() / 2.0)).abs() < 1e-12);
    assert!((score.global - (1.0 - (20.0 / 99.0) / 6.0_f64.sqrt())).abs() < 1e-12);
    Ok(())
}
