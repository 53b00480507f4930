//! Writes the synthetic datasets to target/datasets/ as labeled CSVs:
//! the five interlaced rings, the swiss roll, and the nine-feature
//! polynomial lift of the rings.
//!
//! ```bash
//! cargo run --release --example generate_datasets
//! ```

use std::fs;
use std::path::Path;

use embedq::datagen::{gen_rings, gen_swiss_roll, lift_2_9, write_matrix_csv, write_point_cloud};

fn main() -> embedq::Result<()> {
    let dir = Path::new("target/datasets");
    fs::create_dir_all(dir)?;

    let rings = gen_rings(500, 42)?;
    let rings_path = dir.join("rings.csv");
    write_point_cloud(&rings, &rings_path)?;
    println!(
        "{}: {} samples, {} features, {} classes",
        rings_path.display(),
        rings.data.rows(),
        rings.data.cols(),
        rings.labels.cluster_count()
    );

    let roll = gen_swiss_roll(1500, 42)?;
    let roll_path = dir.join("swissroll.csv");
    write_point_cloud(&roll, &roll_path)?;
    println!(
        "{}: {} samples, {} features, {} classes",
        roll_path.display(),
        roll.data.rows(),
        roll.data.cols(),
        roll.labels.cluster_count()
    );

    let lifted = lift_2_9(&rings.data)?;
    let lifted_path = dir.join("rings_lifted9.csv");
    write_matrix_csv(&lifted, &lifted_path)?;
    println!(
        "{}: {} samples, {} polynomial features",
        lifted_path.display(),
        lifted.rows(),
        lifted.cols()
    );

    println!("\nscore one against itself:");
    println!(
        "  cargo run --release --bin embedq -- score --original {p} --embedding {p}",
        p = rings_path.display()
    );
    Ok(())
}
