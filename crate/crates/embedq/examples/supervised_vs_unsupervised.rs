//! Compares supervised scoring (class labels as clusters) with unsupervised
//! scoring (agglomerative clustering of the original space) on the interlaced
//! rings dataset, across three embeddings of very different quality.
//!
//! ```bash
//! cargo run --release --example supervised_vs_unsupervised
//! ```

use embedq::clustering::{agglomerate, cut, Linkage};
use embedq::cmet::{cmet_score_assigned, Mode};
use embedq::data::DataMatrix;
use embedq::datagen::gen_rings;
use embedq::dr::{fit_pca, shuffle_embedding, transform};

fn main() -> embedq::Result<()> {
    let ds = gen_rings(500, 42)?;
    println!(
        "rings: n={}, p={}, classes={}",
        ds.data.rows(),
        ds.data.cols(),
        ds.labels.cluster_count()
    );

    let embeddings: Vec<(&str, DataMatrix)> = vec![
        ("identity", ds.data.clone()),
        ("pca q=2", transform(&fit_pca(&ds.data, 2)?, &ds.data)?),
        ("row-shuffled", shuffle_embedding(&ds.data, 7)?),
    ];

    // Supervised: the five ring labels are the clusters.
    println!("\nsupervised (labels as clusters):");
    for (name, emb) in &embeddings {
        let s = cmet_score_assigned(&ds.data, emb, &ds.labels, Mode::Supervised)?;
        println!("  {name:<13} local {:.6}  global {:.6}", s.local, s.global);
    }

    // Unsupervised: cluster the original space once, cut at c = 5.
    let dendrogram = agglomerate(&ds.data, Linkage::Ward)?;
    let assignment = cut(&dendrogram, 5)?;
    println!("\nunsupervised (ward agglomerative, c=5):");
    for (name, emb) in &embeddings {
        let s = cmet_score_assigned(&ds.data, emb, &assignment, Mode::Unsupervised)?;
        println!("  {name:<13} local {:.6}  global {:.6}", s.local, s.global);
    }

    // The two routes should broadly agree on the ordering of embeddings.
    println!("\nall four linkages, identity embedding, c=5 (sanity: all 1.0):");
    for linkage in [
        Linkage::Single,
        Linkage::Complete,
        Linkage::Average,
        Linkage::Ward,
    ] {
        let cut5 = cut(&agglomerate(&ds.data, linkage)?, 5)?;
        let s = cmet_score_assigned(&ds.data, &ds.data, &cut5, Mode::Unsupervised)?;
        println!(
            "  {linkage:<18?} local {:.3} global {:.3}",
            s.local, s.global
        );
    }
    Ok(())
}
