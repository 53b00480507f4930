//! The cluster-guided shape-preservation score pair.
//!
//! An embedding is scored against its original dataset under one shared
//! cluster assignment. The local score compares, per sample, the distance to
//! its cluster median normalized by the cluster radius; the global score
//! compares relative pairwise gaps among the cluster medians (plus the
//! whole-data median). Both scores land in [0, 1], with 1 meaning perfect
//! preservation.
//!
//! The assignment always comes from the original space: either supplied
//! labels (supervised) or an agglomerative cut of the original data
//! (unsupervised). The embedding is never re-clustered.

use crate::clustering::{agglomerate, cut, Linkage};
use crate::data::{cluster_summary, euclid, ClusterAssignment, ClusterSummary, DataMatrix};
use crate::error::{Error, Result};

/// How the shared cluster assignment was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Class labels used directly as clusters.
    Supervised,
    /// Agglomerative clustering of the original space.
    Unsupervised,
}

impl Mode {
    /// Stable lowercase name used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Supervised => "supervised",
            Mode::Unsupervised => "unsupervised",
        }
    }
}

/// Where the cluster assignment for [`cmet_score`] comes from.
#[derive(Debug, Clone)]
pub enum ClusterSource {
    /// Use the given labels as clusters (supervised).
    Labels(ClusterAssignment),
    /// Cluster the original space bottom-up and cut at `clusters`.
    Agglomerative { clusters: usize, linkage: Linkage },
}

impl ClusterSource {
    /// Unsupervised source with the default (Ward) linkage.
    pub fn agglomerative(clusters: usize) -> ClusterSource {
        ClusterSource::Agglomerative {
            clusters,
            linkage: Linkage::default(),
        }
    }
}

/// Paired normalized distance-to-median vectors for the two spaces.
///
/// Entry i of both vectors refers to the same sample; all entries are
/// in [0, 1] by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedDistances {
    pub d: Vec<f64>,
    pub d_prime: Vec<f64>,
}

/// Relative pairwise gaps among the c cluster medians plus the whole-data
/// median: a symmetric (c+1) x (c+1) matrix with zero diagonal, scaled by its
/// maximum entry (all zero when the medians coincide).
#[derive(Debug, Clone, PartialEq)]
pub struct MedianGapMatrix {
    size: usize,
    gamma: Vec<f64>,
}

impl MedianGapMatrix {
    /// Side length, c + 1.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry (k, l).
    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.gamma[k * self.size + l]
    }

    /// Flat row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.gamma
    }
}

/// The score pair with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CmetScore {
    /// Local shape-preservation score, clamped to [0, 1].
    pub local: f64,
    /// Global shape-preservation score, clamped to [0, 1].
    pub global: f64,
    /// Local score before clamping (diagnostic; within 1e-12 of [0, 1]).
    pub local_raw: f64,
    /// Global score before clamping (diagnostic).
    pub global_raw: f64,
    pub mode: Mode,
    /// Number of clusters used.
    pub c: usize,
    /// Sample count.
    pub n: usize,
    /// Original dimensionality.
    pub p: usize,
    /// Embedding dimensionality.
    pub q: usize,
}

fn check_summary(x: &DataMatrix, a: &ClusterAssignment, s: &ClusterSummary) -> Result<()> {
    if s.dim() != x.cols() {
        return Err(Error::InconsistentSummary {
            reason: format!("summary dim {} vs matrix cols {}", s.dim(), x.cols()),
        });
    }
    if s.cluster_count() != a.cluster_count() {
        return Err(Error::InconsistentSummary {
            reason: format!(
                "summary has {} clusters, assignment has {}",
                s.cluster_count(),
                a.cluster_count()
            ),
        });
    }
    if a.len() != x.rows() {
        return Err(Error::RowCountMismatch {
            left: x.rows(),
            right: a.len(),
        });
    }
    Ok(())
}

/// Distance of every sample to its own cluster median, divided by that
/// cluster's radius. Entries are in [0, 1] exactly because the radius is the
/// maximum of the very same distances.
pub fn normalized_distances(
    x: &DataMatrix,
    a: &ClusterAssignment,
    s: &ClusterSummary,
) -> Result<Vec<f64>> {
    check_summary(x, a, s)?;
    let mut d = Vec::with_capacity(x.rows());
    for i in 0..x.rows() {
        let k = a.label(i);
        d.push(euclid(x.row(i), s.median(k)) / s.radii()[k]);
    }
    Ok(d)
}

/// Both normalized distance vectors under one shared assignment, each space
/// summarized independently.
pub fn normalized_distance_pair(
    x: &DataMatrix,
    xp: &DataMatrix,
    a: &ClusterAssignment,
) -> Result<NormalizedDistances> {
    check_row_pairing(x, xp)?;
    let s = cluster_summary(x, a)?;
    let sp = cluster_summary(xp, a)?;
    Ok(NormalizedDistances {
        d: normalized_distances(x, a, &s)?,
        d_prime: normalized_distances(xp, a, &sp)?,
    })
}

fn check_row_pairing(x: &DataMatrix, xp: &DataMatrix) -> Result<()> {
    if x.rows() != xp.rows() {
        return Err(Error::RowCountMismatch {
            left: x.rows(),
            right: xp.rows(),
        });
    }
    Ok(())
}

fn local_raw(x: &DataMatrix, xp: &DataMatrix, a: &ClusterAssignment) -> Result<f64> {
    let nd = normalized_distance_pair(x, xp, a)?;
    let mut acc = 0.0;
    for (di, dpi) in nd.d.iter().zip(&nd.d_prime) {
        let diff = di - dpi;
        acc += diff * diff;
    }
    Ok(1.0 - acc.sqrt() / (x.rows() as f64).sqrt())
}

/// Local score: 1 - ||d - d'|| / sqrt(n), clamped to [0, 1].
pub fn cmet_local(x: &DataMatrix, xp: &DataMatrix, a: &ClusterAssignment) -> Result<f64> {
    Ok(local_raw(x, xp, a)?.clamp(0.0, 1.0))
}

/// Pairwise gaps among the summary's medians (clusters plus whole-data row),
/// scaled by the largest gap. All-zero when every median coincides.
pub fn median_gap_matrix(s: &ClusterSummary) -> MedianGapMatrix {
    let m = s.cluster_count() + 1;
    let mut gaps = vec![0.0; m * m];
    let mut max = 0.0_f64;
    for k in 0..m {
        for l in k + 1..m {
            let g = euclid(s.median(k), s.median(l));
            gaps[k * m + l] = g;
            gaps[l * m + k] = g;
            max = max.max(g);
        }
    }
    if max > 0.0 {
        for g in &mut gaps {
            *g /= max;
        }
    }
    MedianGapMatrix {
        size: m,
        gamma: gaps,
    }
}

fn global_raw(x: &DataMatrix, xp: &DataMatrix, a: &ClusterAssignment) -> Result<f64> {
    check_row_pairing(x, xp)?;
    let gamma = median_gap_matrix(&cluster_summary(x, a)?);
    let gamma_p = median_gap_matrix(&cluster_summary(xp, a)?);
    let mut acc = 0.0;
    for (g, gp) in gamma.entries().iter().zip(gamma_p.entries()) {
        let diff = g - gp;
        acc += diff * diff;
    }
    let c = a.cluster_count() as f64;
    Ok(1.0 - acc.sqrt() / (c * (c + 1.0)).sqrt())
}

/// Global score: 1 - ||Gamma - Gamma'||_F / sqrt(c(c+1)), clamped to [0, 1].
pub fn cmet_global(x: &DataMatrix, xp: &DataMatrix, a: &ClusterAssignment) -> Result<f64> {
    Ok(global_raw(x, xp, a)?.clamp(0.0, 1.0))
}

/// Resolves a [`ClusterSource`] against the original space: labels pass
/// through, the agglomerative route clusters `x` and cuts the dendrogram.
pub fn derive_assignment(
    x: &DataMatrix,
    source: &ClusterSource,
) -> Result<(ClusterAssignment, Mode)> {
    match source {
        ClusterSource::Labels(a) => {
            if a.len() != x.rows() {
                return Err(Error::RowCountMismatch {
                    left: x.rows(),
                    right: a.len(),
                });
            }
            Ok((a.clone(), Mode::Supervised))
        }
        ClusterSource::Agglomerative { clusters, linkage } => {
            let dendrogram = agglomerate(x, *linkage)?;
            Ok((cut(&dendrogram, *clusters)?, Mode::Unsupervised))
        }
    }
}

/// Scores a pair under an already-derived assignment.
pub fn cmet_score_assigned(
    x: &DataMatrix,
    xp: &DataMatrix,
    assignment: &ClusterAssignment,
    mode: Mode,
) -> Result<CmetScore> {
    check_row_pairing(x, xp)?;
    let local_raw = local_raw(x, xp, assignment)?;
    let global_raw = global_raw(x, xp, assignment)?;
    Ok(CmetScore {
        local: local_raw.clamp(0.0, 1.0),
        global: global_raw.clamp(0.0, 1.0),
        local_raw,
        global_raw,
        mode,
        c: assignment.cluster_count(),
        n: x.rows(),
        p: x.cols(),
        q: xp.cols(),
    })
}

/// Scores an (original, embedding) pair, deriving the shared assignment from
/// labels or from an agglomerative cut of the original space.
pub fn cmet_score(x: &DataMatrix, xp: &DataMatrix, source: ClusterSource) -> Result<CmetScore> {
    check_row_pairing(x, xp)?;
    let (assignment, mode) = derive_assignment(x, &source)?;
    cmet_score_assigned(x, xp, &assignment, mode)
}
