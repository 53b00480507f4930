//! Shared numeric types: validated dense matrices, cluster assignments, and
//! the per-cluster median/radius summaries every score is built from.
//!
//! All values are 64-bit floats in row-major order. Multivariate medians are
//! coordinate-wise, with even-count scalar medians taken as the mean of the
//! two middle order statistics.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A validated dense n x p matrix, row = sample, column = feature.
///
/// Every entry is finite; dimensions are fixed at construction. The same type
/// holds both an original dataset (p columns) and its embedding (q columns).
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    /// Validates and wraps a flat row-major buffer.
    ///
    /// Fails with [`Error::EmptyInput`] on zero rows/columns or a length
    /// mismatch, and [`Error::NonFinite`] on the first NaN/Inf entry.
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || values.len() != rows * cols {
            return Err(Error::EmptyInput);
        }
        for (idx, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(DataMatrix { rows, cols, values })
    }

    /// Builds a matrix from per-sample rows. All rows must share one length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(n * p);
        for row in rows {
            if row.len() != p {
                return Err(Error::DimensionMismatch {
                    left: p,
                    right: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        DataMatrix::new(n, p, values)
    }

    /// Number of samples.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of features.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// One sample as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    /// Entry at (row, col).
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    /// The whole buffer, row-major.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A flat partition of n samples into clusters 0..c-1.
///
/// Every id in 0..c-1 occurs at least once; the vector length must equal the
/// paired matrix's row count wherever the two travel together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAssignment {
    labels: Vec<usize>,
    c: usize,
}

impl ClusterAssignment {
    /// Validates a label vector: non-empty, ids contiguous from 0, no empty
    /// clusters.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidAssignment {
                reason: "no labels".into(),
            });
        }
        let c = labels.iter().max().unwrap() + 1;
        let mut seen = vec![false; c];
        for &l in &labels {
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidAssignment {
                reason: format!("cluster id {missing} has no members"),
            });
        }
        Ok(ClusterAssignment { labels, c })
    }

    /// Remaps arbitrary integer labels to contiguous ids 0..c-1, ordered by
    /// sorted label value.
    pub fn from_raw_labels(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidAssignment {
                reason: "no labels".into(),
            });
        }
        let mut uniq: Vec<i64> = raw.to_vec();
        uniq.sort_unstable();
        uniq.dedup();
        let labels = raw.iter().map(|v| uniq.binary_search(v).unwrap()).collect();
        ClusterAssignment::new(labels)
    }

    /// Number of clusters.
    pub fn cluster_count(&self) -> usize {
        self.c
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// True when there are no samples (never holds for a validated value).
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Cluster id of sample i.
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// The full label vector.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Member indices per cluster, in ascending sample order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.c];
        for (i, &l) in self.labels.iter().enumerate() {
            members[l].push(i);
        }
        members
    }

    fn check_pairing(&self, x: &DataMatrix) -> Result<()> {
        if self.labels.len() != x.rows() {
            return Err(Error::RowCountMismatch {
                left: x.rows(),
                right: self.labels.len(),
            });
        }
        Ok(())
    }
}

/// Per-cluster coordinate-wise medians and radii, plus the whole-data median.
///
/// Row k of `medians` (k < c) is the median of cluster k; row c is the median
/// over all samples. `radii[k]` is the maximum Euclidean distance from a
/// member of cluster k to its median, or 1 when that maximum is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSummary {
    medians: DataMatrix,
    radii: Vec<f64>,
}

impl ClusterSummary {
    /// (c+1) x dim matrix of medians; last row is the whole-data median.
    pub fn medians(&self) -> &DataMatrix {
        &self.medians
    }

    /// Median of cluster k (k < c), or the whole-data median at k = c.
    pub fn median(&self, k: usize) -> &[f64] {
        self.medians.row(k)
    }

    /// Cluster radii, length c.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Number of clusters summarized.
    pub fn cluster_count(&self) -> usize {
        self.radii.len()
    }

    /// Dimensionality of the summarized space.
    pub fn dim(&self) -> usize {
        self.medians.cols()
    }
}

/// Euclidean distance between two equal-length slices.
///
/// Summation runs in index order; every caller that compares distances against
/// a radius must use this same kernel so the ratio stays <= 1 exactly.
pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

/// Squared Euclidean distance, direct subtraction form.
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

/// Coordinate-wise median over a subset of rows.
///
/// Component j is the scalar median of column j across `subset`; even counts
/// average the two middle order statistics. Errors with [`Error::EmptySubset`]
/// when `subset` is empty.
pub fn coordinatewise_median(x: &DataMatrix, subset: &[usize]) -> Result<Vec<f64>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut out = Vec::with_capacity(x.cols());
    let mut scratch = Vec::with_capacity(subset.len());
    for j in 0..x.cols() {
        scratch.clear();
        scratch.extend(subset.iter().map(|&i| x.get(i, j)));
        out.push(scalar_median(&mut scratch));
    }
    Ok(out)
}

fn scalar_median(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        (values[m / 2 - 1] + values[m / 2]) / 2.0
    }
}

/// Medians and radii for every cluster of `a`, plus the whole-data median.
///
/// `radii[k]` falls back to 1 when all members coincide with the median
/// (singletons included), so normalized distances stay well-defined.
pub fn cluster_summary(x: &DataMatrix, a: &ClusterAssignment) -> Result<ClusterSummary> {
    a.check_pairing(x)?;
    let c = a.cluster_count();
    let dim = x.cols();
    let members = a.members();

    let mut medians = Vec::with_capacity((c + 1) * dim);
    let mut radii = Vec::with_capacity(c);
    for ids in &members {
        let med = coordinatewise_median(x, ids)?;
        let max_dist = ids
            .iter()
            .map(|&i| euclid(x.row(i), &med))
            .fold(0.0_f64, f64::max);
        radii.push(if max_dist > 0.0 { max_dist } else { 1.0 });
        medians.extend_from_slice(&med);
    }
    let all: Vec<usize> = (0..x.rows()).collect();
    medians.extend_from_slice(&coordinatewise_median(x, &all)?);

    Ok(ClusterSummary {
        medians: DataMatrix::new(c + 1, dim, medians)?,
        radii,
    })
}

/// Squared Euclidean distances from every row of `x` to every row of
/// `targets`, as a flat n x t row-major buffer.
///
/// Rows are computed independently (and possibly in parallel); within a row
/// the summation order is fixed, so results do not depend on thread count.
pub fn pairwise_sq_dist_to_rows(x: &DataMatrix, targets: &DataMatrix) -> Result<Vec<f64>> {
    if x.cols() != targets.cols() {
        return Err(Error::DimensionMismatch {
            left: x.cols(),
            right: targets.cols(),
        });
    }
    let t = targets.rows();
    let mut out = vec![0.0; x.rows() * t];
    out.par_chunks_mut(t).enumerate().for_each(|(i, chunk)| {
        let row = x.row(i);
        for (j, slot) in chunk.iter_mut().enumerate() {
            *slot = sq_dist(row, targets.row(j));
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[f64]]) -> DataMatrix {
        DataMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn new_accepts_well_formed() {
        let m = DataMatrix::new(2, 2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.row(1), &[2.0, 3.0]);
    }

    #[test]
    fn new_rejects_nan_with_position() {
        let err = DataMatrix::new(2, 2, vec![0.0, f64::NAN, 2.0, 3.0]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 0, col: 1 }));
    }

    #[test]
    fn new_rejects_empty() {
        assert!(matches!(
            DataMatrix::new(0, 5, vec![]).unwrap_err(),
            Error::EmptyInput
        ));
    }

    #[test]
    fn assignment_rejects_gap() {
        assert!(ClusterAssignment::new(vec![0, 2]).is_err());
        assert!(ClusterAssignment::new(vec![0, 1, 1]).is_ok());
    }

    #[test]
    fn raw_labels_remap_sorted() {
        let a = ClusterAssignment::from_raw_labels(&[7, -2, 7, 3]).unwrap();
        assert_eq!(a.labels(), &[2, 0, 2, 1]);
        assert_eq!(a.cluster_count(), 3);
    }

    #[test]
    fn median_odd_count() {
        let m = mat(&[&[0.0, 0.0], &[2.0, 4.0], &[4.0, 2.0]]);
        assert_eq!(
            coordinatewise_median(&m, &[0, 1, 2]).unwrap(),
            vec![2.0, 2.0]
        );
    }

    #[test]
    fn median_even_count_midpoint() {
        let m = mat(&[&[0.0, 0.0], &[2.0, 2.0]]);
        assert_eq!(coordinatewise_median(&m, &[0, 1]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn median_is_per_column() {
        let m = mat(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(
            coordinatewise_median(&m, &[0, 1, 2]).unwrap(),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn median_empty_subset_errors() {
        let m = mat(&[&[1.0]]);
        assert!(matches!(
            coordinatewise_median(&m, &[]).unwrap_err(),
            Error::EmptySubset
        ));
    }

    #[test]
    fn summary_of_two_pair_clusters() {
        let x = mat(&[&[0.0], &[2.0], &[10.0], &[14.0]]);
        let a = ClusterAssignment::new(vec![0, 0, 1, 1]).unwrap();
        let s = cluster_summary(&x, &a).unwrap();
        assert_eq!(s.median(0), &[1.0]);
        assert_eq!(s.median(1), &[12.0]);
        assert_eq!(s.median(2), &[6.0]); // whole-data median
        assert_eq!(s.radii(), &[1.0, 2.0]);
    }

    #[test]
    fn summary_singleton_radius_fallback() {
        let x = mat(&[&[5.0, 5.0]]);
        let a = ClusterAssignment::new(vec![0]).unwrap();
        let s = cluster_summary(&x, &a).unwrap();
        assert_eq!(s.median(0), &[5.0, 5.0]);
        assert_eq!(s.radii(), &[1.0]);
    }

    #[test]
    fn summary_identical_points_radius_fallback() {
        let x = mat(&[&[3.0], &[3.0], &[3.0]]);
        let a = ClusterAssignment::new(vec![0, 0, 0]).unwrap();
        let s = cluster_summary(&x, &a).unwrap();
        assert_eq!(s.radii(), &[1.0]);
    }

    #[test]
    fn summary_single_global_cluster_rows_match() {
        let x = mat(&[&[1.0, 2.0], &[4.0, 0.0], &[2.0, 9.0]]);
        let a = ClusterAssignment::new(vec![0, 0, 0]).unwrap();
        let s = cluster_summary(&x, &a).unwrap();
        assert_eq!(s.median(0), s.median(1));
    }

    #[test]
    fn pairwise_three_four_five() {
        let x = mat(&[&[0.0, 0.0]]);
        let t = mat(&[&[3.0, 4.0]]);
        assert_eq!(pairwise_sq_dist_to_rows(&x, &t).unwrap(), vec![25.0]);
    }

    #[test]
    fn pairwise_identity_and_units() {
        let x = mat(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let t = mat(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let d = pairwise_sq_dist_to_rows(&x, &t).unwrap();
        assert_eq!(d, vec![1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn pairwise_dimension_mismatch() {
        let x = mat(&[&[1.0, 0.0]]);
        let t = mat(&[&[0.0]]);
        assert!(matches!(
            pairwise_sq_dist_to_rows(&x, &t).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn pairwise_matches_naive_loop() {
        let mut seed = 0x9e3779b97f4a7c15_u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let x = DataMatrix::new(50, 10, (0..500).map(|_| next() * 8.0).collect()).unwrap();
        let t = DataMatrix::new(7, 10, (0..70).map(|_| next() * 8.0).collect()).unwrap();
        let d = pairwise_sq_dist_to_rows(&x, &t).unwrap();
        for i in 0..50 {
            for j in 0..7 {
                let mut acc = 0.0;
                for k in 0..10 {
                    acc += (x.get(i, k) - t.get(j, k)).powi(2);
                }
                let got = d[i * 7 + j];
                assert!((got - acc).abs() <= 1e-9 * acc.max(1.0));
            }
        }
    }

    proptest! {
        // median(T(S)) = T(median(S)) for translation, positive scaling,
        // coordinate permutation, and per-coordinate sign flips.
        #[test]
        fn median_equivariance(
            raw in proptest::collection::vec(-100.0f64..100.0, 6..40),
            shift in -50.0f64..50.0,
            scale in 0.01f64..20.0,
            flip in any::<bool>(),
        ) {
            let n = raw.len() / 2;
            let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![raw[2 * i], raw[2 * i + 1]]).collect();
            let x = DataMatrix::from_rows(&rows).unwrap();
            let subset: Vec<usize> = (0..n).collect();
            let base = coordinatewise_median(&x, &subset).unwrap();

            let sign = if flip { -1.0 } else { 1.0 };
            // Transform: swap the two coordinates, then scale/shift/flip col 0.
            let t_rows: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| vec![sign * (r[1] * scale + shift), r[0]])
                .collect();
            let tx = DataMatrix::from_rows(&t_rows).unwrap();
            let tmed = coordinatewise_median(&tx, &subset).unwrap();

            prop_assert!((tmed[0] - sign * (base[1] * scale + shift)).abs() <= 1e-12 * (1.0 + tmed[0].abs()));
            prop_assert!((tmed[1] - base[0]).abs() == 0.0);
        }

        // Radii are translation-invariant and scale by |s|.
        #[test]
        fn radius_scaling(
            raw in proptest::collection::vec(-10.0f64..10.0, 4..30),
            shift in -5.0f64..5.0,
            scale in 0.1f64..10.0,
        ) {
            let rows: Vec<Vec<f64>> = raw.iter().map(|&v| vec![v]).collect();
            let x = DataMatrix::from_rows(&rows).unwrap();
            let a = ClusterAssignment::new(vec![0; rows.len()]).unwrap();
            let r0 = cluster_summary(&x, &a).unwrap().radii()[0];

            let shifted: Vec<Vec<f64>> = rows.iter().map(|r| vec![r[0] + shift]).collect();
            let r_shift = cluster_summary(&DataMatrix::from_rows(&shifted).unwrap(), &a)
                .unwrap()
                .radii()[0];
            prop_assert!((r_shift - r0).abs() <= 1e-9 * r0.max(1.0));

            // The fallback radius 1 for all-coincident clusters does not scale.
            let degenerate = raw.iter().all(|&v| v == raw[0]);
            if !degenerate {
                let scaled: Vec<Vec<f64>> = rows.iter().map(|r| vec![r[0] * scale]).collect();
                let r_scale = cluster_summary(&DataMatrix::from_rows(&scaled).unwrap(), &a)
                    .unwrap()
                    .radii()[0];
                prop_assert!((r_scale - r0 * scale).abs() <= 1e-9 * (r0 * scale).max(1.0));
            }
        }
    }
}
