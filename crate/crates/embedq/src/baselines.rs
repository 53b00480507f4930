//! Rank-based comparison metrics: neighborhood ranks, the co-ranking matrix,
//! and the trustworthiness / continuity / LCMC scores derived from it.
//!
//! These all materialize O(n^2) state, so a configurable sample cap guards
//! every entry point ([`DEFAULT_RANK_CAP`]). Each metric is computed two
//! independent ways, directly from the two rank matrices and from the
//! co-ranking matrix, so either route can check the other.
//!
//! Formulas follow the standard literature definitions: trustworthiness
//! penalizes intrusions (embedded neighbors that were not original
//! neighbors), continuity penalizes extrusions (original neighbors lost in
//! the embedding), and LCMC is mean k-neighborhood overlap minus the
//! chance-level term k/(n-1).

use rayon::prelude::*;

use crate::data::{sq_dist, DataMatrix};
use crate::error::{Error, Result};

/// Rank matrices are O(n^2); inputs above this row count are rejected.
pub const DEFAULT_RANK_CAP: usize = 15_000;

/// Neighborhood-wise ranks: entry (i, j) is the position of j (from 1) when
/// all other points are sorted by distance to i, ascending; the diagonal is 0.
/// Distance ties rank the smaller index first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMatrix {
    n: usize,
    ranks: Vec<u32>,
}

impl RankMatrix {
    /// Side length n.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True only for an impossible zero-sample matrix.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Rank of j as seen from i.
    pub fn rank(&self, i: usize, j: usize) -> u32 {
        self.ranks[i * self.n + j]
    }

    /// Row i of the matrix.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.ranks[i * self.n..(i + 1) * self.n]
    }
}

/// Histogram of rank co-occurrences: entry (k, l) counts ordered pairs whose
/// original-space rank is k+1 and embedded-space rank is l+1. Every row and
/// column sums to n; the total is n(n-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoRankingMatrix {
    n: usize,
    counts: Vec<u32>,
}

impl CoRankingMatrix {
    /// Number of samples n (the matrix itself is (n-1) x (n-1)).
    pub fn samples(&self) -> usize {
        self.n
    }

    /// Side length of the matrix, n - 1.
    pub fn side(&self) -> usize {
        self.n - 1
    }

    /// Count at 0-based position (k, l), i.e. rank pair (k+1, l+1).
    pub fn count(&self, k: usize, l: usize) -> u32 {
        self.counts[k * (self.n - 1) + l]
    }

    /// Flat row-major counts.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }
}

/// Builds the rank matrix of `x` under the default sample cap.
pub fn rank_matrix(x: &DataMatrix) -> Result<RankMatrix> {
    rank_matrix_with_cap(x, DEFAULT_RANK_CAP)
}

/// [`rank_matrix`] with an explicit cap.
pub fn rank_matrix_with_cap(x: &DataMatrix, cap: usize) -> Result<RankMatrix> {
    let n = x.rows();
    if n < 2 {
        return Err(Error::TooFewSamples { n });
    }
    if n > cap {
        return Err(Error::TooLargeForRankMetrics { n, cap });
    }
    let mut ranks = vec![0u32; n * n];
    ranks.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let xi = x.row(i);
        let mut order: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (sq_dist(xi, x.row(j)), j))
            .collect();
        order.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        for (pos, &(_, j)) in order.iter().enumerate() {
            row[j] = (pos + 1) as u32;
        }
    });
    Ok(RankMatrix { n, ranks })
}

/// Co-ranking matrix of the pair, under the default cap.
pub fn coranking(x: &DataMatrix, xp: &DataMatrix) -> Result<CoRankingMatrix> {
    coranking_with_cap(x, xp, DEFAULT_RANK_CAP)
}

/// [`coranking`] with an explicit cap.
pub fn coranking_with_cap(x: &DataMatrix, xp: &DataMatrix, cap: usize) -> Result<CoRankingMatrix> {
    if x.rows() != xp.rows() {
        return Err(Error::RowCountMismatch {
            left: x.rows(),
            right: xp.rows(),
        });
    }
    let orig = rank_matrix_with_cap(x, cap)?;
    let emb = rank_matrix_with_cap(xp, cap)?;
    let n = x.rows();
    let side = n - 1;
    let mut counts = vec![0u32; side * side];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = orig.rank(i, j) as usize - 1;
            let l = emb.rank(i, j) as usize - 1;
            counts[k * side + l] += 1;
        }
    }
    Ok(CoRankingMatrix { n, counts })
}

fn check_trust_k(k: usize, n: usize) -> Result<()> {
    // The Venna-Kaski normalizer requires k < n/2.
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidNeighborhoodSize { k, n });
    }
    Ok(())
}

fn trust_denominator(n: usize, k: usize) -> f64 {
    (n * k * (2 * n - 3 * k - 1)) as f64
}

/// Trustworthiness: 1 minus the scaled rank penalty of intrusions, i.e.
/// points inside the embedded k-neighborhood that were not original
/// k-neighbors. Requires 1 <= k < n/2; 1.0 iff there are no intrusions.
pub fn trustworthiness(x: &DataMatrix, xp: &DataMatrix, k: usize) -> Result<f64> {
    if x.rows() != xp.rows() {
        return Err(Error::RowCountMismatch {
            left: x.rows(),
            right: xp.rows(),
        });
    }
    check_trust_k(k, x.rows())?;
    let orig = rank_matrix(x)?;
    let emb = rank_matrix(xp)?;
    Ok(trust_from_ranks(&orig, &emb, k))
}

fn trust_from_ranks(orig: &RankMatrix, emb: &RankMatrix, k: usize) -> f64 {
    let n = orig.len();
    let mut penalty: u64 = 0;
    for i in 0..n {
        let ro = orig.row(i);
        let re = emb.row(i);
        for j in 0..n {
            if j == i {
                continue;
            }
            if re[j] as usize <= k && ro[j] as usize > k {
                penalty += ro[j] as u64 - k as u64;
            }
        }
    }
    1.0 - 2.0 * penalty as f64 / trust_denominator(n, k)
}

/// Continuity: the mirror of trustworthiness, penalizing extrusions, i.e.
/// original k-neighbors that fall outside the embedded k-neighborhood.
pub fn continuity(x: &DataMatrix, xp: &DataMatrix, k: usize) -> Result<f64> {
    if x.rows() != xp.rows() {
        return Err(Error::RowCountMismatch {
            left: x.rows(),
            right: xp.rows(),
        });
    }
    check_trust_k(k, x.rows())?;
    let orig = rank_matrix(x)?;
    let emb = rank_matrix(xp)?;
    let n = orig.len();
    let mut penalty: u64 = 0;
    for i in 0..n {
        let ro = orig.row(i);
        let re = emb.row(i);
        for j in 0..n {
            if j == i {
                continue;
            }
            if ro[j] as usize <= k && re[j] as usize > k {
                penalty += re[j] as u64 - k as u64;
            }
        }
    }
    Ok(1.0 - 2.0 * penalty as f64 / trust_denominator(n, k))
}

/// Local continuity meta criterion: mean k-neighborhood overlap normalized by
/// nk, minus the chance level k/(n-1). Requires 1 <= k <= n-1.
pub fn lcmc(x: &DataMatrix, xp: &DataMatrix, k: usize) -> Result<f64> {
    if x.rows() != xp.rows() {
        return Err(Error::RowCountMismatch {
            left: x.rows(),
            right: xp.rows(),
        });
    }
    let n = x.rows();
    if k == 0 || k > n - 1 {
        return Err(Error::InvalidNeighborhoodSize { k, n });
    }
    let orig = rank_matrix(x)?;
    let emb = rank_matrix(xp)?;
    let mut overlap: u64 = 0;
    for i in 0..n {
        let ro = orig.row(i);
        let re = emb.row(i);
        for j in 0..n {
            if j != i && ro[j] as usize <= k && re[j] as usize <= k {
                overlap += 1;
            }
        }
    }
    Ok(overlap as f64 / (n * k) as f64 - k as f64 / (n - 1) as f64)
}

/// Trustworthiness recomputed from a co-ranking matrix; the independent
/// second route for checking [`trustworthiness`].
pub fn trustworthiness_from_coranking(q: &CoRankingMatrix, k: usize) -> Result<f64> {
    let n = q.samples();
    check_trust_k(k, n)?;
    let mut penalty: u64 = 0;
    for ko in k..q.side() {
        // original rank ko+1 > k
        for le in 0..k {
            // embedded rank le+1 <= k
            penalty += (ko + 1 - k) as u64 * q.count(ko, le) as u64;
        }
    }
    Ok(1.0 - 2.0 * penalty as f64 / trust_denominator(n, k))
}

/// Continuity recomputed from a co-ranking matrix.
pub fn continuity_from_coranking(q: &CoRankingMatrix, k: usize) -> Result<f64> {
    let n = q.samples();
    check_trust_k(k, n)?;
    let mut penalty: u64 = 0;
    for ko in 0..k {
        for le in k..q.side() {
            penalty += (le + 1 - k) as u64 * q.count(ko, le) as u64;
        }
    }
    Ok(1.0 - 2.0 * penalty as f64 / trust_denominator(n, k))
}

/// LCMC recomputed from a co-ranking matrix.
pub fn lcmc_from_coranking(q: &CoRankingMatrix, k: usize) -> Result<f64> {
    let n = q.samples();
    if k == 0 || k > n - 1 {
        return Err(Error::InvalidNeighborhoodSize { k, n });
    }
    let mut overlap: u64 = 0;
    for ko in 0..k {
        for le in 0..k {
            overlap += q.count(ko, le) as u64;
        }
    }
    Ok(overlap as f64 / (n * k) as f64 - k as f64 / (n - 1) as f64)
}

/// Size-relative default neighborhood for command-line comparisons.
pub fn default_k(n: usize) -> usize {
    (n / 100).max(1)
}
