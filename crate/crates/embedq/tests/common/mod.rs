//! Shared test support: independent naive oracles transliterated from the
//! score definitions, brute-force rank metrics, a brute-force agglomerative
//! clusterer, and small statistics helpers.
//!
//! Everything here works on plain `Vec<Vec<f64>>` rows and re-derives every
//! quantity with direct loops, deliberately sharing no code with the library
//! paths it is used to check.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Naive score oracle
// ---------------------------------------------------------------------------

#[allow(clippy::needless_range_loop)] // transliterated definitions stay index-based
fn oracle_median(rows: &[Vec<f64>], idx: &[usize]) -> Vec<f64> {
    let dim = rows[idx[0]].len();
    let mut out = Vec::with_capacity(dim);
    for col in 0..dim {
        let mut vals: Vec<f64> = idx.iter().map(|&i| rows[i][col]).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let m = vals.len();
        out.push(if m % 2 == 1 {
            vals[m / 2]
        } else {
            (vals[m / 2 - 1] + vals[m / 2]) / 2.0
        });
    }
    out
}

fn oracle_norm(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc.sqrt()
}

fn oracle_normalized_distances(rows: &[Vec<f64>], labels: &[usize], c: usize) -> Vec<f64> {
    let mut medians = Vec::with_capacity(c);
    let mut radii = Vec::with_capacity(c);
    for k in 0..c {
        let members: Vec<usize> = (0..rows.len()).filter(|&i| labels[i] == k).collect();
        let mu = oracle_median(rows, &members);
        let mut r = 0.0_f64;
        for &i in &members {
            r = r.max(oracle_norm(&rows[i], &mu));
        }
        radii.push(if r > 0.0 { r } else { 1.0 });
        medians.push(mu);
    }
    (0..rows.len())
        .map(|i| oracle_norm(&rows[i], &medians[labels[i]]) / radii[labels[i]])
        .collect()
}

fn oracle_gap_matrix(rows: &[Vec<f64>], labels: &[usize], c: usize) -> Vec<Vec<f64>> {
    let mut reps: Vec<Vec<f64>> = (0..c)
        .map(|k| {
            let members: Vec<usize> = (0..rows.len()).filter(|&i| labels[i] == k).collect();
            oracle_median(rows, &members)
        })
        .collect();
    let all: Vec<usize> = (0..rows.len()).collect();
    reps.push(oracle_median(rows, &all));

    let m = c + 1;
    let mut gaps = vec![vec![0.0; m]; m];
    let mut max = 0.0_f64;
    for k in 0..m {
        for l in 0..m {
            if k != l {
                gaps[k][l] = oracle_norm(&reps[k], &reps[l]);
                max = max.max(gaps[k][l]);
            }
        }
    }
    if max > 0.0 {
        for row in &mut gaps {
            for g in row {
                *g /= max;
            }
        }
    } else {
        for row in &mut gaps {
            for g in row {
                *g = 0.0;
            }
        }
    }
    gaps
}

/// Unclamped (local, global) score pair straight from the definitions.
pub fn naive_cmet(rows: &[Vec<f64>], rows_p: &[Vec<f64>], labels: &[usize]) -> (f64, f64) {
    let n = rows.len();
    let c = labels.iter().copied().max().unwrap() + 1;

    let d = oracle_normalized_distances(rows, labels, c);
    let dp = oracle_normalized_distances(rows_p, labels, c);
    let mut acc = 0.0;
    for i in 0..n {
        acc += (d[i] - dp[i]) * (d[i] - dp[i]);
    }
    let local = 1.0 - acc.sqrt() / (n as f64).sqrt();

    let gamma = oracle_gap_matrix(rows, labels, c);
    let gamma_p = oracle_gap_matrix(rows_p, labels, c);
    let mut frob = 0.0;
    for k in 0..c + 1 {
        for l in 0..c + 1 {
            let diff = gamma[k][l] - gamma_p[k][l];
            frob += diff * diff;
        }
    }
    let global = 1.0 - frob.sqrt() / ((c * (c + 1)) as f64).sqrt();
    (local, global)
}

// ---------------------------------------------------------------------------
// Brute-force agglomerative clustering
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleLinkage {
    Single,
    Complete,
    Average,
    Ward,
}

/// One merge step as (left node, right node, dissimilarity, new size).
pub type OracleMerge = (usize, usize, f64, usize);

/// Exhaustive-scan agglomerative clustering: every step evaluates the linkage
/// for every active pair from scratch and merges the smallest, breaking ties
/// toward the lexicographically smallest (min member, max member) pair.
pub fn naive_agglomerate(points: &[Vec<f64>], linkage: OracleLinkage) -> Vec<OracleMerge> {
    let n = points.len();
    // (node id, sorted members)
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let w = oracle_linkage_value(points, &clusters[a].1, &clusters[b].1, linkage);
                let (mm_a, mm_b) = (clusters[a].1[0], clusters[b].1[0]);
                let (lo, hi) = (mm_a.min(mm_b), mm_a.max(mm_b));
                let candidate = (w, lo, hi, a, b);
                let better = match &best {
                    None => true,
                    Some((bw, blo, bhi, _, _)) => (w, lo, hi) < (*bw, *blo, *bhi),
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
        let (w, _, _, a, b) = best.unwrap();
        let (id_b, members_b) = clusters.remove(b);
        let (id_a, members_a) = clusters.remove(a);
        let mut members = members_a;
        members.extend(members_b);
        members.sort_unstable();
        merges.push((id_a.min(id_b), id_a.max(id_b), w, members.len()));
        clusters.push((n + step, members));
    }
    merges
}

fn oracle_linkage_value(
    points: &[Vec<f64>],
    a: &[usize],
    b: &[usize],
    linkage: OracleLinkage,
) -> f64 {
    match linkage {
        OracleLinkage::Single => {
            let mut w = f64::INFINITY;
            for &i in a {
                for &j in b {
                    w = w.min(oracle_norm(&points[i], &points[j]));
                }
            }
            w
        }
        OracleLinkage::Complete => {
            let mut w = 0.0_f64;
            for &i in a {
                for &j in b {
                    w = w.max(oracle_norm(&points[i], &points[j]));
                }
            }
            w
        }
        OracleLinkage::Average => {
            let mut acc = 0.0;
            for &i in a {
                for &j in b {
                    acc += oracle_norm(&points[i], &points[j]);
                }
            }
            acc / (a.len() * b.len()) as f64
        }
        OracleLinkage::Ward => {
            // Closed form: sqrt(2 |A||B| / (|A|+|B|)) * ||mean_A - mean_B||.
            let dim = points[0].len();
            let mean = |ids: &[usize]| -> Vec<f64> {
                let mut m = vec![0.0; dim];
                for &i in ids {
                    for (slot, v) in m.iter_mut().zip(&points[i]) {
                        *slot += v;
                    }
                }
                for slot in &mut m {
                    *slot /= ids.len() as f64;
                }
                m
            };
            let (ma, mb) = (mean(a), mean(b));
            let gap = oracle_norm(&ma, &mb);
            let factor = 2.0 * (a.len() * b.len()) as f64 / (a.len() + b.len()) as f64;
            (factor).sqrt() * gap
        }
    }
}

/// Partition of 0..n into `c` groups implied by undoing the last c-1 oracle
/// merges, labeled by smallest member.
pub fn naive_cut(n: usize, merges: &[OracleMerge], c: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..2 * n - 1).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (t, &(l, r, _, _)) in merges[..n - c].iter().enumerate() {
        let node = n + t;
        let (fl, fr) = (find(&mut parent, l), find(&mut parent, r));
        parent[fl] = node;
        parent[fr] = node;
    }
    let mut group: Vec<Option<usize>> = vec![None; 2 * n - 1];
    let mut labels = vec![0usize; n];
    let mut next = 0;
    for (leaf, label) in labels.iter_mut().enumerate() {
        let root = find(&mut parent, leaf);
        *label = *group[root].get_or_insert_with(|| {
            let g = next;
            next += 1;
            g
        });
    }
    labels
}

// ---------------------------------------------------------------------------
// Brute-force rank metrics
// ---------------------------------------------------------------------------

/// Ranks of all points as seen from `i` (0 for i itself), ties by index.
fn oracle_ranks_from(rows: &[Vec<f64>], i: usize) -> Vec<usize> {
    let n = rows.len();
    let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    order.sort_by(|&a, &b| {
        oracle_norm(&rows[i], &rows[a])
            .partial_cmp(&oracle_norm(&rows[i], &rows[b]))
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0usize; n];
    for (pos, &j) in order.iter().enumerate() {
        ranks[j] = pos + 1;
    }
    ranks
}

pub fn naive_trustworthiness(rows: &[Vec<f64>], rows_p: &[Vec<f64>], k: usize) -> f64 {
    let n = rows.len();
    let mut penalty = 0.0;
    for i in 0..n {
        let ro = oracle_ranks_from(rows, i);
        let re = oracle_ranks_from(rows_p, i);
        for j in 0..n {
            if j != i && re[j] <= k && ro[j] > k {
                penalty += (ro[j] - k) as f64;
            }
        }
    }
    1.0 - 2.0 * penalty / (n * k * (2 * n - 3 * k - 1)) as f64
}

pub fn naive_continuity(rows: &[Vec<f64>], rows_p: &[Vec<f64>], k: usize) -> f64 {
    let n = rows.len();
    let mut penalty = 0.0;
    for i in 0..n {
        let ro = oracle_ranks_from(rows, i);
        let re = oracle_ranks_from(rows_p, i);
        for j in 0..n {
            if j != i && ro[j] <= k && re[j] > k {
                penalty += (re[j] - k) as f64;
            }
        }
    }
    1.0 - 2.0 * penalty / (n * k * (2 * n - 3 * k - 1)) as f64
}

pub fn naive_lcmc(rows: &[Vec<f64>], rows_p: &[Vec<f64>], k: usize) -> f64 {
    let n = rows.len();
    let mut overlap = 0usize;
    for i in 0..n {
        let ro = oracle_ranks_from(rows, i);
        let re = oracle_ranks_from(rows_p, i);
        for j in 0..n {
            if j != i && ro[j] <= k && re[j] <= k {
                overlap += 1;
            }
        }
    }
    overlap as f64 / (n * k) as f64 - k as f64 / (n - 1) as f64
}

// ---------------------------------------------------------------------------
// Instance generation and statistics helpers
// ---------------------------------------------------------------------------

/// Random rows in [-5, 5]^dim.
pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.random_range(-5.0..5.0)).collect())
        .collect()
}

/// Random labels over 0..c with every cluster guaranteed occupied.
pub fn random_labels(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..c)).collect();
    for (k, label) in labels.iter_mut().take(c).enumerate() {
        *label = k; // pin one member per cluster
    }
    labels
}

/// Gaussian blobs around the given centers, `per` points each, labeled by
/// blob.
pub fn gaussian_blobs(
    rng: &mut ChaCha8Rng,
    centers: &[Vec<f64>],
    per: usize,
    sigma: f64,
) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut rows = Vec::with_capacity(centers.len() * per);
    let mut labels = Vec::with_capacity(centers.len() * per);
    for (b, center) in centers.iter().enumerate() {
        for _ in 0..per {
            let row: Vec<f64> = center.iter().map(|&m| m + sigma * gauss(rng)).collect();
            rows.push(row);
            labels.push(b);
        }
    }
    (rows, labels)
}

/// Box-Muller standard normal from the shared stream.
fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Axis-aligned similarity transform: per-row, permute coordinates after
/// scaling/shifting the source coordinate and optionally flipping the sign of
/// the output coordinate.
pub fn axis_aligned_transform(
    rows: &[Vec<f64>],
    shift: &[f64],
    scale: f64,
    perm: &[usize],
    flips: &[bool],
) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|row| {
            perm.iter()
                .enumerate()
                .map(|(out_col, &src)| {
                    let sign = if flips[out_col] { -1.0 } else { 1.0 };
                    sign * (row[src] * scale + shift[src])
                })
                .collect()
        })
        .collect()
}

/// Spearman rank correlation with average ranks under ties.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    pearson(&ra, &rb)
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut pos = 0;
    while pos < n {
        let mut end = pos;
        while end + 1 < n && values[order[end + 1]] == values[order[pos]] {
            end += 1;
        }
        let avg = (pos + end) as f64 / 2.0 + 1.0;
        for &idx in &order[pos..=end] {
            ranks[idx] = avg;
        }
        pos = end + 1;
    }
    ranks
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 || vb == 0.0 {
        // Constant vectors carry no ordering information; treat as perfectly
        // concordant only if both are constant.
        return if va == vb { 1.0 } else { 0.0 };
    }
    cov / (va * vb).sqrt()
}

/// Converts plain rows to the library matrix type.
pub fn to_matrix(rows: &[Vec<f64>]) -> embedq::DataMatrix {
    embedq::DataMatrix::from_rows(rows).unwrap()
}

/// Seeded stream shorthand.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
