//! Minimal embedding producers for end-to-end scoring without an external ML
//! stack: PCA backed by an in-repo one-sided Jacobi SVD, a seeded random
//! orthonormal projection, and a row-shuffle adversarial baseline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::data::DataMatrix;
use crate::error::{Error, Result};

/// Convergence threshold for the Jacobi sweeps.
const SVD_TOL: f64 = 1e-10;
/// Sweep budget before giving up with [`Error::SvdNonConvergence`].
const SVD_MAX_SWEEPS: usize = 100;

/// An affine linear embedder: subtract `mean`, multiply by the transpose of
/// `components` (q orthonormal rows of length p).
#[derive(Debug, Clone)]
pub struct LinearEmbedder {
    mean: Vec<f64>,
    /// Row-major q x p; rows orthonormal.
    components: Vec<f64>,
    p: usize,
    q: usize,
}

impl LinearEmbedder {
    /// Input dimensionality.
    pub fn input_dim(&self) -> usize {
        self.p
    }

    /// Output dimensionality.
    pub fn output_dim(&self) -> usize {
        self.q
    }

    /// Per-feature mean subtracted before projection.
    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// Component row i.
    pub fn component(&self, i: usize) -> &[f64] {
        &self.components[i * self.p..(i + 1) * self.p]
    }
}

/// Fits PCA: components are the top-q right singular vectors of the
/// mean-centered data, each flipped so its largest-magnitude entry is
/// positive. Requires 1 <= q <= min(n, p).
pub fn fit_pca(x: &DataMatrix, q: usize) -> Result<LinearEmbedder> {
    let (n, p) = (x.rows(), x.cols());
    let max_q = n.min(p);
    if q == 0 || q > max_q {
        return Err(Error::InvalidTargetDim { q, max: max_q });
    }

    let mut mean = vec![0.0; p];
    for i in 0..n {
        for (m, v) in mean.iter_mut().zip(x.row(i)) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }

    // Column-major centered copy; Jacobi rotates whole columns.
    let mut cols = vec![0.0; n * p];
    for i in 0..n {
        for j in 0..p {
            cols[j * n + i] = x.get(i, j) - mean[j];
        }
    }
    let v = jacobi_orthogonalize(&mut cols, n, p)?;

    // Order columns by singular value, descending; stable under ties.
    let mut order: Vec<usize> = (0..p).collect();
    let sigma: Vec<f64> = (0..p)
        .map(|j| {
            cols[j * n..(j + 1) * n]
                .iter()
                .map(|x| x * x)
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    order.sort_by(|&a, &b| sigma[b].partial_cmp(&sigma[a]).unwrap().then(a.cmp(&b)));

    let mut components = Vec::with_capacity(q * p);
    for &col in order.iter().take(q) {
        let mut row: Vec<f64> = (0..p).map(|k| v[col * p + k]).collect();
        let lead = row
            .iter()
            .enumerate()
            .max_by(|(ai, av), (bi, bv)| {
                av.abs().partial_cmp(&bv.abs()).unwrap().then(bi.cmp(ai)) // first index wins ties
            })
            .map(|(i, _)| i)
            .unwrap();
        if row[lead] < 0.0 {
            for r in &mut row {
                *r = -*r;
            }
        }
        components.extend_from_slice(&row);
    }
    Ok(LinearEmbedder {
        mean,
        components,
        p,
        q,
    })
}

/// One-sided Jacobi: rotates column pairs of `cols` (n x p, column-major)
/// until all pairs are orthogonal, accumulating the right rotations in the
/// returned p x p matrix (column-major: entry (k, j) at `v[j * p + k]`).
fn jacobi_orthogonalize(cols: &mut [f64], n: usize, p: usize) -> Result<Vec<f64>> {
    let mut v = vec![0.0; p * p];
    for j in 0..p {
        v[j * p + j] = 1.0;
    }
    for _ in 0..SVD_MAX_SWEEPS {
        let mut off = 0.0_f64;
        for i in 0..p {
            for j in i + 1..p {
                let (alpha, beta, gamma) = {
                    let ci = &cols[i * n..(i + 1) * n];
                    let cj = &cols[j * n..(j + 1) * n];
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = 0.0;
                    for (a, b) in ci.iter().zip(cj) {
                        alpha += a * a;
                        beta += b * b;
                        gamma += a * b;
                    }
                    (alpha, beta, gamma)
                };
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let ratio = gamma.abs() / (alpha * beta).sqrt();
                off = off.max(ratio);
                if ratio <= SVD_TOL {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(cols, n, i, j, c, s);
                rotate_pair(&mut v, p, i, j, c, s);
            }
        }
        if off <= SVD_TOL {
            return Ok(v);
        }
    }
    Err(Error::SvdNonConvergence {
        sweeps: SVD_MAX_SWEEPS,
    })
}

fn rotate_pair(data: &mut [f64], len: usize, i: usize, j: usize, c: f64, s: f64) {
    let (lo, hi) = (i.min(j), i.max(j));
    let (head, tail) = data.split_at_mut(hi * len);
    let ci = &mut head[lo * len..(lo + 1) * len];
    let cj = &mut tail[..len];
    for (a, b) in ci.iter_mut().zip(cj.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// Projects rows: (x - mean) * components^T.
pub fn transform(e: &LinearEmbedder, x: &DataMatrix) -> Result<DataMatrix> {
    if x.cols() != e.p {
        return Err(Error::DimensionMismatch {
            left: e.p,
            right: x.cols(),
        });
    }
    let mut out = Vec::with_capacity(x.rows() * e.q);
    for i in 0..x.rows() {
        let row = x.row(i);
        for comp in 0..e.q {
            let basis = e.component(comp);
            let mut acc = 0.0;
            for k in 0..e.p {
                acc += (row[k] - e.mean[k]) * basis[k];
            }
            out.push(acc);
        }
    }
    DataMatrix::new(x.rows(), e.q, out)
}

/// A seeded random projection with orthonormal rows (Gaussian draws followed
/// by Gram-Schmidt). Mean is zero; requires 1 <= q <= p.
pub fn fit_random_projection(p: usize, q: usize, seed: u64) -> Result<LinearEmbedder> {
    if q == 0 || q > p {
        return Err(Error::InvalidTargetDim { q, max: p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(q);
    while rows.len() < q {
        let mut cand: Vec<f64> = (0..p).map(|_| StandardNormal.sample(&mut rng)).collect();
        for prev in &rows {
            let dot: f64 = cand.iter().zip(prev).map(|(a, b)| a * b).sum();
            for (c, pv) in cand.iter_mut().zip(prev) {
                *c -= dot * pv;
            }
        }
        let norm: f64 = cand.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue; // essentially dependent draw; try again
        }
        for c in &mut cand {
            *c /= norm;
        }
        rows.push(cand);
    }
    Ok(LinearEmbedder {
        mean: vec![0.0; p],
        components: rows.into_iter().flatten().collect(),
        p,
        q,
    })
}

/// Permutes rows by a seeded uniform random permutation, destroying sample
/// correspondence while preserving the marginal point cloud.
pub fn shuffle_embedding(x: &DataMatrix, seed: u64) -> Result<DataMatrix> {
    let n = x.rows();
    if n < 2 {
        return Err(Error::TooFewSamples { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut values = Vec::with_capacity(n * x.cols());
    for &src in &perm {
        values.extend_from_slice(x.row(src));
    }
    DataMatrix::new(n, x.cols(), values)
}
