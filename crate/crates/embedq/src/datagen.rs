//! Deterministic synthetic datasets, the 2->9 polynomial feature lift, and
//! point-cloud CSV ingestion.
//!
//! Generators draw from a fixed ChaCha8 stream keyed by the caller's seed, so
//! outputs are byte-identical across runs and platforms. The CSV format is
//! UTF-8 with a comma-separated header line, float feature columns, and an
//! optional integer label column addressed by header name.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::data::{ClusterAssignment, DataMatrix};
use crate::error::{Error, Result};

/// A dataset with per-sample class labels.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub data: DataMatrix,
    pub labels: ClusterAssignment,
    pub name: String,
}

/// Ring radius of the interlaced-rings generator.
pub const RING_RADIUS: f64 = 1.0;
/// Ring centers: three up, two down, horizontally interlaced.
pub const RING_CENTERS: [(f64, f64); 5] = [
    (-2.2, 0.0),
    (0.0, 0.0),
    (2.2, 0.0),
    (-1.1, -0.9),
    (1.1, -0.9),
];
/// Standard deviation of the radial jitter; samples are clamped at three
/// sigma so every point stays within `RING_RADIUS +/- 3 * RING_JITTER_SIGMA`
/// of its center.
pub const RING_JITTER_SIGMA: f64 = 0.02;

/// Five interlaced rings in the plane, `n_per_ring` points each, labeled
/// 0..4 by ring. Angles are uniform; radii carry clamped Gaussian jitter.
pub fn gen_rings(n_per_ring: usize, seed: u64) -> Result<LabeledDataset> {
    if n_per_ring < 3 {
        return Err(Error::InvalidCount {
            reason: format!("need at least 3 points per ring, got {n_per_ring}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = Normal::new(0.0, RING_JITTER_SIGMA).expect("valid sigma");
    let mut values = Vec::with_capacity(5 * n_per_ring * 2);
    let mut labels = Vec::with_capacity(5 * n_per_ring);
    for (ring, &(cx, cy)) in RING_CENTERS.iter().enumerate() {
        for _ in 0..n_per_ring {
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let eps: f64 = jitter.sample(&mut rng);
            let r = RING_RADIUS + eps.clamp(-3.0 * RING_JITTER_SIGMA, 3.0 * RING_JITTER_SIGMA);
            values.push(cx + r * angle.cos());
            values.push(cy + r * angle.sin());
            labels.push(ring);
        }
    }
    Ok(LabeledDataset {
        data: DataMatrix::new(5 * n_per_ring, 2, values)?,
        labels: ClusterAssignment::new(labels)?,
        name: "rings".into(),
    })
}

/// Parameter range of the roll: t in [1.5 pi, 4.5 pi].
pub const SWISS_T_MIN: f64 = 1.5 * std::f64::consts::PI;
/// Upper end of the roll parameter.
pub const SWISS_T_MAX: f64 = 4.5 * std::f64::consts::PI;
/// Height of the roll; the second coordinate is uniform in [0, this].
pub const SWISS_HEIGHT: f64 = 21.0;

/// The classic three-dimensional roll `(t cos t, height, t sin t)` with
/// labels given by four equal t-bands. Bands that receive no sample (possible
/// only for tiny n) are relabeled away to keep ids contiguous.
pub fn gen_swiss_roll(n: usize, seed: u64) -> Result<LabeledDataset> {
    if n < 4 {
        return Err(Error::InvalidCount {
            reason: format!("need at least 4 points, got {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(n * 3);
    let mut bands = Vec::with_capacity(n);
    for _ in 0..n {
        let t = rng.random_range(SWISS_T_MIN..SWISS_T_MAX);
        let height = rng.random_range(0.0..SWISS_HEIGHT);
        values.push(t * t.cos());
        values.push(height);
        values.push(t * t.sin());
        bands.push(band_of_t(t) as i64);
    }
    Ok(LabeledDataset {
        data: DataMatrix::new(n, 3, values)?,
        labels: ClusterAssignment::from_raw_labels(&bands)?,
        name: "swissroll".into(),
    })
}

/// Which of the four equal t-intervals a parameter value falls into.
pub fn band_of_t(t: f64) -> usize {
    let frac = (t - SWISS_T_MIN) / (SWISS_T_MAX - SWISS_T_MIN);
    ((frac * 4.0) as usize).min(3)
}

/// Lifts two-dimensional points into the nine polynomial features
/// `(x+y, x-y, xy, x^2, y^2, x^2 y, x y^2, x^3, y^3)`, in that column order.
pub fn lift_2_9(x: &DataMatrix) -> Result<DataMatrix> {
    if x.cols() != 2 {
        return Err(Error::WrongInputDimension {
            expected: 2,
            got: x.cols(),
        });
    }
    let mut values = Vec::with_capacity(x.rows() * 9);
    for i in 0..x.rows() {
        let (a, b) = (x.get(i, 0), x.get(i, 1));
        values.extend_from_slice(&[
            a + b,
            a - b,
            a * b,
            a * a,
            b * b,
            a * a * b,
            a * b * b,
            a * a * a,
            b * b * b,
        ]);
    }
    DataMatrix::new(x.rows(), 9, values)
}

/// Loads a point-cloud CSV. When `label_column` names a header column, that
/// column is parsed as integer labels (remapped to contiguous ids by sorted
/// value) and the rest become features; otherwise every column is a feature
/// and the dataset gets a single class.
pub fn load_point_cloud(path: &Path, label_column: Option<&str>) -> Result<LabeledDataset> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::EmptyInput)?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();

    let label_idx = match label_column {
        Some(name) => Some(
            columns
                .iter()
                .position(|c| *c == name)
                .ok_or_else(|| Error::MissingLabelColumn { name: name.into() })?,
        ),
        None => None,
    };
    let p = columns.len() - label_idx.map_or(0, |_| 1);
    if p == 0 {
        return Err(Error::EmptyInput);
    }

    let mut values = Vec::new();
    let mut raw_labels = Vec::new();
    let mut n = 0usize;
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1; // 1-based, counting the header line
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != columns.len() {
            return Err(Error::ParseError {
                line: lineno,
                reason: format!("expected {} cells, got {}", columns.len(), cells.len()),
            });
        }
        for (col, cell) in cells.iter().enumerate() {
            if Some(col) == label_idx {
                let label: i64 = cell.parse().map_err(|_| Error::ParseError {
                    line: lineno,
                    reason: format!("'{cell}' is not an integer label"),
                })?;
                raw_labels.push(label);
            } else {
                let value: f64 = cell.parse().map_err(|_| Error::ParseError {
                    line: lineno,
                    reason: format!("'{cell}' is not a number"),
                })?;
                values.push(value);
            }
        }
        n += 1;
    }

    let data = DataMatrix::new(n, p, values)?;
    let labels = match label_idx {
        Some(_) => ClusterAssignment::from_raw_labels(&raw_labels)?,
        None => ClusterAssignment::new(vec![0; n])?,
    };
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into());
    Ok(LabeledDataset { data, labels, name })
}

/// Writes a labeled dataset in the ingestion CSV format. Dimensions up to
/// three use the x,y,z header names; higher ones use f0, f1, ...
pub fn write_point_cloud(ds: &LabeledDataset, path: &Path) -> Result<()> {
    let mut file = fs::File::create(path)?;
    let p = ds.data.cols();
    let mut header: Vec<String> = if p <= 3 {
        ["x", "y", "z"][..p].iter().map(|s| s.to_string()).collect()
    } else {
        (0..p).map(|j| format!("f{j}")).collect()
    };
    header.push("label".into());
    writeln!(file, "{}", header.join(","))?;
    for i in 0..ds.data.rows() {
        let mut cells: Vec<String> = ds.data.row(i).iter().map(|v| fmt_float(*v)).collect();
        cells.push(ds.labels.label(i).to_string());
        writeln!(file, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Writes a bare matrix (no label column) in the ingestion CSV format.
pub fn write_matrix_csv(x: &DataMatrix, path: &Path) -> Result<()> {
    let mut file = fs::File::create(path)?;
    let p = x.cols();
    let header: Vec<String> = if p <= 3 {
        ["x", "y", "z"][..p].iter().map(|s| s.to_string()).collect()
    } else {
        (0..p).map(|j| format!("f{j}")).collect()
    };
    writeln!(file, "{}", header.join(","))?;
    for i in 0..x.rows() {
        let cells: Vec<String> = x.row(i).iter().map(|v| fmt_float(*v)).collect();
        writeln!(file, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Shortest representation that parses back to the identical f64.
pub(crate) fn fmt_float(v: f64) -> String {
    let s = format!("{v}");
    debug_assert_eq!(s.parse::<f64>().ok(), Some(v));
    s
}
