//! Implementations behind the command-line surface: scoring, cluster-count
//! sweeps, baseline comparison, dataset generation, and the scaling bench.
//!
//! The thin binary parses arguments and maps errors to exit codes; everything
//! observable lives here so tests and examples can call the same paths.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::baselines::{self, default_k, DEFAULT_RANK_CAP};
use crate::clustering::{agglomerate, cut, Linkage};
use crate::cmet::{cmet_score_assigned, derive_assignment, ClusterSource, Mode};
use crate::data::{ClusterAssignment, DataMatrix};
use crate::datagen::{gen_rings, gen_swiss_roll, load_point_cloud, write_point_cloud};
use crate::dr::{fit_random_projection, transform};
use crate::error::{Error, Result};
use crate::memtrack;
use crate::report::{reports_to_json, ScoreReport};

/// Report serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Options for the `score` command.
#[derive(Debug, Clone)]
pub struct ScoreOptions {
    pub original: PathBuf,
    pub embedding: PathBuf,
    /// Label column name; when absent, a column literally named "label" is
    /// used if present.
    pub labels_col: Option<String>,
    /// Forces unsupervised mode with this cluster count.
    pub clusters: Option<usize>,
    pub seed: u64,
    /// Optional SVG scatter of the (two-dimensional) embedding.
    pub svg: Option<PathBuf>,
}

/// A dataset plus the label column actually consumed, if any.
struct LoadedCloud {
    data: DataMatrix,
    labels: Option<ClusterAssignment>,
    name: String,
}

/// Loads a CSV, peeling off the requested (or auto-detected "label") column.
fn load_cloud(path: &Path, labels_col: Option<&str>) -> Result<LoadedCloud> {
    let header = read_header(path)?;
    let effective = match labels_col {
        Some(name) => {
            if !header.iter().any(|c| c == name) {
                return Err(Error::MissingLabelColumn { name: name.into() });
            }
            Some(name.to_string())
        }
        None => header.iter().find(|c| c.as_str() == "label").cloned(),
    };
    let ds = load_point_cloud(path, effective.as_deref())?;
    Ok(LoadedCloud {
        data: ds.data,
        labels: effective.map(|_| ds.labels),
        name: ds.name,
    })
}

fn read_header(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)?;
    let first = text.lines().next().ok_or(Error::EmptyInput)?;
    Ok(first.split(',').map(|c| c.trim().to_string()).collect())
}

/// Scores an embedding file against its original and renders one report.
pub fn cmd_score(opts: &ScoreOptions) -> Result<ScoreReport> {
    let orig = load_cloud(&opts.original, opts.labels_col.as_deref())?;
    let emb = load_cloud(&opts.embedding, None)?;
    if orig.data.rows() != emb.data.rows() {
        return Err(Error::RowCountMismatch {
            left: orig.data.rows(),
            right: emb.data.rows(),
        });
    }

    let source = match (opts.clusters, &orig.labels) {
        (Some(c), _) => ClusterSource::agglomerative(c),
        (None, Some(labels)) => ClusterSource::Labels(labels.clone()),
        (None, None) => {
            return Err(Error::MissingLabelColumn {
                name: opts.labels_col.clone().unwrap_or_else(|| "label".into()),
            })
        }
    };

    let start = Instant::now();
    let (derived, setup_peak) = memtrack::measure_peak(|| derive_assignment(&orig.data, &source));
    let (assignment, mode) = derived?;
    let (score, score_peak) =
        memtrack::measure_peak(|| cmet_score_assigned(&orig.data, &emb.data, &assignment, mode));
    let score = score?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;

    if let Some(svg_path) = &opts.svg {
        if emb.data.cols() != 2 {
            return Err(Error::InvalidArgument(format!(
                "--svg needs a 2-d embedding, got {} columns",
                emb.data.cols()
            )));
        }
        write_scatter_svg(&emb.data, &assignment, svg_path)?;
    }

    let report = ScoreReport {
        dataset: orig.name,
        embedding: emb.name,
        seed: opts.seed,
        times_ms: vec![("cmet".into(), elapsed_ms)],
        peak_memory_bytes: setup_peak.max(score_peak),
        ..Default::default()
    }
    .with_cmet(&score);
    Ok(report)
}

/// Options for the `sweep` command.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub original: PathBuf,
    pub embedding: PathBuf,
    pub c_list: Vec<usize>,
    pub labels_col: Option<String>,
    pub seed: u64,
}

/// Unsupervised scores for each cluster count in the list, sharing one
/// dendrogram of the original space.
pub fn cmd_sweep(opts: &SweepOptions) -> Result<Vec<ScoreReport>> {
    if opts.c_list.is_empty() {
        return Err(Error::InvalidArgument(
            "sweep needs at least one cluster count".into(),
        ));
    }
    let orig = load_cloud(&opts.original, opts.labels_col.as_deref())?;
    let emb = load_cloud(&opts.embedding, None)?;
    if orig.data.rows() != emb.data.rows() {
        return Err(Error::RowCountMismatch {
            left: orig.data.rows(),
            right: emb.data.rows(),
        });
    }

    let dendrogram = agglomerate(&orig.data, Linkage::default())?;
    let mut reports = Vec::with_capacity(opts.c_list.len());
    for &c in &opts.c_list {
        let start = Instant::now();
        let (result, peak) = memtrack::measure_peak(|| -> Result<_> {
            let assignment = cut(&dendrogram, c)?;
            cmet_score_assigned(&orig.data, &emb.data, &assignment, Mode::Unsupervised)
        });
        let score = result?;
        let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
        reports.push(
            ScoreReport {
                dataset: orig.name.clone(),
                embedding: emb.name.clone(),
                seed: opts.seed,
                times_ms: vec![("cmet".into(), elapsed_ms)],
                peak_memory_bytes: peak,
                ..Default::default()
            }
            .with_cmet(&score),
        );
    }
    Ok(reports)
}

/// Options for the `baseline` command.
#[derive(Debug, Clone)]
pub struct BaselineOptions {
    pub original: PathBuf,
    pub embedding: PathBuf,
    /// Neighborhood size; defaults to max(1, n/100).
    pub k: Option<usize>,
    /// Metric subset; empty means all three.
    pub metrics: Vec<BaselineMetric>,
    pub seed: u64,
}

/// The rank-based metrics the CLI can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMetric {
    Trustworthiness,
    Continuity,
    Lcmc,
}

impl BaselineMetric {
    /// All three, in emission order.
    pub fn all() -> Vec<BaselineMetric> {
        vec![
            BaselineMetric::Trustworthiness,
            BaselineMetric::Continuity,
            BaselineMetric::Lcmc,
        ]
    }

    /// Parses a comma-separated subset such as "trustworthiness,lcmc".
    pub fn parse_list(s: &str) -> Result<Vec<BaselineMetric>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let metric = match item {
                "trustworthiness" => BaselineMetric::Trustworthiness,
                "continuity" => BaselineMetric::Continuity,
                "lcmc" => BaselineMetric::Lcmc,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown metric '{other}' (expected trustworthiness, continuity, lcmc)"
                    )))
                }
            };
            if !out.contains(&metric) {
                out.push(metric);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument("empty metric list".into()));
        }
        Ok(out)
    }
}

/// Computes the requested rank-based metrics with per-metric wall times.
pub fn cmd_baseline(opts: &BaselineOptions) -> Result<ScoreReport> {
    let orig = load_cloud(&opts.original, None)?;
    let emb = load_cloud(&opts.embedding, None)?;
    if orig.data.rows() != emb.data.rows() {
        return Err(Error::RowCountMismatch {
            left: orig.data.rows(),
            right: emb.data.rows(),
        });
    }
    let n = orig.data.rows();
    if n > DEFAULT_RANK_CAP {
        return Err(Error::TooLargeForRankMetrics {
            n,
            cap: DEFAULT_RANK_CAP,
        });
    }
    let k = opts.k.unwrap_or_else(|| default_k(n));
    let metrics = if opts.metrics.is_empty() {
        BaselineMetric::all()
    } else {
        opts.metrics.clone()
    };

    let mut report = ScoreReport {
        dataset: orig.name,
        embedding: emb.name,
        n,
        p: orig.data.cols(),
        q: emb.data.cols(),
        seed: opts.seed,
        k: Some(k),
        ..Default::default()
    };
    let baseline = memtrack::reset_peak();
    for metric in metrics {
        let start = Instant::now();
        match metric {
            BaselineMetric::Trustworthiness => {
                report.trustworthiness =
                    Some(baselines::trustworthiness(&orig.data, &emb.data, k)?);
                report.times_ms.push((
                    "trustworthiness".into(),
                    start.elapsed().as_secs_f64() * 1000.0,
                ));
            }
            BaselineMetric::Continuity => {
                report.continuity = Some(baselines::continuity(&orig.data, &emb.data, k)?);
                report
                    .times_ms
                    .push(("continuity".into(), start.elapsed().as_secs_f64() * 1000.0));
            }
            BaselineMetric::Lcmc => {
                report.lcmc = Some(baselines::lcmc(&orig.data, &emb.data, k)?);
                report
                    .times_ms
                    .push(("lcmc".into(), start.elapsed().as_secs_f64() * 1000.0));
            }
        }
    }
    report.peak_memory_bytes = memtrack::peak_bytes().saturating_sub(baseline);
    Ok(report)
}

/// Which synthetic dataset `gen` should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenTarget {
    Rings,
    SwissRoll,
}

/// Options for the `gen` command.
#[derive(Debug, Clone)]
pub struct GenOptions {
    pub target: GenTarget,
    /// Points per ring (rings only).
    pub n_per_ring: usize,
    /// Total points (swiss roll only).
    pub n: usize,
    pub seed: u64,
    pub out: PathBuf,
}

/// Generates a dataset and writes it as a labeled CSV.
pub fn cmd_gen(opts: &GenOptions) -> Result<()> {
    let ds = match opts.target {
        GenTarget::Rings => gen_rings(opts.n_per_ring, opts.seed)?,
        GenTarget::SwissRoll => gen_swiss_roll(opts.n, opts.seed)?,
    };
    write_point_cloud(&ds, &opts.out)
}

/// Options for the `bench` command.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub n_list: Vec<usize>,
    pub p: usize,
    pub seed: u64,
}

/// Per-size wall-time and peak-memory rows comparing the score pair against
/// trustworthiness, as CSV text. Sizes beyond the rank cap emit "capped".
pub fn cmd_bench(opts: &BenchOptions) -> Result<String> {
    use rand::{Rng, SeedableRng};
    let mut out = String::from(
        "n,p,c,q,k,cmet_ms,cmet_peak_bytes,trustworthiness_ms,trustworthiness_peak_bytes\n",
    );
    for (row, &n) in opts.n_list.iter().enumerate() {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("bench size {n} too small")));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(row as u64));
        let x = DataMatrix::new(
            n,
            opts.p,
            (0..n * opts.p)
                .map(|_| rng.random_range(-1.0..1.0))
                .collect(),
        )?;
        let q = opts.p.min(10);
        let proj = fit_random_projection(opts.p, q, opts.seed.wrapping_add(1000))?;
        let xp = transform(&proj, &x)?;
        let c = n.min(10);
        let labels = ClusterAssignment::new((0..n).map(|i| i % c).collect())?;

        let start = Instant::now();
        let (score, cmet_peak) =
            memtrack::measure_peak(|| cmet_score_assigned(&x, &xp, &labels, Mode::Supervised));
        score?;
        let cmet_ms = start.elapsed().as_secs_f64() * 1000.0;

        let (trust_ms, trust_peak) = if n <= DEFAULT_RANK_CAP {
            let k = default_k(n);
            let start = Instant::now();
            let (t, peak) = memtrack::measure_peak(|| baselines::trustworthiness(&x, &xp, k));
            t?;
            (
                format!("{:.3}", start.elapsed().as_secs_f64() * 1000.0),
                peak.to_string(),
            )
        } else {
            ("capped".into(), "capped".into())
        };
        out.push_str(&format!(
            "{n},{p},{c},{q},{k},{cmet_ms:.3},{cmet_peak},{trust_ms},{trust_peak}\n",
            p = opts.p,
            k = default_k(n),
        ));
    }
    Ok(out)
}

/// Renders reports in the chosen format.
pub fn render_reports(reports: &[ScoreReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            if reports.len() == 1 {
                reports[0].to_json()
            } else {
                reports_to_json(reports)
            }
        }
        OutputFormat::Csv => {
            let mut out = String::from(ScoreReport::csv_header());
            out.push('\n');
            for r in reports {
                out.push_str(&r.to_csv_row());
                out.push('\n');
            }
            out
        }
    }
}

/// Writes text to the path, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

const SVG_PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Static scatter plot of a two-dimensional embedding, colored by cluster id.
pub fn write_scatter_svg(
    points: &DataMatrix,
    assignment: &ClusterAssignment,
    path: &Path,
) -> Result<()> {
    if points.cols() != 2 {
        return Err(Error::InvalidArgument(format!(
            "scatter needs 2 columns, got {}",
            points.cols()
        )));
    }
    let (width, height, pad) = (800.0, 600.0, 30.0);
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..points.rows() {
        min_x = min_x.min(points.get(i, 0));
        max_x = max_x.max(points.get(i, 0));
        min_y = min_y.min(points.get(i, 1));
        max_y = max_y.max(points.get(i, 1));
    }
    let span_x = (max_x - min_x).max(1e-12);
    let span_y = (max_y - min_y).max(1e-12);

    let mut svg = String::with_capacity(points.rows() * 64 + 256);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    ));
    for i in 0..points.rows() {
        let px = pad + (points.get(i, 0) - min_x) / span_x * (width - 2.0 * pad);
        // SVG y grows downward.
        let py = height - pad - (points.get(i, 1) - min_y) / span_y * (height - 2.0 * pad);
        let color = SVG_PALETTE[assignment.label(i) % SVG_PALETTE.len()];
        svg.push_str(&format!(
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2\" fill=\"{color}\" fill-opacity=\"0.7\"/>\n"
        ));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}

/// Parses a comma-separated list of positive integers, e.g. "3,4,5".
pub fn parse_count_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let v: usize = item
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("'{item}' is not a count")))?;
        out.push(v);
    }
    Ok(out)
}
