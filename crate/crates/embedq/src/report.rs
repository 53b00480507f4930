//! The machine-first score report emitted by the command-line tools.
//!
//! JSON output uses a fixed key set; floats are written in scientific
//! notation with 17 significant digits so re-parsing reproduces the exact
//! f64 bits. A flat CSV rendering of the same fields is available as an
//! alternative.

use crate::cmet::CmetScore;

/// Scores and provenance for one (original, embedding) pair.
#[derive(Debug, Clone, Default)]
pub struct ScoreReport {
    pub dataset: String,
    pub embedding: String,
    /// "supervised" or "unsupervised"; absent for baseline-only reports.
    pub mode: Option<String>,
    /// Cluster count used by the score pair.
    pub c: Option<usize>,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub seed: u64,
    pub cmet_local: Option<f64>,
    pub cmet_global: Option<f64>,
    /// Neighborhood size shared by the rank-based baselines.
    pub k: Option<usize>,
    pub trustworthiness: Option<f64>,
    pub continuity: Option<f64>,
    pub lcmc: Option<f64>,
    /// Wall time per metric, milliseconds, in emission order.
    pub times_ms: Vec<(String, f64)>,
    /// Auxiliary allocation high-water mark across the scoring calls.
    pub peak_memory_bytes: usize,
}

impl ScoreReport {
    /// Copies the score pair and its provenance out of a [`CmetScore`].
    pub fn with_cmet(mut self, score: &CmetScore) -> Self {
        self.mode = Some(score.mode.as_str().to_string());
        self.c = Some(score.c);
        self.n = score.n;
        self.p = score.p;
        self.q = score.q;
        self.cmet_local = Some(score.local);
        self.cmet_global = Some(score.global);
        self
    }

    /// One JSON object with the full fixed key set (absent values are null).
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(512);
        out.push('{');
        push_str_field(&mut out, "dataset", &self.dataset);
        push_str_field(&mut out, "embedding", &self.embedding);
        match &self.mode {
            Some(m) => push_str_field(&mut out, "mode", m),
            None => push_raw_field(&mut out, "mode", "null"),
        }
        push_raw_field(&mut out, "c", &opt_usize(self.c));
        push_raw_field(&mut out, "n", &self.n.to_string());
        push_raw_field(&mut out, "p", &self.p.to_string());
        push_raw_field(&mut out, "q", &self.q.to_string());
        push_raw_field(&mut out, "seed", &self.seed.to_string());
        push_raw_field(&mut out, "cmet_local", &opt_float(self.cmet_local));
        push_raw_field(&mut out, "cmet_global", &opt_float(self.cmet_global));
        push_raw_field(&mut out, "k", &opt_usize(self.k));
        push_raw_field(
            &mut out,
            "trustworthiness",
            &opt_float(self.trustworthiness),
        );
        push_raw_field(&mut out, "continuity", &opt_float(self.continuity));
        push_raw_field(&mut out, "lcmc", &opt_float(self.lcmc));

        out.push_str("\"times_ms\":{");
        for (i, (name, ms)) in self.times_ms.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}:{}", json_string(name), float17(*ms)));
        }
        out.push_str("},");
        out.push_str(&format!("\"peak_memory_bytes\":{}", self.peak_memory_bytes));
        out.push('}');
        out
    }

    /// Header line for the CSV rendering.
    pub fn csv_header() -> &'static str {
        "dataset,embedding,mode,c,n,p,q,seed,cmet_local,cmet_global,k,\
         trustworthiness,continuity,lcmc,times_ms,peak_memory_bytes"
    }

    /// One CSV row matching [`ScoreReport::csv_header`]. The per-metric times
    /// are packed as `name=ms` pairs separated by `;`.
    pub fn to_csv_row(&self) -> String {
        let times = self
            .times_ms
            .iter()
            .map(|(name, ms)| format!("{name}={}", float17(*ms)))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.dataset,
            self.embedding,
            self.mode.as_deref().unwrap_or(""),
            self.c.map(|v| v.to_string()).unwrap_or_default(),
            self.n,
            self.p,
            self.q,
            self.seed,
            self.cmet_local.map(float17).unwrap_or_default(),
            self.cmet_global.map(float17).unwrap_or_default(),
            self.k.map(|v| v.to_string()).unwrap_or_default(),
            self.trustworthiness.map(float17).unwrap_or_default(),
            self.continuity.map(float17).unwrap_or_default(),
            self.lcmc.map(float17).unwrap_or_default(),
            times,
            self.peak_memory_bytes,
        )
    }
}

/// Renders a list of reports as one JSON array.
pub fn reports_to_json(reports: &[ScoreReport]) -> String {
    let mut out = String::from("[");
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&r.to_json());
    }
    out.push(']');
    out
}

/// 17 significant digits: enough to reproduce any f64 exactly on re-parse.
pub fn float17(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_float(v: Option<f64>) -> String {
    v.map(float17).unwrap_or_else(|| "null".into())
}

fn opt_usize(v: Option<usize>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "null".into())
}

fn push_str_field(out: &mut String, key: &str, value: &str) {
    out.push_str(&format!("{}:{},", json_string(key), json_string(value)));
}

fn push_raw_field(out: &mut String, key: &str, raw: &str) {
    out.push_str(&format!("{}:{raw},", json_string(key)));
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
