//! File emission for runs.
//!
//! All outputs are rendered in memory and written in a single pass at the
//! end, so a failing run leaves no partial directory behind. The manifest
//! goes last and lists every file in the run directory, itself included.
//! Floats are written with `{:e}`, the shortest representation that parses
//! back to the identical bits, which is what makes byte-level determinism
//! checks meaningful.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use kd_core::pattern::PeakSet;
use kd_core::{DecoherenceReport, DiffractionPattern};

use crate::CliError;

pub const METRICS_HEADER: &str =
    "run_id,h_p_m,intensity_w_m2,w1_m,delta_e_ev,r_dec,contrast,peak13_shift_rel";
pub const PATTERN_HEADER: &str = "position_m,density_per_m";
pub const DECOHERENCE_HEADER: &str = "run_id,tau_dec_s,c_overlap,r_dec,power_w,\
                                      delta_e_j,delta_e_ev,x_coh_m,lambda_th_m,delta_e_warning";
pub const PEAKS_HEADER: &str = "order,position_m,height_per_m";

/// One metrics row; `shift` is None when the reference pattern does not
/// resolve the tracked order, which emits an empty field.
pub struct MetricsRow {
    pub run_id: String,
    pub h_p: Option<f64>,
    pub intensity: f64,
    pub w1: f64,
    pub delta_e_ev: f64,
    pub r_dec: f64,
    pub contrast: f64,
    pub shift: Option<f64>,
}

pub fn pattern_csv(pattern: &DiffractionPattern) -> Vec<u8> {
    let mut s = String::with_capacity(32 * pattern.positions.len());
    s.push_str(PATTERN_HEADER);
    s.push('\n');
    for (x, d) in pattern.positions.iter().zip(&pattern.density) {
        let _ = writeln!(s, "{x:e},{d:e}");
    }
    s.into_bytes()
}

pub fn metrics_csv<'a>(rows: impl IntoIterator<Item = &'a MetricsRow>) -> Vec<u8> {
    let mut s = String::new();
    s.push_str(METRICS_HEADER);
    s.push('\n');
    for r in rows {
        let h_p = r.h_p.unwrap_or(f64::INFINITY);
        let shift = r.shift.map(|v| format!("{v:e}")).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{:e},{:e},{:e},{:e},{:e},{:e},{}",
            r.run_id, h_p, r.intensity, r.w1, r.delta_e_ev, r.r_dec, r.contrast, shift
        );
    }
    s.into_bytes()
}

pub fn decoherence_csv(rows: &[(String, DecoherenceReport)]) -> Vec<u8> {
    let mut s = String::new();
    s.push_str(DECOHERENCE_HEADER);
    s.push('\n');
    for (run_id, r) in rows {
        let _ = writeln!(
            s,
            "{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{}",
            run_id,
            r.tau_dec,
            r.c_overlap,
            r.r_dec,
            r.power,
            r.delta_e,
            kd_core::params::joule_to_ev(r.delta_e),
            r.x_coh,
            r.lambda_th,
            r.delta_e_warning
        );
    }
    s.into_bytes()
}

pub fn peaks_csv(peaks: &PeakSet) -> Vec<u8> {
    let mut s = String::new();
    s.push_str(PEAKS_HEADER);
    s.push('\n');
    for ((o, x), h) in peaks.orders.iter().zip(&peaks.positions).zip(&peaks.heights) {
        let _ = writeln!(s, "{o},{x:e},{h:e}");
    }
    s.into_bytes()
}

#[derive(Serialize)]
struct RunManifest<'a> {
    config_hash: &'a str,
    versions: String,
    outputs: Vec<&'a str>,
    timings: &'a BTreeMap<&'static str, f64>,
}

/// Accumulates rendered files and stage timings, then writes everything.
pub struct RunWriter {
    dir: PathBuf,
    files: Vec<(String, Vec<u8>)>,
    timings: BTreeMap<&'static str, f64>,
}

impl RunWriter {
    pub fn new(dir: PathBuf) -> Self {
        RunWriter {
            dir,
            files: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.push((name.into(), bytes));
    }

    /// Record the wall time of `stage` as the elapsed time since `from`.
    pub fn stage(&mut self, stage: &'static str, from: Instant) {
        self.timings.insert(stage, from.elapsed().as_secs_f64());
    }

    /// Write every file plus the manifest. Nothing touches the filesystem
    /// before this point.
    pub fn commit(mut self, config_hash: &str) -> Result<PathBuf, CliError> {
        let write_started = Instant::now();
        std::fs::create_dir_all(&self.dir)?;
        for (name, bytes) in &self.files {
            std::fs::write(self.dir.join(name), bytes)?;
        }
        self.timings
            .insert("write", write_started.elapsed().as_secs_f64());

        let mut outputs: Vec<&str> = self.files.iter().map(|(n, _)| n.as_str()).collect();
        outputs.push("manifest.json");
        let manifest = RunManifest {
            config_hash,
            versions: format!("kdsim {}", env!("CARGO_PKG_VERSION")),
            outputs,
            timings: &self.timings,
        };
        let json = serde_json::to_vec_pretty(&manifest)
            .map_err(|e| CliError::Config(format!("cannot encode manifest: {e}")))?;
        std::fs::write(self.dir.join("manifest.json"), json)?;
        Ok(self.dir)
    }
}
