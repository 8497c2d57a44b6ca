//! Single-configuration run: pattern, peaks, metrics, decoherence report.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use crate::commands::{init_threads, reference_pattern, run_one};
use crate::output::{decoherence_csv, metrics_csv, pattern_csv, peaks_csv, RunWriter};
use crate::{config, svg, CliError};

use kd_core::pattern::{find_peaks, DEFAULT_PROMINENCE};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML configuration file.
    pub config: PathBuf,
    /// Output root; the run lands in a subdirectory named by config hash.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also render the pattern to SVG.
    #[arg(long)]
    pub plot: bool,
    /// Log-scale the SVG intensity axis.
    #[arg(long, requires = "plot")]
    pub log: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

pub fn run(args: &SimulateArgs) -> Result<(), CliError> {
    init_threads(args.threads)?;

    let started = Instant::now();
    let loaded = config::load(&args.config)?;
    let mut writer = RunWriter::new(args.out.join(&loaded.hash));
    writer.stage("parse", started);

    let sim_started = Instant::now();
    let reference = match loaded.cfg.plate_height {
        Some(_) => Some(reference_pattern(&loaded.cfg)?),
        None => None,
    };
    let ref_peaks = reference.as_ref().map(|p| find_peaks(p, DEFAULT_PROMINENCE));
    let outcome = run_one(&loaded.hash, &loaded.cfg, ref_peaks.as_ref())?;
    writer.stage("simulate", sim_started);

    let render_started = Instant::now();
    writer.add("pattern.csv", pattern_csv(&outcome.pattern));
    writer.add("peaks.csv", peaks_csv(&outcome.peaks));
    writer.add("metrics.csv", metrics_csv([&outcome.metrics]));
    writer.add(
        "decoherence.csv",
        decoherence_csv(&[(loaded.hash.clone(), outcome.report.clone())]),
    );
    if args.plot {
        let caption = format!("run {}", loaded.hash);
        writer.add(
            "pattern.svg",
            svg::render_pattern(
                &outcome.pattern.positions,
                &outcome.pattern.density,
                args.log,
                &caption,
            )
            .into_bytes(),
        );
    }
    writer.stage("render", render_started);

    let dir = writer.commit(&loaded.hash)?;
    let m = &outcome.metrics;
    println!(
        "run {} -> {}: contrast {:.4}, delta_e {:.4e} eV, r_dec {:.4e}{}",
        loaded.hash,
        dir.display(),
        m.contrast,
        m.delta_e_ev,
        m.r_dec,
        match m.shift {
            Some(s) => format!(", order-{} shift {:+.4e}", super::SHIFT_ORDER, s),
            None => String::new(),
        }
    );
    Ok(())
}
