//! One-axis parameter sweep: repeated runs off a base configuration with a
//! combined metrics table.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};

use crate::commands::{init_threads, reference_pattern, run_one, RunOutcome};
use crate::config::{self, Loaded};
use crate::output::{decoherence_csv, metrics_csv, pattern_csv, RunWriter};
use crate::{svg, CliError};

use kd_core::pattern::{find_peaks, PeakSet, DEFAULT_PROMINENCE};
use kd_core::DiffractionPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    /// Plate height (m); the value `inf` removes the plate.
    #[value(name = "h_p")]
    PlateHeight,
    /// Laser peak intensity (W/m²).
    Intensity,
    /// Plate resistivity (Ω·m).
    Resistivity,
    /// Incoherent source width (m).
    W1,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::PlateHeight => "h_p",
            Axis::Intensity => "intensity",
            Axis::Resistivity => "resistivity",
            Axis::W1 => "w1",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML configuration file providing every non-swept parameter.
    pub config: PathBuf,
    /// Parameter to vary.
    #[arg(long, value_enum)]
    pub axis: Axis,
    /// Comma-separated values; runs are ordered ascending.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<String>,
    /// Output root.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also render each pattern to SVG.
    #[arg(long)]
    pub plot: bool,
    /// Log-scale the SVG intensity axes.
    #[arg(long, requires = "plot")]
    pub log: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

fn parse_value(axis: Axis, raw: &str) -> Result<f64, CliError> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("--values entry '{raw}' is not a number")))?;
    let ok = match axis {
        // Infinite height is the no-plate limit; everything else must be a
        // positive finite number.
        Axis::PlateHeight => v > 0.0,
        _ => v > 0.0 && v.is_finite(),
    };
    if !ok {
        return Err(CliError::Config(format!(
            "--values entry '{raw}' is out of range for axis {}",
            axis.name()
        )));
    }
    Ok(v)
}

fn apply(axis: Axis, base: &Loaded, value: f64) -> Result<Loaded, CliError> {
    let mut file = base.file.clone();
    match axis {
        Axis::PlateHeight => {
            file.plate_height_m = if value.is_finite() { Some(value) } else { None }
        }
        Axis::Intensity => file.laser_intensity_w_m2 = value,
        Axis::Resistivity => file.resistivity_ohm_m = value,
        Axis::W1 => file.slit1_width_m = value,
    }
    config::from_file(file)
}

pub fn run(args: &SweepArgs) -> Result<(), CliError> {
    init_threads(args.threads)?;

    let started = Instant::now();
    let base = config::load(&args.config)?;
    let mut values = args
        .values
        .iter()
        .map(|raw| parse_value(args.axis, raw))
        .collect::<Result<Vec<f64>, CliError>>()?;
    values.sort_by(f64::total_cmp);
    let dir = args
        .out
        .join(format!("{}_sweep_{}", base.hash, args.axis.name()));
    let mut writer = RunWriter::new(dir);
    writer.stage("parse", started);

    let sim_started = Instant::now();
    // Shift references are shared: one per distinct no-plate variant, which
    // for a plate-height sweep is a single pattern across every run.
    let mut references: Vec<(String, PeakSet)> = Vec::new();
    let mut outcomes: Vec<(f64, Loaded, RunOutcome)> = Vec::new();
    for &value in &values {
        let run = (|| -> Result<(Loaded, RunOutcome), CliError> {
            let loaded = apply(args.axis, &base, value)?;
            let ref_peaks = match loaded.cfg.plate_height {
                None => None,
                Some(_) => {
                    let mut no_plate = loaded.file.clone();
                    no_plate.plate_height_m = None;
                    let key = config::from_file(no_plate)?.hash;
                    if !references.iter().any(|(k, _)| *k == key) {
                        let pattern = reference_pattern(&loaded.cfg)?;
                        references.push((key.clone(), find_peaks(&pattern, DEFAULT_PROMINENCE)));
                    }
                    references.iter().find(|(k, _)| *k == key).map(|(_, p)| p)
                }
            };
            let outcome = run_one(&loaded.hash, &loaded.cfg, ref_peaks)?;
            Ok((loaded, outcome))
        })();
        match run {
            Ok((loaded, outcome)) => outcomes.push((value, loaded, outcome)),
            Err(e) => {
                return Err(CliError::Config(format!(
                    "sweep value {} = {value:e} failed: {e}",
                    args.axis.name()
                )))
            }
        }
    }
    writer.stage("simulate", sim_started);

    let render_started = Instant::now();
    let patterns: Vec<&DiffractionPattern> =
        outcomes.iter().map(|(_, _, o)| &o.pattern).collect();
    for (k, pattern) in patterns.iter().enumerate() {
        writer.add(format!("pattern_{k}.csv"), pattern_csv(pattern));
        if args.plot {
            let (value, loaded, _) = &outcomes[k];
            let caption = format!(
                "run {} ({} = {value:e})",
                loaded.hash,
                args.axis.name()
            );
            writer.add(
                format!("pattern_{k}.svg"),
                svg::render_pattern(&pattern.positions, &pattern.density, args.log, &caption)
                    .into_bytes(),
            );
        }
    }
    writer.add(
        "metrics.csv",
        metrics_csv(outcomes.iter().map(|(_, _, o)| &o.metrics)),
    );
    let reports: Vec<(String, kd_core::DecoherenceReport)> = outcomes
        .iter()
        .map(|(_, loaded, o)| (loaded.hash.clone(), o.report.clone()))
        .collect();
    writer.add("decoherence.csv", decoherence_csv(&reports));
    writer.stage("render", render_started);

    let dir = writer.commit(&base.hash)?;
    println!(
        "sweep {} over {} values -> {}",
        args.axis.name(),
        outcomes.len(),
        dir.display()
    );
    for ((value, loaded, outcome), k) in outcomes.iter().zip(0..) {
        println!(
            "  [{k}] {} = {value:e}: run {}, contrast {:.4}, r_dec {:.4e}",
            args.axis.name(),
            loaded.hash,
            outcome.metrics.contrast,
            outcome.metrics.r_dec
        );
    }
    Ok(())
}
