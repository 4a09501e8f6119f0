//! `interference`: dataset validation, encoding, STL generation and shadow
//! simulation for the interference sculpture series.

// `!(a > b)` is used on purpose so NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod manifest;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use interference::data_model::Anchors;
use interference::encoder::InnerTwistStrategy;

use config::{parse_months, FlagOverrides, SceneOverrides};

#[derive(Clone)]
struct MonthList(Vec<u32>);

fn parse_month_list(s: &str) -> Result<MonthList, String> {
    parse_months(s).map(MonthList)
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const VALIDATION: u8 = 1;
    pub const IO: u8 = 2;
    pub const GEOMETRY: u8 = 3;

    pub fn validation(m: impl Into<String>) -> Self {
        Self { code: Self::VALIDATION, message: m.into() }
    }

    pub fn io(m: impl Into<String>) -> Self {
        Self { code: Self::IO, message: m.into() }
    }

    pub fn geometry(m: impl Into<String>) -> Self {
        Self { code: Self::GEOMETRY, message: m.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser)]
#[command(name = "interference", version, about = "Data-driven kinetic shadow sculptures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Common {
    /// Yearly dataset (CSV, or JSON when the extension is .json)
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Month filter, e.g. `4` or `1-3,7`
    #[arg(long, value_parser = parse_month_list)]
    months: Option<MonthList>,
    /// JSON run configuration; flags take precedence over it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(InnerTwistStrategy))]
    inner_twist_strategy: Option<InnerTwistStrategy>,
    /// Free text stored in the STL header
    #[arg(long)]
    seed_note: Option<String>,
}

#[derive(Args, Default)]
struct AnchorArgs {
    /// Check yearly totals against the published 2024 figures
    #[arg(long)]
    anchors: bool,
    /// Expected total shootings (implies --anchors)
    #[arg(long)]
    expect_shootings: Option<u64>,
    /// Expected total killed (implies --anchors)
    #[arg(long)]
    expect_killed: Option<u64>,
}

#[derive(Args, Default)]
struct SceneArgs {
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    /// Seconds between frames
    #[arg(long)]
    dt: Option<f64>,
    /// Simulated seconds
    #[arg(long)]
    duration: Option<f64>,
    #[arg(long)]
    rpm: Option<f64>,
    /// Light height above the base top, inches
    #[arg(long)]
    light_height: Option<f64>,
    #[arg(long)]
    screen_radius: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a dataset
    Validate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        anchors: AnchorArgs,
    },
    /// Print the twelve-month parameter report
    Encode {
        #[command(flatten)]
        common: Common,
        /// Also report which inner-twist strategy reproduces a target angle
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 4)]
        sweep_month: u32,
        #[arg(long, default_value_t = 96.0)]
        sweep_target: f64,
        #[arg(long, default_value_t = 0.5)]
        sweep_tolerance: f64,
    },
    /// Write per-month STL files and manifest.json
    Generate {
        #[command(flatten)]
        common: Common,
    },
    /// Render shadow frames and metrics.csv for one month
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        month: u32,
        #[command(flatten)]
        scene: SceneArgs,
    },
    /// Summarize an existing manifest.json
    Report {
        #[command(flatten)]
        common: Common,
        /// Manifest path; defaults to `<out>/manifest.json`
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

fn load(common: Common, scene: SceneArgs) -> Result<config::RunConfig, Failure> {
    let flags = FlagOverrides {
        dataset: common.dataset,
        out: common.out,
        months: common.months.map(|m| m.0),
        inner_twist_strategy: common.inner_twist_strategy,
        seed_note: common.seed_note,
        scene: SceneOverrides {
            width: scene.width,
            height: scene.height,
            dt: scene.dt,
            duration: scene.duration,
            rotation_rpm: scene.rpm,
            light_height: scene.light_height,
            screen_radius: scene.screen_radius,
            ..Default::default()
        },
    };
    config::RunConfig::load(common.config.as_deref(), flags)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { common, anchors } => {
            let cfg = load(common, SceneArgs::default())?;
            commands::validate(&cfg, anchors.anchors())
        }
        Command::Encode { common, sweep, sweep_month, sweep_target, sweep_tolerance } => {
            let cfg = load(common, SceneArgs::default())?;
            let sweep = sweep.then_some(commands::Sweep {
                month: sweep_month,
                target: sweep_target,
                tolerance: sweep_tolerance,
            });
            commands::encode(&cfg, sweep)
        }
        Command::Generate { common } => commands::generate(&load(common, SceneArgs::default())?),
        Command::Simulate { common, month, scene } => commands::simulate(&load(common, scene)?, month),
        Command::Report { common, manifest } => {
            let cfg = load(common, SceneArgs::default())?;
            commands::report(&manifest.unwrap_or_else(|| cfg.out().join(manifest::MANIFEST_NAME)))
        }
    }
}

impl AnchorArgs {
    fn anchors(&self) -> Option<Anchors> {
        if self.expect_shootings.is_some() || self.expect_killed.is_some() {
            Some(Anchors { total_shootings: self.expect_shootings, total_killed: self.expect_killed })
        } else {
            self.anchors.then_some(Anchors::GVA_2024)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(Failure::VALIDATION);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
