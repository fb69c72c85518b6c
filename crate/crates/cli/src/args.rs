//! Command-line grammar.

use std::path::PathBuf;
use std::str::FromStr;

use adiasweep_core::analysis::{AQC1_SHORT_WINDOW, DEFAULT_ALPHA_GRID, FACTOR21_SHORT_WINDOW};
use adiasweep_core::evolve::DEFAULT_N_STEPS;
use adiasweep_core::schedules::{ScheduleKind, GAP_SCAN_POINTS};
use adiasweep_core::{Aqc1Params, Factor21Params, LzParams, ModelSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_LZ_OMEGA0: f64 = 10.0;
pub const DEFAULT_LZ_OMEGA_X: f64 = 1.0;
pub const DEFAULT_AQC1_OMEGA_X: f64 = 18.0;
pub const DEFAULT_AQC1_OMEGA_Z: f64 = 30.0;
pub const DEFAULT_G: f64 = 30.0;
/// Default exponential-like `alpha` for single evolutions.
pub const DEFAULT_ALPHA: f64 = 1.0;
/// Default Landau-Zener scan window and grid size.
pub const LZ_WINDOW: (f64, f64) = (2.0, 20.0);
pub const DEFAULT_T_POINTS: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "adiasweep", version, about = "Adiabatic sweep-schedule simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two lowest levels and their gap along the sweep.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Gap(GapArgs),
    /// One evolution; prints the final fidelity.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Evolve(EvolveArgs),
    /// Final fidelity against total time for several schedules.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Best exponential-like alpha per total time.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    OptimizeAlpha(OptimizeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Lz,
    Aqc1,
    Factor21,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Landau-Zener sweep half-range (default 10).
    #[arg(long)]
    pub w0: Option<f64>,
    /// Transverse field (default 1 for lz, 18 for aqc1).
    #[arg(long)]
    pub wx: Option<f64>,
    /// Final longitudinal field for aqc1 (default 30).
    #[arg(long)]
    pub wz: Option<f64>,
    /// Driver strength for factor21 (default 30).
    #[arg(long)]
    pub g: Option<f64>,
}

impl ModelArgs {
    pub fn build(&self) -> adiasweep_core::Result<ModelSpec> {
        Ok(match self.model {
            ModelKind::Lz => ModelSpec::Lz(LzParams::new(
                self.w0.unwrap_or(DEFAULT_LZ_OMEGA0),
                self.wx.unwrap_or(DEFAULT_LZ_OMEGA_X),
            )?),
            ModelKind::Aqc1 => ModelSpec::Aqc1(Aqc1Params::new(
                self.wx.unwrap_or(DEFAULT_AQC1_OMEGA_X),
                self.wz.unwrap_or(DEFAULT_AQC1_OMEGA_Z),
            )?),
            ModelKind::Factor21 => ModelSpec::Factor21(Factor21Params::new(self.g.unwrap_or(DEFAULT_G))?),
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output CSV path; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// key=value file of flags; explicit flags take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// `start:stop:count` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("expected start:stop:count, found {s:?}"));
        };
        let num = |p: &str| -> Result<f64, String> {
            match p.trim().parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(format!("{p:?} is not a finite number")),
            }
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("{count:?} is not a point count"))?;
        if count == 0 {
            return Err("grid needs at least one point".into());
        }
        Ok(GridArg {
            start: num(start)?,
            stop: num(stop)?,
            count,
        })
    }
}

fn parse_schedule(s: &str) -> Result<ScheduleKind, String> {
    s.parse().map_err(|e: adiasweep_core::Error| e.to_string())
}

fn schedule_names() -> String {
    ScheduleKind::ALL.map(ScheduleKind::id).join("|")
}

#[derive(Debug, Clone, Args)]
pub struct GapArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Grid points on [0, 1].
    #[arg(long, default_value_t = GAP_SCAN_POINTS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Schedule (linear-lz for lz, linear otherwise when absent).
    #[arg(long, value_parser = parse_schedule, help = format!("Schedule: {}", schedule_names()))]
    pub schedule: Option<ScheduleKind>,
    /// Exponential-like steepness.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Total evolution time.
    #[arg(long = "T", value_name = "T")]
    pub total_time: f64,
    #[arg(long, default_value_t = DEFAULT_N_STEPS)]
    pub n_steps: usize,
    /// Record every k-th step (default: 100 samples per run; 0 keeps only the final state).
    #[arg(long)]
    pub record_every: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TimeArgs {
    /// Single total time.
    #[arg(long = "T", value_name = "T", conflicts_with = "t_grid")]
    pub total_time: Option<f64>,
    /// Linear grid of total times.
    #[arg(long = "T-grid", value_name = "START:STOP:COUNT")]
    pub t_grid: Option<GridArg>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Comma-separated schedules (lz: linear-lz,quadratic-lz; otherwise linear,quadratic,exp-like).
    #[arg(long, value_parser = parse_schedule, value_delimiter = ',', num_args = 1, action = clap::ArgAction::Set)]
    pub schedule: Option<Vec<ScheduleKind>>,
    #[command(flatten)]
    pub time: TimeArgs,
    /// Fixed exponential-like alpha; replaces the alpha grid.
    #[arg(long, conflicts_with_all = ["alpha_grid", "optimize_alpha"])]
    pub alpha: Option<f64>,
    /// Log-spaced alpha grid.
    #[arg(long, value_name = "START:STOP:COUNT")]
    pub alpha_grid: Option<GridArg>,
    /// One exponential-like row per T with the best alpha.
    #[arg(long)]
    pub optimize_alpha: bool,
    #[arg(long, default_value_t = DEFAULT_N_STEPS)]
    pub n_steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub time: TimeArgs,
    /// Log-spaced alpha grid.
    #[arg(long, value_name = "START:STOP:COUNT")]
    pub alpha_grid: Option<GridArg>,
    #[arg(long, default_value_t = DEFAULT_N_STEPS)]
    pub n_steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Default short-time window for `model`.
pub fn default_window(model: ModelKind) -> (f64, f64) {
    match model {
        ModelKind::Lz => LZ_WINDOW,
        ModelKind::Aqc1 => AQC1_SHORT_WINDOW,
        ModelKind::Factor21 => FACTOR21_SHORT_WINDOW,
    }
}

pub fn default_alpha_grid() -> GridArg {
    let (start, stop, count) = DEFAULT_ALPHA_GRID;
    GridArg { start, stop, count }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(
            "0.5:2:4".parse::<GridArg>().unwrap(),
            GridArg { start: 0.5, stop: 2.0, count: 4 }
        );
        for bad in ["1:2", "1:2:0", "a:2:3", "1:inf:3", "1:2:3:4", "1:2:-1"] {
            assert!(bad.parse::<GridArg>().is_err(), "{bad}");
        }
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn later_flags_override_earlier() {
        let cli = Cli::try_parse_from(["adiasweep", "scan", "--model=lz", "--T=1", "--model", "aqc1", "--T", "2"]).unwrap();
        let Command::Scan(scan) = cli.command else { panic!() };
        assert_eq!(scan.model.model, ModelKind::Aqc1);
        assert_eq!(scan.time.total_time, Some(2.0));
        let cli = Cli::try_parse_from([
            "adiasweep",
            "scan",
            "--model=aqc1",
            "--schedule=linear,quadratic",
            "--schedule",
            "exp-like",
        ])
        .unwrap();
        let Command::Scan(scan) = cli.command else { panic!() };
        assert_eq!(scan.schedule, Some(vec![ScheduleKind::ExpLike]));
    }

    #[test]
    fn defaults_follow_model() {
        let args = ModelArgs {
            model: ModelKind::Lz,
            w0: None,
            wx: None,
            wz: None,
            g: None,
        };
        let ModelSpec::Lz(p) = args.build().unwrap() else { panic!() };
        assert_eq!((p.omega0(), p.omega_x()), (10.0, 1.0));
        let ModelSpec::Aqc1(p) = ModelArgs { model: ModelKind::Aqc1, ..args.clone() }.build().unwrap() else {
            panic!()
        };
        assert_eq!((p.omega_x(), p.omega_z()), (18.0, 30.0));
        let ModelSpec::Factor21(p) = ModelArgs { model: ModelKind::Factor21, ..args }.build().unwrap() else {
            panic!()
        };
        assert_eq!(p.g(), 30.0);
    }
}
