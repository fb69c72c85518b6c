//! Command implementations. Each one computes everything first and then
//! writes its table in a single call.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use adiasweep_core::analysis::{
    critical_point, linspace, logspace, optimize_alpha, scan_fidelity, Executor, ScanSpec,
};
use adiasweep_core::evolve::{evolve, gap_curve, model_gap, EvolutionSpec};
use adiasweep_core::schedules::{sc_numeric, Schedule, ScheduleKind};
use adiasweep_core::{Error, ModelSpec};

use crate::args::{default_alpha_grid, default_window, EvolveArgs, GapArgs, GridArg, ModelKind, OptimizeArgs, ScanArgs, TimeArgs, DEFAULT_T_POINTS};
use crate::format::fmt_g;
use crate::table::{gap_table, optimum_table, scan_table, trajectory_table, GapSummary, TableError};

/// Samples per evolution when `--record-every` is not given.
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write standard output: {0}")]
    Stdout(#[source] std::io::Error),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Exit code for bad input.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for a numerical failure.
pub const EXIT_NUMERICAL: i32 = 2;

fn is_numerical(e: &Error) -> bool {
    match e {
        Error::Evolution { source, .. } => is_numerical(source),
        Error::NotHermitian { .. }
        | Error::NoConvergence { .. }
        | Error::DimensionMismatch { .. }
        | Error::DimensionTooLarge { .. }
        | Error::NotSquare { .. }
        | Error::DegenerateGround { .. }
        | Error::NonFinite { .. }
        | Error::BoundaryMinimum { .. } => true,
        _ => false,
    }
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Core(e) if is_numerical(e) => EXIT_NUMERICAL,
            CommandError::Table(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

/// Where a table goes. Files are created before any computation so an
/// unwritable path fails fast.
pub enum Sink {
    File { path: PathBuf, file: File },
    Stdout,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self, CommandError> {
        match path {
            None => Ok(Sink::Stdout),
            Some(p) => File::create(p)
                .map(|file| Sink::File {
                    path: p.to_path_buf(),
                    file,
                })
                .map_err(|source| CommandError::Output {
                    path: p.to_path_buf(),
                    source,
                }),
        }
    }

    fn write(self, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CommandError> {
        match self {
            Sink::File { path, mut file } => file
                .write_all(bytes)
                .and_then(|()| file.flush())
                .map_err(|source| CommandError::Output { path, source }),
            Sink::Stdout => stdout.write_all(bytes).map_err(CommandError::Stdout),
        }
    }
}

fn time_values(time: &TimeArgs, model: ModelKind) -> Vec<f64> {
    match (time.total_time, time.t_grid) {
        (Some(t), _) => vec![t],
        (None, Some(g)) => linspace(g.start, g.stop, g.count),
        (None, None) => {
            let (lo, hi) = default_window(model);
            linspace(lo, hi, DEFAULT_T_POINTS)
        }
    }
}

fn alpha_values(grid: Option<GridArg>) -> Result<Vec<f64>, CommandError> {
    let g = grid.unwrap_or_else(default_alpha_grid);
    if !(g.start > 0.0 && g.stop > 0.0) {
        return Err(CommandError::Usage(format!(
            "alpha grid bounds must be positive, found {}:{}",
            fmt_g(g.start),
            fmt_g(g.stop)
        )));
    }
    Ok(logspace(g.start, g.stop, g.count))
}

pub fn gap(args: &GapArgs, stdout: &mut dyn Write) -> Result<(), CommandError> {
    let model = args.model.build()?;
    let sink = Sink::open(args.output.out.as_deref())?;
    let points = gap_curve(&model, &linspace(0.0, 1.0, args.points))?;
    let summary = match sc_numeric(|s| model_gap(&model, s)) {
        Ok(m) => GapSummary::Interior(m),
        Err(Error::BoundaryMinimum { s, gap }) => GapSummary::Boundary { s, gap },
        Err(e) => return Err(e.into()),
    };
    sink.write(&gap_table(&points, summary)?, stdout)
}

fn default_schedule(model: &ModelSpec) -> ScheduleKind {
    match model {
        ModelSpec::Lz(_) => ScheduleKind::LinearLz,
        _ => ScheduleKind::Linear,
    }
}

pub fn evolve_one(args: &EvolveArgs, stdout: &mut dyn Write) -> Result<(), CommandError> {
    let model = args.model.build()?;
    let kind = args.schedule.unwrap_or_else(|| default_schedule(&model));
    if !kind.is_compatible(&model) {
        return Err(Error::IncompatibleSchedule {
            schedule: kind.id(),
            model: model.id(),
        }
        .into());
    }
    let schedule = match kind {
        ScheduleKind::ExpLike => Schedule::exp_like(args.total_time, args.alpha, critical_point(&model)?)?,
        _ => Schedule::new(kind, args.total_time)?,
    };
    let record_every = args
        .record_every
        .unwrap_or((args.n_steps / DEFAULT_SAMPLES).max(1));
    let spec = EvolutionSpec::new(model, schedule, args.n_steps, record_every)?;
    let sink = Sink::open(args.output.out.as_deref())?;
    let trajectory = evolve(&spec)?;
    sink.write(&trajectory_table(&trajectory)?, stdout)?;
    writeln!(stdout, "F={}", fmt_g(trajectory.final_fidelity)).map_err(CommandError::Stdout)
}

fn default_schedules(model: &ModelSpec) -> Vec<ScheduleKind> {
    match model {
        ModelSpec::Lz(_) => vec![ScheduleKind::LinearLz, ScheduleKind::QuadraticLz],
        _ => vec![ScheduleKind::Linear, ScheduleKind::Quadratic, ScheduleKind::ExpLike],
    }
}

pub fn scan<E: Executor>(args: &ScanArgs, executor: &E, stdout: &mut dyn Write) -> Result<(), CommandError> {
    let model = args.model.build()?;
    let schedules = args.schedule.clone().unwrap_or_else(|| default_schedules(&model));
    let alpha_grid = match args.alpha {
        Some(alpha) => vec![alpha],
        None => alpha_values(args.alpha_grid)?,
    };
    let spec = ScanSpec {
        model,
        schedules,
        t_values: time_values(&args.time, args.model.model),
        alpha_grid,
        optimize_alpha: args.optimize_alpha,
        n_steps: args.n_steps,
        s_c: None,
    };
    let sink = Sink::open(args.output.out.as_deref())?;
    let records = scan_fidelity(&spec, executor)?;
    sink.write(&scan_table(&records)?, stdout)
}

pub fn optimize<E: Executor>(args: &OptimizeArgs, executor: &E, stdout: &mut dyn Write) -> Result<(), CommandError> {
    let model = args.model.build()?;
    if !ScheduleKind::ExpLike.is_compatible(&model) {
        return Err(Error::IncompatibleSchedule {
            schedule: ScheduleKind::ExpLike.id(),
            model: model.id(),
        }
        .into());
    }
    let t_values = time_values(&args.time, args.model.model);
    if let Some(&bad) = t_values.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::InvalidParameter {
            name: "T",
            value: bad,
            reason: "must be finite and strictly positive",
        }
        .into());
    }
    let alpha_grid = alpha_values(args.alpha_grid)?;
    let s_c = critical_point(&model)?;
    let sink = Sink::open(args.output.out.as_deref())?;
    let outcomes = executor.map(&t_values, |&t| optimize_alpha(&model, t, &alpha_grid, s_c, args.n_steps));
    let rows = t_values
        .iter()
        .zip(outcomes)
        .map(|(&t, best)| {
            best.map(|b| (t, b)).map_err(|e| Error::Evolution {
                schedule: ScheduleKind::ExpLike.id().to_string(),
                total_time: t,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    sink.write(&optimum_table(&rows)?, stdout)
}
