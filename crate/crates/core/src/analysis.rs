//! Fidelity-versus-time scans, `alpha` optimization for the exponential-like
//! schedule and crossing-time extraction.
//!
//! Evaluations are independent, so scans hand their job list to an
//! [`Executor`]; the std front end plugs in a thread pool. Results are always
//! returned in the canonical (schedule, T, alpha) order regardless of how the
//! executor schedules the work.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::evolve::{final_fidelity, model_gap, EvolutionSpec};
use crate::models::ModelSpec;
use crate::schedules::{max_alpha, sc_analytic, sc_numeric, Schedule, ScheduleKind};
use crate::search::golden_section_max;

/// Schedule label used for exponential-like records with optimized `alpha`.
pub const OPTIMIZED_EXP_LIKE_ID: &str = "exp-like-opt";

/// Resolution of the golden-section refinement of `alpha`.
pub const ALPHA_TOL: f64 = 1e-3;

/// Default `alpha` grid: 40 log-spaced points on `[0.05, 20]`.
pub const DEFAULT_ALPHA_GRID: (f64, f64, usize) = (0.05, 20.0, 40);

/// Short-time window where the single-qubit schedules separate most.
pub const AQC1_SHORT_WINDOW: (f64, f64) = (0.02, 0.17);

/// Short-time window where the three-qubit schedules separate most.
pub const FACTOR21_SHORT_WINDOW: (f64, f64) = (0.005, 0.04);

/// Maps a function over a slice, possibly in parallel. Output order must
/// match input order.
pub trait Executor {
    fn map<I, O, F>(&self, items: &[I], f: F) -> Vec<O>
    where
        I: Sync,
        O: Send,
        F: Fn(&I) -> O + Sync + Send;
}

/// Runs every job on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<I, O, F>(&self, items: &[I], f: F) -> Vec<O>
    where
        I: Sync,
        O: Send,
        F: Fn(&I) -> O + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|k| if k == count - 1 { stop } else { start + step * k as f64 })
                .collect()
        }
    }
}

/// `count` logarithmically spaced points from `start` to `stop` inclusive.
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let (a, b) = (libm::log(start), libm::log(stop));
    linspace(a, b, count)
        .into_iter()
        .enumerate()
        .map(|(k, x)| match k {
            0 => start,
            _ if k == count - 1 => stop,
            _ => libm::exp(x),
        })
        .collect()
}

pub fn default_alpha_grid() -> Vec<f64> {
    let (lo, hi, n) = DEFAULT_ALPHA_GRID;
    logspace(lo, hi, n)
}

/// Minimal-gap location used to anchor the exponential-like schedule:
/// closed form for the single qubit, numeric search otherwise.
pub fn critical_point(model: &ModelSpec) -> Result<f64> {
    match model {
        ModelSpec::Aqc1(p) => Ok(sc_analytic(p)),
        _ => Ok(sc_numeric(|s| model_gap(model, s))?.s_c),
    }
}

/// One (schedule, T) fidelity measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityRecord {
    pub model_id: String,
    pub schedule_id: String,
    pub total_time: f64,
    pub alpha: Option<f64>,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub model: ModelSpec,
    pub schedules: Vec<ScheduleKind>,
    /// Strictly ascending, positive.
    pub t_values: Vec<f64>,
    /// Strictly ascending, positive, below the overflow cap for `s_c`.
    pub alpha_grid: Vec<f64>,
    /// Replace the per-alpha exponential-like rows with one optimized row per T.
    pub optimize_alpha: bool,
    pub n_steps: usize,
    /// Overrides [`critical_point`] for the exponential-like schedule.
    pub s_c: Option<f64>,
}

/// Result of [`optimize_alpha`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOptimum {
    pub alpha: f64,
    pub fidelity: f64,
    /// The best grid point sat on an end of the grid, so the optimum may lie
    /// outside the searched range.
    pub at_grid_boundary: bool,
}

fn check_ascending(values: &[f64], what: &'static str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Empty(what));
    }
    if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::InvalidParameter {
            name: what,
            value: bad,
            reason: "must be finite and strictly positive",
        });
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NotAscending { what });
    }
    Ok(())
}

fn check_alpha_grid(grid: &[f64], s_c: f64) -> Result<()> {
    check_ascending(grid, "alpha grid")?;
    let cap = max_alpha(s_c);
    let top = grid[grid.len() - 1];
    if top > cap {
        return Err(Error::AlphaOverflow {
            alpha: top,
            s_c,
            max_alpha: cap,
        });
    }
    Ok(())
}

fn exp_like_fidelity(model: &ModelSpec, total_time: f64, alpha: f64, s_c: f64, n_steps: usize) -> Result<f64> {
    let schedule = Schedule::exp_like(total_time, alpha, s_c)?;
    final_fidelity(&EvolutionSpec::new(*model, schedule, n_steps, 0)?)
}

/// Best exponential-like `alpha` at total time `total_time`.
///
/// Every grid point is evaluated; the best one (smallest `alpha` on ties) is
/// then refined by golden-section search over its two neighbouring cells to
/// [`ALPHA_TOL`]. The refined point is kept only if it beats the grid, so the
/// result never falls below any grid evaluation.
pub fn optimize_alpha(
    model: &ModelSpec,
    total_time: f64,
    alpha_grid: &[f64],
    s_c: f64,
    n_steps: usize,
) -> Result<AlphaOptimum> {
    check_alpha_grid(alpha_grid, s_c)?;
    let mut best = (0usize, f64::NEG_INFINITY);
    for (i, &alpha) in alpha_grid.iter().enumerate() {
        let f = exp_like_fidelity(model, total_time, alpha, s_c, n_steps)?;
        if f > best.1 {
            best = (i, f);
        }
    }
    let (i, grid_fidelity) = best;
    let last = alpha_grid.len() - 1;
    let at_grid_boundary = i == 0 || i == last;
    let mut optimum = AlphaOptimum {
        alpha: alpha_grid[i],
        fidelity: grid_fidelity,
        at_grid_boundary,
    };
    if last == 0 {
        return Ok(optimum);
    }
    let lo = alpha_grid[i.saturating_sub(1)];
    let hi = alpha_grid[(i + 1).min(last)];
    let refined = golden_section_max(
        |alpha| exp_like_fidelity(model, total_time, alpha, s_c, n_steps),
        lo,
        hi,
        ALPHA_TOL,
    )?;
    if refined.value > grid_fidelity {
        optimum.alpha = refined.x;
        optimum.fidelity = refined.value;
    }
    Ok(optimum)
}

enum Job {
    Fixed { schedule: Schedule },
    Optimize { total_time: f64 },
}

/// Fidelity for every (schedule, T) pair of `spec`, in canonical order.
///
/// Fixed exponential-like rows are emitted for every grid `alpha`; with
/// `optimize_alpha` they are replaced by one [`OPTIMIZED_EXP_LIKE_ID`] row per
/// T holding the best `alpha`.
pub fn scan_fidelity<E: Executor>(spec: &ScanSpec, executor: &E) -> Result<Vec<FidelityRecord>> {
    check_ascending(&spec.t_values, "T values")?;
    if spec.schedules.is_empty() {
        return Err(Error::Empty("schedule list"));
    }
    for kind in &spec.schedules {
        if !kind.is_compatible(&spec.model) {
            return Err(Error::IncompatibleSchedule {
                schedule: kind.id(),
                model: spec.model.id(),
            });
        }
    }
    let needs_s_c = spec.schedules.contains(&ScheduleKind::ExpLike);
    let s_c = match (needs_s_c, spec.s_c) {
        (false, _) => f64::NAN,
        (true, Some(s_c)) => s_c,
        (true, None) => critical_point(&spec.model)?,
    };
    if needs_s_c {
        check_alpha_grid(&spec.alpha_grid, s_c)?;
    }

    let mut jobs = Vec::new();
    for &kind in &spec.schedules {
        for &total_time in &spec.t_values {
            match kind {
                ScheduleKind::ExpLike if spec.optimize_alpha => jobs.push(Job::Optimize { total_time }),
                ScheduleKind::ExpLike => {
                    for &alpha in &spec.alpha_grid {
                        jobs.push(Job::Fixed {
                            schedule: Schedule::exp_like(total_time, alpha, s_c)?,
                        });
                    }
                }
                _ => jobs.push(Job::Fixed {
                    schedule: Schedule::new(kind, total_time)?,
                }),
            }
        }
    }

    let model = spec.model;
    let n_steps = spec.n_steps;
    let alpha_grid = &spec.alpha_grid;
    let outcomes = executor.map(&jobs, |job| -> Result<FidelityRecord> {
        let (schedule_id, total_time) = match job {
            Job::Fixed { schedule } => (schedule.kind().id(), schedule.total_time()),
            Job::Optimize { total_time } => (OPTIMIZED_EXP_LIKE_ID, *total_time),
        };
        let annotate = |e: Error| Error::Evolution {
            schedule: schedule_id.to_string(),
            total_time,
            source: Box::new(e),
        };
        let (alpha, fidelity) = match job {
            Job::Fixed { schedule } => {
                let spec = EvolutionSpec::new(model, *schedule, n_steps, 0).map_err(annotate)?;
                (schedule.alpha(), final_fidelity(&spec).map_err(annotate)?)
            }
            Job::Optimize { total_time } => {
                let best = optimize_alpha(&model, *total_time, alpha_grid, s_c, n_steps).map_err(annotate)?;
                (Some(best.alpha), best.fidelity)
            }
        };
        Ok(FidelityRecord {
            model_id: model.id().to_string(),
            schedule_id: schedule_id.to_string(),
            total_time,
            alpha,
            fidelity,
        })
    });
    outcomes.into_iter().collect()
}

/// First time a fidelity curve reaches a target.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub schedule_id: String,
    /// Set for fixed-alpha exponential-like curves.
    pub alpha: Option<f64>,
    /// `None` when the curve never reaches the target on its grid.
    pub time: Option<f64>,
}

/// Smallest T at which each curve in `records` reaches `target`, linearly
/// interpolated between the bracketing grid points.
///
/// Records are grouped by schedule id; fixed-alpha exponential-like records
/// are further split by `alpha`. Groups are reported in order of first
/// appearance.
pub fn crossing_time(records: &[FidelityRecord], target: f64) -> Result<Vec<Crossing>> {
    if records.is_empty() {
        return Err(Error::Empty("fidelity records"));
    }
    let curve_key = |r: &FidelityRecord| -> (String, Option<u64>) {
        let alpha = if r.schedule_id == ScheduleKind::ExpLike.id() {
            r.alpha.map(f64::to_bits)
        } else {
            None
        };
        (r.schedule_id.clone(), alpha)
    };
    type CurveKey = (String, Option<u64>);
    let mut groups: Vec<(CurveKey, Vec<&FidelityRecord>)> = Vec::new();
    for r in records {
        let key = curve_key(r);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(r),
            None => groups.push((key, alloc::vec![r])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|((schedule_id, alpha_bits), mut members)| {
            members.sort_by(|a, b| a.total_time.total_cmp(&b.total_time));
            let time = members.iter().position(|r| r.fidelity >= target).map(|i| {
                if i == 0 {
                    members[0].total_time
                } else {
                    let (a, b) = (members[i - 1], members[i]);
                    a.total_time + (target - a.fidelity) * (b.total_time - a.total_time) / (b.fidelity - a.fidelity)
                }
            });
            Crossing {
                schedule_id,
                alpha: alpha_bits.map(f64::from_bits),
                time,
            }
        })
        .collect())
}
