//! Sweep schedules and minimal-gap locators.
//!
//! Landau-Zener schedules return the bias `omega_z(t)`; the others return the
//! interpolation parameter `s(t)` in `[0, 1]`.

use core::fmt;
use core::str::FromStr;

use crate::error::{check_positive, check_range, Error, Result};
use crate::models::{Aqc1Params, LzParams, ModelSpec};
use crate::search::golden_section_min;

/// Largest admissible `alpha / s_c` before `exp(alpha / s_c)` leaves the
/// double-precision range.
pub const MAX_ALPHA_OVER_SC: f64 = 700.0;

/// Uniform grid size of the coarse minimal-gap scan.
pub const GAP_SCAN_POINTS: usize = 2001;

/// Bracket width at which the golden-section refinement of `s_c` stops.
pub const GAP_REFINE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScheduleKind {
    /// `omega_z = -omega0 + 2 omega0 t / T`.
    LinearLz,
    /// Piecewise parabola in `omega_z` with its vertex at `T / 2`.
    QuadraticLz,
    /// `s = t / T`.
    Linear,
    /// `s = (t / T)^2`.
    Quadratic,
    /// Two exponential branches meeting at `(t_c, s_c)` with curvature `alpha`.
    ExpLike,
}

impl ScheduleKind {
    pub const ALL: [ScheduleKind; 5] = [
        ScheduleKind::LinearLz,
        ScheduleKind::QuadraticLz,
        ScheduleKind::Linear,
        ScheduleKind::Quadratic,
        ScheduleKind::ExpLike,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ScheduleKind::LinearLz => "linear-lz",
            ScheduleKind::QuadraticLz => "quadratic-lz",
            ScheduleKind::Linear => "linear",
            ScheduleKind::Quadratic => "quadratic",
            ScheduleKind::ExpLike => "exp-like",
        }
    }

    /// True for the schedules that drive the Landau-Zener bias.
    pub fn drives_bias(self) -> bool {
        matches!(self, ScheduleKind::LinearLz | ScheduleKind::QuadraticLz)
    }

    pub fn is_compatible(self, model: &ModelSpec) -> bool {
        self.drives_bias() != model.is_interpolating()
    }
}

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ScheduleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScheduleKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::UnknownName {
                what: "schedule",
                name: s.into(),
            })
    }
}

/// A schedule kind bound to a total evolution time (and, for the
/// exponential-like family, to `alpha` and `s_c`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    kind: ScheduleKind,
    total_time: f64,
    alpha: Option<f64>,
    s_c: Option<f64>,
}

impl Schedule {
    /// Any kind except [`ScheduleKind::ExpLike`], which needs [`Schedule::exp_like`].
    pub fn new(kind: ScheduleKind, total_time: f64) -> Result<Self> {
        if kind == ScheduleKind::ExpLike {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: f64::NAN,
                reason: "the exp-like schedule needs alpha and s_c",
            });
        }
        Ok(Self {
            kind,
            total_time: check_positive("T", total_time)?,
            alpha: None,
            s_c: None,
        })
    }

    /// Exponential-like schedule with `t_c = s_c T`.
    pub fn exp_like(total_time: f64, alpha: f64, s_c: f64) -> Result<Self> {
        let total_time = check_positive("T", total_time)?;
        let alpha = check_positive("alpha", alpha)?;
        if !(s_c > 0.0 && s_c < 1.0) {
            return Err(Error::OutOfRange {
                name: "s_c",
                value: s_c,
                min: 0.0,
                max: 1.0,
            });
        }
        let max_alpha = max_alpha(s_c);
        if alpha > max_alpha {
            return Err(Error::AlphaOverflow { alpha, s_c, max_alpha });
        }
        Ok(Self {
            kind: ScheduleKind::ExpLike,
            total_time,
            alpha: Some(alpha),
            s_c: Some(s_c),
        })
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn s_c(&self) -> Option<f64> {
        self.s_c
    }

    /// Time of the slowest sweep, where one exists.
    pub fn t_c(&self) -> Option<f64> {
        match self.kind {
            ScheduleKind::QuadraticLz => Some(self.total_time / 2.0),
            ScheduleKind::ExpLike => self.s_c.map(|s_c| s_c * self.total_time),
            _ => None,
        }
    }

    /// Same schedule with a different total time.
    pub fn with_total_time(&self, total_time: f64) -> Result<Self> {
        Ok(Self {
            total_time: check_positive("T", total_time)?,
            ..*self
        })
    }

    /// Sweep value at time `t` for `model`.
    pub fn value(&self, t: f64, model: &ModelSpec) -> Result<f64> {
        let total = self.total_time;
        match (self.kind, model) {
            (ScheduleKind::LinearLz, ModelSpec::Lz(p)) => linear_lz(t, p, total),
            (ScheduleKind::QuadraticLz, ModelSpec::Lz(p)) => quadratic_lz(t, p, total),
            (ScheduleKind::Linear, m) if m.is_interpolating() => linear_s(t, total),
            (ScheduleKind::Quadratic, m) if m.is_interpolating() => quadratic_s(t, total),
            (ScheduleKind::ExpLike, m) if m.is_interpolating() => exp_like_s(t, self),
            (kind, m) => Err(Error::IncompatibleSchedule {
                schedule: kind.id(),
                model: m.id(),
            }),
        }
    }
}

/// Maximum admissible `alpha` for a given `s_c`.
pub fn max_alpha(s_c: f64) -> f64 {
    MAX_ALPHA_OVER_SC * s_c
}

fn check_time(t: f64, total_time: f64) -> Result<f64> {
    check_positive("T", total_time)?;
    check_range("t", t, 0.0, total_time)
}

pub fn linear_lz(t: f64, p: &LzParams, total_time: f64) -> Result<f64> {
    let t = check_time(t, total_time)?;
    let w0 = p.omega0();
    Ok(-w0 + 2.0 * w0 * (t / total_time))
}

pub fn quadratic_lz(t: f64, p: &LzParams, total_time: f64) -> Result<f64> {
    let t = check_time(t, total_time)?;
    let t_c = total_time / 2.0;
    let u = t / t_c - 1.0;
    let w0 = p.omega0();
    Ok(if t <= t_c { -w0 * u * u } else { w0 * u * u })
}

/// Exact `|d omega_z / dt|` of [`quadratic_lz`]: `(2 omega0 / t_c) |t / t_c - 1|`.
pub fn sweep_velocity(t: f64, p: &LzParams, total_time: f64) -> Result<f64> {
    let t = check_time(t, total_time)?;
    let t_c = total_time / 2.0;
    Ok(2.0 * p.omega0() / t_c * (t / t_c - 1.0).abs())
}

pub fn linear_s(t: f64, total_time: f64) -> Result<f64> {
    let t = check_time(t, total_time)?;
    Ok(t / total_time)
}

pub fn quadratic_s(t: f64, total_time: f64) -> Result<f64> {
    let t = check_time(t, total_time)?;
    let u = t / total_time;
    Ok(u * u)
}

/// Exponential-like interpolation through `(0, 0)`, `(t_c, s_c)` and `(T, 1)`:
///
/// ```text
/// s(t) = s_c (1 - e^{-a t/t_c}) / (1 - e^{-a})                              t <= t_c
/// s(t) = 1 - (1 - s_c) (e^{a/s_c} - e^{a t/t_c}) / (e^{a/s_c} - e^{a})      t >  t_c
/// ```
///
/// The second branch is evaluated as `s_c` plus a product of non-negative
/// increasing factors, `(1 - s_c) e^b expm1(c - b) / expm1(c)` with
/// `b = a (t - T)/t_c` and `c = a (t_c - T)/t_c`, which avoids cancellation
/// and keeps the curve monotone in floating point.
pub fn exp_like_s(t: f64, sched: &Schedule) -> Result<f64> {
    let (alpha, s_c) = match (sched.kind, sched.alpha, sched.s_c) {
        (ScheduleKind::ExpLike, Some(a), Some(s)) => (a, s),
        _ => {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: f64::NAN,
                reason: "not an exp-like schedule",
            })
        }
    };
    let total = sched.total_time;
    let t = check_time(t, total)?;
    let t_c = s_c * total;
    if t <= t_c {
        Ok(s_c * (libm::expm1(-alpha * (t / t_c)) / libm::expm1(-alpha)))
    } else {
        let b = alpha * ((t - total) / t_c);
        let c = alpha * ((t_c - total) / t_c);
        Ok(s_c + (1.0 - s_c) * (libm::exp(b) * (libm::expm1(c - b) / libm::expm1(c))))
    }
}

/// Minimal-gap location of the single-qubit model, `omega_x^2 / (omega_x^2 + omega_z^2)`.
pub fn sc_analytic(p: &Aqc1Params) -> f64 {
    let wx2 = p.omega_x() * p.omega_x();
    wx2 / (wx2 + p.omega_z() * p.omega_z())
}

/// Closed-form single-qubit gap `2 sqrt(s^2 omega_z^2 + (1 - s)^2 omega_x^2)`.
pub fn gap_analytic(p: &Aqc1Params, s: f64) -> Result<f64> {
    let s = check_range("s", s, 0.0, 1.0)?;
    Ok(2.0 * libm::hypot(s * p.omega_z(), (1.0 - s) * p.omega_x()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapMinimum {
    pub s_c: f64,
    pub gap_min: f64,
}

/// Locates the interior minimum of a gap function on `[0, 1]`: a uniform
/// scan over [`GAP_SCAN_POINTS`] points, then golden-section refinement on
/// the two cells around the best grid point.
///
/// Assumes a single interior minimum. A minimum on either endpoint is
/// reported as [`Error::BoundaryMinimum`].
pub fn sc_numeric<F>(mut gap: F) -> Result<GapMinimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    let last = GAP_SCAN_POINTS - 1;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=last {
        let s = i as f64 / last as f64;
        let g = gap(s)?;
        if !g.is_finite() {
            return Err(Error::NonFinite { what: "gap", t: s });
        }
        if g < best.1 {
            best = (i, g);
        }
    }
    let (i, g) = best;
    if i == 0 || i == last {
        return Err(Error::BoundaryMinimum {
            s: i as f64 / last as f64,
            gap: g,
        });
    }
    let lo = (i - 1) as f64 / last as f64;
    let hi = (i + 1) as f64 / last as f64;
    let refined = golden_section_min(&mut gap, lo, hi, GAP_REFINE_TOL)?;
    Ok(if refined.value <= g {
        GapMinimum {
            s_c: refined.x,
            gap_min: refined.value,
        }
    } else {
        GapMinimum {
            s_c: i as f64 / last as f64,
            gap_min: g,
        }
    })
}
