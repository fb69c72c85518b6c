//! Time-dependent Schrodinger propagation with a midpoint exponential rule.
//!
//! Each step applies `exp(-i H(t_k + dt/2) dt)` exactly through the
//! eigendecomposition of the midpoint Hamiltonian, so the scheme is unitary
//! step by step and second-order accurate in `dt`.

use alloc::vec::Vec;

use crate::error::{check_range, Error, Result};
use crate::hermlin::{eig_hermitian, eig_hermitian_near, ComplexMatrix, EigenSystem, StateVector};
use crate::models::ModelSpec;
use crate::schedules::Schedule;

/// Default number of time steps per evolution.
pub const DEFAULT_N_STEPS: usize = 40_000;

/// Fewest time steps accepted by [`EvolutionSpec::new`].
pub const MIN_N_STEPS: usize = 100;

/// Ground levels closer than this are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionSpec {
    pub model: ModelSpec,
    pub schedule: Schedule,
    pub n_steps: usize,
    /// Record a sample every this many steps; 0 keeps only the final state.
    pub record_every: usize,
}

impl EvolutionSpec {
    pub fn new(model: ModelSpec, schedule: Schedule, n_steps: usize, record_every: usize) -> Result<Self> {
        if n_steps < MIN_N_STEPS {
            return Err(Error::InvalidParameter {
                name: "n_steps",
                value: n_steps as f64,
                reason: "at least 100 time steps are required",
            });
        }
        if !schedule.kind().is_compatible(&model) {
            return Err(Error::IncompatibleSchedule {
                schedule: schedule.kind().id(),
                model: model.id(),
            });
        }
        Ok(Self {
            model,
            schedule,
            n_steps,
            record_every,
        })
    }

    /// Final-state-only evolution with the default step count.
    pub fn with_defaults(model: ModelSpec, schedule: Schedule) -> Result<Self> {
        Self::new(model, schedule, DEFAULT_N_STEPS, 0)
    }

    pub fn total_time(&self) -> f64 {
        self.schedule.total_time()
    }
}

/// State recorded at one time point.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    /// Sweep value at `t` (`s` or `omega_z`).
    pub sweep_value: f64,
    pub state: StateVector,
    /// Overlap with the instantaneous ground state at `t`.
    pub ground_fidelity: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Recorded samples in time order; the last one is always the final state.
    pub samples: Vec<Sample>,
    pub final_state: StateVector,
    pub final_fidelity: f64,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }
}

/// Unit-norm lowest eigenvector of `h`, with the eigensolver's phase
/// convention. A degenerate ground level is an error.
pub fn ground_state(h: &ComplexMatrix) -> Result<StateVector> {
    let eig = eig_hermitian(h)?;
    if eig.dim() > 1 {
        let gap = eig.values[1] - eig.values[0];
        if gap < DEGENERACY_TOL {
            return Err(Error::DegenerateGround { gap });
        }
    }
    Ok(eig.vector(0))
}

/// `|<psi|phi>|^2`.
pub fn fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm_sqr())
}

/// Applies the midpoint propagator for `hamiltonian(t)` over `[0, total_time]`
/// in `n_steps` equal steps.
pub fn propagate<H>(mut hamiltonian: H, initial: &StateVector, total_time: f64, n_steps: usize) -> Result<StateVector>
where
    H: FnMut(f64) -> Result<ComplexMatrix>,
{
    let dt = total_time / n_steps as f64;
    let mut psi = initial.clone();
    let mut eig: Option<EigenSystem> = None;
    for k in 0..n_steps {
        let t_mid = (k as f64 + 0.5) * dt;
        let next = step_eigensystem(&hamiltonian(t_mid)?, eig.as_ref())?;
        psi = next.propagate(&psi, dt)?;
        eig = Some(next);
    }
    Ok(psi)
}

fn step_eigensystem(h: &ComplexMatrix, previous: Option<&EigenSystem>) -> Result<EigenSystem> {
    match previous {
        Some(prev) => eig_hermitian_near(h, prev),
        None => eig_hermitian(h),
    }
}

/// Evolves the ground state of `H(0)` under the model and schedule of `spec`
/// and measures its overlap with the ground state of `H(T)`.
pub fn evolve(spec: &EvolutionSpec) -> Result<Trajectory> {
    let model = &spec.model;
    let schedule = &spec.schedule;
    let family = model.family();
    let total = schedule.total_time();
    let n = spec.n_steps;
    let dt = total / n as f64;

    let sweep_at = |t: f64| -> Result<f64> {
        let x = schedule.value(t, model)?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::NonFinite { what: "schedule value", t })
        }
    };
    let sample_at = |t: f64, psi: &StateVector| -> Result<Sample> {
        let x = sweep_at(t)?;
        let ground = ground_state(&family.at(x)?)?;
        Ok(Sample {
            t,
            sweep_value: x,
            state: psi.clone(),
            ground_fidelity: fidelity(&ground, psi)?,
            norm: psi.norm(),
        })
    };

    let mut psi = ground_state(&family.at(sweep_at(0.0)?)?)?;
    let mut samples = Vec::new();
    if spec.record_every > 0 {
        samples.push(sample_at(0.0, &psi)?);
    }
    let mut eig: Option<EigenSystem> = None;
    for k in 0..n {
        let t_mid = (k as f64 + 0.5) * dt;
        let next = step_eigensystem(&family.at(sweep_at(t_mid)?)?, eig.as_ref())?;
        psi = next.propagate(&psi, dt)?;
        eig = Some(next);
        let step = k + 1;
        if spec.record_every > 0 && step % spec.record_every == 0 && step < n {
            samples.push(sample_at(step as f64 * dt, &psi)?);
        }
    }
    let last = sample_at(total, &psi)?;
    let final_fidelity = last.ground_fidelity;
    samples.push(last);
    Ok(Trajectory {
        samples,
        final_state: psi,
        final_fidelity,
    })
}

/// Final ground-state fidelity only.
pub fn final_fidelity(spec: &EvolutionSpec) -> Result<f64> {
    let spec = EvolutionSpec {
        record_every: 0,
        ..*spec
    };
    Ok(evolve(&spec)?.final_fidelity)
}

/// Two lowest levels at one point of a gap scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub s: f64,
    pub e0: f64,
    pub e1: f64,
    pub gap: f64,
}

/// Two lowest eigenvalues along a grid of normalized sweep coordinates.
/// For the Landau-Zener model `s` maps onto `omega_z = -omega0 + 2 omega0 s`.
pub fn gap_curve(model: &ModelSpec, s_grid: &[f64]) -> Result<Vec<GapPoint>> {
    let family = model.family();
    s_grid
        .iter()
        .map(|&s| {
            let s = check_range("s", s, 0.0, 1.0)?;
            let eig = eig_hermitian(&family.at(model.sweep_value(s))?)?;
            let (e0, e1) = (eig.values[0], eig.values[1]);
            Ok(GapPoint { s, e0, e1, gap: e1 - e0 })
        })
        .collect()
}

/// Gap between the two lowest levels at normalized coordinate `s`.
pub fn model_gap(model: &ModelSpec, s: f64) -> Result<f64> {
    Ok(gap_curve(model, &[s])?[0].gap)
}
