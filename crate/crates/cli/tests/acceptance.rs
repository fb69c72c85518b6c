//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria whose outcome is known to be FAIL are listed in
//! `EXPECTED_FAILURES`; they still print FAIL. The process exits non-zero only
//! when an outcome differs from its expectation.

use std::process::ExitCode;
use std::time::Instant;

use adiasweep::exec::RayonExecutor;
use adiasweep_core::analysis::{
    critical_point, crossing_time, default_alpha_grid, linspace, scan_fidelity, FidelityRecord, ScanSpec,
    AQC1_SHORT_WINDOW, FACTOR21_SHORT_WINDOW, OPTIMIZED_EXP_LIKE_ID,
};
use adiasweep_core::evolve::{evolve, final_fidelity, model_gap, EvolutionSpec, DEFAULT_N_STEPS};
use adiasweep_core::models::{aqc1_hamiltonian, factor21_hp, real_diagonal, rotated_frame};
use adiasweep_core::schedules::{exp_like_s, linear_s, quadratic_lz, quadratic_s, sc_analytic, sc_numeric};
use adiasweep_core::{
    eig_hermitian, unitary_step, Aqc1Params, ComplexMatrix, Factor21Params, LzParams, ModelSpec, Schedule,
    ScheduleKind,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRunner};

const LZ_ORACLE_TOL: f64 = 0.01;
const LZ_ORACLE_TIMES: [f64; 3] = [50.0, 100.0, 200.0];
const ACCELERATION_WINDOW: (f64, f64) = (2.0, 20.0);
const ACCELERATION_MIN_WINS: usize = 8;
const QUENCH_TIME: f64 = 1e-6;
const QUENCH_TOL: f64 = 1e-3;
const SC_ANALYTIC_EXPECTED: f64 = 0.264706;
const SC_ANALYTIC_TOL: f64 = 1e-6;
const SC_NUMERIC_TOL: f64 = 1e-5;
const FACTOR21_SC_RANGE: (f64, f64) = (0.72, 0.76);
const ORDERING_POINTS: usize = 10;
const ORDERING_MIN_STRICT: usize = 8;
const CROSSING_TARGET: f64 = 0.9;
/// Longer times where every schedule reaches the crossing target.
const FACTOR21_CROSSING_WINDOW: (f64, f64, usize) = (0.15, 0.4, 6);
const CONVERGENCE_TOL: f64 = 1e-8;
const ROTATED_FRAME_SETS: u32 = 100;
const ROTATED_FRAME_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-10;
const HP_TABLE: [f64; 8] = [400.0, 256.0, 324.0, 196.0, 324.0, 36.0, 144.0, 0.0];

const EXPECTED_FAILURES: &[(u32, &str)] = &[(
    6,
    "exp-like schedules with alpha > 0 trail the linear schedule at the 0.9 crossing",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Outcome { passed, detail }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        Outcome::new(false, format!("error: {e}"))
    }
}

/// Every reported evolution, kept for the step-doubling check.
struct Run {
    label: String,
    spec: EvolutionSpec,
    fidelity: f64,
}

#[derive(Default)]
struct Suite {
    runs: Vec<Run>,
}

type Check = Result<Outcome, adiasweep_core::Error>;
type Criterion = (u32, &'static str, Box<dyn Fn(&mut Suite) -> Check>);

impl Suite {
    fn run(&mut self, label: String, model: ModelSpec, schedule: Schedule) -> Result<f64, adiasweep_core::Error> {
        let spec = EvolutionSpec::with_defaults(model, schedule)?;
        let fidelity = final_fidelity(&spec)?;
        self.runs.push(Run { label, spec, fidelity });
        Ok(fidelity)
    }

    /// Records the scan rows as runs; optimized rows are re-created with their alpha.
    fn record_scan(&mut self, model: ModelSpec, s_c: f64, records: &[FidelityRecord]) -> Result<(), adiasweep_core::Error> {
        for r in records {
            let schedule = match r.schedule_id.as_str() {
                id if id == OPTIMIZED_EXP_LIKE_ID => Schedule::exp_like(r.total_time, r.alpha.unwrap(), s_c)?,
                id => Schedule::new(id.parse()?, r.total_time)?,
            };
            let label = format!("{} {} T={}", model.id(), r.schedule_id, r.total_time);
            self.runs.push(Run {
                label,
                spec: EvolutionSpec::with_defaults(model, schedule)?,
                fidelity: r.fidelity,
            });
        }
        Ok(())
    }
}

fn lz_oracle(suite: &mut Suite) -> Check {
    let p = LzParams::new(50.0, 1.0)?;
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for t in LZ_ORACLE_TIMES {
        let sim = suite.run(format!("lz linear T={t}"), ModelSpec::Lz(p), Schedule::new(ScheduleKind::LinearLz, t)?)?;
        let analytic = 1.0 - (-std::f64::consts::PI * p.omega_x().powi(2) * t / (2.0 * p.omega0())).exp();
        worst = worst.max((sim - analytic).abs());
        parts.push(format!("T={t}: sim {sim:.6} vs {analytic:.6}"));
    }
    Ok(Outcome::new(
        worst <= LZ_ORACLE_TOL,
        format!("{}; max |dF| = {worst:.2e} (tol {LZ_ORACLE_TOL})", parts.join(", ")),
    ))
}

fn acceleration(suite: &mut Suite) -> Check {
    let model = ModelSpec::Lz(LzParams::new(10.0, 1.0)?);
    let times = linspace(ACCELERATION_WINDOW.0, ACCELERATION_WINDOW.1, 10);
    let mut wins = 0;
    let mut at_ten = false;
    for &t in &times {
        let lin = suite.run(format!("lz linear T={t}"), model, Schedule::new(ScheduleKind::LinearLz, t)?)?;
        let quad = suite.run(format!("lz quadratic T={t}"), model, Schedule::new(ScheduleKind::QuadraticLz, t)?)?;
        if quad > lin {
            wins += 1;
            if t == 10.0 {
                at_ten = true;
            }
        }
    }
    Ok(Outcome::new(
        at_ten && wins >= ACCELERATION_MIN_WINS,
        format!("quadratic > linear at {wins}/10 points, at T=10: {at_ten}"),
    ))
}

fn sudden_quench(suite: &mut Suite) -> Check {
    let cases = [
        (ModelSpec::Aqc1(Aqc1Params::new(18.0, 30.0)?), 0.5),
        (ModelSpec::Factor21(Factor21Params::new(30.0)?), 0.125),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (model, expected) in cases {
        let s_c = critical_point(&model)?;
        let schedules = [
            Schedule::new(ScheduleKind::Linear, QUENCH_TIME)?,
            Schedule::new(ScheduleKind::Quadratic, QUENCH_TIME)?,
            Schedule::exp_like(QUENCH_TIME, 1.0, s_c)?,
        ];
        for schedule in schedules {
            let f = suite.run(format!("{} {} quench", model.id(), schedule.kind()), model, schedule)?;
            worst = worst.max((f - expected).abs());
            parts.push(format!("{} {}: {f:.6}", model.id(), schedule.kind()));
        }
    }
    Ok(Outcome::new(
        worst <= QUENCH_TOL,
        format!("{}; max deviation {worst:.2e} (tol {QUENCH_TOL})", parts.join(", ")),
    ))
}

fn gap_locators() -> Check {
    let p = Aqc1Params::new(18.0, 30.0)?;
    let aqc1 = ModelSpec::Aqc1(p);
    let analytic = sc_analytic(&p);
    let numeric = sc_numeric(|s| model_gap(&aqc1, s))?.s_c;
    let factor21 = sc_numeric(|s| model_gap(&ModelSpec::Factor21(Factor21Params::new(30.0)?), s))?.s_c;
    let ok = (analytic - SC_ANALYTIC_EXPECTED).abs() <= SC_ANALYTIC_TOL
        && (numeric - analytic).abs() <= SC_NUMERIC_TOL
        && (FACTOR21_SC_RANGE.0..=FACTOR21_SC_RANGE.1).contains(&factor21);
    Ok(Outcome::new(
        ok,
        format!(
            "single qubit analytic {analytic:.8}, numeric {numeric:.8} (|d| = {:.1e}); three qubit {factor21:.6}",
            (numeric - analytic).abs()
        ),
    ))
}

struct Ordering {
    holds_everywhere: bool,
    strict: usize,
    violations: Vec<String>,
}

fn ordering(records: &[FidelityRecord], times: &[f64]) -> Ordering {
    let find = |id: &str, t: f64| {
        records
            .iter()
            .find(|r| r.schedule_id == id && r.total_time == t)
            .map(|r| r.fidelity)
            .expect("scan row")
    };
    let mut out = Ordering {
        holds_everywhere: true,
        strict: 0,
        violations: Vec::new(),
    };
    for &t in times {
        let (e, l, q) = (find(OPTIMIZED_EXP_LIKE_ID, t), find("linear", t), find("quadratic", t));
        if e >= l && l >= q {
            if e > l && l > q {
                out.strict += 1;
            }
        } else {
            out.holds_everywhere = false;
            out.violations.push(format!("T={t:.4}: exp-opt {e:.6}, linear {l:.6}, quadratic {q:.6}"));
        }
    }
    out
}

fn ordering_scan(suite: &mut Suite, model: ModelSpec, times: &[f64]) -> Result<Vec<FidelityRecord>, adiasweep_core::Error> {
    let executor = RayonExecutor::from_env().expect("thread cap");
    let spec = ScanSpec {
        model,
        schedules: vec![ScheduleKind::Linear, ScheduleKind::Quadratic, ScheduleKind::ExpLike],
        t_values: times.to_vec(),
        alpha_grid: default_alpha_grid(),
        optimize_alpha: true,
        n_steps: DEFAULT_N_STEPS,
        s_c: None,
    };
    let records = scan_fidelity(&spec, &executor)?;
    suite.record_scan(model, critical_point(&model)?, &records)?;
    Ok(records)
}

fn describe(o: &Ordering, points: usize) -> String {
    let mut s = format!(
        "exp-opt >= linear >= quadratic at {}/{points} points, strict at {}",
        points - o.violations.len(),
        o.strict
    );
    if !o.violations.is_empty() {
        s.push_str(&format!(" [violations: {}]", o.violations.join("; ")));
    }
    s
}

fn single_qubit_ordering(suite: &mut Suite) -> Check {
    let model = ModelSpec::Aqc1(Aqc1Params::new(18.0, 30.0)?);
    let times = linspace(AQC1_SHORT_WINDOW.0, AQC1_SHORT_WINDOW.1, ORDERING_POINTS);
    let records = ordering_scan(suite, model, &times)?;
    let o = ordering(&records, &times);
    Ok(Outcome::new(
        o.holds_everywhere && o.strict >= ORDERING_MIN_STRICT,
        format!("T in [{}, {}]: {}", times[0], times[ORDERING_POINTS - 1], describe(&o, ORDERING_POINTS)),
    ))
}

fn three_qubit_ordering(suite: &mut Suite) -> Check {
    let model = ModelSpec::Factor21(Factor21Params::new(30.0)?);
    let short = linspace(FACTOR21_SHORT_WINDOW.0, FACTOR21_SHORT_WINDOW.1, ORDERING_POINTS);
    let (lo, hi, n) = FACTOR21_CROSSING_WINDOW;
    let mut times = short.clone();
    times.extend(linspace(lo, hi, n));
    let records = ordering_scan(suite, model, &times)?;
    let o = ordering(&records, &short);
    let ordered = o.holds_everywhere && o.strict >= ORDERING_MIN_STRICT;

    let crossings = crossing_time(&records, CROSSING_TARGET)?;
    let at = |id: &str| crossings.iter().find(|c| c.schedule_id == id).and_then(|c| c.time);
    let (e, l, q) = (at(OPTIMIZED_EXP_LIKE_ID), at("linear"), at("quadratic"));
    let crossing_ok = matches!((e, l, q), (Some(e), Some(l), Some(q)) if e < l && l < q);
    let show = |t: Option<f64>| t.map_or("never".to_string(), |t| format!("{t:.5}"));
    Ok(Outcome::new(
        ordered && crossing_ok,
        format!(
            "T in [{}, {}]: {}; F=0.9 crossing exp-opt {} / linear {} / quadratic {} (need exp-opt < linear < quadratic: {})",
            short[0],
            short[ORDERING_POINTS - 1],
            describe(&o, ORDERING_POINTS),
            show(e),
            show(l),
            show(q),
            if crossing_ok { "holds" } else { "violated" },
        ),
    ))
}

fn schedules_behave() -> Result<bool, adiasweep_core::Error> {
    let total = 3.0;
    let grid: Vec<f64> = (0..=600).map(|k| (total * k as f64 / 600.0).min(total)).collect();
    let monotone = |f: &dyn Fn(f64) -> Result<f64, adiasweep_core::Error>| -> Result<bool, adiasweep_core::Error> {
        let values = grid.iter().map(|&t| f(t)).collect::<Result<Vec<_>, _>>()?;
        Ok(values.windows(2).all(|w| w[1] >= w[0]) && values[0] == 0.0 && values[600] == 1.0)
    };
    let mut ok = monotone(&|t| linear_s(t, total))? && monotone(&|t| quadratic_s(t, total))?;
    let lz = LzParams::new(10.0, 1.0)?;
    ok &= monotone(&|t| Ok((quadratic_lz(t, &lz, total)? + 10.0) / 20.0))?;
    for s_c in [0.1, 0.264706, 0.5, 0.748] {
        for alpha in [1e-3, 0.05, 1.0, 5.0, 20.0] {
            let sched = Schedule::exp_like(total, alpha, s_c)?;
            ok &= monotone(&|t| exp_like_s(t, &sched))?;
            let t_c = s_c * total;
            ok &= (exp_like_s(t_c, &sched)? - s_c).abs() <= 1e-12;
            ok &= (exp_like_s(t_c * (1.0 + 1e-9), &sched)? - s_c).abs() <= 1e-6;
        }
        let tiny = Schedule::exp_like(total, 1e-7, s_c)?;
        for &t in &grid {
            ok &= (exp_like_s(t, &tiny)? - linear_s(t, total)?).abs() <= 1e-6;
        }
    }
    Ok(ok)
}

fn rotated_frame_worst() -> f64 {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: ROTATED_FRAME_SETS,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    let strategy = (0.1..100.0f64, 0.1..100.0f64, 0.0..=1.0f64);
    let mut worst: f64 = 0.0;
    for _ in 0..ROTATED_FRAME_SETS {
        let (wx, wz, s) = strategy.new_tree(&mut runner).expect("sample").current();
        let p = Aqc1Params::new(wx, wz).expect("positive parameters");
        let lab = aqc1_hamiltonian(&p, s).expect("s in range");
        worst = worst.max(lab.max_abs_diff(&rotated_frame(&p).hamiltonian(s)).expect("same size"));
    }
    worst
}

fn unitarity_worst() -> Result<f64, adiasweep_core::Error> {
    let mut worst: f64 = 0.0;
    let mats = [
        ComplexMatrix::sigma_x().combine(3.0, &ComplexMatrix::sigma_y(), -7.0)?,
        factor21_hp(),
        ModelSpec::Factor21(Factor21Params::new(30.0)?).hamiltonian(0.5)?,
    ];
    for h in &mats {
        worst = worst.max(eig_hermitian(h)?.vectors.unitarity_deviation());
        for dt in [1e-4, 0.01, 0.37] {
            worst = worst.max(unitary_step(h, dt)?.unitarity_deviation());
        }
    }
    Ok(worst)
}

fn norm_worst() -> Result<f64, adiasweep_core::Error> {
    let mut worst: f64 = 0.0;
    let cases = [
        (ModelSpec::Lz(LzParams::new(50.0, 1.0)?), Schedule::new(ScheduleKind::LinearLz, 100.0)?),
        (ModelSpec::Aqc1(Aqc1Params::new(18.0, 30.0)?), Schedule::exp_like(0.1, 5.0, 0.264706)?),
        (ModelSpec::Factor21(Factor21Params::new(30.0)?), Schedule::new(ScheduleKind::Linear, 0.4)?),
    ];
    for (model, schedule) in cases {
        let traj = evolve(&EvolutionSpec::new(model, schedule, DEFAULT_N_STEPS, DEFAULT_N_STEPS / 50)?)?;
        for s in &traj.samples {
            worst = worst.max((s.norm - 1.0).abs());
        }
    }
    Ok(worst)
}

fn properties(suite: &mut Suite) -> Check {
    let mut worst_step: (f64, String) = (0.0, String::new());
    for run in &suite.runs {
        let doubled = EvolutionSpec {
            n_steps: 2 * run.spec.n_steps,
            ..run.spec
        };
        let d = (final_fidelity(&doubled)? - run.fidelity).abs();
        if d > worst_step.0 || worst_step.1.is_empty() {
            worst_step = (d, run.label.clone());
        }
    }
    let hp = real_diagonal(&factor21_hp());
    let frame = rotated_frame_worst();
    let unitarity = unitarity_worst()?;
    let norm = norm_worst()?;
    let schedules = schedules_behave()?;
    let checks = [
        ("step doubling", worst_step.0 <= CONVERGENCE_TOL),
        ("H_P table", hp == HP_TABLE),
        ("rotated frame", frame <= ROTATED_FRAME_TOL),
        ("unitarity", unitarity <= 1e-12),
        ("norm", norm <= NORM_TOL),
        ("schedules", schedules),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Ok(Outcome::new(
        failed.is_empty(),
        format!(
            "step doubling over {} runs: max |dF| = {:.2e} ({}); H_P table exact: {}; rotated frame max diff {frame:.1e} over {ROTATED_FRAME_SETS} sets; unitarity {unitarity:.1e}; norm drift {norm:.1e}; schedule shape checks: {schedules}{}",
            suite.runs.len(),
            worst_step.0,
            worst_step.1,
            hp == HP_TABLE,
            if failed.is_empty() { String::new() } else { format!(" [failed: {}]", failed.join(", ")) },
        ),
    ))
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        // Keeps `cargo test -- --list` from running the whole suite.
        return ExitCode::SUCCESS;
    }
    let started = Instant::now();
    let mut suite = Suite::default();
    let criteria: [Criterion; 7] = [
        (1, "Landau-Zener analytic oracle", Box::new(lz_oracle)),
        (2, "quadratic sweep beats linear sweep", Box::new(acceleration)),
        (3, "sudden-quench anchors", Box::new(sudden_quench)),
        (4, "minimal-gap locators", Box::new(|_: &mut Suite| gap_locators())),
        (5, "single-qubit schedule ordering", Box::new(single_qubit_ordering)),
        (6, "three-qubit schedule ordering and 0.9 crossing", Box::new(three_qubit_ordering)),
        (7, "property suites", Box::new(properties)),
    ];
    let mut surprises = 0;
    for (id, name, check) in criteria {
        let t0 = Instant::now();
        let outcome = check(&mut suite).unwrap_or_else(Outcome::error);
        let expected_failure = EXPECTED_FAILURES.iter().find(|(n, _)| *n == id);
        let status = match (outcome.passed, expected_failure) {
            (true, None) => "PASS".to_string(),
            (false, Some((_, why))) => format!("FAIL (expected: {why})"),
            (true, Some(_)) => {
                surprises += 1;
                "PASS (unexpected: listed as an expected failure)".to_string()
            }
            (false, None) => {
                surprises += 1;
                "FAIL".to_string()
            }
        };
        println!(
            "criterion {id} [{name}]: {status} | {} | {:.1}s",
            outcome.detail,
            t0.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} unexpected outcome(s), {:.1}s total",
        surprises,
        started.elapsed().as_secs_f64()
    );
    if surprises == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
