use std::path::Path;

use serde::Serialize;

use super::config::{ExperimentConfig, PlanSource, ProbeCommandConfig, ProbeTarget, SolveConfig, VerifyConfig};
use super::{csv_string, emit, finish, read_json, resolve, to_json, CliError, Format, Options};
use super::{EXIT_OK, EXIT_VIOLATION};
use crate::convexity_probe::{
    cylinder_like_probe, probe_all_equal_level_pairs, strict_on_segment, ProbeError, ProbeOutcome,
    StrictConvexityVerdict, DEFAULT_STRICT_TOL,
};
use crate::diagnostics::{
    check_cyclical_monotonicity, check_pairwise_double_monotonicity, refinement_csv, refinement_experiment,
    split_report, ExperimentError, Generator, MonotonicityReport, PlanSupport, RefinementRow, SplitReport,
};
use crate::lexot::{Instance, Mode, PlanRepr, TransportPlan};

fn load_config<T: serde::de::DeserializeOwned + Default>(opts: &Options) -> Result<T, CliError> {
    match &opts.config {
        Some(path) => read_json(path, "config"),
        None => Ok(T::default()),
    }
}

fn load_instance(opts: &Options, from_config: Option<&Path>) -> Result<Instance, CliError> {
    let path = match (&opts.instance, from_config) {
        (Some(p), _) => p.clone(),
        (None, Some(p)) => resolve(opts.config.as_deref(), p),
        (None, None) => return Err(CliError::Input("no instance given (use --instance)".into())),
    };
    read_json(&path, "instance")
}

fn mode(opts: &Options, from_config: Option<Mode>) -> Mode {
    opts.mode.map(Mode::from).or(from_config).unwrap_or_default()
}

impl From<ProbeError> for CliError {
    fn from(e: ProbeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Input(msg) => CliError::Input(msg),
            ExperimentError::Solve(e) => e.into(),
        }
    }
}

/// `solve`: writes the lexicographic solution as JSON, or its arcs as CSV.
pub fn cmd_solve(opts: &Options) -> i32 {
    finish((|| {
        let cfg: SolveConfig = load_config(opts)?;
        let instance = load_instance(opts, cfg.instance.as_deref())?;
        let solution = instance.solve(mode(opts, cfg.mode))?.to_repr();
        let body = match opts.format.unwrap_or(Format::Json) {
            Format::Json => to_json(&solution),
            Format::Csv => csv_string(&solution.arcs),
        };
        emit(opts, &body)?;
        Ok(EXIT_OK)
    })())
}

#[derive(Debug, Serialize)]
struct PairProbeReport {
    strict: StrictConvexityVerdict,
    outcome: ProbeOutcome,
}

#[derive(Debug, Serialize)]
struct ProbeRow {
    trial: usize,
    verdict: &'static str,
    epsilon: f64,
    delta: f64,
    margin: f64,
}

fn probe_row(trial: usize, outcome: &ProbeOutcome) -> ProbeRow {
    match outcome {
        ProbeOutcome::Witness(w) => {
            ProbeRow { trial, verdict: "witness", epsilon: w.epsilon, delta: w.delta, margin: w.worst_increase }
        }
        ProbeOutcome::Violation(v) => {
            ProbeRow { trial, verdict: "violation", epsilon: v.epsilon, delta: v.delta, margin: v.margin }
        }
    }
}

/// `probe`: a single pair (`xbar`, `ybar`) or seeded pairs on a level set
/// (`level`, `trials`). Exit 3 when any pair yields a violation.
pub fn cmd_probe(opts: &Options) -> i32 {
    finish((|| {
        let path = opts.config.as_ref().ok_or_else(|| CliError::Input("probe needs --config".into()))?;
        let cfg: ProbeCommandConfig = read_json(path, "config")?;
        let format = opts.format.unwrap_or(Format::Json);
        let (body, violated) = match &cfg.target {
            ProbeTarget::Pair { xbar, ybar } => {
                let outcome = cylinder_like_probe(&cfg.gauge, xbar, ybar, &cfg.probe)?;
                let strict = strict_on_segment(&cfg.gauge, xbar, ybar, DEFAULT_STRICT_TOL)?;
                let violated = !outcome.is_witness();
                let body = match format {
                    Format::Json => to_json(&PairProbeReport { strict, outcome }),
                    Format::Csv => csv_string(&[probe_row(0, &outcome)]),
                };
                (body, violated)
            }
            ProbeTarget::Level { level, trials } => {
                let seed =
                    opts.seed.or(cfg.seed).ok_or_else(|| CliError::Input("level-set probing needs a seed".into()))?;
                let report = probe_all_equal_level_pairs(&cfg.gauge, *level, *trials, seed, &cfg.probe)?;
                let body = match format {
                    Format::Json => to_json(&report),
                    Format::Csv => csv_string(
                        &report
                            .failures
                            .iter()
                            .map(|f| probe_row(f.trial, &ProbeOutcome::Violation(f.violation.clone())))
                            .collect::<Vec<_>>(),
                    ),
                };
                (body, report.violations > 0)
            }
        };
        emit(opts, &body)?;
        Ok(if violated { EXIT_VIOLATION } else { EXIT_OK })
    })())
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    passed: bool,
    marginal_error: f64,
    seed: u64,
    pairwise: MonotonicityReport,
    cyclical: MonotonicityReport,
    split: SplitReport,
}

#[derive(Debug, Serialize)]
struct ViolationRow {
    check: &'static str,
    kind: String,
    lhs: f64,
    rhs: f64,
    sources: String,
    targets: String,
}

fn violation_rows<'a>(check: &'static str, report: &'a MonotonicityReport) -> impl Iterator<Item = ViolationRow> + 'a {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    report.first_violations.iter().map(move |v| ViolationRow {
        check,
        kind: serde_json::to_value(v.kind).ok().and_then(|k| k.as_str().map(String::from)).unwrap_or_default(),
        lhs: v.lhs,
        rhs: v.rhs,
        sources: join(&v.sources),
        targets: join(&v.targets),
    })
}

/// `verify`: checks a plan against its instance. The plan comes from the
/// config (`plan`, inline or a path); without one the instance is solved
/// first. Exit 3 when a monotonicity check fails.
pub fn cmd_verify(opts: &Options) -> i32 {
    finish((|| {
        let cfg: VerifyConfig = load_config(opts)?;
        let instance = load_instance(opts, cfg.instance.as_deref())?;
        let plan: TransportPlan<f64> = match &cfg.plan {
            Some(PlanSource::Inline(repr)) => TransportPlan::from_repr(repr)?,
            Some(PlanSource::File(p)) => {
                let repr: PlanRepr = read_json(&resolve(opts.config.as_deref(), p), "plan")?;
                TransportPlan::from_repr(&repr)?
            }
            None => instance.solve(mode(opts, cfg.mode))?.plan_f64(),
        };
        let marginal_error = plan.marginal_error(&instance.mu.weights_f64(), &instance.nu.weights_f64());
        if marginal_error.is_nan()
            || marginal_error > 1e-9
            || plan.sources() != instance.mu.len()
            || plan.targets() != instance.nu.len()
        {
            return Err(CliError::Input(format!(
                "plan is not a coupling of the instance (marginal error {marginal_error})"
            )));
        }
        if cfg.max_cycle_len < 2 {
            return Err(CliError::Input("max_cycle_len must be at least 2".into()));
        }
        let seed = opts.seed.or(cfg.seed).unwrap_or(0);
        let support = PlanSupport::new(&plan, &instance.mu, &instance.nu)?;
        let pairwise = check_pairwise_double_monotonicity(&support, &instance.cost, cfg.tol);
        let cyclical =
            check_cyclical_monotonicity(&support, &instance.cost, cfg.max_cycle_len, cfg.subset_cap, seed, cfg.tol);
        let split = split_report(&support, &instance.cost, cfg.mass_tol);
        let passed = pairwise.passed() && cyclical.passed();
        let body = match opts.format.unwrap_or(Format::Json) {
            Format::Json => to_json(&VerifyReport { passed, marginal_error, seed, pairwise, cyclical, split }),
            Format::Csv => csv_string(
                &violation_rows("pairwise", &pairwise).chain(violation_rows("cyclical", &cyclical)).collect::<Vec<_>>(),
            ),
        };
        emit(opts, &body)?;
        Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
    })())
}

#[derive(Debug, Serialize)]
struct ExperimentReport<'a> {
    seed: u64,
    rows: &'a [RefinementRow],
}

/// `experiment`: a refinement sweep, written as CSV by default.
pub fn cmd_experiment(opts: &Options) -> i32 {
    finish((|| {
        let path = opts.config.as_ref().ok_or_else(|| CliError::Input("experiment needs --config".into()))?;
        let cfg: ExperimentConfig = read_json(path, "config")?;
        let random = [&cfg.mu, &cfg.nu].iter().any(|m| matches!(m.generator, Generator::Iid { .. }));
        let seed = match opts.seed.or(cfg.seed) {
            Some(s) => s,
            None if random => return Err(CliError::Input("iid sampling needs a seed".into())),
            None => 0,
        };
        let rows = refinement_experiment(&cfg.mu, &cfg.nu, &cfg.sizes, &cfg.cost, seed, mode(opts, cfg.mode))?;
        let body = match opts.format.unwrap_or(Format::Csv) {
            Format::Csv => refinement_csv(&rows),
            Format::Json => to_json(&ExperimentReport { seed, rows: &rows }),
        };
        emit(opts, &body)?;
        Ok(EXIT_OK)
    })())
}
