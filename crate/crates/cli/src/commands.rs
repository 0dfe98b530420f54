//! The four subcommands as pure functions from arguments to reports.

use std::fs;
use std::path::{Path, PathBuf};

use monodromy_core::build;
use monodromy_core::homology::{validate, Family, HomologyModel, ModelError};
use monodromy_core::invariant::{
    annihilator_order_bounds, certify_minimal, default_exponent_bound, gamma_closure, zero_subspace_profile,
    AnalysisError,
};
use monodromy_core::linalg::{fmt_rational, LinalgError};
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;
use wronskian_cas::{apply_operator, minimal_annihilator, parse, CasError, SymbolicElement};

use crate::dump::ModelDump;
use crate::report::{AnnihilateReport, CheckEntry, CoefficientEntry, Report, SweepSummary, TOOL, VERSION};

pub const DEFAULT_CAP: usize = 10_000;
pub const CACHE_ENV: &str = "MONODROMY_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Cas(#[from] CasError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Invalid(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Settings shared by all commands.
#[derive(Debug, Clone, Default)]
pub struct Context {
    /// Directory of memoized model dumps, if enabled.
    pub cache_dir: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Self {
        Self {
            cache_dir: std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
        }
    }

    /// Builds a model, reading and refreshing the cache when one is set.
    /// Unreadable or stale cache entries are rebuilt silently.
    pub fn model(&self, family: Family, p: u32, q: u32) -> Result<HomologyModel, CliError> {
        let Some(dir) = &self.cache_dir else {
            return Ok(build(family, p, q)?);
        };
        let path = cache_path(dir, family, p, q);
        if let Some(model) = read_cached(&path, family, p, q) {
            return Ok(model);
        }
        let model = build(family, p, q)?;
        // The cache is an optimization; a failed write is not an error.
        if fs::create_dir_all(dir).is_ok() {
            if let Ok(json) = serde_json::to_string(&ModelDump::from_model(&model)) {
                let _ = fs::write(&path, json);
            }
        }
        Ok(model)
    }
}

fn cache_path(dir: &Path, family: Family, p: u32, q: u32) -> PathBuf {
    dir.join(format!("{}-{p}-{q}-v{VERSION}.json", family.name()))
}

fn read_cached(path: &Path, family: Family, p: u32, q: u32) -> Option<HomologyModel> {
    let text = fs::read_to_string(path).ok()?;
    let dump: ModelDump = serde_json::from_str(&text).ok()?;
    let model = dump.to_model().ok()?;
    let params = &model.params;
    let q_matches = family == Family::LotkaVolterra || params.q == q;
    (params.family == family && params.p == p && q_matches).then_some(model)
}

/// Resolves `-q`: required for toy and parabolic, absent (or 1) for Lotka-Volterra.
pub fn resolve_q(family: Family, q: Option<u32>) -> Result<u32, CliError> {
    match (family, q) {
        (Family::LotkaVolterra, None | Some(1)) => Ok(1),
        (Family::LotkaVolterra, Some(q)) => Err(CliError::Invalid(format!("lotka_volterra takes no -q (got {q})"))),
        (_, Some(q)) => Ok(q),
        (_, None) => Err(CliError::Invalid(format!("{family} requires -q"))),
    }
}

fn pq_echo(family: Family, p: u32, q: u32) -> String {
    match family {
        Family::LotkaVolterra => format!("{family} -p {p}"),
        _ => format!("{family} -p {p} -q {q}"),
    }
}

pub fn cmd_model(ctx: &Context, family: Family, p: u32, q: Option<u32>, dump: bool) -> Result<Report, CliError> {
    let q = resolve_q(family, q)?;
    let model = ctx.model(family, p, q)?;
    let mut command = format!("model {}", pq_echo(family, p, q));
    if dump {
        command.push_str(" --dump");
    }
    let mut report = Report::for_model(command, &model);
    for check in &validate(&model).checks {
        report.push(check.into());
    }
    if dump {
        report.model = Some(ModelDump::from_model(&model));
    }
    Ok(report)
}

pub fn cmd_minimal(
    ctx: &Context,
    family: Family,
    p: u32,
    q: Option<u32>,
    exponent_bound: Option<u64>,
    cap: usize,
) -> Result<Report, CliError> {
    if family == Family::Toy {
        return Err(CliError::Invalid(
            "the toy family has no intersection data, so there is no vanishing cycle to close over".into(),
        ));
    }
    let q = resolve_q(family, q)?;
    let model = ctx.model(family, p, q)?;
    let bound = exponent_bound.unwrap_or_else(|| default_exponent_bound(&model));
    let command = format!("minimal {} --exponent-bound {bound} --cap {cap}", pq_echo(family, p, q));
    let mut report = Report::for_model(command, &model);
    report.exponent_bound = Some(bound);
    report.cap = Some(cap);
    for check in &validate(&model).checks {
        report.push(check.into());
    }

    let closure = gamma_closure(&model, bound)?;
    let dim = closure.subspace.dim();
    report.closure_dim = Some(dim);
    report.closure_passes = Some(closure.passes);
    report.stable_under_doubling = Some(closure.stable_under_doubling);
    report.closure_basis = Some(
        closure
            .subspace
            .basis()
            .iter()
            .map(|v| v.iter().map(fmt_rational).collect())
            .collect(),
    );
    report.push(CheckEntry::new(
        "closure_fixpoint",
        closure.is_fixpoint(&model)?,
        || "re-running the closure added vectors".into(),
    ));
    report.push(CheckEntry::new(
        "closure_stable_under_doubling",
        closure.stable_under_doubling,
        || format!("doubling the exponent bound to {} added vectors", 2 * bound),
    ));
    report.push(CheckEntry::new(
        "closure_monc_compatible",
        closure.is_monc_compatible(&model)?,
        || "some mon0^l H is not monc-invariant".into(),
    ));

    let certified = certify_minimal(&model, &closure, cap)?;
    report.closure_certified = Some(certified.certified);
    if certified.orbit.finite {
        report.orbit_size = Some(certified.orbit.size);
    }
    report.push(CheckEntry::new("closure_certified", certified.certified, || {
        format!("orbit of the closure exceeded cap {cap}")
    }));

    let profile = match family {
        Family::Parabolic => Some(zero_subspace_profile(&model, &closure.subspace, bound)?),
        _ => None,
    };
    if let Some(profile) = &profile {
        let kdim = profile.kernel.dim();
        report.parity_case = Some(profile.parity_case.name().into());
        report.zero_kernel_dim = Some(kdim);
        report.zero_kernel_generator = profile.kernel_generator().map(|v| v.iter().map(fmt_rational).collect());
        report.push(CheckEntry::new("zero_kernel_at_most_one", kdim <= 1, || {
            format!("zero kernel has dimension {kdim}")
        }));
        report.push(CheckEntry::new(
            "zero_kernel_matches_prediction",
            profile.matches_prediction()?,
            || format!("zero kernel {:?} is not inside the predicted span", profile.kernel),
        ));
        let drift = model.combination(&[("Delta2", 1), ("Delta1", -1)])?;
        report.push(CheckEntry::new(
            "closure_contains_torsion_drift",
            closure.subspace.contains(&drift)?,
            || "Delta2 - Delta1 is missing from the closure".into(),
        ));
        let expected = (p + q) as usize;
        report.push(CheckEntry::new("closure_dim_p_plus_q", dim == expected, || {
            format!("closure dimension {dim}, expected {expected}")
        }));
    }
    if family == Family::LotkaVolterra {
        report.push(CheckEntry::new("closure_dim_two", dim == 2, || {
            format!("closure dimension {dim}")
        }));
        report.push(CheckEntry::new(
            "orbit_has_p_members",
            report.orbit_size == Some(p as usize),
            || format!("orbit size {:?}, expected {p}", report.orbit_size),
        ));
    }

    if certified.certified {
        let window = annihilator_order_bounds(&certified, profile.as_ref())?;
        report.annihilator_order_low = Some(window.low);
        report.annihilator_order_high = Some(window.high);
        if family == Family::Parabolic {
            report.push(CheckEntry::new(
                "order_bound",
                window.respects_parabolic_bound(&model),
                || format!("order window [{}, {}] goes below p+q-1", window.low, window.high),
            ));
        }
    }
    Ok(report)
}

/// Parameter pairs a sweep visits, in output order.
pub fn sweep_pairs(family: Family, max_pq: u32) -> Vec<(u32, u32)> {
    match family {
        Family::LotkaVolterra => (1..=max_pq).map(|p| (p, 1)).collect(),
        _ => (1..=max_pq)
            .flat_map(|p| (1..=max_pq).map(move |q| (p, q)))
            .filter(|(p, q)| p.gcd(q) == 1)
            .collect(),
    }
}

pub struct SweepOutput {
    pub reports: Vec<Report>,
    pub summary: SweepSummary,
}

/// One report per pair (`model` for toy, `minimal` otherwise), computed on
/// `jobs` workers and returned in `(p, q)` order.
pub fn cmd_sweep(ctx: &Context, family: Family, max_pq: u32, jobs: Option<usize>) -> Result<SweepOutput, CliError> {
    let pairs = sweep_pairs(family, max_pq);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))?;
    let reports: Vec<Report> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(p, q)| match family {
                Family::Toy => cmd_model(ctx, family, p, Some(q), false),
                _ => cmd_minimal(ctx, family, p, Some(q), None, DEFAULT_CAP),
            })
            .collect::<Result<_, _>>()
    })?;
    let failed: Vec<(u32, u32)> = reports.iter().filter(|r| !r.all_pass).map(|r| (r.p, r.q)).collect();
    let summary = SweepSummary {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: format!("sweep --family {family} --max-pq {max_pq}"),
        family: family.name().into(),
        max_pq,
        pairs: reports.len(),
        passed: reports.len() - failed.len(),
        all_pass: failed.is_empty(),
        failed,
    };
    Ok(SweepOutput { reports, summary })
}

/// Parses `;`-separated solutions and builds their monic annihilator.
pub fn cmd_annihilate(solutions: &str) -> Result<AnnihilateReport, CliError> {
    let mut basis: Vec<SymbolicElement> = Vec::new();
    let mut offset = 0;
    for piece in solutions.split(';') {
        let e = parse(piece).map_err(|e| match e {
            CasError::Parse { position, message } => CasError::Parse {
                position: position + offset,
                message,
            },
            other => other,
        })?;
        basis.push(e);
        offset += piece.len() + 1;
    }
    let op = minimal_annihilator(&basis)?;
    let d = op.order();
    let coefficients: Vec<CoefficientEntry> = op
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| CoefficientEntry {
            derivative: d - 1 - k,
            value: c.to_string(),
            is_rational: op.is_reduced() && c.is_rational(),
            is_log_free: c.is_log_free(),
        })
        .collect();
    let checks: Vec<CheckEntry> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let image = apply_operator(&op, b);
            CheckEntry::new(&format!("annihilates_solution_{i}"), image.is_zero(), || {
                format!("L({b}) = {image}")
            })
        })
        .collect();
    let rendered: Vec<String> = basis.iter().map(ToString::to_string).collect();
    Ok(AnnihilateReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        command: format!("annihilate --solutions \"{}\"", rendered.join(";")),
        solutions: rendered,
        order: d,
        operator: format!("{op}"),
        reduced: op.is_reduced(),
        denominator: op.denominator().map(ToString::to_string),
        all_rational: op.all_rational(),
        all_pass: checks.iter().all(|c| c.pass),
        coefficients,
        checks,
    })
}
