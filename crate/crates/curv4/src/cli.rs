//! Command-line frontend with CI-friendly exit codes: `0` when every
//! emitted check passes, `1` when any check fails, `2` on malformed input
//! (unknown model, unreadable or invalid chart file, bad flags).
//!
//! Subcommands: `catalog`, `verify <model>`, `classify <model|chart>`,
//! `fuzz --trials N --seed S`, `chart <file>`. Rational mode (`--precision
//! rational`) evaluates catalog checks in exact arithmetic; chart
//! processing always runs in floating point since chart samples are
//! floating-point data. The `CURV4_THREADS` environment variable caps the
//! worker count (0 or unset picks the automatic default).

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::chart_geometry::{
    check_prop41_with, curvature_from_chart, fit_growth_with, ChartCurvature, ChartError,
    MetricChart, DEFAULT_A_CAP,
};
use crate::curv_algebra::{block_inner, spectrum3, CurvDecomp, Duality};
use crate::pinching::{
    check_catino, check_remark14, check_theorem1, fuzz_inequalities, remark14_ratio, PinchError,
    PinchReport,
};
use crate::report::{CheckRecord, Precision, ReportDoc, ReportValue};
use crate::scalar::{Exact, Scalar};
use crate::soliton_catalog::{
    model_decomposition, potential_asymptotics, sample_points, verify_hamilton_identities,
    weitzenbock_residual, AsymptoticsOptions, CatalogError, ModelName, ALL_MODELS,
};

/// Residual tolerance for identity checks in floating mode; rational mode
/// demands exact zeros.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Floating,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DualityArg {
    Plus,
    Minus,
    Both,
}

impl DualityArg {
    fn selected(self) -> Vec<Duality> {
        match self {
            DualityArg::Plus => vec![Duality::SelfDual],
            DualityArg::Minus => vec![Duality::AntiSelfDual],
            DualityArg::Both => vec![Duality::SelfDual, Duality::AntiSelfDual],
        }
    }
}

/// Four-dimensional curvature algebra workbench.
#[derive(Debug, Parser)]
#[command(name = "curv4", version, about)]
pub struct Cli {
    /// Scalar arithmetic for catalog checks.
    #[arg(long, global = true, value_enum, default_value_t = PrecisionArg::Floating)]
    pub precision: PrecisionArg,
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog models with their normalization data.
    Catalog,
    /// Run the soliton identity suite on a catalog model.
    Verify {
        /// Model id (see `catalog`).
        model: String,
        /// Sample points for the pointwise identities.
        #[arg(long, default_value_t = 120)]
        points: usize,
        /// Seed for the deterministic point sampler.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Evaluate the pinching conditions on a model or chart file.
    Classify {
        /// Model id or path to a chart file.
        target: String,
        #[arg(long, value_enum, default_value_t = DualityArg::Both)]
        duality: DualityArg,
        /// Pinching constant for the gamma-condition; the check is
        /// skipped when absent.
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Fuzz the sharp inequalities over random inputs.
    Fuzz {
        #[arg(long)]
        trials: u64,
        /// Seed (required: runs must be reproducible).
        #[arg(long)]
        seed: u64,
    },
    /// Process a chart file: curvature, growth fit, quotient check.
    Chart {
        file: PathBuf,
        /// Cap on the additive constant of the growth fit.
        #[arg(long, default_value_t = DEFAULT_A_CAP)]
        a_max: f64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Pinch(#[from] PinchError),
    #[error("cannot read '{path}': {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("'{0}' is neither a catalog model nor a readable chart file")]
    UnknownTarget(String),
}

/// Runs a parsed command line: renders the report to `--out` or stdout and
/// returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(doc) => {
            let rendered = match cli.format {
                FormatArg::Text => doc.to_text(),
                FormatArg::Structured => doc.to_json(),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{rendered}"),
            }
            if doc.all_pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Builds the report for a parsed command line without rendering it.
pub fn execute(cli: &Cli) -> Result<ReportDoc, CliError> {
    match &cli.command {
        Command::Catalog => Ok(catalog_report()),
        Command::Verify {
            model,
            points,
            seed,
        } => {
            let name = ModelName::parse(model)?;
            match cli.precision {
                PrecisionArg::Floating => verify_report::<f64>(name, *points, *seed),
                PrecisionArg::Rational => verify_report::<Exact>(name, *points, *seed),
            }
        }
        Command::Classify {
            target,
            duality,
            gamma,
        } => classify_dispatch(cli, target, *duality, *gamma),
        Command::Fuzz { trials, seed } => fuzz_report(*trials, *seed),
        Command::Chart { file, a_max } => {
            let chart = load_chart(file)?;
            chart_report(&chart, *a_max)
        }
    }
}

fn precision_of<S: Scalar>() -> Precision {
    if S::EXACT {
        Precision::Rational
    } else {
        Precision::Floating
    }
}

fn catalog_report() -> ReportDoc {
    let mut doc = ReportDoc::new("catalog", Precision::Floating);
    doc.set_meta("models", ReportValue::Int(ALL_MODELS.len() as i64));
    for name in ALL_MODELS {
        doc.set_meta(
            format!("model.{}", name.id()),
            ReportValue::Text(format!(
                "{}{}",
                name.summary(),
                if name.is_compact() { " [compact]" } else { "" }
            )),
        );
    }
    doc
}

fn identity_tol<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::from_f64(IDENTITY_TOL)
    }
}

fn decomposition_meta<S: Scalar>(doc: &mut ReportDoc, d: &CurvDecomp<S>) {
    doc.set_meta("scalar_curvature", ReportValue::scalar(&d.scalar));
    doc.set_meta(
        "traceless_ricci_norm2",
        ReportValue::scalar(&d.traceless_ricci.norm2()),
    );
    for (label, block) in [("plus", &d.weyl_plus), ("minus", &d.weyl_minus)] {
        doc.set_meta(
            format!("weyl_{label}_norm2"),
            ReportValue::scalar(&block.norm2()),
        );
        doc.set_meta(
            format!("weyl_{label}_det"),
            ReportValue::scalar(&block.det()),
        );
        let spec = spectrum3(block);
        doc.set_meta(
            format!("weyl_{label}_spectrum"),
            ReportValue::Text(format!(
                "[{}, {}, {}]",
                spec.w1.display_compact(),
                spec.w2.display_compact(),
                spec.w3.display_compact()
            )),
        );
    }
    let kn = crate::curv_algebra::kulkarni_nomizu(&d.traceless_ricci, &d.traceless_ricci);
    let basis = crate::curv_algebra::Lambda2Basis::standard(d.full_weyl.orientation());
    if let Ok(op) = crate::curv_algebra::as_lambda2_operator(&kn, &basis) {
        for (label, duality, block) in [
            ("plus", Duality::SelfDual, &d.weyl_plus),
            ("minus", Duality::AntiSelfDual, &d.weyl_minus),
        ] {
            let kn_block = op.diag_block(duality, crate::curv_algebra::BlockKind::KnProduct);
            if let Ok(inner) = block_inner(&kn_block, block) {
                doc.set_meta(
                    format!("kn_weyl_inner_{label}"),
                    ReportValue::scalar(&inner),
                );
            }
        }
    }
}

fn verify_report<S: Scalar>(
    name: ModelName,
    points: usize,
    seed: u64,
) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new(format!("verify {}", name.id()), precision_of::<S>());
    doc.set_meta("model", ReportValue::Text(name.id().to_string()));
    doc.set_meta("points", ReportValue::Int(points as i64));
    doc.set_meta("seed", ReportValue::Int(seed as i64));

    let tol = identity_tol::<S>();
    let pts = sample_points::<S>(name, points, seed);
    for r in verify_hamilton_identities(name, &pts)? {
        doc.push(
            CheckRecord::from_residual(r.id.label(), &r.max_residual, &tol)
                .with_note(format!("{} points", r.points_checked)),
        );
    }
    for duality in [Duality::SelfDual, Duality::AntiSelfDual] {
        let r = weitzenbock_residual::<S>(name, duality);
        doc.push(CheckRecord::from_residual(
            r.id.label(),
            &r.max_residual,
            &tol,
        ));
    }
    if !name.is_compact() {
        let report = potential_asymptotics(name, &AsymptoticsOptions::default())?;
        let mut record = CheckRecord {
            id: "potential_asymptotics".into(),
            lhs: ReportValue::Float(report.c_found.unwrap_or(f64::NAN)),
            rhs: ReportValue::Text("finite envelope constant".into()),
            margin: ReportValue::Float(0.0),
            tolerance: ReportValue::Float(0.0),
            pass: report.holds,
            note: None,
        };
        record = record.with_note(format!(
            "{} samples with r >= {}",
            report.samples, report.r0
        ));
        doc.push(record);
    }

    let d = model_decomposition::<S>(name);
    decomposition_meta(&mut doc, &d);
    Ok(doc)
}

fn pinch_records<S: Scalar>(
    d: &CurvDecomp<S>,
    dualities: &[Duality],
    gamma: Option<f64>,
) -> Vec<PinchReport<S>> {
    let mut reports = Vec::new();
    for &duality in dualities {
        reports.push(check_theorem1(d, duality));
    }
    // the flag converts exactly in both modes (every finite float is rational)
    let gamma_s = gamma.map(S::from_f64);
    let (c12, c13) = check_catino(d, &gamma_s.clone().unwrap_or_else(S::one));
    reports.push(c12);
    if gamma_s.is_some() {
        reports.push(c13);
    }
    reports.push(check_remark14(d));
    reports
}

fn classify_dispatch(
    cli: &Cli,
    target: &str,
    duality: DualityArg,
    gamma: Option<f64>,
) -> Result<ReportDoc, CliError> {
    if let Ok(name) = ModelName::parse(target) {
        return match cli.precision {
            PrecisionArg::Floating => Ok(classify_model::<f64>(name, duality, gamma)),
            PrecisionArg::Rational => Ok(classify_model::<Exact>(name, duality, gamma)),
        };
    }
    let path = PathBuf::from(target);
    if path.exists() {
        let chart = load_chart(&path)?;
        return classify_chart(&chart, duality, gamma);
    }
    Err(CliError::UnknownTarget(target.to_string()))
}

fn classify_model<S: Scalar>(
    name: ModelName,
    duality: DualityArg,
    gamma: Option<f64>,
) -> ReportDoc {
    let mut doc = ReportDoc::new(format!("classify {}", name.id()), precision_of::<S>());
    doc.set_meta("model", ReportValue::Text(name.id().to_string()));
    let d = model_decomposition::<S>(name);
    for report in pinch_records(&d, &duality.selected(), gamma) {
        doc.push(CheckRecord::from_pinch(&report));
    }
    if let Some(ratio) = remark14_ratio(&d) {
        doc.set_meta("remark14_ratio", ReportValue::scalar(&ratio));
    }
    decomposition_meta(&mut doc, &d);
    doc
}

fn classify_chart(
    chart: &MetricChart,
    duality: DualityArg,
    gamma: Option<f64>,
) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("classify chart", Precision::Floating);
    let curv = curvature_from_chart(chart)?;
    let dualities = duality.selected();

    // aggregate each condition over the interior: report the worst-margin
    // node and pass only if every node passes
    let mut agg: BTreeMap<String, (PinchReport<f64>, bool)> = BTreeMap::new();
    for &idx in &curv.interior {
        let Some(d) = curv.decompose_at(chart, idx) else {
            continue;
        };
        for report in pinch_records(&d, &dualities, gamma) {
            let key = report.id.label().to_string();
            match agg.get_mut(&key) {
                None => {
                    let pass = report.satisfied;
                    agg.insert(key, (report, pass));
                }
                Some((worst, all_pass)) => {
                    *all_pass = *all_pass && report.satisfied;
                    if report.margin < worst.margin {
                        *worst = report;
                    }
                }
            }
        }
    }
    doc.set_meta("nodes", ReportValue::Int(curv.interior.len() as i64));
    for (_, (mut report, all_pass)) in agg {
        report.satisfied = all_pass;
        doc.push(CheckRecord::from_pinch(&report).with_note("worst node over interior"));
    }
    Ok(doc)
}

fn fuzz_report(trials: u64, seed: u64) -> Result<ReportDoc, CliError> {
    let summary = fuzz_inequalities(trials, seed)?;
    let mut doc = ReportDoc::new("fuzz", Precision::Floating);
    doc.set_meta("trials", ReportValue::Int(summary.trials as i64));
    doc.set_meta("seed", ReportValue::Int(summary.seed as i64));
    doc.set_meta(
        "near_equality_hits",
        ReportValue::Int(summary.near_equality_hits as i64),
    );
    doc.set_meta("worst_margin", ReportValue::Float(summary.worst_margin));
    doc.push(CheckRecord {
        id: "fuzz_no_violations".into(),
        lhs: ReportValue::Int(summary.violations as i64),
        rhs: ReportValue::Int(0),
        margin: ReportValue::Float(summary.worst_margin),
        tolerance: ReportValue::Float(crate::pinching::FUZZ_VIOLATION_TOL),
        pass: summary.violations == 0,
        note: None,
    });
    Ok(doc)
}

fn load_chart(path: &PathBuf) -> Result<MetricChart, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(MetricChart::parse(&text)?)
}

fn chart_report(chart: &MetricChart, a_max: f64) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("chart", Precision::Floating);
    let curv: ChartCurvature = curvature_from_chart(chart)?;
    doc.set_meta("nodes_total", ReportValue::Int(chart.node_count() as i64));
    doc.set_meta(
        "nodes_interior",
        ReportValue::Int(curv.interior.len() as i64),
    );
    let max_r = curv
        .interior
        .iter()
        .map(|&i| curv.scalar[i])
        .fold(f64::NEG_INFINITY, f64::max);
    let max_sym = curv
        .interior
        .iter()
        .map(|&i| curv.symmetry_residual[i])
        .fold(0.0, f64::max);
    doc.set_meta("max_scalar_curvature", ReportValue::Float(max_r));
    doc.set_meta("max_symmetry_residual", ReportValue::Float(max_sym));

    if chart.has_potential() {
        let fit = fit_growth_with(chart, &curv, a_max)?;
        doc.set_meta("epsilon_hat", ReportValue::Float(fit.epsilon_hat));
        doc.set_meta("a_hat", ReportValue::Float(fit.a_hat));
        doc.set_meta("a_cap", ReportValue::Float(fit.a_cap));
        doc.set_meta("c0_hat", ReportValue::Float(fit.c0_hat));
        doc.set_meta("c1_hat", ReportValue::Float(fit.c1_hat));
        doc.set_meta("c2_hat", ReportValue::Float(fit.c2_hat));
        doc.set_meta("support_fraction", ReportValue::Float(fit.support_fraction));
        doc.push(CheckRecord {
            id: "fit_growth_feasible".into(),
            lhs: ReportValue::Float(fit.epsilon_hat),
            rhs: ReportValue::Float(1.0),
            margin: ReportValue::Float(1.0 - fit.epsilon_hat),
            tolerance: ReportValue::Float(0.0),
            pass: fit.feasible,
            note: None,
        });
        let quotient = check_prop41_with(chart, &curv)?;
        doc.set_meta("quotient_sup_ratio", ReportValue::Float(quotient.sup_ratio));
        doc.set_meta(
            "quotient_nodes_included",
            ReportValue::Int(quotient.nodes_included as i64),
        );
        doc.set_meta(
            "quotient_nodes_excluded",
            ReportValue::Int(quotient.nodes_excluded as i64),
        );
    } else {
        doc.set_meta(
            "note",
            ReportValue::Text("no potential samples: growth fit and quotient skipped".into()),
        );
    }
    Ok(doc)
}
