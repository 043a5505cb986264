//! Command-line front end: weight tables, associated-function tables, Lambert
//! evaluations, phase-space transforms, membership fits, and the verification
//! suites.
//!
//! Exit codes: 0 success, 1 verification-suite failure, 2 invalid flags /
//! schema / I/O, 3 lattice misalignment in fast transform mode.

// Flag guards use the negated form on purpose: `!(x > 0.0)` rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use extgev::associated::{fit_sandwich, log_grid, sandwich_envelope, AssociatedFunction};
use extgev::lambertw::lambert_w;
use extgev::report::{csv_line, format_f64, to_json};
use extgev::testfn::{characterize, AnalyticFunction};
use extgev::tfr::{
    kernels, transform, Axis, Mode, PhaseSpaceGrid, QuadratureMeta, SampledSignal, Source,
    TfrError, TfrResult,
};
use extgev::verify::{self, VerifyConfig};
use extgev::weights::{check_conditions, LogWeightTable, WeightParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "extgev", version, about = "Extended Gevrey weight toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight-sequence table and condition diagnostics.
    Weights(WeightsArgs),
    /// Associated-function table with envelope columns.
    Assoc(AssocArgs),
    /// Lambert W evaluations with residual certificates.
    Lambert(LambertArgs),
    /// Phase-space transform of a signal/window pair.
    Tfr(TfrArgs),
    /// Membership-parameter fit for an analytic family.
    Fit(FitArgs),
    /// Run named verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    sigma: f64,
    #[arg(long, default_value_t = 200)]
    pmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct AssocArgs {
    #[arg(long)]
    tau: f64,
    #[arg(long)]
    sigma: f64,
    #[arg(long, default_value_t = 2.0)]
    t_min: f64,
    #[arg(long, default_value_t = 1e6)]
    t_max: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LambertArgs {
    /// Comma-separated evaluation points.
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,
    /// Log-spaced grid lo:hi:count, appended to --x.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct TfrArgs {
    /// Transform kind: grossmann-royer | stft | wigner | ambiguity.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    signal: PathBuf,
    #[arg(long)]
    window: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Fast)]
    mode: ModeArg,
    #[arg(long)]
    x_center: Option<f64>,
    #[arg(long)]
    x_step: Option<f64>,
    #[arg(long)]
    x_count: Option<usize>,
    #[arg(long)]
    omega_center: Option<f64>,
    #[arg(long)]
    omega_step: Option<f64>,
    #[arg(long)]
    omega_count: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Reference,
    Fast,
}

#[derive(Args)]
struct FitArgs {
    /// Analytic family: gaussian | hermite | modulated-gaussian.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 2.0)]
    sigma: f64,
    #[arg(long, default_value_t = 12)]
    max_order: u32,
    /// Gaussian width parameter.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    width: f64,
    /// Hermite index.
    #[arg(long, default_value_t = 0)]
    index: u32,
    #[arg(long, default_value_t = 0.0)]
    shift: f64,
    #[arg(long, default_value_t = 0.0)]
    modulation: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sup-seminorm table as CSV here.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id: weights | lambert | associated | membership | tfr | all.
    #[arg(long)]
    suite: String,
    /// Write the full JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Failures carrying their process exit code.
enum AppError {
    /// Bad flags, schema violations, I/O: exit 2.
    Invalid(String),
    /// Lattice misalignment in fast mode: exit 3.
    Misalignment(String),
    /// Verification suite failed: exit 1.
    SuiteFailed,
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Invalid(_) => 2,
            AppError::Misalignment(_) => 3,
            AppError::SuiteFailed => 1,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> AppError {
    AppError::Invalid(e.to_string())
}

fn tfr_error(e: TfrError) -> AppError {
    match e {
        TfrError::OffLattice(_) | TfrError::FrequencyOffLattice(_) => {
            AppError::Misalignment(e.to_string())
        }
        other => AppError::Invalid(other.to_string()),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), AppError> {
    match out {
        Some(path) => fs::write(path, content).map_err(invalid),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{content}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(invalid),
            }
        }
    }
}

/// On-disk signal schema: axis plus `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct SignalFile {
    axis: Axis,
    values: Vec<[f64; 2]>,
}

fn load_signal(path: &Path) -> Result<SampledSignal, AppError> {
    let raw = fs::read_to_string(path)
        .map_err(|e| AppError::Invalid(format!("{}: {e}", path.display())))?;
    let file: SignalFile = serde_json::from_str(&raw)
        .map_err(|e| AppError::Invalid(format!("{}: {e}", path.display())))?;
    let axis = Axis::new(file.axis.center, file.axis.step, file.axis.count).map_err(invalid)?;
    let values = file.values.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    SampledSignal::new(axis, values).map_err(invalid)
}

/// On-disk transform result: both axes listed, values x-major.
#[derive(Serialize)]
struct TfrFile {
    kind: kernels::TfrKind,
    grid: PhaseSpaceGrid,
    quadrature: QuadratureMeta,
    values: Vec<[f64; 2]>,
}

fn cmd_weights(args: &WeightsArgs) -> Result<(), AppError> {
    let params = WeightParams::new(args.tau, args.sigma).map_err(invalid)?;
    let report = check_conditions(params, args.pmax).map_err(invalid)?;
    let table = LogWeightTable::new(params, args.pmax).map_err(invalid)?;
    match args.format {
        Format::Csv => {
            let mut lines = vec!["p,log_m,log_step_ratio_bound".to_string()];
            for p in 0..=table.pmax() {
                let bound = if p >= 1 {
                    format_f64(table.log_step_ratio_bound(p))
                } else {
                    String::new()
                };
                lines.push(csv_line(&[p.to_string(), format_f64(table.log_m(p)), bound]));
            }
            emit(&args.out, &lines.join("\n"))
        }
        Format::Json => {
            #[derive(Serialize)]
            struct WeightsFile<'a> {
                params: WeightParams,
                log_m: &'a [f64],
                conditions: &'a extgev::weights::ConditionReport,
            }
            emit(
                &args.out,
                &to_json(&WeightsFile {
                    params,
                    log_m: table.as_slice(),
                    conditions: &report,
                }),
            )
        }
    }
}

fn cmd_assoc(args: &AssocArgs) -> Result<(), AppError> {
    let params = WeightParams::new(args.tau, args.sigma).map_err(invalid)?;
    if !(args.t_min > 1.0) || !(args.t_max > args.t_min) || args.points < 2 {
        return Err(AppError::Invalid(
            "need 1 < t-min < t-max and at least 2 points".into(),
        ));
    }
    let grid = log_grid(args.t_min, args.t_max, args.points);
    let fit = fit_sandwich(params, &grid).map_err(invalid)?;
    let assoc = AssociatedFunction::new(params);
    #[derive(Serialize)]
    struct Row {
        t: f64,
        value: f64,
        argmax: usize,
        lower_envelope: f64,
        upper_envelope: f64,
    }
    let rows: Vec<Row> = grid
        .iter()
        .map(|&t| {
            let v = assoc.value_log_arg(t.ln());
            let env = sandwich_envelope(t, params);
            Row {
                t,
                value: v.value,
                argmax: v.argmax,
                lower_envelope: env / fit.a - fit.b,
                upper_envelope: fit.a * env + fit.b,
            }
        })
        .collect();
    match args.format {
        Format::Csv => {
            let mut lines = vec!["t,value,argmax,lower_envelope,upper_envelope".to_string()];
            for r in &rows {
                lines.push(csv_line(&[
                    format_f64(r.t),
                    format_f64(r.value),
                    r.argmax.to_string(),
                    format_f64(r.lower_envelope),
                    format_f64(r.upper_envelope),
                ]));
            }
            emit(&args.out, &lines.join("\n"))
        }
        Format::Json => {
            #[derive(Serialize)]
            struct AssocFile {
                params: WeightParams,
                envelope_a: f64,
                envelope_b: f64,
                rows: Vec<Row>,
            }
            emit(
                &args.out,
                &to_json(&AssocFile { params, envelope_a: fit.a, envelope_b: fit.b, rows }),
            )
        }
    }
}

fn cmd_lambert(args: &LambertArgs) -> Result<(), AppError> {
    let mut xs = args.x.clone();
    if let Some(spec) = &args.grid {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(AppError::Invalid("grid must be lo:hi:count".into()));
        }
        let lo: f64 = parts[0].parse().map_err(invalid)?;
        let hi: f64 = parts[1].parse().map_err(invalid)?;
        let n: usize = parts[2].parse().map_err(invalid)?;
        if !(lo > 0.0) || !(hi > lo) || n < 2 {
            return Err(AppError::Invalid("grid needs 0 < lo < hi and count >= 2".into()));
        }
        xs.extend(log_grid(lo, hi, n));
    }
    if xs.is_empty() {
        return Err(AppError::Invalid("no evaluation points; pass --x or --grid".into()));
    }
    let evals: Vec<_> = xs
        .iter()
        .map(|&x| lambert_w(x).map_err(invalid))
        .collect::<Result<_, _>>()?;
    match args.format {
        Format::Csv => {
            let mut lines = vec!["x,w,residual,iterations".to_string()];
            for e in &evals {
                lines.push(csv_line(&[
                    format_f64(e.x),
                    format_f64(e.w),
                    format_f64(e.residual),
                    e.iterations.to_string(),
                ]));
            }
            emit(&args.out, &lines.join("\n"))
        }
        Format::Json => emit(&args.out, &to_json(&evals)),
    }
}

fn cmd_tfr(args: &TfrArgs) -> Result<(), AppError> {
    let kernel = kernels::kernel_by_name(&args.kind).map_err(invalid)?;
    let f = Source::Sampled(load_signal(&args.signal)?);
    let g = Source::Sampled(load_signal(&args.window)?);
    let default = kernel.default_grid(&f, &g);
    let x = Axis::new(
        args.x_center.unwrap_or(default.x.center),
        args.x_step.unwrap_or(default.x.step),
        args.x_count.unwrap_or(default.x.count),
    )
    .map_err(invalid)?;
    let omega = Axis::new(
        args.omega_center.unwrap_or(default.omega.center),
        args.omega_step.unwrap_or(default.omega.step),
        args.omega_count.unwrap_or(default.omega.count),
    )
    .map_err(invalid)?;
    let grid = PhaseSpaceGrid { x, omega };
    let mode = match args.mode {
        ModeArg::Reference => Mode::Reference,
        ModeArg::Fast => Mode::Fast,
    };
    let result: TfrResult = transform(kernel.kind(), &f, &g, &grid, mode).map_err(tfr_error)?;
    match args.format {
        Format::Json => {
            let file = TfrFile {
                kind: result.kind,
                grid: result.grid,
                quadrature: result.quadrature,
                values: result.values.iter().map(|v| [v.re, v.im]).collect(),
            };
            emit(&args.out, &to_json(&file))
        }
        Format::Csv => {
            let mut lines = vec!["x,omega,re,im".to_string()];
            for (ix, xv) in result.grid.x.points().enumerate() {
                for (iw, wv) in result.grid.omega.points().enumerate() {
                    let v = result.value(ix, iw);
                    lines.push(csv_line(&[
                        format_f64(xv),
                        format_f64(wv),
                        format_f64(v.re),
                        format_f64(v.im),
                    ]));
                }
            }
            emit(&args.out, &lines.join("\n"))
        }
    }
}

fn cmd_fit(args: &FitArgs) -> Result<(), AppError> {
    let phi = match args.family.as_str() {
        "gaussian" => AnalyticFunction::gaussian(args.width).map_err(invalid)?,
        "hermite" => AnalyticFunction::hermite(args.index),
        "modulated-gaussian" => {
            AnalyticFunction::modulated_translated_gaussian(args.width, args.shift, args.modulation)
                .map_err(invalid)?
        }
        other => return Err(AppError::Invalid(format!("unknown family: {other}"))),
    };
    if !(args.sigma > 1.0) {
        return Err(AppError::Invalid("sigma must exceed 1".into()));
    }
    let report = characterize(&phi, args.sigma, args.max_order).map_err(invalid)?;
    if let Some(path) = &args.table {
        let table = extgev::testfn::build_table(
            &phi,
            args.max_order,
            extgev::testfn::SeminormKind::Sup,
        )
        .map_err(invalid)?;
        let mut lines = vec!["alpha,beta,value".to_string()];
        for e in &table.entries {
            lines.push(csv_line(&[
                e.alpha[0].to_string(),
                e.beta[0].to_string(),
                format_f64(e.value),
            ]));
        }
        fs::write(path, lines.join("\n")).map_err(invalid)?;
    }
    emit(&args.out, &to_json(&report))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), AppError> {
    let cfg = VerifyConfig {
        seed: args.seed.unwrap_or(VerifyConfig::default().seed),
    };
    let report = if args.suite == "all" {
        verify::run_all(&cfg)
    } else {
        let suite = verify::suite_by_id(&args.suite).ok_or_else(|| {
            AppError::Invalid(format!(
                "unknown suite: {} (expected one of {:?} or all)",
                args.suite,
                verify::suite_ids()
            ))
        })?;
        extgev::report::VerificationReport::new(cfg.seed, vec![suite.run(&cfg)])
    };
    for suite in &report.suites {
        for r in &suite.records {
            let status = if r.pass { "pass" } else { "FAIL" };
            eprintln!("[{status}] {}/{} [{}] ({})", suite.suite, r.name, r.anchor, r.inputs);
        }
    }
    if let Some(path) = &args.json {
        fs::write(path, to_json(&report)).map_err(invalid)?;
    }
    if report.pass {
        eprintln!("all checks passed");
        Ok(())
    } else {
        Err(AppError::SuiteFailed)
    }
}

fn run() -> Result<(), AppError> {
    if let Ok(threads) = std::env::var("EXTGEV_THREADS") {
        let n: usize = threads
            .parse()
            .map_err(|_| AppError::Invalid("EXTGEV_THREADS must be an integer".into()))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    match Cli::parse().command {
        Command::Weights(args) => cmd_weights(&args),
        Command::Assoc(args) => cmd_assoc(&args),
        Command::Lambert(args) => cmd_lambert(&args),
        Command::Tfr(args) => cmd_tfr(&args),
        Command::Fit(args) => cmd_fit(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                AppError::Invalid(msg) | AppError::Misalignment(msg) => eprintln!("error: {msg}"),
                AppError::SuiteFailed => eprintln!("error: verification failed"),
            }
            ExitCode::from(e.code())
        }
    }
}
