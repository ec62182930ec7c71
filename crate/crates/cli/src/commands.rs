use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use veronese_core::geometry::{
    closed_form_curvature, closed_form_kahler_angle, coincidence_check, expected_total_action, gauss_bonnet,
    radius_squared, sample_surface, total_action, GridConfig, SurfaceSampleSet, BASIS_ID,
};
use veronese_core::model::ModelInstance;
use veronese_core::quadrature::QuadConfig;
use veronese_core::verify::{run_verification, CheckStatus, Suite, VerificationReport, VerifyOptions};

use crate::error::CliError;
use crate::{Common, Format, LevelArg, QuadratureArgs, SurfaceArgs, TableArgs, VerifyArgs, Which, TWO_S_CAP};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn instance(common: &Common) -> Result<ModelInstance, CliError> {
    if !(1..=TWO_S_CAP).contains(&common.two_s) {
        return Err(usage(format!("--two-s must be between 1 and {TWO_S_CAP}, got {}", common.two_s)));
    }
    ModelInstance::new(common.two_s).map_err(|e| usage(e.to_string()))
}

fn levels(inst: ModelInstance, k: LevelArg) -> Result<Vec<usize>, CliError> {
    match k {
        LevelArg::All => Ok(inst.levels().collect()),
        LevelArg::One(k) => {
            inst.check_level(k).map_err(|e| usage(e.to_string()))?;
            Ok(vec![k])
        }
    }
}

fn reject_format(cmd: &str, format: Format, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("`{cmd}` does not support --format {format:?}").to_lowercase()))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(CliError::Stdout)?;
            stdout.flush().map_err(CliError::Stdout)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    reject_format("verify", args.format, &[Format::Text, Format::Json])?;
    let inst = instance(&args.common)?;
    let k_filter = match args.k {
        LevelArg::All => None,
        LevelArg::One(_) => Some(levels(inst, args.k)?[0]),
    };
    let mut suites = Vec::new();
    for name in &args.suite {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>().map_err(usage)?);
        }
    }
    let report = run_verification(inst, &VerifyOptions { k_filter, suites })?;
    let text = match args.format {
        Format::Json => to_json(&report)?,
        _ => report_text(&report),
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(if report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn report_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &report.checks {
        let _ = writeln!(
            s,
            "{:<22} {:<10} {:<32} {:<6} {}",
            c.status.as_str(),
            c.suite,
            c.name,
            c.level,
            c.detail
        );
    }
    let _ = writeln!(
        s,
        "two_s={} checks={} pass={} fail={} skipped={} documented-discrepancy={} wall_time_ms={}",
        report.two_s,
        report.checks.len(),
        report.count(CheckStatus::ExactPass),
        report.count(CheckStatus::ExactFail),
        report.count(CheckStatus::Skipped),
        report.count(CheckStatus::DocumentedDiscrepancy),
        report.wall_time_ms
    );
    s
}

#[derive(Debug, Serialize)]
struct TableRow {
    k: usize,
    radius_squared: String,
    gauss_curvature: String,
    cos_kahler: String,
    action_coefficient: String,
    coincides_with: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct GeometryTable {
    two_s: usize,
    rows: Vec<TableRow>,
}

pub fn table(args: &TableArgs) -> Result<ExitCode, CliError> {
    let inst = instance(&args.common)?;
    let coincidences = coincidence_check(inst)?.coinciding;
    let mut rows = Vec::new();
    for k in inst.levels() {
        let r2 = radius_squared(inst, k)?.ok_or_else(|| CliError::Internal(format!("(X_{k}, X_{k}) is not constant")))?;
        let coincides_with = coincidences
            .iter()
            .filter_map(|&(a, b)| match (a == k, b == k) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        rows.push(TableRow {
            k,
            radius_squared: r2.to_string(),
            gauss_curvature: closed_form_curvature(inst, k).to_string(),
            cos_kahler: closed_form_kahler_angle(inst, k).to_string(),
            action_coefficient: inst.action_coefficient(k).to_string(),
            coincides_with,
        });
    }
    let table = GeometryTable {
        two_s: inst.two_s(),
        rows,
    };
    let text = match args.format {
        Format::Json => to_json(&table)?,
        Format::Csv => {
            let mut s = String::from("k,radius_squared,gauss_curvature,cos_kahler,action_coefficient,coincides_with\n");
            for r in &table.rows {
                let co: Vec<String> = r.coincides_with.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.k,
                    r.radius_squared,
                    r.gauss_curvature,
                    r.cos_kahler,
                    r.action_coefficient,
                    co.join(";")
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>3}  {:>10}  {:>10}  {:>10}  {:>12}  coincides\n",
                "k", "R^2", "K", "cos", "2(2sk+s-k^2)"
            );
            for r in &table.rows {
                let co: Vec<String> = r.coincides_with.iter().map(|l| format!("X_{l}")).collect();
                let _ = writeln!(
                    s,
                    "{:>3}  {:>10}  {:>10}  {:>10}  {:>12}  {}",
                    r.k,
                    r.radius_squared,
                    r.gauss_curvature,
                    r.cos_kahler,
                    r.action_coefficient,
                    if co.is_empty() { "-".to_string() } else { co.join(" ") }
                );
            }
            s
        }
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// Header line, column line and one row per sample, numbers as `{:.16e}`.
pub fn surface_csv(set: &SurfaceSampleSet) -> String {
    let m = set.samples.first().map_or(0, |s| s.coords.len());
    let mut s = format!(
        "# two_s={} k={} basis={} radius_sq={}\nxi1,xi2",
        set.two_s, set.k, BASIS_ID, set.radius_squared
    );
    for a in 1..=m {
        let _ = write!(s, ",c_{a}");
    }
    s.push_str(",metric_density\n");
    for row in &set.samples {
        let _ = write!(s, "{:.16e},{:.16e}", row.xi1, row.xi2);
        for c in &row.coords {
            let _ = write!(s, ",{c:.16e}");
        }
        let _ = writeln!(s, ",{:.16e}", row.metric_density);
    }
    s
}

pub fn surface(args: &SurfaceArgs) -> Result<ExitCode, CliError> {
    reject_format("surface", args.format, &[Format::Csv, Format::Json])?;
    let inst = instance(&args.common)?;
    let LevelArg::One(k) = args.k else {
        return Err(usage("surface needs a single level --k <int>"));
    };
    levels(inst, args.k)?;
    if args.grid < 2 {
        return Err(usage(format!("--grid must be at least 2, got {}", args.grid)));
    }
    if !(args.radius > 0.0 && args.radius.is_finite()) {
        return Err(usage(format!("--radius must be positive, got {}", args.radius)));
    }
    let grid = GridConfig {
        resolution: args.grid,
        radius_bound: args.radius,
    };
    let set = sample_surface(inst, k, grid)?;
    let text = match args.format {
        Format::Json => to_json(&set)?,
        _ => surface_csv(&set),
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize)]
struct QuadratureRecord {
    which: &'static str,
    two_s: usize,
    k: usize,
    value: f64,
    expected: f64,
    abs_error: f64,
    error_estimate: f64,
}

pub fn quadrature(args: &QuadratureArgs) -> Result<ExitCode, CliError> {
    reject_format("quadrature", args.format, &[Format::Text, Format::Json])?;
    let inst = instance(&args.common)?;
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let cfg = QuadConfig {
        max_evaluations: args.max_evaluations,
        ..QuadConfig::with_tolerance(args.tol)
    };
    let mut records = Vec::new();
    for k in levels(inst, args.k)? {
        let (name, value, expected, error_estimate) = match args.which {
            Which::Action => {
                let r = total_action(inst, k, &cfg)?;
                ("action", r.value, expected_total_action(inst, k), r.error_estimate)
            }
            Which::GaussBonnet => {
                let r = gauss_bonnet(inst, k, &cfg)?;
                ("gauss-bonnet", r.value, 2.0, r.error_estimate)
            }
        };
        records.push(QuadratureRecord {
            which: name,
            two_s: inst.two_s(),
            k,
            value,
            expected,
            abs_error: (value - expected).abs(),
            error_estimate,
        });
    }
    let text = match args.format {
        Format::Json => to_json(&records)?,
        _ => {
            let mut s = String::new();
            for r in &records {
                let _ = writeln!(
                    s,
                    "{} two_s={} k={} value={:.15} expected={:.15} abs_error={:.3e} error_estimate={:.3e}",
                    r.which, r.two_s, r.k, r.value, r.expected, r.abs_error, r.error_estimate
                );
            }
            s
        }
    };
    emit(args.common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}
