//! Command-line front end for the `bracketflow` library.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! process exit code, so the binary and the integration tests share one path.

mod parse;
mod svg;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bracketflow::curvature::{curvature_profile, parabolic};
use bracketflow::flow::{integrate_bracket, rg2_rhs, write_trajectory_csv};
use bracketflow::normalized::{m_fixed_points, vector_field_grid, Bounds};
use bracketflow::soliton::{
    enumerate_analytic, newton_sweep, paper_table_check, AuditRow, FixedPointRecord, Grid, Verdict,
    CLUSTER_RADIUS,
};
use bracketflow::{Error, FlowParameters, Integrator, StructureConstants, Termination};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    /// Only valid for `portrait`.
    Svg,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Rk4,
    Rkf45,
}

#[derive(Debug, Parser)]
#[command(
    name = "bracketflow",
    version,
    about = "RG-2 bracket flow on 3D unimodular Lie groups"
)]
pub struct Cli {
    /// Output format for stdout
    #[arg(long, global = true, value_enum, env = "BRACKETFLOW_FORMAT")]
    pub format: Option<OutputFormat>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Milnor classification of the Lie algebra
    Classify {
        /// Structure constants a1,a2,a3 (decimals or p/q)
        #[arg(long, value_parser = parse::constants, allow_hyphen_values = true)]
        constants: [f64; 3],
    },
    /// Connection, sectional, Ricci, Einstein and Rm² data of the metric
    Curvature {
        #[arg(long, value_parser = parse::constants, allow_hyphen_values = true)]
        constants: [f64; 3],
        /// Coupling; adds the parabolicity check and the flow velocity
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        alpha: Option<f64>,
    },
    /// Integrate the bracket flow
    Evolve {
        #[arg(long, value_parser = parse::constants, allow_hyphen_values = true)]
        constants: [f64; 3],
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        alpha: f64,
        /// End time; negative integrates backward
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        t_end: f64,
        #[arg(long, value_enum, default_value = "rkf45")]
        method: Method,
        /// Fixed step for rk4
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true, conflicts_with = "tol")]
        dt: Option<f64>,
        /// Tolerance for rkf45
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        tol: Option<f64>,
        /// Write the trajectory CSV here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Steady solitons: closed forms, optionally cross-checked by a Newton sweep
    Solitons {
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        alpha: f64,
        /// Newton seed grid LO:HI:STEP on each axis
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        /// Normalized residual accepted from Newton
        #[arg(long, value_parser = parse::number, default_value = "1e-10")]
        tol: f64,
    },
    /// Substitute the published soliton table into the flow
    PaperCheck {
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true, default_value = "1")]
        alpha_pos: f64,
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true, default_value = "-1")]
        alpha_neg: f64,
    },
    /// Sample the normalized (m2, m3) field to an SVG or CSV file
    Portrait {
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        beta: f64,
        /// x0,x1,y0,y1
        #[arg(long, value_parser = parse::bounds, allow_hyphen_values = true)]
        bounds: [f64; 4],
        /// Samples per axis
        #[arg(long)]
        n: usize,
        /// Output file, .svg or .csv
        #[arg(long)]
        out: PathBuf,
    },
    /// Closed-form fixed points of the normalized (m2, m3) system
    NormalizedFixedPoints {
        #[arg(long, value_parser = parse::number, allow_hyphen_values = true)]
        beta: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage { flag: String, reason: String },
    Failure(String),
}

impl CliError {
    fn usage(flag: &str, reason: impl Into<String>) -> Self {
        CliError::Usage {
            flag: flag.to_string(),
            reason: reason.into(),
        }
    }

    fn code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage { flag, reason } => {
                write!(f, "error: invalid value for '{flag}': {reason}")
            }
            CliError::Failure(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { name, reason } => {
                CliError::usage(&format!("--{}", name.replace('_', "-")), reason)
            }
            Error::NonFinite(..) => CliError::usage("--constants", e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let format = cli.format;
    if format == Some(OutputFormat::Svg) && !matches!(cli.command, Command::Portrait { .. }) {
        return Err(CliError::usage(
            "--format",
            "svg is only available for portrait",
        ));
    }
    match &cli.command {
        Command::Classify { constants } => {
            classify(*constants, format.unwrap_or(OutputFormat::Human), out)
        }
        Command::Curvature { constants, alpha } => curvature(
            *constants,
            *alpha,
            format.unwrap_or(OutputFormat::Json),
            out,
        ),
        Command::Evolve {
            constants,
            alpha,
            t_end,
            method,
            dt,
            tol,
            out: path,
        } => {
            let integrator = match method {
                Method::Rk4 => {
                    if tol.is_some() {
                        return Err(CliError::usage("--tol", "only applies to --method rkf45"));
                    }
                    Integrator::Rk4 {
                        dt: dt.unwrap_or(1e-3),
                    }
                }
                Method::Rkf45 => {
                    if dt.is_some() {
                        return Err(CliError::usage("--dt", "only applies to --method rk4"));
                    }
                    Integrator::Rkf45 {
                        tol: tol.unwrap_or(1e-10),
                        initial_step: 1e-3,
                    }
                }
            };
            let params = FlowParameters::rg2(*alpha, *t_end).with_integrator(integrator);
            evolve(
                *constants,
                &params,
                path.as_deref(),
                format.unwrap_or(OutputFormat::Json),
                out,
            )
        }
        Command::Solitons { alpha, grid, tol } => solitons(
            *alpha,
            grid.as_ref(),
            *tol,
            format.unwrap_or(OutputFormat::Json),
            out,
            err,
        ),
        Command::PaperCheck {
            alpha_pos,
            alpha_neg,
        } => paper_check(
            *alpha_pos,
            *alpha_neg,
            format.unwrap_or(OutputFormat::Json),
            out,
        ),
        Command::Portrait {
            beta,
            bounds,
            n,
            out: path,
        } => portrait(*beta, *bounds, *n, path, format, out),
        Command::NormalizedFixedPoints { beta } => {
            normalized_fixed_points(*beta, format.unwrap_or(OutputFormat::Json), out)
        }
    }
}

fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> CliResult<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn classify(a: [f64; 3], format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let sc = StructureConstants::from_array(a)?;
    let class = sc.classify();
    match format {
        OutputFormat::Human => writeln!(out, "{}", class.group)?,
        OutputFormat::Json => write_json(
            &serde_json::json!({
                "constants": sc,
                "canonical_constants": sc.canonicalize(),
                "group": class.group.name(),
                "signature": class.signature,
            }),
            out,
        )?,
        OutputFormat::Csv => {
            writeln!(out, "a1,a2,a3,group,positive,negative,zero")?;
            let s = class.signature;
            writeln!(
                out,
                "{},{},{},{},{}",
                csv_row(&a),
                class.group,
                s.positive,
                s.negative,
                s.zero
            )?;
        }
        OutputFormat::Svg => unreachable!(),
    }
    Ok(())
}

#[derive(Serialize)]
struct CurvatureReport {
    constants: StructureConstants,
    group: &'static str,
    mu: [f64; 3],
    sectional: [f64; 3],
    ricci: [f64; 3],
    scalar: f64,
    einstein: [f64; 3],
    rm2diag: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parabolic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    velocity: Option<[f64; 3]>,
}

fn curvature(
    a: [f64; 3],
    alpha: Option<f64>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CliResult<()> {
    let sc = StructureConstants::from_array(a)?;
    let p = curvature_profile(&sc);
    let r = CurvatureReport {
        constants: sc,
        group: sc.classify().group.name(),
        mu: p.mu,
        sectional: p.sectional,
        ricci: p.ricci,
        scalar: p.scalar,
        einstein: p.einstein,
        rm2diag: p.rm2diag,
        alpha,
        parabolic: alpha.map(|al| parabolic(&sc, al)),
        velocity: alpha.map(|al| rg2_rhs(&sc, al)),
    };
    let rows: Vec<(&str, [f64; 3])> = [
        Some(("mu", r.mu)),
        Some(("sectional", r.sectional)),
        Some(("ricci", r.ricci)),
        Some(("einstein", r.einstein)),
        Some(("rm2diag", r.rm2diag)),
        r.velocity.map(|v| ("velocity", v)),
    ]
    .into_iter()
    .flatten()
    .collect();
    match format {
        OutputFormat::Json => write_json(&r, out)?,
        OutputFormat::Csv => {
            writeln!(out, "quantity,x1,x2,x3")?;
            for (name, v) in rows {
                writeln!(out, "{name},{}", csv_row(&v))?;
            }
            writeln!(out, "scalar,{},,", r.scalar)?;
        }
        OutputFormat::Human => {
            writeln!(out, "group      {}", r.group)?;
            for (name, v) in rows {
                writeln!(out, "{name:<10} {} {} {}", v[0], v[1], v[2])?;
            }
            writeln!(out, "scalar     {}", r.scalar)?;
            if let (Some(al), Some(ok)) = (alpha, r.parabolic) {
                writeln!(out, "parabolic  {ok} (alpha = {al})")?;
            }
        }
        OutputFormat::Svg => unreachable!(),
    }
    Ok(())
}

#[derive(Serialize)]
struct EvolveSummary<'a> {
    start: StructureConstants,
    alpha: f64,
    t_end: f64,
    termination: Termination,
    final_time: f64,
    final_constants: [f64; 3],
    group: &'static str,
    samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<&'a Path>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trajectory: Option<Vec<[f64; 4]>>,
}

fn evolve(
    a: [f64; 3],
    params: &FlowParameters,
    path: Option<&Path>,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CliResult<()> {
    let start = StructureConstants::from_array(a)?;
    let traj = integrate_bracket(start, params)?;
    if let Some(path) = path {
        let mut buf = Vec::new();
        write_trajectory_csv(&traj.samples, &mut buf)?;
        fs::write(path, buf).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
    }
    let last = traj.last();
    let summary = EvolveSummary {
        start,
        alpha: params.alpha,
        t_end: params.t_end,
        termination: traj.termination,
        final_time: last.t,
        final_constants: last.state,
        group: start.classify().group.name(),
        samples: traj.samples.len(),
        out: path,
        trajectory: path.is_none().then(|| {
            traj.samples
                .iter()
                .map(|s| [s.t, s.state[0], s.state[1], s.state[2]])
                .collect()
        }),
    };
    match format {
        OutputFormat::Csv => write_trajectory_csv(&traj.samples, &mut *out)?,
        OutputFormat::Json => write_json(&summary, out)?,
        OutputFormat::Human => {
            writeln!(
                out,
                "termination {:?} at t = {}",
                summary.termination, summary.final_time
            )?;
            let f = summary.final_constants;
            writeln!(out, "final       {} {} {}", f[0], f[1], f[2])?;
            writeln!(out, "samples     {}", summary.samples)?;
            if let Some(p) = path {
                writeln!(out, "written to  {}", p.display())?;
            }
        }
        OutputFormat::Svg => unreachable!(),
    }
    Ok(())
}

fn solitons(
    alpha: f64,
    grid: Option<&Grid>,
    tol: f64,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    if !alpha.is_finite() {
        return Err(CliError::usage("--alpha", "must be finite"));
    }
    if !(tol > 0.0) {
        return Err(CliError::usage(
            "--tol",
            format!("must be positive, got {tol}"),
        ));
    }
    let mut records = enumerate_analytic(alpha);
    if let Some(grid) = grid {
        let report = newton_sweep(alpha, grid, tol)?;
        writeln!(
            err,
            "newton sweep: {} seeds, {} converged, {} dropped, {} distinct",
            report.seeds,
            report.converged,
            report.dropped,
            report.records.len()
        )?;
        let extra: Vec<FixedPointRecord> = report
            .records
            .into_iter()
            .filter(|n| !records.iter().any(|a| a.same_point(n, CLUSTER_RADIUS)))
            .collect();
        records.extend(extra);
    }
    match format {
        OutputFormat::Json => write_json(&records, out)?,
        OutputFormat::Csv => {
            writeln!(
                out,
                "label,a1,a2,a3,group,residual,family,provenance,parabolic"
            )?;
            for r in &records {
                writeln!(
                    out,
                    "{},{},{},{:e},{:?},{:?},{}",
                    r.label,
                    csv_row(&r.constants.as_array()),
                    r.group.group,
                    r.residual,
                    r.family,
                    r.provenance,
                    r.parabolic
                )?;
            }
        }
        OutputFormat::Human => {
            for r in &records {
                writeln!(
                    out,
                    "{:<16} {:<28} {:<10} residual {:.1e} {:?}",
                    r.label,
                    r.constants.to_string(),
                    r.group.group.name(),
                    r.residual,
                    r.family
                )?;
            }
        }
        OutputFormat::Svg => unreachable!(),
    }
    Ok(())
}

fn paper_check(
    alpha_pos: f64,
    alpha_neg: f64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> CliResult<()> {
    let rows: Vec<AuditRow> = paper_table_check(alpha_pos, alpha_neg)?;
    match format {
        OutputFormat::Json => write_json(&rows, out)?,
        OutputFormat::Csv => {
            writeln!(
                out,
                "row,verdict,alpha,a1,a2,a3,residual,braces1,braces2,braces3"
            )?;
            for r in &rows {
                let b = r.per_axis.map(|x| x.braces_factor);
                writeln!(
                    out,
                    "{},{:?},{},{},{:e},{}",
                    r.row,
                    r.verdict,
                    r.alpha_used,
                    csv_row(&r.printed_constants.as_array()),
                    r.residual,
                    csv_row(&b)
                )?;
            }
        }
        OutputFormat::Human => {
            for r in &rows {
                let verdict = match r.verdict {
                    Verdict::Pass => "PASS",
                    Verdict::Fail => "FAIL",
                };
                write!(out, "row {} {verdict} residual {:.3e}", r.row, r.residual)?;
                let bad: Vec<String> = r
                    .per_axis
                    .iter()
                    .filter(|x| r.verdict == Verdict::Fail && x.rhs != 0.0)
                    .map(|x| format!("axis {} braces {}", x.axis, x.braces_factor))
                    .collect();
                if !bad.is_empty() {
                    write!(out, " ({})", bad.join(", "))?;
                }
                writeln!(out)?;
            }
        }
        OutputFormat::Svg => unreachable!(),
    }
    Ok(())
}

fn portrait(
    beta: f64,
    b: [f64; 4],
    n: usize,
    path: &Path,
    format: Option<OutputFormat>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let file_format = match ext.as_deref() {
        Some("svg") => OutputFormat::Svg,
        Some("csv") => OutputFormat::Csv,
        _ => return Err(CliError::usage("--out", "file must end in .svg or .csv")),
    };
    if let Some(f) = format {
        if matches!(f, OutputFormat::Svg | OutputFormat::Csv) && f != file_format {
            return Err(CliError::usage(
                "--format",
                "does not match the --out extension",
            ));
        }
    }
    let bounds = Bounds::new(b[0], b[1], b[2], b[3])?;
    let field = vector_field_grid(beta, &bounds, n)?;
    let fixed = m_fixed_points(beta)?;
    let body = match file_format {
        OutputFormat::Svg => svg::portrait(beta, &bounds, n, &field, &fixed),
        _ => {
            let mut s = String::from("m2,m3,dm2,dm3\n");
            for p in &field {
                s.push_str(&csv_row(&[p.m2, p.m3, p.dm2, p.dm3]));
                s.push('\n');
            }
            s
        }
    };
    fs::write(path, body).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
    let shown = fixed.iter().filter(|f| bounds.contains(f.m2, f.m3)).count();
    match format {
        Some(OutputFormat::Json) => write_json(
            &serde_json::json!({
                "out": path,
                "samples": field.len(),
                "fixed_points_shown": shown,
            }),
            out,
        )?,
        _ => writeln!(
            out,
            "wrote {} ({} samples, {} fixed points)",
            path.display(),
            field.len(),
            shown
        )?,
    }
    Ok(())
}

fn normalized_fixed_points(beta: f64, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let points = m_fixed_points(beta)?;
    match format {
        OutputFormat::Json => write_json(&points, out)?,
        OutputFormat::Csv => {
            writeln!(out, "m2,m3,labels")?;
            for p in &points {
                writeln!(out, "{},{},{}", p.m2, p.m3, p.labels.join(";"))?;
            }
        }
        OutputFormat::Human => {
            for p in &points {
                writeln!(out, "({}, {})  {}", p.m2, p.m3, p.labels.join(" "))?;
            }
        }
        OutputFormat::Svg => unreachable!(),
    }
    Ok(())
}
