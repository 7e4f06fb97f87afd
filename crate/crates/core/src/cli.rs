//! Command-line front end. All of it lives in the library so the binary
//! stays a one-liner and the commands can be tested in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis;
use crate::error::Error;
use crate::info::{self, RootBranch};
use crate::optimize;
use crate::protocol;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CROSSING_FAILED: i32 = 3;
pub const EXIT_ORACLE_MISMATCH: i32 = 4;

pub const CURVES_HEADER: &str = "q,i_ab,i_ae_opt,i_ae_alt,i_ab_pure,i_ae_pure,beta_sq";
pub const CROSSING_HEADER: &str = "p,q_cross,q_line,margin";
pub const OPTIMIZE_HEADER: &str =
    "p,q,i_ae_closed,i_ae_grid,abs_diff,beta_sq_plus,beta_sq_minus,i_ae_alt,lagrange_residual";

const SIG_DIGITS: i32 = 9;

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(
    name = "sixstate",
    version,
    about = "Optimal individual attacks on the noisy six-state protocol"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Information curves over q at fixed noise.
    Curves(CurvesArgs),
    /// Crossing of I^AB and I^AE against noise, with the straight baseline.
    Crossing(CrossingArgs),
    /// Closed-form optimum against brute-force search at one (p, q).
    Optimize(OptimizeArgs),
    /// Consistency checks at one (p, q).
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct CurvesArgs {
    #[arg(long, default_value_t = 0.05)]
    pub p: f64,
    /// Number of q samples, both ends included.
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct CrossingArgs {
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    #[arg(long, default_value_t = 0.2)]
    pub p_max: f64,
    #[arg(long, default_value_t = 21)]
    pub steps: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[arg(long, default_value_t = 6)]
    pub refine: usize,
    /// Allowed |closed form - grid search|.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Optional one-row CSV with the report values.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
}

/// Decimal rendering with nine significant digits; never exponent notation.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals = if x == 0.0 {
        SIG_DIGITS - 1
    } else {
        (SIG_DIGITS - 1 - x.abs().log10().floor() as i32).max(0)
    };
    let s = format!("{x:.prec$}", prec = decimals as usize);
    // Avoid "-0.000…" for tiny negatives that round to zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn csv_row(values: &[f64]) -> String {
    let mut line = values
        .iter()
        .map(|&v| format_float(v))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn fail(stderr: &mut dyn Write, code: i32, err: &Error) -> i32 {
    let _ = writeln!(stderr, "error: {err}");
    code
}

pub fn cmd_curves(args: &CurvesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let points = match analysis::curve_sweep(args.p, args.steps) {
        Ok(pts) => pts,
        Err(e) => return fail(stderr, EXIT_INVALID, &e),
    };
    let mut csv = format!("{CURVES_HEADER}\n");
    for pt in &points {
        csv.push_str(&csv_row(&[
            pt.q,
            pt.i_ab,
            pt.i_ae_opt,
            pt.i_ae_alt,
            pt.i_ab_pure,
            pt.i_ae_pure,
            pt.beta_sq,
        ]));
    }
    emit(&csv, args.out.as_ref(), stdout, stderr)
}

pub fn cmd_crossing(args: &CrossingArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let rows = match analysis::crossing_sweep(args.p_min, args.p_max, args.steps, args.tol) {
        Ok(rows) => rows,
        Err(e @ (Error::NoCrossing { .. } | Error::AmbiguousCrossing { .. })) => {
            return fail(stderr, EXIT_CROSSING_FAILED, &e)
        }
        Err(e) => return fail(stderr, EXIT_INVALID, &e),
    };
    let mut csv = format!("{CROSSING_HEADER}\n");
    for r in &rows {
        csv.push_str(&csv_row(&[r.p, r.q_cross, r.q_line, r.margin]));
    }
    emit(&csv, args.out.as_ref(), stdout, stderr)
}

/// Everything `optimize` reports, in CSV column order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeReport {
    pub p: f64,
    pub q: f64,
    pub i_ae_closed: f64,
    pub i_ae_grid: f64,
    pub abs_diff: f64,
    pub beta_sq_plus: f64,
    pub beta_sq_minus: f64,
    pub i_ae_alt: f64,
    pub lagrange_residual: f64,
    pub lagrange_degenerate: bool,
    pub evaluations: u64,
}

pub fn optimize_report(args: &OptimizeArgs) -> crate::Result<OptimizeReport> {
    let (p, q) = (args.p, args.q);
    protocol::check_domain(p, q)?;
    if !(args.tol.is_finite() && args.tol >= 0.0) {
        return Err(Error::InvalidParameters(format!(
            "tolerance must be non-negative, got {}",
            args.tol
        )));
    }
    let grid = optimize::grid_refine_maximize(p, q, args.grid, args.refine)?;
    let closed = info::i_ae_optimal(p, q)?;
    let plus_params = crate::attack::AttackParameters::optimal(p, q, RootBranch::Plus)?;
    let lag = optimize::lagrange_residual(&plus_params)?;
    Ok(OptimizeReport {
        p,
        q,
        i_ae_closed: closed,
        i_ae_grid: grid.best_value,
        abs_diff: (closed - grid.best_value).abs(),
        beta_sq_plus: info::beta_sq_optimal(p, q, RootBranch::Plus)?,
        beta_sq_minus: info::beta_sq_optimal(p, q, RootBranch::Minus)?,
        i_ae_alt: info::i_ae_antiphase(p, q)?,
        lagrange_residual: lag.residual_norm,
        lagrange_degenerate: lag.degenerate,
        evaluations: grid.evaluations,
    })
}

pub fn cmd_optimize(args: &OptimizeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let r = match optimize_report(args) {
        Ok(r) => r,
        Err(e) => return fail(stderr, EXIT_INVALID, &e),
    };
    let mut text = String::new();
    let f = format_float;
    let _ = writeln!(text, "p                  {}", f(r.p));
    let _ = writeln!(text, "q                  {}", f(r.q));
    let _ = writeln!(text, "i_ae closed form   {}", f(r.i_ae_closed));
    let _ = writeln!(text, "i_ae grid search   {}", f(r.i_ae_grid));
    let _ = writeln!(text, "abs difference     {:.3e}", r.abs_diff);
    let _ = writeln!(text, "beta_sq plus       {}", f(r.beta_sq_plus));
    let _ = writeln!(text, "beta_sq minus      {}", f(r.beta_sq_minus));
    let _ = writeln!(text, "i_ae anti-phase    {}", f(r.i_ae_alt));
    let degenerate = if r.lagrange_degenerate {
        " (degenerate)"
    } else {
        ""
    };
    let _ = writeln!(
        text,
        "lagrange residual  {:.3e}{degenerate}",
        r.lagrange_residual
    );
    let _ = writeln!(text, "evaluations        {}", r.evaluations);
    let agree = r.abs_diff <= args.tol;
    let _ = writeln!(text, "{}", if agree { "PASS" } else { "FAIL" });
    if let Err(e) = stdout.write_all(text.as_bytes()) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INVALID;
    }
    if let Some(path) = &args.out {
        let mut csv = format!("{OPTIMIZE_HEADER}\n");
        csv.push_str(&csv_row(&[
            r.p,
            r.q,
            r.i_ae_closed,
            r.i_ae_grid,
            r.abs_diff,
            r.beta_sq_plus,
            r.beta_sq_minus,
            r.i_ae_alt,
            r.lagrange_residual,
        ]));
        let code = emit(&csv, Some(path), stdout, stderr);
        if code != EXIT_OK {
            return code;
        }
    }
    if agree {
        EXIT_OK
    } else {
        let _ = writeln!(
            stderr,
            "closed form and grid search differ by {:e} > {:e}",
            r.abs_diff, args.tol
        );
        EXIT_ORACLE_MISMATCH
    }
}

pub fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let report = match verify::run_checks(args.p, args.q) {
        Ok(r) => r,
        Err(e) => return fail(stderr, EXIT_INVALID, &e),
    };
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = write!(
            text,
            "{status} {:<24} deviation {:.3e} (tol {:.0e})",
            c.name, c.deviation, c.tolerance
        );
        if let Some(note) = &c.note {
            let _ = write!(text, "  {note}");
        }
        text.push('\n');
    }
    let _ = writeln!(
        text,
        "i_ab - i_ae_opt = {}",
        format_float(report.key_margin)
    );
    if let Err(e) = stdout.write_all(text.as_bytes()) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INVALID;
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

pub fn execute(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match &config.command {
        Command::Curves(a) => cmd_curves(a, stdout, stderr),
        Command::Crossing(a) => cmd_crossing(a, stdout, stderr),
        Command::Optimize(a) => cmd_optimize(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    }
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(argv) {
        Ok(config) => execute(&config, stdout, stderr),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_INVALID
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_OK
            }
        }
    }
}
