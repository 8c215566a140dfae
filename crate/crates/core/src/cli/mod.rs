//! Command-line front end.
//!
//! [`run`] parses arguments and writes data to `out` and diagnostics to
//! `err`, returning the process exit code: 0 on success, 1 when evaluation
//! or validation fails, 2 on invalid flags.

pub mod figure;
pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::require_positive;
use crate::response::Model;
use crate::scales::{electron_gas, to_dimensionless};
use crate::validation::{run_suite, Check, Suite, ValidationReport};

use output::{evaluate_point, format_number, write_csv, write_json_lines, write_table, Record};
use sweep::{with_workers, SweepSpec, SweepVar};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "PLASMA_RESPONSE_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "plasma-response",
    version,
    about = "Transverse conductivity and permittivity of a degenerate collisional plasma"
)]
pub struct Cli {
    /// Worker threads for sweeps and figures (default: one per core).
    #[arg(long, global = true, env = WORKERS_ENV, value_parser = parse_workers)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the models at one point.
    Eval(EvalArgs),
    /// Sweep x or q and write CSV.
    Sweep(SweepArgs),
    /// Write the data behind one of the five figure presets.
    Figure(FigureArgs),
    /// Run a validation suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Mermin,
    Lindhard,
    Classical,
    All,
}

fn selected_models(args: &[ModelArg]) -> Vec<Model> {
    if args.is_empty() || args.contains(&ModelArg::All) {
        return Model::ALL.to_vec();
    }
    // Canonical order regardless of flag order.
    Model::ALL
        .into_iter()
        .filter(|m| {
            args.contains(&match m {
                Model::Mermin => ModelArg::Mermin,
                Model::Lindhard => ModelArg::Lindhard,
                Model::Classical => ModelArg::Classical,
            })
        })
        .collect()
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Wavenumber q = k/k_F (with --physical: k in cm^-1).
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    /// Frequency x = ω/(k_F v_F) (with --physical: ω in rad/s).
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Collision frequency y = ν/(k_F v_F) (with --physical: ν in s^-1).
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
    /// Plasma frequency x_p = ω_p/(k_F v_F); enables the permittivity columns.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "physical")]
    pub xp: Option<f64>,
    /// Models, comma separated or repeated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub model: Vec<ModelArg>,
    /// One JSON object per model instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Read --q, --x, --y in CGS units for an electron gas of --density.
    #[arg(long, requires = "density")]
    pub physical: bool,
    /// Electron density in cm^-3 (with --physical).
    #[arg(long, requires = "physical")]
    pub density: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Swept variable.
    #[arg(long, value_enum)]
    pub var: SweepVar,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    /// Geometric instead of uniform spacing.
    #[arg(long)]
    pub log: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub xp: Option<f64>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub model: Vec<ModelArg>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON Lines instead of CSV.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub n: u8,
    /// Override the collision frequency y of the preset.
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<f64>,
    #[arg(long, default_value_t = figure::DEFAULT_POINTS)]
    pub points: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script reading the CSV (requires --output).
    #[arg(long, requires = "output")]
    pub plot_script: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    pub suite: Suite,
    /// Replace the tolerance of every comparison case.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("workers must be a positive integer (got '{s}')")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }

    fn runtime(message: impl ToString) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::runtime(format!("i/o error: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args, out, err),
        Command::Sweep(args) => cmd_sweep(args, cli.workers, out, err),
        Command::Figure(args) => cmd_figure(args, cli.workers, out, err),
        Command::Validate(args) => cmd_validate(args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit_warnings(err: &mut dyn Write, warnings: &[String]) -> io::Result<()> {
    for w in warnings {
        writeln!(err, "{w}")?;
    }
    Ok(())
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    for (field, value) in [("q", args.q), ("x", args.x), ("y", args.y)] {
        require_positive(field, value).map_err(Failure::usage)?;
    }
    let (q, x, y, xp) = if args.physical {
        let density = args.density.expect("clap enforces --density");
        let scales = electron_gas(density, args.y).map_err(Failure::usage)?;
        let query = to_dimensionless(args.x, args.y, args.q, &scales).map_err(Failure::usage)?;
        (query.q(), query.x(), query.y(), query.x_p())
    } else {
        if let Some(xp) = args.xp {
            require_positive("xp", xp).map_err(Failure::usage)?;
        }
        (args.q, args.x, args.y, args.xp)
    };
    let models = selected_models(&args.model);
    let (records, warnings) = evaluate_point(x, q, x, y, xp, &models);
    emit_warnings(err, &warnings)?;
    if args.json {
        write_json_lines(&mut *out, &records, false)?;
    } else {
        writeln!(
            out,
            "# q={} x={} y={} xp={}",
            format_number(q),
            format_number(x),
            format_number(y),
            xp.map_or_else(|| "-".to_string(), format_number)
        )?;
        write_table(&mut *out, &records)?;
    }
    Ok(all_failed_code(&records))
}

fn all_failed_code(records: &[Record]) -> i32 {
    if !records.is_empty() && records.iter().all(Record::failed) {
        1
    } else {
        0
    }
}

/// Opens `path` for writing, or standard output.
fn sink<'a>(
    path: &Option<PathBuf>,
    out: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::runtime(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(out),
    })
}

fn cmd_sweep(
    args: &SweepArgs,
    workers: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let spec = SweepSpec {
        var: args.var,
        from: args.from,
        to: args.to,
        points: args.points,
        log_scale: args.log,
        q: args.q,
        x: args.x,
        y: args.y,
        xp: args.xp,
        models: selected_models(&args.model),
    };
    spec.validate().map_err(Failure::usage)?;
    let (records, warnings) = with_workers(workers, || spec.run()).map_err(Failure::runtime)?;
    emit_warnings(err, &warnings)?;
    let mut sink = sink(&args.output, out)?;
    if args.json {
        write_json_lines(&mut sink, &records, true)?;
    } else {
        write_csv(&mut sink, &spec.comments(), &records)?;
    }
    sink.flush()?;
    Ok(all_failed_code(&records))
}

fn cmd_figure(
    args: &FigureArgs,
    workers: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    if let Some(y) = args.y {
        require_positive("y", y).map_err(Failure::usage)?;
    }
    let preset = figure::preset(args.n, args.y, args.points)
        .ok_or_else(|| Failure::usage(format!("no figure {}", args.n)))?;
    for (_, spec) in &preset.blocks {
        spec.validate().map_err(Failure::usage)?;
    }
    let (records, warnings) = with_workers(workers, || {
        let mut records = Vec::new();
        let mut warnings = Vec::new();
        for (_, spec) in &preset.blocks {
            let (r, w) = spec.run();
            records.extend(r);
            warnings.extend(w);
        }
        (records, warnings)
    })
    .map_err(Failure::runtime)?;
    emit_warnings(err, &warnings)?;
    {
        let mut sink = sink(&args.output, out)?;
        write_csv(&mut sink, &preset.comments(), &records)?;
        sink.flush()?;
    }
    if let (Some(script), Some(csv)) = (&args.plot_script, &args.output) {
        std::fs::write(script, preset.gnuplot_script(&csv.display().to_string()))
            .map_err(|e| Failure::runtime(format!("cannot write {}: {e}", script.display())))?;
    }
    Ok(all_failed_code(&records))
}

fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(tol) = args.tol {
        require_positive("tol", tol).map_err(Failure::usage)?;
    }
    let report = run_suite(args.suite, args.tol);
    if args.json {
        serde_json::to_writer_pretty(&mut *out, &report)
            .map_err(|e| Failure::runtime(format!("cannot encode report: {e}")))?;
        writeln!(out)?;
    } else {
        write_report(out, &report)?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn check_text(check: &Check) -> String {
    match check {
        Check::Relative(t) => format!("rel <= {t:e}"),
        Check::Absolute(t) => format!("abs <= {t:e}"),
        Check::AtLeast(t) => format!(">= {t}"),
        Check::Below(t) => format!("< {t}"),
    }
}

fn complex_text(z: num_complex::Complex64) -> String {
    if z.im == 0.0 {
        format_number(z.re)
    } else {
        format!("{}{:+.11e}i", format_number(z.re), z.im)
    }
}

/// Human-readable report table.
pub fn write_report(out: &mut dyn Write, report: &ValidationReport) -> io::Result<()> {
    writeln!(
        out,
        "{:<6} {:<48} {:>38} {:>38} {:>10} {:>10} {:<14}",
        "status", "case", "computed", "reference", "abs_err", "rel_err", "check"
    )?;
    for c in &report.cases {
        writeln!(
            out,
            "{:<6} {:<48} {:>38} {:>38} {:>10.3e} {:>10.3e} {:<14}",
            if c.passed { "PASS" } else { "FAIL" },
            c.label,
            complex_text(c.computed),
            complex_text(c.reference),
            c.abs_error,
            c.rel_error,
            check_text(&c.check)
        )?;
    }
    let failed = report.failures().count();
    writeln!(
        out,
        "suite {}: {} cases, {} failed, worst relative error {:.3e} -> {}",
        report.suite,
        report.cases.len(),
        failed,
        report.worst_rel_error,
        if report.passed { "PASSED" } else { "FAILED" }
    )
}
