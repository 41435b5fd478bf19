//! The `abflux` command line: argument handling, execution and output.

pub mod config;
pub mod output;

use abflux_core::fluxline::{ab_amplitude, fluxline_wavefunction};
use abflux_core::partialwave::total_cross_section;
use abflux_core::verify::run_suite;
use abflux_core::wavefield::field_grid;
use abflux_core::{Complex64, Error, FluxLineConfig, PartialWaves, ScatteringConfig};
use clap::{Args, Parser, Subcommand};
use config::{
    parse_grid, read_config_file, CommandKind, ConfigError, Format, RunSpec, Settings, SuiteArg, Sweep,
    Variable,
};
use output::{Cell, Meta, Table};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Angles used by amplitude and dcs when neither --theta nor a θ sweep is given.
pub const DEFAULT_THETA_NODES: usize = 360;

#[derive(Debug, Parser)]
#[command(
    name = "abflux",
    version,
    about = "Aharonov-Bohm scattering by a finite-radius flux tube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scattering amplitude f(θ)
    Amplitude(Flags),
    /// Differential cross section |f(θ)|²
    Dcs(Flags),
    /// Total cross section
    Tcs(Flags),
    /// Exterior wavefunction on a polar grid
    Field(Flags),
    /// Run the numerical self-checks
    Verify(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// VAR:START:STOP:COUNT[:log] with VAR one of k, a, alpha, theta
    #[arg(long, allow_hyphen_values = true)]
    sweep: Option<Sweep>,
    /// RMIN:RMAX:NR:NTHETA
    #[arg(long, value_parser = parse_grid)]
    grid: Option<abflux_core::GridSpec>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum)]
    suite: Option<SuiteArg>,
    /// key = value file; flags take precedence over it
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn settings(self) -> (Option<PathBuf>, Settings) {
        let s = Settings {
            k: self.k,
            a: self.a,
            alpha: self.alpha,
            theta: self.theta,
            tol: self.tol,
            sweep: self.sweep,
            grid: self.grid,
            out: self.out,
            format: self.format,
            suite: self.suite,
        };
        (self.config, s)
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Numeric(#[from] Error),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("{failed} of {total} criteria failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl RunError {
    /// 1 for bad input, 2 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Numeric(Error::TruncationFailure { .. })
            | RunError::Numeric(Error::QuadratureUnresolved { .. })
            | RunError::VerifyFailed { .. } => 2,
            _ => 1,
        }
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn run_cli<I, T, O, E>(args: I, stdout: &mut O, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match build_spec(cli).and_then(|spec| execute(&spec, stdout, stderr)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn build_spec(cli: Cli) -> Result<RunSpec, RunError> {
    let (kind, flags) = match cli.command {
        Command::Amplitude(f) => (CommandKind::Amplitude, f),
        Command::Dcs(f) => (CommandKind::Dcs, f),
        Command::Tcs(f) => (CommandKind::Tcs, f),
        Command::Field(f) => (CommandKind::Field, f),
        Command::Verify(f) => (CommandKind::Verify, f),
    };
    let (path, flags) = flags.settings();
    let file = match path {
        Some(p) => read_config_file(&p)?,
        None => Settings::default(),
    };
    Ok(RunSpec::resolve(kind, file.overlay(flags))?)
}

/// Runs a validated spec, writing data to `--out` or `stdout`.
pub fn execute<O: Write, E: Write>(spec: &RunSpec, stdout: &mut O, stderr: &mut E) -> Result<(), RunError> {
    let (table, verdict) = match spec.command {
        CommandKind::Amplitude | CommandKind::Dcs => (amplitude_table(spec)?, Ok(())),
        CommandKind::Tcs => (tcs_table(spec)?, Ok(())),
        CommandKind::Field => (field_table(spec)?, Ok(())),
        CommandKind::Verify => verify_table(spec, stderr)?,
    };
    let mut buf = Vec::new();
    match spec.format {
        Format::Csv => table.write_csv(&mut buf)?,
        Format::Json => table.write_json(&meta(spec)?, &mut buf)?,
    }
    match &spec.out {
        Some(p) => std::fs::write(p, &buf)?,
        None => stdout.write_all(&buf)?,
    }
    verdict
}

fn meta(spec: &RunSpec) -> Result<Meta, RunError> {
    let fixed = |v: Variable, x: f64| match spec.sweep {
        Some(s) if s.var == v => None,
        _ if x.is_nan() => None,
        _ => Some(x),
    };
    let (k, a, alpha) = (
        fixed(Variable::K, spec.k),
        fixed(Variable::A, spec.a),
        fixed(Variable::Alpha, spec.alpha),
    );
    let single = matches!(
        spec.command,
        CommandKind::Amplitude | CommandKind::Dcs | CommandKind::Tcs
    );
    let m = match (single, k, a, alpha) {
        (true, Some(k), Some(a), Some(alpha)) if a > 0.0 => Some(
            PartialWaves::new(ScatteringConfig::new(k, a, alpha)?, spec.tol)?
                .truncation()
                .m,
        ),
        _ => None,
    };
    Ok(Meta {
        k,
        a,
        alpha,
        tol: spec.tol,
        m,
        version: VERSION,
    })
}

/// Physical parameters at each node of a k, a or alpha sweep (or the single
/// configuration), tagged with the swept value.
fn configurations(spec: &RunSpec) -> Vec<(Option<f64>, [f64; 3])> {
    let base = [spec.k, spec.a, spec.alpha];
    let idx = |v: Variable| match v {
        Variable::K => Some(0),
        Variable::A => Some(1),
        Variable::Alpha => Some(2),
        Variable::Theta => None,
    };
    match spec.sweep.and_then(|s| idx(s.var).map(|i| (s, i))) {
        Some((s, i)) => s
            .values()
            .into_iter()
            .map(|x| {
                let mut p = base;
                p[i] = x;
                (Some(x), p)
            })
            .collect(),
        None => vec![(None, base)],
    }
}

fn angles(spec: &RunSpec) -> Vec<f64> {
    match (spec.sweep, spec.theta) {
        (Some(s), _) if s.var == Variable::Theta => s.values(),
        (_, Some(t)) => vec![t],
        _ => {
            let n = DEFAULT_THETA_NODES as f64;
            (0..DEFAULT_THETA_NODES)
                .map(|i| -PI + 2.0 * PI * (i + 1) as f64 / (n + 1.0))
                .collect()
        }
    }
}

fn amplitude_table(spec: &RunSpec) -> Result<Table, RunError> {
    let configs = configurations(spec);
    let thetas = angles(spec);
    let axis = spec
        .sweep
        .filter(|s| s.var != Variable::Theta)
        .map(|s| s.var.name());
    let mut cols = vec!["theta", "re_f", "im_f", "dcs"];
    if let Some(name) = axis {
        cols.insert(0, name);
    }
    let blocks: Vec<Vec<Vec<Cell>>> = configs
        .par_iter()
        .map(|&(tag, [k, a, alpha])| -> Result<Vec<Vec<Cell>>, Error> {
            let amps: Vec<Complex64> = if a > 0.0 {
                let waves = PartialWaves::new(ScatteringConfig::new(k, a, alpha)?, spec.tol)?;
                thetas
                    .par_iter()
                    .map(|&t| waves.amplitude(t))
                    .collect::<Result<_, _>>()?
            } else {
                let cfg = FluxLineConfig::new(k, alpha)?;
                thetas
                    .iter()
                    .map(|&t| ab_amplitude(&cfg, t))
                    .collect::<Result<_, _>>()?
            };
            Ok(thetas
                .iter()
                .zip(amps)
                .map(|(&t, f)| {
                    let mut row = vec![
                        Cell::Num(t),
                        Cell::Num(f.re),
                        Cell::Num(f.im),
                        Cell::Num(f.norm_sqr()),
                    ];
                    if let Some(x) = tag {
                        row.insert(0, Cell::Num(x));
                    }
                    row
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&cols);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

fn tcs_table(spec: &RunSpec) -> Result<Table, RunError> {
    let axis = spec.sweep.map(|s| s.var.name()).unwrap_or("alpha");
    let rows: Vec<Vec<Cell>> = configurations(spec)
        .par_iter()
        .map(|&(tag, [k, a, alpha])| -> Result<Vec<Cell>, Error> {
            let cfg = ScatteringConfig::new(k, a, alpha)?;
            let sigma = if a > 0.0 {
                total_cross_section(&cfg, spec.tol)?
            } else if cfg.integer_flux() {
                0.0
            } else {
                f64::INFINITY
            };
            Ok(vec![Cell::Num(tag.unwrap_or(alpha)), Cell::Num(sigma)])
        })
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&[axis, "sigma"]);
    table.rows = rows;
    Ok(table)
}

fn field_table(spec: &RunSpec) -> Result<Table, RunError> {
    let grid = spec.grid.expect("field spec always carries a grid");
    let (rs, ts, samples) = if spec.a > 0.0 {
        let cfg = ScatteringConfig::new(spec.k, spec.a, spec.alpha)?;
        let g = field_grid(&cfg, &grid, spec.tol)?;
        (g.r_values, g.theta_values, g.samples)
    } else {
        let cfg = FluxLineConfig::new(spec.k, spec.alpha)?;
        let (rs, ts) = (grid.r_values(), grid.theta_values());
        let samples = rs
            .par_iter()
            .map(|&r| {
                ts.iter()
                    .map(|&t| fluxline_wavefunction(&cfg, r, t, spec.tol))
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        (rs, ts, samples)
    };
    let mut table = Table::new(&["r", "theta", "re_u", "im_u", "abs_u2"]);
    for (r, row) in rs.iter().zip(&samples) {
        for (t, u) in ts.iter().zip(row) {
            table.rows.push(vec![
                Cell::Num(*r),
                Cell::Num(*t),
                Cell::Num(u.re),
                Cell::Num(u.im),
                Cell::Num(u.norm_sqr()),
            ]);
        }
    }
    Ok(table)
}

fn verify_table<E: Write>(spec: &RunSpec, stderr: &mut E) -> Result<(Table, Result<(), RunError>), RunError> {
    let criteria = run_suite(spec.suite);
    let mut table = Table::new(&["check", "measured", "threshold", "status"]);
    let mut failed = 0;
    for c in &criteria {
        let status = if c.pass() { "pass" } else { "fail" };
        writeln!(stderr, "{status} {:>2} {}", c.id, c.title)?;
        failed += usize::from(!c.pass());
        for check in &c.checks {
            table.rows.push(vec![
                Cell::Text(format!("{}.{}", c.id, check.name)),
                Cell::Num(check.measured),
                Cell::Num(check.threshold),
                Cell::Text(if check.pass { "pass" } else { "fail" }.into()),
            ]);
        }
    }
    let verdict = if failed == 0 {
        Ok(())
    } else {
        Err(RunError::VerifyFailed {
            failed,
            total: criteria.len(),
        })
    };
    Ok((table, verdict))
}
