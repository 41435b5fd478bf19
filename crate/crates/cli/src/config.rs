//! Run specifications: command-line flags merged over an optional
//! `key = value` file.

use abflux_core::verify::Suite;
use abflux_core::wavefield::GridSpec;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },

    #[error("cannot read config file {path}: {msg}")]
    Read { path: String, msg: String },

    #[error("{0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError::Invalid(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Amplitude,
    Dcs,
    Tcs,
    Field,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteArg {
    All,
    Specfun,
    Partialwave,
    Fluxline,
    Wavefield,
}

impl SuiteArg {
    pub fn suite(self) -> Suite {
        match self {
            SuiteArg::All => Suite::All,
            SuiteArg::Specfun => Suite::Specfun,
            SuiteArg::Partialwave => Suite::Partialwave,
            SuiteArg::Fluxline => Suite::Fluxline,
            SuiteArg::Wavefield => Suite::Wavefield,
        }
    }
}

impl FromStr for SuiteArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <SuiteArg as clap::ValueEnum>::from_str(s, false).map_err(|_| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    K,
    A,
    Alpha,
    Theta,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::K => "k",
            Variable::A => "a",
            Variable::Alpha => "alpha",
            Variable::Theta => "theta",
        }
    }
}

/// VAR:START:STOP:COUNT[:log]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub var: Variable,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Sweep {
    /// The sweep nodes; both end points are included.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.stop;
                }
                let t = i as f64 / last;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 && parts.len() != 5 {
            return Err(format!("sweep '{s}' is not VAR:START:STOP:COUNT[:log]"));
        }
        let var = match parts[0] {
            "k" => Variable::K,
            "a" => Variable::A,
            "alpha" => Variable::Alpha,
            "theta" => Variable::Theta,
            v => return Err(format!("cannot sweep '{v}' (expected k, a, alpha or theta)")),
        };
        let num = |p: &str| {
            p.parse::<f64>()
                .map_err(|_| format!("'{p}' in sweep '{s}' is not a number"))
        };
        let (start, stop) = (num(parts[1])?, num(parts[2])?);
        let count: usize = parts[3]
            .parse()
            .map_err(|_| format!("sweep count '{}' is not a positive integer", parts[3]))?;
        let log = match parts.get(4) {
            None => false,
            Some(&"log") => true,
            Some(&"linear") => false,
            Some(o) => return Err(format!("sweep spacing '{o}' is neither log nor linear")),
        };
        if count == 0 {
            return Err("sweep count must be at least 1".into());
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(format!("sweep '{s}' has non-finite bounds"));
        }
        if log && !(start > 0.0 && stop > 0.0) {
            return Err(format!("log sweep '{s}' needs positive bounds"));
        }
        Ok(Sweep {
            var,
            start,
            stop,
            count,
            log,
        })
    }
}

/// RMIN:RMAX:NR:NTHETA
pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("grid '{s}' is not RMIN:RMAX:NR:NTHETA"));
    }
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| format!("'{p}' in grid '{s}' is not a number"))
    };
    let int = |p: &str| match p.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("'{p}' in grid '{s}' is not a positive integer")),
    };
    let spec = GridSpec {
        r_min: num(parts[0])?,
        r_max: num(parts[1])?,
        n_r: int(parts[2])?,
        n_theta: int(parts[3])?,
    };
    if !(spec.r_min.is_finite() && spec.r_max.is_finite() && spec.r_min <= spec.r_max) {
        return Err(format!("grid radii in '{s}' must be finite and ascending"));
    }
    Ok(spec)
}

/// Values that may come from the file or from flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub k: Option<f64>,
    pub a: Option<f64>,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub tol: Option<f64>,
    pub sweep: Option<Sweep>,
    pub grid: Option<GridSpec>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub suite: Option<SuiteArg>,
}

impl Settings {
    /// Values set in `over` replace those in `self`.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            k: over.k.or(self.k),
            a: over.a.or(self.a),
            alpha: over.alpha.or(self.alpha),
            theta: over.theta.or(self.theta),
            tol: over.tol.or(self.tol),
            sweep: over.sweep.or(self.sweep),
            grid: over.grid.or(self.grid),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            suite: over.suite.or(self.suite),
        }
    }
}

/// Parses the flat `key = value` format. `#` starts a comment; blank lines
/// are ignored; unknown and repeated keys are errors.
pub fn parse_config_text(text: &str, path: &str) -> Result<Settings, ConfigError> {
    let mut s = Settings::default();
    let mut seen: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| ConfigError::Parse {
            path: path.to_string(),
            line,
            msg,
        };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, found '{content}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if seen.iter().any(|k| k == key) {
            return Err(err(format!("key '{key}' is set twice")));
        }
        seen.push(key.to_string());
        let number = || {
            value
                .parse::<f64>()
                .map_err(|_| err(format!("'{value}' is not a number")))
        };
        match key {
            "k" => s.k = Some(number()?),
            "a" => s.a = Some(number()?),
            "alpha" => s.alpha = Some(number()?),
            "theta" => s.theta = Some(number()?),
            "tol" => s.tol = Some(number()?),
            "sweep" => s.sweep = Some(value.parse().map_err(err)?),
            "grid" => s.grid = Some(parse_grid(value).map_err(err)?),
            "out" => s.out = Some(PathBuf::from(value)),
            "format" => s.format = Some(value.parse().map_err(err)?),
            "suite" => s.suite = Some(value.parse().map_err(err)?),
            _ => return Err(err(format!("unknown key '{key}'"))),
        }
    }
    Ok(s)
}

pub fn read_config_file(path: &Path) -> Result<Settings, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_config_text(&text, &path.display().to_string())
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: CommandKind,
    pub k: f64,
    pub a: f64,
    pub alpha: f64,
    pub theta: Option<f64>,
    pub tol: f64,
    pub sweep: Option<Sweep>,
    pub grid: Option<GridSpec>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub suite: Suite,
}

impl RunSpec {
    /// Checks the merged settings for `command` and fills defaults.
    pub fn resolve(command: CommandKind, s: Settings) -> Result<RunSpec, ConfigError> {
        let tol = s.tol.unwrap_or(abflux_core::DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return invalid(format!("tol must be positive, got {tol}"));
        }
        let format = s.format.unwrap_or(Format::Csv);
        if command == CommandKind::Verify {
            if s.k.is_some() || s.a.is_some() || s.alpha.is_some() || s.theta.is_some() {
                return invalid("verify takes no physical parameters");
            }
            if s.sweep.is_some() || s.grid.is_some() {
                return invalid("verify takes no sweep or grid");
            }
            return Ok(RunSpec {
                command,
                k: f64::NAN,
                a: f64::NAN,
                alpha: f64::NAN,
                theta: None,
                tol,
                sweep: None,
                grid: None,
                out: s.out,
                format,
                suite: s.suite.unwrap_or(SuiteArg::All).suite(),
            });
        }
        if s.suite.is_some() {
            return invalid("--suite only applies to verify");
        }
        if let Some(sw) = &s.sweep {
            let scalar = match sw.var {
                Variable::K => s.k.is_some(),
                Variable::A => s.a.is_some(),
                Variable::Alpha => s.alpha.is_some(),
                Variable::Theta => s.theta.is_some(),
            };
            if scalar {
                return invalid(format!(
                    "'{}' is given both as a scalar and as the sweep variable",
                    sw.var.name()
                ));
            }
            match (command, sw.var) {
                (CommandKind::Field, _) => return invalid("field takes scalar parameters only, not a sweep"),
                (CommandKind::Tcs, Variable::Theta) => {
                    return invalid("tcs does not depend on theta; sweep k, a or alpha")
                }
                _ => {}
            }
        }
        match command {
            CommandKind::Field => {
                if s.grid.is_none() {
                    return invalid("field needs --grid RMIN:RMAX:NR:NTHETA");
                }
                if s.theta.is_some() {
                    return invalid("field takes its angles from --grid, not --theta");
                }
            }
            _ => {
                if s.grid.is_some() {
                    return invalid("--grid only applies to field");
                }
            }
        }
        if command == CommandKind::Tcs && s.theta.is_some() {
            return invalid("tcs does not take --theta");
        }
        let swept = |v: Variable| s.sweep.map(|sw| sw.var == v).unwrap_or(false);
        let need = |v: Option<f64>, var: Variable| -> Result<f64, ConfigError> {
            if swept(var) {
                return Ok(f64::NAN);
            }
            v.ok_or_else(|| ConfigError::Invalid(format!("missing --{}", var.name())))
        };
        let k = need(s.k, Variable::K)?;
        let a = need(s.a, Variable::A)?;
        let alpha = need(s.alpha, Variable::Alpha)?;
        let spec = RunSpec {
            command,
            k,
            a,
            alpha,
            theta: s.theta,
            tol,
            sweep: s.sweep,
            grid: s.grid,
            out: s.out,
            format,
            suite: Suite::All,
        };
        spec.check_values()?;
        Ok(spec)
    }

    fn check_values(&self) -> Result<(), ConfigError> {
        let values = |var: Variable, scalar: f64| -> Vec<f64> {
            match self.sweep {
                Some(sw) if sw.var == var => sw.values(),
                _ => vec![scalar],
            }
        };
        for k in values(Variable::K, self.k) {
            if !(k > 0.0 && k.is_finite()) {
                return invalid(format!("k must be positive, got {k}"));
            }
        }
        for a in values(Variable::A, self.a) {
            if !(a >= 0.0 && a.is_finite()) {
                return invalid(format!("a must be non-negative, got {a}"));
            }
        }
        for alpha in values(Variable::Alpha, self.alpha) {
            if !alpha.is_finite() {
                return invalid(format!("alpha must be finite, got {alpha}"));
            }
        }
        if let Some(t) = self.theta {
            if !(t > -std::f64::consts::PI && t <= std::f64::consts::PI) {
                return invalid(format!("theta = {t} is outside (-pi, pi]"));
            }
        }
        if let Some(sw) = self.sweep.filter(|sw| sw.var == Variable::Theta) {
            for t in sw.values() {
                if !(t > -std::f64::consts::PI && t <= std::f64::consts::PI) {
                    return invalid(format!("theta sweep node {t} is outside (-pi, pi]"));
                }
            }
        }
        if let Some(g) = self.grid {
            if g.r_min < self.a {
                return invalid(format!(
                    "grid r_min = {} lies inside the cylinder a = {}",
                    g.r_min, self.a
                ));
            }
            if !(g.r_min > 0.0) {
                return invalid("grid r_min must be positive");
            }
        }
        Ok(())
    }
}
