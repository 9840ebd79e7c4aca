//! Run configuration: compiled-in defaults, overridden in turn by a key=value file, the
//! `FRACLAP_BUDGET` environment variable and command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use dunkl_frac::budget::Budget;
use dunkl_frac::exec::Execution;
use dunkl_frac::fraclap::RouteId;
use serde::{Deserialize, Serialize};

use crate::error::{usage, CliError, Result};
use crate::report::num;

pub const BUDGET_ENV: &str = "FRACLAP_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionId {
    Gaussian,
    MollifiedConstant,
    PolyGaussian,
    UserTable,
}

impl FunctionId {
    fn name(self) -> &'static str {
        match self {
            FunctionId::Gaussian => "gaussian",
            FunctionId::MollifiedConstant => "mollified-constant",
            FunctionId::PolyGaussian => "poly-gaussian",
            FunctionId::UserTable => "user-table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// An inclusive grid `start:stop:step`; a single number is a one-point grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

const MAX_POINTS: usize = 100_000;

impl PointSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for PointSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("'{t}' is not a number in points '{s}'"));
        let spec = match parts.as_slice() {
            [x] => {
                let x = num(x)?;
                PointSpec { start: x, stop: x, step: 1.0 }
            }
            [a, b, h] => PointSpec { start: num(a)?, stop: num(b)?, step: num(h)? },
            _ => return Err(format!("points '{s}' must be start:stop:step or a single value")),
        };
        if !(spec.start.is_finite() && spec.stop.is_finite()) {
            return Err(format!("points '{s}' must be finite"));
        }
        if !(spec.step > 0.0 && spec.step.is_finite()) {
            return Err(format!("points '{s}': step must be positive"));
        }
        if spec.stop < spec.start {
            return Err(format!("points '{s}': stop is below start"));
        }
        if (spec.stop - spec.start) / spec.step >= MAX_POINTS as f64 {
            return Err(format!("points '{s}' asks for more than {MAX_POINTS} points"));
        }
        Ok(spec)
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", num(self.start), num(self.stop), num(self.step))
    }
}

/// A parsed `--routes` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteList(pub Vec<RouteId>);

pub fn parse_route_list(s: &str) -> std::result::Result<RouteList, String> {
    parse_routes(s).map(RouteList)
}

/// `all` or a comma-separated list of route names.
pub fn parse_routes(s: &str) -> std::result::Result<Vec<RouteId>, String> {
    if s.trim() == "all" {
        return Ok(RouteId::ALL.to_vec());
    }
    let mut routes = s
        .split(',')
        .map(|r| r.trim().parse::<RouteId>().map_err(|e| format!("{e}; expected one of {}", route_names())))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    routes.sort();
    routes.dedup();
    Ok(routes)
}

fn route_names() -> String {
    RouteId::ALL.iter().map(|r| r.name()).collect::<Vec<_>>().join(", ")
}

pub fn parse_alpha(s: &str) -> std::result::Result<f64, String> {
    let alpha: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    check_alpha(alpha)?;
    Ok(alpha)
}

fn check_alpha(alpha: f64) -> std::result::Result<(), String> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(format!("alpha = {alpha} is outside the valid interval (0, 2)"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub k: f64,
    pub d: u32,
    pub alpha: f64,
    pub function: FunctionId,
    /// Width L of the mollified constant e^{−x²/(2L²)}.
    pub width: f64,
    /// CSV file (x,value) read by the user-table function.
    pub data: Option<PathBuf>,
    pub points: PointSpec,
    pub routes: Vec<RouteId>,
    pub tol: f64,
    pub format: Format,
    pub budget: Budget,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            k: 0.5,
            d: 1,
            alpha: 1.0,
            function: FunctionId::Gaussian,
            width: 10.0,
            data: None,
            points: PointSpec { start: -2.0, stop: 2.0, step: 0.5 },
            routes: RouteId::ALL.to_vec(),
            tol: 1e-5,
            format: Format::Csv,
            budget: Budget::default(),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| CliError::Usage(format!("invalid value '{value}' for '{key}'")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value.split_whitespace().map(|v| parse(key, v)).collect()
}

fn execution_name(e: Execution) -> &'static str {
    match e {
        Execution::Sequential => "sequential",
        Execution::Parallel => "parallel",
    }
}

/// Sets one budget field; `key` is the field name without the `budget.` prefix.
pub fn set_budget(budget: &mut Budget, key: &str, value: &str) -> Result<()> {
    let full = format!("budget.{key}");
    match key {
        "tol_abs" => budget.tol.abs = parse(&full, value)?,
        "tol_rel" => budget.tol.rel = parse(&full, value)?,
        "max_intervals" => budget.tol.max_intervals = parse(&full, value)?,
        "jacobi_min_nodes" => budget.jacobi_min_nodes = parse(&full, value)?,
        "jacobi_max_nodes" => budget.jacobi_max_nodes = parse(&full, value)?,
        "spectral_panel" => budget.spectral_panel = parse(&full, value)?,
        "spectral_levels" => budget.spectral_levels = parse(&full, value)?,
        "x_max" => budget.x_max = parse(&full, value)?,
        "max_frequency" => budget.max_frequency = parse(&full, value)?,
        "taylor_cutoff" => budget.taylor_cutoff = parse(&full, value)?,
        "eps_sequence" => budget.eps_sequence = parse_list(&full, value)?,
        "neumann_y0" => budget.neumann_y0 = parse(&full, value)?,
        "neumann_ratio" => budget.neumann_ratio = parse(&full, value)?,
        "neumann_count" => budget.neumann_count = parse(&full, value)?,
        "execution" => {
            budget.execution = match value.trim() {
                "sequential" => Execution::Sequential,
                "parallel" => Execution::Parallel,
                other => return usage(format!("execution must be sequential or parallel, got '{other}'")),
            }
        }
        _ => return usage(format!("unknown budget key '{key}'")),
    }
    Ok(())
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if let Some(field) = key.strip_prefix("budget.") {
            return set_budget(&mut self.budget, field, value);
        }
        match key {
            "k" => self.k = parse(key, value)?,
            "d" => self.d = parse(key, value)?,
            "alpha" => self.alpha = parse::<f64>(key, value)?,
            "func" => {
                self.function = FunctionId::from_str(value.trim(), false).map_err(CliError::Usage)?
            }
            "width" => self.width = parse(key, value)?,
            "data" => self.data = (!value.trim().is_empty()).then(|| PathBuf::from(value.trim())),
            "points" => self.points = value.parse().map_err(CliError::Usage)?,
            "routes" => self.routes = parse_routes(value).map_err(CliError::Usage)?,
            "tol" => self.tol = parse(key, value)?,
            "format" => self.format = Format::from_str(value.trim(), false).map_err(CliError::Usage)?,
            _ => return usage(format!("unknown config key '{key}'")),
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and lines starting with `#` are skipped.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value, got '{line}'", i + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        self.apply_kv(&text)
    }

    /// Applies a comma-separated `key=value` list of budget fields, as found in
    /// [`BUDGET_ENV`]. The `budget.` prefix is optional.
    pub fn apply_budget_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{BUDGET_ENV}: expected key=value, got '{item}'")))?;
            let key = key.trim();
            set_budget(&mut self.budget, key.strip_prefix("budget.").unwrap_or(key), value)?;
        }
        Ok(())
    }

    /// Serializes every field in the key=value format read by [`RunConfig::apply_kv`].
    pub fn to_kv(&self) -> String {
        let b = &self.budget;
        let routes: Vec<&str> = self.routes.iter().map(|r| r.name()).collect();
        let eps: Vec<String> = b.eps_sequence.iter().map(|&v| num(v)).collect();
        let data = self.data.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        let format = match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let lines = [
            ("k", num(self.k)),
            ("d", self.d.to_string()),
            ("alpha", num(self.alpha)),
            ("func", self.function.name().to_owned()),
            ("width", num(self.width)),
            ("data", data),
            ("points", self.points.to_string()),
            ("routes", routes.join(",")),
            ("tol", num(self.tol)),
            ("format", format.to_owned()),
            ("budget.tol_abs", num(b.tol.abs)),
            ("budget.tol_rel", num(b.tol.rel)),
            ("budget.max_intervals", b.tol.max_intervals.to_string()),
            ("budget.jacobi_min_nodes", b.jacobi_min_nodes.to_string()),
            ("budget.jacobi_max_nodes", b.jacobi_max_nodes.to_string()),
            ("budget.spectral_panel", num(b.spectral_panel)),
            ("budget.spectral_levels", b.spectral_levels.to_string()),
            ("budget.x_max", num(b.x_max)),
            ("budget.max_frequency", num(b.max_frequency)),
            ("budget.taylor_cutoff", num(b.taylor_cutoff)),
            ("budget.eps_sequence", eps.join(" ")),
            ("budget.neumann_y0", num(b.neumann_y0)),
            ("budget.neumann_ratio", num(b.neumann_ratio)),
            ("budget.neumann_count", b.neumann_count.to_string()),
            ("budget.execution", execution_name(b.execution).to_owned()),
        ];
        lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha).map_err(CliError::Usage)?;
        if !(self.k >= 0.0 && self.k.is_finite()) {
            return usage(format!("k = {} must be a finite nonnegative number", self.k));
        }
        if self.d == 0 {
            return usage("d must be at least 1");
        }
        if !(self.tol >= 0.0) {
            return usage(format!("tol = {} must be nonnegative", self.tol));
        }
        if self.routes.is_empty() {
            return usage("no routes requested");
        }
        if !(self.width > 0.0 && self.width.is_finite()) {
            return usage(format!("width = {} must be positive", self.width));
        }
        if self.function == FunctionId::UserTable && self.data.is_none() {
            return usage("the user-table function needs a data file (--data or data = ...)");
        }
        if self.d >= 2 {
            if let Some(r) = self.routes.iter().find(|r| !matches!(r, RouteId::Spectral | RouteId::SphericalMean)) {
                return usage(format!(
                    "route '{r}' is available in rank one only; for d >= 2 use spectral and spherical-mean"
                ));
            }
        }
        Ok(())
    }
}
