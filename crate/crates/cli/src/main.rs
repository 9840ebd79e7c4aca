//! `fraclap`: evaluate the fractional Dunkl Laplacian by several routes, run the identity
//! suite and emit plot-ready tables.
//!
//! Exit codes: 0 when every verdict passes, 1 on a numerical failure, 2 on a usage error.

mod config;
mod error;
mod functions;
mod identities;
mod report;
mod tables;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dunkl_frac::dunkl1d::DunklParams;
use dunkl_frac::exec::{self, Execution};
use dunkl_frac::fraclap::{cross_check, ConsistencyReport, RouteFailure, RouteId, RouteValue};
use dunkl_frac::radial::{radial_frac_laplacian, RadialMode, RadialProfile};
use serde::Serialize;

use config::{parse_alpha, parse_route_list, Format, FunctionId, PointSpec, RouteList, RunConfig, BUDGET_ENV};
use error::Result;
use identities::{IdentityId, IdentityRow, Outcome};
use report::num;
use tables::{TableKind, TableRequest};

#[derive(Debug, Parser)]
#[command(name = "fraclap", version, about = "Fractional Dunkl Laplacian: route cross-checks, identities and tables")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

/// Settings shared by every command. Precedence: flags, then FRACLAP_BUDGET (budget
/// fields only), then the config file, then built-in defaults.
#[derive(Debug, Args)]
struct RunArgs {
    /// Multiplicity k >= 0.
    #[arg(long, global = true)]
    k: Option<f64>,
    /// Order of the operator, in (0, 2).
    #[arg(long, global = true, allow_negative_numbers = true, value_parser = parse_alpha)]
    alpha: Option<f64>,
    /// Dimension; d >= 2 uses radial functions.
    #[arg(long, global = true)]
    d: Option<u32>,
    #[arg(long = "func", global = true, value_enum)]
    function: Option<FunctionId>,
    /// Width L of the mollified constant.
    #[arg(long, global = true)]
    width: Option<f64>,
    /// CSV file of x,value rows for the user-table function.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Evaluation points start:stop:step (inclusive).
    #[arg(long, global = true, allow_hyphen_values = true)]
    points: Option<PointSpec>,
    /// Comma-separated routes, or `all`.
    #[arg(long, global = true, value_parser = parse_route_list)]
    routes: Option<RouteList>,
    /// Relative agreement required between routes.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Evaluate on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the identity suite (all identities unless --identity is given).
    Identities {
        #[arg(long = "identity", value_enum)]
        identities: Vec<IdentityId>,
    },
    /// Emit a table of constants or kernel profiles.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Grid of k for the constants table.
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,1.5")]
        k_grid: Vec<f64>,
        /// Grid of alpha for the constants table.
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5")]
        alpha_grid: Vec<f64>,
        /// Time of the heat kernel.
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Height of the Poisson kernel.
        #[arg(long, default_value_t = 1.0)]
        y: f64,
    },
    /// Print the resolved configuration in the key = value file format.
    Config,
}

fn resolve(args: &RunArgs) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    if let Some(path) = &args.config {
        c.apply_file(path)?;
    }
    if let Ok(spec) = std::env::var(BUDGET_ENV) {
        c.apply_budget_overrides(&spec)?;
    }
    if let Some(v) = args.k {
        c.k = v;
    }
    if let Some(v) = args.alpha {
        c.alpha = v;
    }
    if let Some(v) = args.d {
        c.d = v;
    }
    if let Some(v) = args.function {
        c.function = v;
    }
    if let Some(v) = args.width {
        c.width = v;
    }
    if let Some(v) = &args.data {
        c.data = Some(v.clone());
    }
    if let Some(v) = args.points {
        c.points = v;
    }
    if let Some(v) = &args.routes {
        c.routes = v.0.clone();
    }
    if let Some(v) = args.tol {
        c.tol = v;
    }
    if let Some(v) = args.format {
        c.format = v;
    }
    if args.sequential {
        c.budget.execution = Execution::Sequential;
    }
    c.validate()?;
    Ok(c)
}

/// Route values for radial functions in d >= 2: the spectral route and the
/// spherical-mean (translation) form.
fn radial_reports(config: &RunConfig, params: &DunklParams) -> Result<Vec<ConsistencyReport>> {
    let u = RadialProfile::for_params(functions::build(config)?, params)?;
    let points = config.points.points();
    let reports = exec::map(config.budget.execution, &points, |&x| {
        let mut values = Vec::new();
        let mut failures = Vec::new();
        for &route in &config.routes {
            let mode = if route == RouteId::Spectral { RadialMode::Spectral } else { RadialMode::Translation };
            match radial_frac_laplacian(&u, x.abs(), config.alpha, params, mode, &config.budget) {
                Ok(v) => values.push(RouteValue { route, value: v.value, err_est: v.abs_err, evals: 0 }),
                Err(e) => failures.push(RouteFailure { route, message: e.to_string() }),
            }
        }
        ConsistencyReport::assemble(x, config.alpha, params, values, failures, config.tol)
    });
    Ok(reports)
}

fn cmd_fraclap(config: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let params = DunklParams::new(config.k, config.d)?;
    let reports = if config.d == 1 {
        let u = functions::build(config)?;
        cross_check(&u, &config.points.points(), config.alpha, &params, &config.routes, config.tol, &config.budget)?
    } else {
        radial_reports(config, &params)?
    };
    report::consistency(out, config, &reports)?;
    Ok(reports.iter().all(ConsistencyReport::passed))
}

#[derive(Serialize)]
struct IdentityBody<'a> {
    identities: &'a [IdentityRow],
}

fn cmd_identities(config: &RunConfig, selected: &[IdentityId], out: &mut dyn Write) -> Result<bool> {
    for &id in selected {
        if let Some(reason) = identities::inapplicable(id, config) {
            return error::usage(format!("identity {} does not apply here: {reason}", id.name()));
        }
    }
    let rows = identities::run(config, selected);
    match config.format {
        Format::Json => report::write_json(out, "identities", config, IdentityBody { identities: &rows })?,
        Format::Csv => {
            let header = ["identity", "case", "measured", "expected", "deviation", "tolerance", "verdict", "note"]
                .map(String::from);
            let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.identity.name().to_owned(),
                        r.case.clone(),
                        opt(r.measured),
                        opt(r.expected),
                        opt(r.deviation),
                        num(r.tolerance),
                        r.outcome.name().to_owned(),
                        r.note.clone(),
                    ]
                })
                .collect();
            report::write_csv(out, &header, &body)?;
        }
    }
    Ok(rows.iter().all(|r| r.outcome != Outcome::Fail))
}

fn cmd_table(config: &RunConfig, req: &TableRequest, out: &mut dyn Write) -> Result<bool> {
    let table = tables::build(config, req)?;
    match config.format {
        Format::Json => report::write_json(out, "table", config, &table)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(|&v| num(v)).collect()).collect();
            report::write_csv(out, &table.columns, &rows)?;
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let config = resolve(&cli.run)?;
    let mut out: Box<dyn Write> = match &cli.run.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ok = match cli.command {
        None => cmd_fraclap(&config, &mut out)?,
        Some(Command::Identities { identities }) => cmd_identities(&config, &identities, &mut out)?,
        Some(Command::Table { kind, k_grid, alpha_grid, t, y }) => {
            cmd_table(&config, &TableRequest { kind, k_grid, alpha_grid, t, y }, &mut out)?
        }
        Some(Command::Config) => {
            out.write_all(config.to_kv().as_bytes())?;
            true
        }
    };
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
