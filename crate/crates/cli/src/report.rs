//! Serialization of results. CSV columns are fixed by the request, not by the outcome,
//! so the same invocation always produces the same header; JSON documents carry
//! [`SCHEMA_VERSION`].

use std::io::Write;

use dunkl_frac::fraclap::{ConsistencyReport, RouteId};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Shortest representation that parses back to the same f64; scientific notation
/// outside [1e-4, 1e6).
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e6).contains(&a) || !a.is_finite() {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, command: &str, config: &RunConfig, body: T) -> Result<()> {
    let doc = Document { schema_version: SCHEMA_VERSION, command, config, body };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_csv(out: &mut dyn Write, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::num;

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, -0.0625, 1.2533141373155001, 3.41143543273575e-17, 2.5e9, -1e-4, 123456.75] {
            assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits(), "{}", num(v));
        }
        assert_eq!(num(3.4e-17), "3.4e-17");
        assert_eq!(num(0.5), "0.5");
    }
}

#[derive(Serialize)]
struct Reports<'a> {
    reports: &'a [ConsistencyReport],
}

/// Columns: point, value and error estimate per requested route, max_dev, rel_dev,
/// verdict, failures.
pub fn consistency(out: &mut dyn Write, config: &RunConfig, reports: &[ConsistencyReport]) -> Result<()> {
    match config.format {
        Format::Json => write_json(out, "fraclap", config, Reports { reports }),
        Format::Csv => {
            let mut header = vec!["point".to_owned()];
            for r in &config.routes {
                header.push(r.name().to_owned());
                header.push(format!("{}_err", r.name()));
            }
            header.extend(["max_dev", "rel_dev", "verdict", "failures"].map(String::from));
            let rows: Vec<Vec<String>> = reports.iter().map(|rep| consistency_row(&config.routes, rep)).collect();
            write_csv(out, &header, &rows)
        }
    }
}

fn consistency_row(routes: &[RouteId], rep: &ConsistencyReport) -> Vec<String> {
    let mut row = vec![num(rep.point)];
    for &r in routes {
        match rep.value(r) {
            Some(v) => row.extend([num(v.value), num(v.err_est)]),
            None => row.extend([String::new(), String::new()]),
        }
    }
    let verdict = if rep.passed() { "pass" } else { "fail" };
    let failures: Vec<String> = rep.failures.iter().map(|f| format!("{}: {}", f.route, f.message)).collect();
    row.extend([num(rep.max_pairwise_dev), num(rep.relative_dev), verdict.to_owned(), failures.join("; ")]);
    row
}
