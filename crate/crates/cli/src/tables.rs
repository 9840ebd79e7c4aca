//! Plot-ready tables of constants and kernel profiles.

use clap::ValueEnum;
use dunkl_frac::dunkl1d::{heat_kernel, DunklParams};
use dunkl_frac::extension::poisson_kernel;
use dunkl_frac::specfun::ConstantSet;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// Every normalization constant over a (k, α) grid.
    Constants,
    /// x, heat kernel at time t.
    Heat,
    /// x, Poisson kernel at height y.
    Poisson,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub table: TableKind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub struct TableRequest {
    pub kind: TableKind,
    pub k_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub t: f64,
    pub y: f64,
}

pub fn build(config: &RunConfig, req: &TableRequest) -> Result<Table> {
    let params = DunklParams::new(config.k, config.d)?;
    let cols = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    Ok(match req.kind {
        TableKind::Constants => {
            let mut rows = Vec::new();
            for &k in &req.k_grid {
                for &alpha in &req.alpha_grid {
                    let c = ConstantSet::new(k, config.d, alpha)?;
                    rows.push(vec![
                        k,
                        config.d as f64,
                        alpha,
                        c.c_k,
                        c.sigma_k_d,
                        c.gamma_kd_alpha,
                        c.pi_kd_alpha,
                        c.varsigma_alpha,
                        c.d_k_alpha,
                        c.b_k_alpha,
                    ]);
                }
            }
            Table {
                table: req.kind,
                columns: cols(&[
                    "k",
                    "d",
                    "alpha",
                    "c_k",
                    "sigma_k_d",
                    "gamma_kd_alpha",
                    "pi_kd_alpha",
                    "varsigma_alpha",
                    "d_k_alpha",
                    "b_k_alpha",
                ]),
                rows,
            }
        }
        TableKind::Heat => {
            let rows = config
                .points
                .points()
                .into_iter()
                .map(|x| Ok(vec![x, heat_kernel(req.t, x, &params)?]))
                .collect::<Result<Vec<_>>>()?;
            Table { table: req.kind, columns: cols(&["x", "heat_kernel"]), rows }
        }
        TableKind::Poisson => {
            let rows = config
                .points
                .points()
                .into_iter()
                .map(|x| Ok(vec![x, poisson_kernel(config.alpha, req.y, x, &params)?]))
                .collect::<Result<Vec<_>>>()?;
            Table { table: req.kind, columns: cols(&["x", "poisson_kernel"]), rows }
        }
    })
}
