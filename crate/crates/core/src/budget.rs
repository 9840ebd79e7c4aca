//! Numerical budgets shared by all routes. Defaults are compiled in; the CLI may
//! override any field from a config file or the environment.

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::quadrature::{TailBudget, Tolerance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Tolerance for every adaptive one-dimensional integral.
    pub tol: Tolerance,
    /// Half-line truncation policy.
    pub tail: TailBudget,
    /// Smallest and largest Gauss–Jacobi rule used by the translation.
    pub jacobi_min_nodes: usize,
    pub jacobi_max_nodes: usize,
    /// Largest panel width of the frequency grid.
    pub spectral_panel: f64,
    /// Number of geometric panels refining the frequency grid toward 0.
    pub spectral_levels: usize,
    /// Largest |x| the frequency grid must resolve.
    pub x_max: f64,
    /// Frequency cutoff used when the decay hint gives no better bound.
    pub max_frequency: f64,
    /// Below this |y| the second difference is replaced by its Taylor term.
    pub taylor_cutoff: f64,
    /// Inner radii for the principal-value mode.
    pub eps_sequence: Vec<f64>,
    /// Geometric y-sequence for the Neumann limit: y0, ratio, count.
    pub neumann_y0: f64,
    pub neumann_ratio: f64,
    pub neumann_count: usize,
    pub execution: Execution,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            tail: TailBudget::default(),
            jacobi_min_nodes: 32,
            jacobi_max_nodes: 512,
            spectral_panel: 0.5,
            spectral_levels: 40,
            x_max: 8.0,
            max_frequency: 200.0,
            taylor_cutoff: 1e-4,
            eps_sequence: (0..8).map(|j| 0.1 * 0.5f64.powi(j)).collect(),
            neumann_y0: 0.5,
            neumann_ratio: 0.5,
            neumann_count: 8,
            execution: Execution::default(),
        }
    }
}
