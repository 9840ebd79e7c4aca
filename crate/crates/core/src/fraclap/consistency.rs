use serde::{Deserialize, Serialize};

use super::{RouteEvaluator, RouteId, RouteValue};
use crate::budget::Budget;
use crate::dunkl1d::{DunklParams, TestFunction};
use crate::error::{domain, Result};
use crate::exec;
use crate::specfun::ILL_CONDITIONED_MARGIN;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteFailure {
    pub route: RouteId,
    pub message: String,
}

/// All requested routes at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub point: f64,
    pub alpha: f64,
    pub params: DunklParams,
    /// Successful routes, in [`RouteId`] order.
    pub values: Vec<RouteValue>,
    pub failures: Vec<RouteFailure>,
    /// max |v_i − v_j| over pairs of successful routes.
    pub max_pairwise_dev: f64,
    /// `max_pairwise_dev` divided by the largest |v_i| (0 when every value is 0).
    pub relative_dev: f64,
    pub tolerance: f64,
    /// α within the conditioning margin of 0 or 2.
    pub ill_conditioned: bool,
    pub verdict: Verdict,
}

impl ConsistencyReport {
    /// Builds a report from route values computed elsewhere (for example by the radial
    /// routes in higher dimension), applying the same verdict rule as [`cross_check`].
    pub fn assemble(
        point: f64,
        alpha: f64,
        params: &DunklParams,
        mut values: Vec<RouteValue>,
        mut failures: Vec<RouteFailure>,
        tol: f64,
    ) -> Self {
        values.sort_by_key(|v| v.route);
        failures.sort_by_key(|f| f.route);
        let refs: Vec<&RouteValue> = values.iter().collect();
        let (max_pairwise_dev, relative_dev) = relative_spread(&refs);
        let ill_conditioned = alpha <= ILL_CONDITIONED_MARGIN || alpha >= 2.0 - ILL_CONDITIONED_MARGIN;
        let verdict = if failures.is_empty() && relative_dev < tol { Verdict::Pass } else { Verdict::Fail };
        Self {
            point,
            alpha,
            params: *params,
            values,
            failures,
            max_pairwise_dev,
            relative_dev,
            tolerance: tol,
            ill_conditioned,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn value(&self, route: RouteId) -> Option<&RouteValue> {
        self.values.iter().find(|v| v.route == route)
    }

    /// Largest relative deviation over the pairs that include neither `skip` route.
    pub fn relative_dev_excluding(&self, skip: &[RouteId]) -> f64 {
        let kept: Vec<&RouteValue> = self.values.iter().filter(|v| !skip.contains(&v.route)).collect();
        relative_spread(&kept).1
    }
}

/// Documented agreement budget for a pair of routes: the extension route carries an
/// extrapolated limit and gets 1e-5, every other pair 1e-6.
pub fn route_tolerance(a: RouteId, b: RouteId) -> f64 {
    if a == RouteId::Extension || b == RouteId::Extension {
        1e-5
    } else {
        1e-6
    }
}

fn relative_spread(values: &[&RouteValue]) -> (f64, f64) {
    let mut dev: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            dev = dev.max((a.value - b.value).abs());
        }
    }
    let scale = values.iter().map(|v| v.value.abs()).fold(0.0, f64::max);
    let rel = if dev == 0.0 { 0.0 } else { dev / scale };
    (dev, rel)
}

/// Evaluates `routes` at every point and compares them. Route errors are recorded in
/// the report; a point passes when no route failed and the relative deviation is
/// strictly below `tol`.
pub fn cross_check(
    u: &TestFunction,
    points: &[f64],
    alpha: f64,
    params: &DunklParams,
    routes: &[RouteId],
    tol: f64,
    budget: &Budget,
) -> Result<Vec<ConsistencyReport>> {
    if !(tol >= 0.0) {
        return domain(format!("tolerance {tol} must be nonnegative"));
    }
    let mut routes = routes.to_vec();
    routes.sort();
    routes.dedup();
    if routes.is_empty() {
        return domain("no routes requested");
    }
    let evaluator = RouteEvaluator::new(u, alpha, params, budget)?;
    if routes.iter().any(|r| matches!(r, RouteId::Spectral | RouteId::Bochner | RouteId::Extension)) {
        // Warm the shared spectrum once; a failure resurfaces in each route that needs it.
        let _ = evaluator.spectrum();
    }
    let tasks: Vec<(f64, RouteId)> =
        points.iter().flat_map(|&x| routes.iter().map(move |&r| (x, r))).collect();
    let results = exec::map(budget.execution, &tasks, |&(x, r)| evaluator.evaluate(r, x));
    let mut reports = Vec::with_capacity(points.len());
    for (i, &point) in points.iter().enumerate() {
        let mut values = Vec::new();
        let mut failures = Vec::new();
        for (j, &route) in routes.iter().enumerate() {
            match &results[i * routes.len() + j] {
                Ok(v) => values.push(*v),
                Err(e) => failures.push(RouteFailure { route, message: e.to_string() }),
            }
        }
        reports.push(ConsistencyReport::assemble(point, alpha, params, values, failures, tol));
    }
    Ok(reports)
}
