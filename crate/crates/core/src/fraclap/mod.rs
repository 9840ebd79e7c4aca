//! The fractional Dunkl Laplacian (−Δ_k)^{α/2} in rank one by five independent routes,
//! and a consistency engine comparing them.

mod consistency;
mod routes;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::dunkl1d::{DunklParams, Spectrum, TestFunction};
use crate::error::{domain, Error, Result};
use crate::specfun::ConstantSet;

pub use consistency::{cross_check, route_tolerance, ConsistencyReport, RouteFailure, Verdict};
pub use routes::{kernel_integral, LineDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteId {
    Spectral,
    Pointwise,
    SphericalMean,
    Bochner,
    Extension,
}

impl RouteId {
    pub const ALL: [RouteId; 5] = [
        RouteId::Spectral,
        RouteId::Pointwise,
        RouteId::SphericalMean,
        RouteId::Bochner,
        RouteId::Extension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RouteId::Spectral => "spectral",
            RouteId::Pointwise => "pointwise",
            RouteId::SphericalMean => "spherical-mean",
            RouteId::Bochner => "bochner",
            RouteId::Extension => "extension",
        }
    }
}

impl fmt::Display for RouteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RouteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RouteId::ALL
            .into_iter()
            .find(|r| r.name() == s || (s == "spherical" && *r == RouteId::SphericalMean))
            .ok_or_else(|| Error::Domain(format!("unknown route '{s}'")))
    }
}

/// One route's value at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub route: RouteId,
    pub value: f64,
    pub err_est: f64,
    /// Integrand evaluations (or spectral samples) consumed.
    pub evals: usize,
}

/// How the pointwise route evaluates its singular integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointwiseMode {
    /// Adaptive quadrature of the symmetric second difference on (0, ∞).
    #[default]
    Symmetric,
    /// Fixed tensor rule with the translation unrolled over its Jacobi measure.
    Unrolled,
    /// One-sided integrals outside (−ε, ε), extrapolated as ε → 0.
    PrincipalValue,
}

/// Evaluates the routes for one datum and order, sharing the datum's spectrum.
#[derive(Debug)]
pub struct RouteEvaluator {
    u: TestFunction,
    alpha: f64,
    params: DunklParams,
    budget: Budget,
    constants: ConstantSet,
    spectrum: OnceLock<Result<Arc<Spectrum>>>,
}

impl RouteEvaluator {
    pub fn new(u: &TestFunction, alpha: f64, params: &DunklParams, budget: &Budget) -> Result<Self> {
        if params.d != 1 {
            return domain(format!(
                "the five routes are rank-one (d = 1); use the radial module for d = {}",
                params.d
            ));
        }
        let constants = params.constants(alpha)?;
        Ok(Self {
            u: u.clone(),
            alpha,
            params: *params,
            budget: budget.clone(),
            constants,
            spectrum: OnceLock::new(),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn params(&self) -> &DunklParams {
        &self.params
    }

    pub fn function(&self) -> &TestFunction {
        &self.u
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn constants(&self) -> &ConstantSet {
        &self.constants
    }

    /// The datum's spectrum on a grid resolving |x| ≤ budget.x_max, computed once.
    pub fn spectrum(&self) -> Result<Arc<Spectrum>> {
        self.spectrum
            .get_or_init(|| {
                Spectrum::compute(&self.u, &self.params, self.budget.x_max, &self.budget).map(Arc::new)
            })
            .clone()
    }

    pub(crate) fn spectrum_for(&self, x: f64) -> Result<Arc<Spectrum>> {
        if x.abs() <= self.budget.x_max {
            self.spectrum()
        } else {
            Spectrum::compute(&self.u, &self.params, x.abs(), &self.budget).map(Arc::new)
        }
    }

    pub fn evaluate(&self, route: RouteId, x: f64) -> Result<RouteValue> {
        match route {
            RouteId::Spectral => self.spectral(x),
            RouteId::Pointwise => self.pointwise(x, PointwiseMode::Symmetric),
            RouteId::SphericalMean => self.spherical(x),
            RouteId::Bochner => self.bochner(x),
            RouteId::Extension => self.extension(x),
        }
    }
}

pub fn spectral_route(u: &TestFunction, x: f64, alpha: f64, params: &DunklParams, budget: &Budget) -> Result<RouteValue> {
    RouteEvaluator::new(u, alpha, params, budget)?.spectral(x)
}

pub fn pointwise_route(
    u: &TestFunction,
    x: f64,
    alpha: f64,
    params: &DunklParams,
    mode: PointwiseMode,
    budget: &Budget,
) -> Result<RouteValue> {
    RouteEvaluator::new(u, alpha, params, budget)?.pointwise(x, mode)
}

pub fn spherical_route(u: &TestFunction, x: f64, alpha: f64, params: &DunklParams, budget: &Budget) -> Result<RouteValue> {
    RouteEvaluator::new(u, alpha, params, budget)?.spherical(x)
}

pub fn bochner_route(u: &TestFunction, x: f64, alpha: f64, params: &DunklParams, budget: &Budget) -> Result<RouteValue> {
    RouteEvaluator::new(u, alpha, params, budget)?.bochner(x)
}

pub fn extension_route(u: &TestFunction, x: f64, alpha: f64, params: &DunklParams, budget: &Budget) -> Result<RouteValue> {
    RouteEvaluator::new(u, alpha, params, budget)?.extension(x)
}
