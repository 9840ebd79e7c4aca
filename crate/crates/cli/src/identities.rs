//! Executable identities: each row compares a computed quantity with its closed form.

use clap::ValueEnum;
use dunkl_frac::budget::Budget;
use dunkl_frac::dist::{fundamental_pairing, pole_index, residue, riesz_transform_check};
use dunkl_frac::dunkl1d::{bump_gaussian, gaussian, DunklParams};
use dunkl_frac::extension::poisson_mass;
use dunkl_frac::fraclap::{kernel_integral, spectral_route, LineDomain};
use dunkl_frac::quadrature::Tolerance;
use dunkl_frac::radial::{radial_frac_laplacian, RadialMode, RadialProfile};
use dunkl_frac::specfun::{classical_constant, gamma, ConstantSet};
use dunkl_frac::{exec, Error};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    /// γ_{0,d}(α) equals the classical constant.
    ClassicalConstant,
    /// The kernel integral of the symbol equals γ_{k,1}(α)|ξ|^α (rank one).
    KernelIntegral,
    /// The operator on the Gaussian at the origin.
    GaussianOrigin,
    /// The Poisson kernel has unit mass.
    PoissonMass,
    /// Pairing the fundamental solution with the operator returns φ(0).
    FundamentalSolution,
    /// The transform of |x|^{−α} is a multiple of |x|^{α−2γ_k−d}.
    RieszTransform,
    /// Residue of the continued power pairing at its first pole.
    Residue,
}

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::ClassicalConstant => "classical-constant",
            IdentityId::KernelIntegral => "kernel-integral",
            IdentityId::GaussianOrigin => "gaussian-origin",
            IdentityId::PoissonMass => "poisson-mass",
            IdentityId::FundamentalSolution => "fundamental-solution",
            IdentityId::RieszTransform => "riesz-transform",
            IdentityId::Residue => "residue",
        }
    }

    pub const ALL: [IdentityId; 7] = [
        IdentityId::ClassicalConstant,
        IdentityId::KernelIntegral,
        IdentityId::GaussianOrigin,
        IdentityId::PoissonMass,
        IdentityId::FundamentalSolution,
        IdentityId::RieszTransform,
        IdentityId::Residue,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub identity: IdentityId,
    /// Sample within the identity, e.g. `xi=0.5`.
    pub case: String,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    /// Relative deviation, or absolute where noted in `note`.
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub outcome: Outcome,
    pub note: String,
}

struct Ctx<'a> {
    params: DunklParams,
    alpha: f64,
    budget: &'a Budget,
}

fn compare(id: IdentityId, case: String, measured: f64, expected: f64, tol: f64, relative: bool) -> IdentityRow {
    let dev = (measured - expected).abs() / if relative { expected.abs() } else { 1.0 };
    IdentityRow {
        identity: id,
        case,
        measured: Some(measured),
        expected: Some(expected),
        deviation: Some(dev),
        tolerance: tol,
        outcome: if dev <= tol { Outcome::Pass } else { Outcome::Fail },
        note: if relative { String::new() } else { "absolute deviation".into() },
    }
}

fn not_run(id: IdentityId, case: String, tol: f64, outcome: Outcome, note: String) -> IdentityRow {
    IdentityRow { identity: id, case, measured: None, expected: None, deviation: None, tolerance: tol, outcome, note }
}

fn failed(id: IdentityId, case: String, tol: f64, e: Error) -> IdentityRow {
    not_run(id, case, tol, Outcome::Fail, e.to_string())
}

/// Checks whether an identity applies to the configured (k, d, α); `Some(reason)` if not.
pub fn inapplicable(id: IdentityId, config: &RunConfig) -> Option<String> {
    let h = config.k + 0.5 * config.d as f64;
    match id {
        IdentityId::KernelIntegral if config.d != 1 => Some("evaluated in rank one (d = 1) only".into()),
        IdentityId::FundamentalSolution if !(2.0 * h > config.alpha) => {
            Some("needs 2*gamma_k + d > alpha".into())
        }
        IdentityId::RieszTransform => {
            let p = DunklParams { k: config.k, d: config.d };
            pole_index(config.alpha, &p).map(|_| "alpha is a pole of the power pairing".into())
        }
        _ => None,
    }
}

fn classical_constant_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::ClassicalConstant;
    let (d, alpha) = (ctx.params.d, ctx.alpha);
    let case = format!("k=0,d={d},alpha={alpha}");
    match ConstantSet::new(0.0, d, alpha) {
        Ok(c) => vec![compare(id, case, c.gamma_kd_alpha, classical_constant(d, alpha), 1e-14, true)],
        Err(e) => vec![failed(id, case, 1e-14, e)],
    }
}

fn kernel_integral_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::KernelIntegral;
    let tol = 1e-6;
    let gamma_kd = match ConstantSet::new(ctx.params.k, 1, ctx.alpha) {
        Ok(c) => c.gamma_kd_alpha,
        Err(e) => return vec![failed(id, String::new(), tol, e)],
    };
    [0.5f64, 1.0, 2.0]
        .iter()
        .map(|&xi| {
            let case = format!("xi={xi}");
            let q = Tolerance::new(1e-14, 1e-10);
            match kernel_integral(xi, ctx.alpha, &ctx.params, LineDomain::HalfLine, q) {
                Ok(v) => compare(id, case, v.value, gamma_kd * xi.powf(ctx.alpha), tol, true),
                Err(e) => failed(id, case, tol, e),
            }
        })
        .collect()
}

fn gaussian_origin_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::GaussianOrigin;
    let tol = 1e-8;
    let p = ctx.params;
    let h = p.half_dim();
    let want = 2f64.powf(0.5 * ctx.alpha) * gamma(h + 0.5 * ctx.alpha) / gamma(h);
    let u = gaussian().without_transform();
    let value = if p.d == 1 {
        spectral_route(&u, 0.0, ctx.alpha, &p, ctx.budget).map(|v| v.value)
    } else {
        RadialProfile::for_params(u, &p)
            .and_then(|u| radial_frac_laplacian(&u, 0.0, ctx.alpha, &p, RadialMode::Spectral, ctx.budget))
            .map(|v| v.value)
    };
    let case = "x=0".to_owned();
    vec![match value {
        Ok(v) => compare(id, case, v, want, tol, true),
        Err(e) => failed(id, case, tol, e),
    }]
}

fn poisson_mass_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::PoissonMass;
    let tol = 1e-8;
    [0.3, 1.0, 2.0]
        .iter()
        .map(|&y| {
            let case = format!("y={y}");
            match poisson_mass(ctx.alpha, y, &ctx.params) {
                Ok(m) => compare(id, case, m.value, 1.0, tol, false),
                Err(e) => failed(id, case, tol, e),
            }
        })
        .collect()
}

fn fundamental_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::FundamentalSolution;
    let tol = 1e-4;
    [gaussian(), bump_gaussian()]
        .iter()
        .map(|phi| {
            let case = format!("phi={}", phi.label());
            match fundamental_pairing(ctx.alpha, phi, &ctx.params, ctx.budget) {
                Ok(r) => {
                    let mut row = compare(id, case, r.value, r.expected, tol, false);
                    if r.rank_one_extension {
                        row.note.push_str("; d = 1 extends the classical d >= 2 statement");
                    }
                    row
                }
                Err(e) => failed(id, case, tol, e),
            }
        })
        .collect()
}

fn riesz_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::RieszTransform;
    let tol = 1e-6;
    let case = "phi=gaussian".to_owned();
    vec![match riesz_transform_check(ctx.alpha, &gaussian(), &ctx.params) {
        Ok(c) => compare(id, case, c.lhs, c.rhs, tol, true),
        Err(e) => failed(id, case, tol, e),
    }]
}

fn residue_rows(ctx: &Ctx) -> Vec<IdentityRow> {
    let id = IdentityId::Residue;
    let tol = 1e-6;
    let case = "p=0,phi=gaussian".to_owned();
    vec![match residue(0, &gaussian(), &ctx.params) {
        Ok(r) => compare(id, case, r.value, r.derived, tol, true),
        Err(e) => failed(id, case, tol, e),
    }]
}

/// Runs the selected identities (all of them when `selected` is empty). Identities
/// that do not apply to the configuration are reported as skipped.
pub fn run(config: &RunConfig, selected: &[IdentityId]) -> Vec<IdentityRow> {
    let mut ids: Vec<IdentityId> = if selected.is_empty() { IdentityId::ALL.to_vec() } else { selected.to_vec() };
    ids.sort();
    ids.dedup();
    let ctx = Ctx { params: DunklParams { k: config.k, d: config.d }, alpha: config.alpha, budget: &config.budget };
    let groups = exec::map(config.budget.execution, &ids, |&id| {
        if let Some(reason) = inapplicable(id, config) {
            return vec![not_run(id, String::new(), 0.0, Outcome::Skipped, reason)];
        }
        match id {
            IdentityId::ClassicalConstant => classical_constant_rows(&ctx),
            IdentityId::KernelIntegral => kernel_integral_rows(&ctx),
            IdentityId::GaussianOrigin => gaussian_origin_rows(&ctx),
            IdentityId::PoissonMass => poisson_mass_rows(&ctx),
            IdentityId::FundamentalSolution => fundamental_rows(&ctx),
            IdentityId::RieszTransform => riesz_rows(&ctx),
            IdentityId::Residue => residue_rows(&ctx),
        }
    });
    groups.into_iter().flatten().collect()
}
