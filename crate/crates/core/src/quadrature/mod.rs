//! Quadrature engines: Gaussian rules, adaptive Kronrod, half-line and oscillatory
//! integrals, and Richardson extrapolation.

mod adaptive;
mod extrapolate;
mod oscillatory;
mod rule;
mod semi_infinite;

pub use adaptive::{grading, gk21, integrate, integrate_graded, kronrod21, Integral, Tolerance};
pub use extrapolate::{richardson, Extrapolation};
pub use oscillatory::{integrate_bessel_oscillatory, wynn_epsilon};
pub use rule::{gauss_jacobi, gauss_jacobi_cached, gauss_laguerre, gauss_legendre, Domain, QuadRule};
pub use semi_infinite::{annulus_integral, integrate_semi_infinite, HalfLine, TailBudget};
