//! Numerical characterization of distance functions.
//!
//! Every routine samples; none of them proves anything. Sample counts and
//! tolerances are chosen for double precision with room to spare.

mod asymptote;
mod density;
mod invert;
pub(crate) mod monotonicity;
pub(crate) mod origin;
pub(crate) mod probe;
mod properties;

pub use asymptote::{detect_asymptotes, AsymptoteReport, Horizontal, Slant};
pub use density::{density_profile, Curvature, DensityPoint};
pub use invert::{invert_value, Inverter};
pub use monotonicity::{classify_monotonicity, classify_monotonicity_with, Monotonicity, Witness};
pub use origin::{locate_origin, locate_origin_with, OriginKind, OriginReport, Side};
pub use properties::{
    check_exp_shift, check_homogeneity, check_log_shift, check_point_symmetry, check_self_inverse,
    suggest_symmetry_centers, Property, PropertyReport,
};

use crate::domain::{Domain, ExtReal};
use crate::expr::EvalError;
use thiserror::Error;

/// Default number of Chebyshev nodes for the monotonicity check.
pub const DEFAULT_SAMPLES: usize = 257;
/// Relative tolerance for inversion.
pub const TOL_INV: f64 = 1e-12;
/// Absolute tolerance on property residuals.
pub const TOL_PROP: f64 = 1e-8;

/// Tolerance on `|f(x0)|` for a located root.
pub fn tol_root(x0: f64) -> f64 {
    1e-10 * (1.0 + x0.abs())
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum AnalysisError {
    #[error("function is not strictly monotone on the domain: {0}")]
    NotMonotone(Witness),
    #[error("function is undefined at x = {x}: {source}")]
    Undefined {
        x: f64,
        #[source]
        source: EvalError,
    },
    #[error("value {value} is outside the image [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no sample point could be used: {0}")]
    NoSamples(String),
}

/// Map `t` in (-1, 1) onto the domain; identity-like for bounded domains.
fn map_unit(domain: &Domain, t: f64) -> f64 {
    match (domain.lo(), domain.hi()) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => 0.5 * (a + b) + 0.5 * (b - a) * t,
        (ExtReal::Finite(a), _) => {
            let l = a.abs().max(1.0);
            a + l * (1.0 + t) / (1.0 - t)
        }
        (_, ExtReal::Finite(b)) => {
            let l = b.abs().max(1.0);
            b - l * (1.0 - t) / (1.0 + t)
        }
        _ => t / (1.0 - t * t),
    }
}

/// Chebyshev nodes of the first kind, carried onto the domain.
pub(crate) fn chebyshev_grid(domain: &Domain, n: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = crate::numeric::chebyshev_nodes(-1.0, 1.0, n)
        .into_iter()
        .map(|t| map_unit(domain, t))
        .filter(|&x| domain.contains(x))
        .collect();
    xs.dedup();
    xs
}

/// Midpoint-uniform grid in the unit variable, carried onto the domain.
pub(crate) fn uniform_grid(domain: &Domain, n: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..n)
        .map(|i| -1.0 + (2 * i + 1) as f64 / n as f64)
        .map(|t| map_unit(domain, t))
        .filter(|&x| domain.contains(x))
        .collect();
    xs.dedup();
    xs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_stay_inside() {
        for text in ["[1:10]", "(0:inf)", "(-inf:10]", "-inf:inf"] {
            let d = Domain::parse(text).unwrap();
            for xs in [chebyshev_grid(&d, 257), uniform_grid(&d, 64)] {
                assert!(xs.iter().all(|&x| d.contains(x)), "{text}");
                assert!(xs.windows(2).all(|w| w[0] < w[1]), "{text}");
            }
        }
    }
}
