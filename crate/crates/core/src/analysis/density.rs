use super::{uniform_grid, AnalysisError};
use crate::domain::Domain;
use crate::func::RealFn;
use crate::par::{self, Execution};
use serde::{Deserialize, Serialize};

/// Sign of `f''`, estimated from neighbouring slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curvature {
    Convex,
    Concave,
    Flat,
}

/// Local tick density indicator: ticks are sparse where `slope` is large.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPoint {
    pub x: f64,
    /// `|f'(x)|`
    pub slope: f64,
    pub curvature: Curvature,
}

pub fn density_profile<F: RealFn + ?Sized>(
    f: &F,
    domain: &Domain,
    n: usize,
) -> Result<Vec<DensityPoint>, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::InvalidParameter(format!("need at least 2 points, got {n}")));
    }
    let xs = uniform_grid(domain, n);
    let slopes: Vec<(f64, f64)> = par::map(Execution::default(), &xs, |&x| {
        f.dual(x).ok().filter(|d| d.eps.is_finite()).map(|d| (x, d.eps))
    })
    .into_iter()
    .flatten()
    .collect();
    if slopes.len() < 2 {
        return Err(AnalysisError::NoSamples("the derivative is undefined almost everywhere".into()));
    }
    let scale = slopes.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let last = slopes.len() - 1;
    Ok((0..=last)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(last));
            let diff = slopes[b].1 - slopes[a].1;
            let curvature = if diff > tol {
                Curvature::Convex
            } else if diff < -tol {
                Curvature::Concave
            } else {
                Curvature::Flat
            };
            DensityPoint {
                x: slopes[i].0,
                slope: slopes[i].1.abs(),
                curvature,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;

    fn profile(src: &str, dom: &str, n: usize) -> Vec<DensityPoint> {
        density_profile(&Expression::parse(src).unwrap(), &Domain::parse(dom).unwrap(), n).unwrap()
    }

    #[test]
    fn mixed_curvature_of_quintic() {
        let p = profile("x^5-3*x^3", "(-3/sqrt(5):3/sqrt(5))", 200);
        let f = Expression::parse("x^5-3*x^3").unwrap();
        assert!(p.iter().all(|d| f.dual(d.x).unwrap().eps <= 0.0));
        assert!(p.iter().any(|d| d.curvature == Curvature::Convex));
        assert!(p.iter().any(|d| d.curvature == Curvature::Concave));
    }

    #[test]
    fn crowded_where_slope_vanishes() {
        let p = profile("(x-2)^3/100+1", "[-5:9]", 281);
        let min = p.iter().min_by(|a, b| a.slope.total_cmp(&b.slope)).unwrap();
        assert!((min.x - 2.0).abs() < 0.05, "{}", min.x);
    }

    #[test]
    fn linear_is_uniform() {
        let p = profile("3*x+1", "[0:4]", 50);
        assert!(p.iter().all(|d| d.slope == 3.0 && d.curvature == Curvature::Flat));
    }

    #[test]
    fn rejects_tiny_grids() {
        let f = Expression::parse("x").unwrap();
        assert!(density_profile(&f, &Domain::closed(0.0, 1.0), 1).is_err());
    }
}
