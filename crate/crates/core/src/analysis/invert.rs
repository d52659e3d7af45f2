use super::probe::{edge, Edge};
use super::AnalysisError;
use crate::domain::{Domain, End};
use crate::expr::EvalError;
use crate::func::RealFn;
use crate::numeric::brent;

/// Precomputed bracket for repeated inversion of one monotone function.
///
/// The bracket runs between the closed endpoints, or the innermost probes
/// toward open or infinite ends.
#[derive(Clone, Debug)]
pub struct Inverter {
    bracket: Result<(Edge, Edge), EvalError>,
}

impl Inverter {
    pub fn new<F: RealFn + ?Sized>(f: &F, domain: &Domain) -> Inverter {
        let bracket = edge(f, domain, End::Lo)
            .and_then(|lo| Ok((lo, edge(f, domain, End::Hi)?)))
            .map_err(|e| match e {
                AnalysisError::Undefined { source, .. } => source,
                _ => EvalError::NonFinite { value: f64::NAN },
            });
        Inverter { bracket }
    }

    /// `[min, max]` of the sampled image.
    pub fn image(&self) -> Option<(f64, f64)> {
        let (lo, hi) = self.bracket.as_ref().ok()?;
        Some((lo.value.min(hi.value), lo.value.max(hi.value)))
    }

    /// Solve `f(x) = d`; `f` must be the function the inverter was built for.
    pub fn invert<F: RealFn + ?Sized>(&self, f: &F, d: f64) -> Result<f64, EvalError> {
        let (lo, hi) = self.bracket.as_ref().map_err(Clone::clone)?;
        if !d.is_finite() {
            return Err(EvalError::OutsideImage { value: d });
        }
        let (min, max) = (lo.value.min(hi.value), lo.value.max(hi.value));
        // a few ulps of slack so that endpoint values round-trip
        let slack = 4.0 * f64::EPSILON * min.abs().max(max.abs());
        if d < min - slack || d > max + slack {
            return Err(EvalError::OutsideImage { value: d });
        }
        if d == lo.value || (d - lo.value).abs() <= slack && (d < min || d > max) {
            return Ok(lo.x);
        }
        if d == hi.value || (d - hi.value).abs() <= slack && (d < min || d > max) {
            return Ok(hi.x);
        }
        let g = |x: f64| f.value(x).map(|v| v - d);
        brent(g, lo.x, hi.x, lo.value - d, hi.value - d, 0.0)
    }
}

/// Solve `f(x) = d` on a domain where `f` is strictly monotone.
pub fn invert_value<F: RealFn + ?Sized>(f: &F, domain: &Domain, d: f64) -> Result<f64, AnalysisError> {
    let inv = Inverter::new(f, domain);
    inv.invert(f, d).map_err(|e| match e {
        EvalError::OutsideImage { value } => {
            let (min, max) = inv.image().unwrap_or((f64::NAN, f64::NAN));
            AnalysisError::OutOfRange { value, min, max }
        }
        source => AnalysisError::Undefined { x: d, source },
    })
}
