use super::{uniform_grid, AnalysisError, TOL_PROP};
use crate::domain::Domain;
use crate::func::RealFn;
use crate::numeric::median;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Property {
    /// `(f(q-z) + f(q+z))/2 = r`
    PointSymmetry { q: f64, r: f64 },
    /// `f(a^h x) = h + f(x)`
    LogShift { a: f64 },
    /// `f(lx) = l^k f(x)`; `k` is the estimate, absent when none was possible.
    Homogeneous { k: Option<f64> },
    /// `f(l + x) = h_l f(x)`; `h1` is the factor for `l = 1`.
    ExpShift { h1: Option<f64> },
    /// `f(f(x)) = x`
    SelfInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub max_residual: f64,
    pub samples_used: usize,
}

impl PropertyReport {
    fn new(property: Property, residuals: &[f64]) -> Self {
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        let max_residual = if residuals.iter().any(|r| r.is_nan()) {
            f64::INFINITY
        } else {
            max_residual
        };
        PropertyReport {
            property,
            holds: !residuals.is_empty() && max_residual <= TOL_PROP,
            max_residual,
            samples_used: residuals.len(),
        }
    }
}

fn finite_extent(domain: &Domain) -> (f64, f64) {
    let lo = domain.lo().finite().unwrap_or(f64::NEG_INFINITY);
    let hi = domain.hi().finite().unwrap_or(f64::INFINITY);
    (lo, hi)
}

/// Check point symmetry about `(q, r)` on `n_samples` offsets `z`.
pub fn check_point_symmetry<F: RealFn + ?Sized>(
    f: &F,
    q: f64,
    r: f64,
    domain: &Domain,
    n_samples: usize,
) -> PropertyReport {
    let property = Property::PointSymmetry { q, r };
    if !domain.contains(q) {
        return PropertyReport::new(property, &[]);
    }
    let (lo, hi) = finite_extent(domain);
    let reach = (q - lo).min(hi - q);
    let reach = if reach.is_finite() { reach } else { 10.0 * q.abs().max(1.0) };
    let residuals: Vec<f64> = (1..=n_samples.max(1))
        .map(|i| reach * i as f64 / n_samples.max(1) as f64)
        .filter(|z| domain.contains(q - z) && domain.contains(q + z))
        .filter_map(|z| {
            let a = f.value(q - z).ok()?;
            let b = f.value(q + z).ok()?;
            Some((0.5 * (a + b) - r).abs())
        })
        .collect();
    PropertyReport::new(property, &residuals)
}

/// Estimate a homogeneity order `k` from `ln(f(lx)/f(x))/ln(l)`.
pub fn check_homogeneity<F: RealFn + ?Sized>(f: &F, domain: &Domain) -> Result<PropertyReport, AnalysisError> {
    let (lo, hi) = finite_extent(domain);
    if lo < 0.0 {
        return Err(AnalysisError::InvalidParameter(format!(
            "homogeneity needs a domain of positive reals, got {domain}"
        )));
    }
    let a = if lo > 0.0 { lo } else { 1e-3 };
    let b = if hi.is_finite() { hi } else { a.max(1.0) * 1e6 };
    let n = 48;
    let xs = (0..n).map(|i| a * (b / a).powf((i as f64 + 0.5) / n as f64));
    let mut estimates = Vec::new();
    let mut broken = false;
    for x in xs {
        for lam in [2.0f64, 3.0, 10.0] {
            let y = lam * x;
            if !domain.contains(x) || !domain.contains(y) {
                continue;
            }
            let (Ok(fx), Ok(fy)) = (f.value(x), f.value(y)) else {
                continue;
            };
            if fx == 0.0 && fy == 0.0 {
                continue;
            }
            let ratio = fy / fx;
            if ratio > 0.0 && ratio.is_finite() {
                estimates.push(ratio.ln() / lam.ln());
            } else {
                broken = true;
            }
        }
    }
    if estimates.is_empty() {
        return Ok(PropertyReport::new(Property::Homogeneous { k: None }, &[]));
    }
    let k = median(&estimates);
    let mut residuals: Vec<f64> = estimates.iter().map(|e| (e - k).abs()).collect();
    if broken {
        residuals.push(f64::INFINITY);
    }
    Ok(PropertyReport::new(Property::Homogeneous { k: Some(k) }, &residuals))
}

/// Check `f(a^h x) = h + f(x)` for `h` in 1, 2, 3 on positive sample points.
pub fn check_log_shift<F: RealFn + ?Sized>(f: &F, a: f64) -> Result<PropertyReport, AnalysisError> {
    if !(a > 0.0) || a == 1.0 || !a.is_finite() {
        return Err(AnalysisError::InvalidParameter(format!(
            "log shift base must be positive and not 1, got {a}"
        )));
    }
    let residuals: Vec<f64> = (0..41)
        .map(|i| 10f64.powf(-2.0 + 0.1 * i as f64))
        .flat_map(|x| [1.0f64, 2.0, 3.0].map(|h| (x, h)))
        .filter_map(|(x, h)| {
            let fx = f.value(x).ok()?;
            let fy = f.value(a.powf(h) * x).ok()?;
            Some((fy - h - fx).abs())
        })
        .collect();
    Ok(PropertyReport::new(Property::LogShift { a }, &residuals))
}

/// Check that `f(l + x)/f(x)` is independent of `x` for `l` in 0.5, 1, 2.
pub fn check_exp_shift<F: RealFn + ?Sized>(f: &F) -> PropertyReport {
    let xs: Vec<f64> = (0..21).map(|i| -2.0 + 0.2 * i as f64).collect();
    let mut residuals = Vec::new();
    let mut h1 = None;
    for lam in [0.5, 1.0, 2.0] {
        let ratios: Vec<f64> = xs
            .iter()
            .filter_map(|&x| {
                let fx = f.value(x).ok()?;
                let fy = f.value(lam + x).ok()?;
                (fx != 0.0).then_some(fy / fx)
            })
            .collect();
        if ratios.is_empty() {
            continue;
        }
        let h = median(&ratios);
        if lam == 1.0 {
            h1 = Some(h);
        }
        let scale = h.abs().max(1.0);
        residuals.extend(ratios.iter().map(|r| (r - h).abs() / scale));
    }
    PropertyReport::new(Property::ExpShift { h1 }, &residuals)
}

/// Check `f(f(x)) = x` at sample points whose image lies in the domain.
pub fn check_self_inverse<F: RealFn + ?Sized>(f: &F, domain: &Domain) -> Result<PropertyReport, AnalysisError> {
    let residuals: Vec<f64> = uniform_grid(domain, 64)
        .into_iter()
        .filter_map(|x| {
            let y = f.value(x).ok()?;
            if !domain.contains(y) {
                return None;
            }
            Some((f.value(y).ok()? - x).abs())
        })
        .collect();
    if residuals.is_empty() {
        return Err(AnalysisError::NoSamples(format!(
            "f maps no sample of {domain} back into the domain"
        )));
    }
    Ok(PropertyReport::new(Property::SelfInverse, &residuals))
}

/// Candidate centres `(q, r)` of point symmetry from a coarse scan.
///
/// Advisory only: the scan may miss centres and the candidates still need
/// [`check_point_symmetry`].
pub fn suggest_symmetry_centers<F: RealFn + ?Sized>(f: &F, domain: &Domain) -> Vec<(f64, f64)> {
    let grid = uniform_grid(domain, 101);
    let mut out: Vec<(f64, f64, f64)> = Vec::new();
    for &q in &grid[1..grid.len().saturating_sub(1)] {
        let Ok(r) = f.value(q) else { continue };
        let report = check_point_symmetry(f, q, r, domain, 16);
        if report.samples_used >= 4 {
            let scale = r.abs().max(1.0);
            if report.max_residual <= 1e-6 * scale {
                out.push((report.max_residual, q, r));
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.into_iter().map(|(_, q, r)| (q, r)).collect()
}
