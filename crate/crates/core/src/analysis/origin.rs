use super::monotonicity::require_monotone;
use super::probe::{edge, tends_to_zero, Edge};
use super::{AnalysisError, DEFAULT_SAMPLES};
use crate::domain::{Domain, End, ExtReal};
use crate::func::RealFn;
use crate::numeric::brent;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginKind {
    /// `f(x0) = 0` inside the domain or at a closed endpoint.
    Root,
    /// `f -> 0` toward an open or infinite endpoint.
    LimitEndpoint,
    /// `f` neither vanishes nor tends to zero.
    Standalone,
}

/// Where the origin sits relative to the rest of the scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// All positions are non-negative, so the origin is at the left end.
    Left,
    /// All positions are non-positive.
    Right,
    Interior,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OriginReport {
    pub kind: OriginKind,
    pub x0: Option<ExtReal>,
    pub side: Side,
}

pub fn locate_origin<F: RealFn + ?Sized>(f: &F, domain: &Domain) -> Result<OriginReport, AnalysisError> {
    locate_origin_with(f, domain, DEFAULT_SAMPLES)
}

/// [`locate_origin`] with an explicit monotonicity sample count.
pub fn locate_origin_with<F: RealFn + ?Sized>(
    f: &F,
    domain: &Domain,
    n_samples: usize,
) -> Result<OriginReport, AnalysisError> {
    require_monotone(f, domain, n_samples)?;
    let lo = edge(f, domain, End::Lo)?;
    let hi = edge(f, domain, End::Hi)?;
    Ok(classify_edges(f, domain, &lo, &hi))
}

pub(crate) fn side_of(lo: f64, hi: f64) -> Side {
    if lo >= 0.0 && hi >= 0.0 {
        Side::Left
    } else if lo <= 0.0 && hi <= 0.0 {
        Side::Right
    } else {
        Side::Interior
    }
}

pub(crate) fn classify_edges<F: RealFn + ?Sized>(f: &F, domain: &Domain, lo: &Edge, hi: &Edge) -> OriginReport {
    let side = side_of(lo.value, hi.value);
    for e in [lo, hi] {
        if e.exact && e.value == 0.0 {
            return OriginReport {
                kind: OriginKind::Root,
                x0: Some(ExtReal::Finite(e.x)),
                side,
            };
        }
    }
    if (lo.value < 0.0) != (hi.value < 0.0) && lo.value != 0.0 && hi.value != 0.0 {
        let root = brent(|x| f.value(x), lo.x, hi.x, lo.value, hi.value, 0.0);
        if let Ok(x0) = root {
            return OriginReport {
                kind: OriginKind::Root,
                x0: Some(ExtReal::Finite(x0)),
                side: Side::Interior,
            };
        }
    }
    // No sign change: the infimum of |f| is approached at one end.
    let (near, end) = if lo.value.abs() <= hi.value.abs() {
        (lo, End::Lo)
    } else {
        (hi, End::Hi)
    };
    if !near.exact && (near.value == 0.0 || tends_to_zero(&near.trail)) {
        return OriginReport {
            kind: OriginKind::LimitEndpoint,
            x0: Some(domain.bound(end)),
            side,
        };
    }
    OriginReport {
        kind: OriginKind::Standalone,
        x0: None,
        side,
    }
}
