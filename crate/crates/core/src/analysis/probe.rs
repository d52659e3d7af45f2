use super::AnalysisError;
use crate::domain::{Domain, End, ExtReal};
use crate::func::RealFn;

/// Exponents of the geometric ladder toward an infinite endpoint.
pub(crate) const LADDER: std::ops::RangeInclusive<i32> = 1..=30;
/// Exponents of the offsets used to approach a finite endpoint.
pub(crate) const APPROACH: std::ops::RangeInclusive<i32> = 1..=15;

/// Points marching toward one end of the domain, outermost first.
pub(crate) fn probes(domain: &Domain, end: End) -> Vec<f64> {
    let (this, other) = match end {
        End::Lo => (domain.lo(), domain.hi()),
        End::Hi => (domain.hi(), domain.lo()),
    };
    let mut out: Vec<f64> = Vec::new();
    let mut push = |x: f64| {
        if domain.contains(x) && out.last() != Some(&x) && this.finite() != Some(x) {
            out.push(x);
        }
    };
    match this {
        ExtReal::PosInf => {
            let base = other.finite().map_or(0.0, |v| v.max(0.0));
            LADDER.for_each(|j| push(base + 10f64.powi(j)));
        }
        ExtReal::NegInf => {
            let base = other.finite().map_or(0.0, |v| v.min(0.0));
            LADDER.for_each(|j| push(base - 10f64.powi(j)));
        }
        ExtReal::Finite(e) => {
            let width = other.finite().map_or(e.abs().max(1.0), |o| (o - e).abs());
            let dir = if end == End::Lo { 1.0 } else { -1.0 };
            APPROACH.for_each(|j| push(e + dir * width * 10f64.powi(-j)));
        }
    }
    out
}

/// What is known about `f` near one end of the domain.
#[derive(Clone, Debug)]
pub(crate) struct Edge {
    /// Innermost point where `f` was evaluated: the endpoint itself when exact.
    pub x: f64,
    pub value: f64,
    /// `x` is a closed endpoint rather than a probe.
    pub exact: bool,
    /// Successful probe evaluations, outermost first.
    pub trail: Vec<(f64, f64)>,
}

pub(crate) fn trail<F: RealFn + ?Sized>(f: &F, domain: &Domain, end: End) -> Vec<(f64, f64)> {
    probes(domain, end)
        .into_iter()
        .map_while(|x| f.value(x).ok().map(|v| (x, v)))
        .collect()
}

pub(crate) fn edge<F: RealFn + ?Sized>(f: &F, domain: &Domain, end: End) -> Result<Edge, AnalysisError> {
    let trail = trail(f, domain, end);
    if let (ExtReal::Finite(e), false) = (domain.bound(end), domain.is_open(end)) {
        if let Ok(v) = f.value(e) {
            return Ok(Edge {
                x: e,
                value: v,
                exact: true,
                trail,
            });
        }
    }
    match trail.last() {
        Some(&(x, value)) => Ok(Edge {
            x,
            value,
            exact: false,
            trail,
        }),
        None => {
            let x = probes(domain, end).first().copied().unwrap_or(f64::NAN);
            let source = f
                .value(x)
                .err()
                .unwrap_or(crate::expr::EvalError::NonFinite { value: f64::NAN });
            Err(AnalysisError::Undefined { x, source })
        }
    }
}

/// The probe values settle: the last step moves by less than `1e-12` and the
/// final steps trend one way.
pub(crate) fn converges(trail: &[(f64, f64)]) -> Option<f64> {
    let n = trail.len();
    if n < 4 {
        return None;
    }
    let v: Vec<f64> = trail[n - 4..].iter().map(|p| p.1).collect();
    if (v[3] - v[2]).abs() >= 1e-12 {
        return None;
    }
    let up = v.windows(2).all(|w| w[1] >= w[0]);
    let down = v.windows(2).all(|w| w[1] <= w[0]);
    (up || down).then_some(v[3])
}

/// `|f|` keeps growing with non-shrinking increments: a pole at the end.
pub(crate) fn blows_up(trail: &[(f64, f64)]) -> bool {
    let n = trail.len();
    if n < 6 {
        return false;
    }
    let a: Vec<f64> = trail[n - 6..].iter().map(|p| p.1.abs()).collect();
    let steps: Vec<f64> = a.windows(2).map(|w| w[1] - w[0]).collect();
    steps.iter().all(|&s| s > 0.0) && steps.windows(2).all(|w| w[1] >= 0.98 * w[0])
}

/// `|f|` shrinks toward zero along the trail.
pub(crate) fn tends_to_zero(trail: &[(f64, f64)]) -> bool {
    let n = trail.len();
    if n < 3 {
        return false;
    }
    let tail: Vec<f64> = trail[n.saturating_sub(6)..].iter().map(|p| p.1.abs()).collect();
    let first = trail[0].1.abs();
    let last = tail[tail.len() - 1];
    tail.windows(2).all(|w| w[1] <= w[0]) && last <= 1e-10 * first.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;

    #[test]
    fn ladder_and_approach_points() {
        let d = Domain::parse("(0:inf)").unwrap();
        let hi = probes(&d, End::Hi);
        assert_eq!(hi.len(), 30);
        assert_eq!(hi[0], 10.0);
        let lo = probes(&d, End::Lo);
        assert!(lo.windows(2).all(|w| w[1] < w[0]));
        assert!(lo[0] == 0.1 && lo.iter().all(|&x| x > 0.0));
        let closed = Domain::closed(1.0, 10.0);
        assert!(probes(&closed, End::Hi).iter().all(|&x| x < 10.0 && x > 1.0));
    }

    #[test]
    fn detects_limits_and_poles() {
        let d = Domain::parse("(0:inf)").unwrap();
        let recip = Expression::parse("1/x").unwrap();
        assert!(tends_to_zero(&trail(&recip, &d, End::Hi)));
        assert!(blows_up(&trail(&recip, &d, End::Lo)));
        let atan = Expression::parse("atan(x)").unwrap();
        let lim = converges(&trail(&atan, &d, End::Hi)).unwrap();
        assert!((lim - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let lg = Expression::parse("lg(x)").unwrap();
        assert!(converges(&trail(&lg, &d, End::Hi)).is_none());
    }
}
