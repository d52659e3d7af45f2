use super::probe::{blows_up, converges, trail};
use crate::domain::{Domain, End, ExtReal};
use crate::func::RealFn;
use crate::numeric::median;
use serde::{Deserialize, Serialize};

/// `f(x) ~ c*x + b` at `at`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slant {
    pub c: f64,
    pub b: f64,
    pub at: ExtReal,
}

/// `f(x) -> d` at `at`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Horizontal {
    pub d: f64,
    pub at: ExtReal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AsymptoteReport {
    pub slant: Option<Slant>,
    pub horizontal: Option<Horizontal>,
    /// A finite endpoint where `|f|` grows without bound.
    pub vertical: Option<f64>,
}

/// Rungs up to this magnitude keep enough digits of `f(X) - cX` to estimate `b`.
const RELIABLE_RUNG: f64 = 1e8;

fn slant(trail: &[(f64, f64)], at: ExtReal) -> Option<Slant> {
    if trail.len() < 8 {
        return None;
    }
    let tail = &trail[trail.len() - 5..];
    let ratios: Vec<f64> = tail.iter().map(|&(x, v)| v / x).collect();
    let c = median(&ratios);
    let spread = ratios.iter().map(|r| (r - c).abs()).fold(0.0, f64::max);
    if c == 0.0 || !c.is_finite() || spread > 1e-6 * c.abs() {
        return None;
    }
    let near: Vec<(f64, f64)> = trail.iter().copied().filter(|p| p.0.abs() <= RELIABLE_RUNG).collect();
    if near.len() < 3 {
        return None;
    }
    let near = &near[near.len().saturating_sub(5)..];
    let offsets: Vec<f64> = near.iter().map(|&(x, v)| v - c * x).collect();
    let b = median(&offsets);
    // the offset must settle, not drift like sqrt(x) would
    let floor = 1e-9 * b.abs().max(1.0);
    let steps: Vec<f64> = offsets.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let settles = steps.windows(2).all(|w| w[1] <= w[0].max(floor));
    settles.then_some(Slant { c, b, at })
}

/// Probe both infinite ends for slant or horizontal asymptotes and both
/// finite ends for poles. Preference goes to the upper end when both qualify.
pub fn detect_asymptotes<F: RealFn + ?Sized>(f: &F, domain: &Domain) -> AsymptoteReport {
    let mut report = AsymptoteReport::default();
    for end in [End::Hi, End::Lo] {
        let bound = domain.bound(end);
        let t = trail(f, domain, end);
        if bound.is_finite() {
            if report.vertical.is_none() && blows_up(&t) {
                report.vertical = bound.finite();
            }
            continue;
        }
        if let Some(d) = converges(&t) {
            if report.horizontal.is_none() {
                report.horizontal = Some(Horizontal { d, at: bound });
            }
        } else if report.slant.is_none() {
            report.slant = slant(&t, bound);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;

    fn report(src: &str, dom: &str) -> AsymptoteReport {
        detect_asymptotes(&Expression::parse(src).unwrap(), &Domain::parse(dom).unwrap())
    }

    #[test]
    fn slant_of_rational_function() {
        let r = report("x^3/(x^2-x-2)", "(2:inf)");
        let s = r.slant.unwrap();
        assert!((s.c - 1.0).abs() < 1e-9);
        assert!((s.b - 1.0).abs() < 1e-4);
        assert_eq!(s.at, ExtReal::PosInf);
        // and the pole at the left end
        assert_eq!(r.vertical, Some(2.0));
    }

    #[test]
    fn slant_of_cube_root() {
        let s = report("cbrt(1-x^3)", "-inf:inf").slant.unwrap();
        assert!((s.c + 1.0).abs() < 1e-9);
        assert!(s.b.abs() < 1e-6);
    }

    #[test]
    fn horizontal_and_vertical() {
        let h = report("atan(x)", "-inf:inf").horizontal.unwrap();
        assert!((h.d - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert_eq!(h.at, ExtReal::PosInf);
        let v = report("tan(x)", "(-pi/2:pi/2)").vertical.unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn drifting_offsets_are_not_slants() {
        assert!(report("x+sqrt(x)", "(0:inf)").slant.is_none());
        assert!(report("x*ln(x)", "(1:inf)").slant.is_none());
        assert!(report("lg(x)", "(1:inf)").slant.is_none());
        assert!(report("lg(x)", "(1:inf)").horizontal.is_none());
    }
}
