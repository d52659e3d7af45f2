use super::{chebyshev_grid, probe, AnalysisError};
use crate::domain::{Domain, End};
use crate::expr::EvalError;
use crate::func::RealFn;
use crate::par::{self, Execution};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Evidence that a function is not strictly monotone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `f'(x1)` and `f'(x2)` have opposite signs.
    SignChange { x1: f64, x2: f64 },
    /// `f'` vanishes at every sample in `[from, to]`.
    Flat { from: f64, to: f64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SignChange { x1, x2 } => write!(f, "derivative changes sign between {x1} and {x2}"),
            Witness::Flat { from, to } => write!(f, "function is constant on [{from}, {to}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NonMonotone { witness: Witness },
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        !matches!(self, Monotonicity::NonMonotone { .. })
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            Monotonicity::NonMonotone { witness } => Some(*witness),
            _ => None,
        }
    }
}

impl Witness {
    /// A single point that represents the witness: the stationary point
    /// between the two samples of a sign change, or the middle of a flat run.
    pub fn locate<F: RealFn + ?Sized>(&self, f: &F) -> f64 {
        match *self {
            Witness::SignChange { x1, x2 } => {
                let slope = |x: f64| f.dual(x).map(|d| d.eps);
                match (slope(x1), slope(x2)) {
                    (Ok(a), Ok(b)) if a.is_finite() && b.is_finite() => {
                        crate::numeric::brent(slope, x1, x2, a, b, 0.0).unwrap_or(0.5 * (x1 + x2))
                    }
                    _ => 0.5 * (x1 + x2),
                }
            }
            Witness::Flat { from, to } => 0.5 * (from + to),
        }
    }
}

fn slope_sign(d: f64) -> Option<i8> {
    if d.is_nan() {
        None
    } else if d > 0.0 {
        Some(1)
    } else if d < 0.0 {
        Some(-1)
    } else {
        Some(0)
    }
}

/// Sample the sign of `f'` on Chebyshev nodes and classify.
pub fn classify_monotonicity<F: RealFn + ?Sized>(
    f: &F,
    domain: &Domain,
    n_samples: usize,
) -> Result<Monotonicity, AnalysisError> {
    classify_monotonicity_with(f, domain, n_samples, Execution::default())
}

pub fn classify_monotonicity_with<F: RealFn + ?Sized>(
    f: &F,
    domain: &Domain,
    n_samples: usize,
    exec: Execution,
) -> Result<Monotonicity, AnalysisError> {
    if n_samples < 32 {
        return Err(AnalysisError::InvalidParameter(format!(
            "need at least 32 samples, got {n_samples}"
        )));
    }
    let mut xs = chebyshev_grid(domain, n_samples);
    for end in [End::Lo, End::Hi] {
        if !domain.bound(end).is_finite() {
            xs.extend(probe::trail(f, domain, end).into_iter().map(|p| p.0));
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let evaluated = par::map(exec, &xs, |&x| (x, f.dual(x)));
    let mut pts: Vec<(f64, i8)> = Vec::with_capacity(evaluated.len());
    for (x, r) in evaluated {
        match r {
            Ok(d) => {
                if let Some(s) = slope_sign(d.eps) {
                    pts.push((x, s));
                }
            }
            // overflow far out on an unbounded domain is not a domain error
            Err(EvalError::NonFinite { .. }) if !domain.is_bounded() => {}
            Err(source) => return Err(AnalysisError::Undefined { x, source }),
        }
    }
    if pts.is_empty() {
        return Err(AnalysisError::NoSamples("the derivative is undefined at every sample".into()));
    }

    // A run of vanishing slopes between non-vanishing ones is a constant piece;
    // a run touching either end is treated as underflow in an asymptotic tail.
    let first_nz = pts.iter().position(|p| p.1 != 0);
    let Some(first_nz) = first_nz else {
        return Ok(Monotonicity::NonMonotone {
            witness: Witness::Flat {
                from: pts[0].0,
                to: pts[pts.len() - 1].0,
            },
        });
    };
    let last_nz = pts.iter().rposition(|p| p.1 != 0).unwrap_or(first_nz);
    let mut i = first_nz;
    while i < last_nz {
        if pts[i].1 == 0 {
            let start = i;
            while pts[i].1 == 0 {
                i += 1;
            }
            if i - start >= 2 {
                return Ok(Monotonicity::NonMonotone {
                    witness: Witness::Flat {
                        from: pts[start].0,
                        to: pts[i - 1].0,
                    },
                });
            }
        }
        i += 1;
    }

    let nonzero: Vec<(f64, i8)> = pts.into_iter().filter(|p| p.1 != 0).collect();
    match nonzero.windows(2).find(|w| w[0].1 != w[1].1) {
        None if nonzero[0].1 > 0 => Ok(Monotonicity::Increasing),
        None => Ok(Monotonicity::Decreasing),
        Some(w) => Ok(Monotonicity::NonMonotone {
            witness: bisect_witness(f, w[0], w[1]),
        }),
    }
}

/// Shrink a sign-change bracket of `f'`, keeping both ends signed.
fn bisect_witness<F: RealFn + ?Sized>(f: &F, a: (f64, i8), b: (f64, i8)) -> Witness {
    let (mut a, mut b) = (a, b);
    for _ in 0..200 {
        let m = 0.5 * (a.0 + b.0);
        if m <= a.0 || m >= b.0 {
            break;
        }
        match f.dual(m).ok().and_then(|d| slope_sign(d.eps)) {
            Some(s) if s == a.1 => a = (m, s),
            Some(s) if s == b.1 => b = (m, s),
            _ => break,
        }
    }
    Witness::SignChange { x1: a.0, x2: b.0 }
}

/// Classify, turning a non-monotone result into an error.
pub(crate) fn require_monotone<F: RealFn + ?Sized>(
    f: &F,
    domain: &Domain,
    n_samples: usize,
) -> Result<Monotonicity, AnalysisError> {
    match classify_monotonicity(f, domain, n_samples.max(32))? {
        Monotonicity::NonMonotone { witness } => Err(AnalysisError::NotMonotone(witness)),
        m => Ok(m),
    }
}
