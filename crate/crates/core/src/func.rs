//! Distance functions: plain expressions plus the composite forms that
//! scale transforms produce.

use crate::analysis::Inverter;
use crate::domain::Domain;
use crate::expr::{Dual, EvalError, Expression};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::OnceLock;

/// A real function of one variable that reports value and derivative.
pub trait RealFn: Sync {
    fn value(&self, x: f64) -> Result<f64, EvalError>;
    /// Value with derivative. The value is finite; the derivative may not be.
    fn dual(&self, x: f64) -> Result<Dual, EvalError>;
}

impl RealFn for Expression {
    fn value(&self, x: f64) -> Result<f64, EvalError> {
        Expression::value(self, x)
    }
    fn dual(&self, x: f64) -> Result<Dual, EvalError> {
        Expression::dual(self, x)
    }
}

impl<F: RealFn + ?Sized> RealFn for &F {
    fn value(&self, x: f64) -> Result<f64, EvalError> {
        (**self).value(x)
    }
    fn dual(&self, x: f64) -> Result<Dual, EvalError> {
        (**self).dual(x)
    }
}

/// The distance function of a scale.
///
/// Transforms of a plain expression stay symbolic; only inversion needs a
/// numerical wrapper. The wrapper forms also cover transforms of an inverse.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceFn {
    Expr(Expression),
    /// `f^-1`, where `f` is strictly monotone on `domain`.
    Inverse {
        of: Box<DistanceFn>,
        domain: Domain,
        #[serde(skip)]
        cache: OnceLock<Inverter>,
    },
    /// `-f(x)`
    Negate(Box<DistanceFn>),
    /// `f(-x)`
    Reflect(Box<DistanceFn>),
    /// `f(x) + by`
    Shift { of: Box<DistanceFn>, by: f64 },
}

impl PartialEq for DistanceFn {
    fn eq(&self, other: &Self) -> bool {
        use DistanceFn::*;
        match (self, other) {
            (Expr(a), Expr(b)) => a == b,
            (Inverse { of: a, domain: da, .. }, Inverse { of: b, domain: db, .. }) => a == b && da == db,
            (Negate(a), Negate(b)) | (Reflect(a), Reflect(b)) => a == b,
            (Shift { of: a, by: va }, Shift { of: b, by: vb }) => a == b && va == vb,
            _ => false,
        }
    }
}

impl From<Expression> for DistanceFn {
    fn from(e: Expression) -> Self {
        DistanceFn::Expr(e)
    }
}

impl DistanceFn {
    pub fn parse(src: &str) -> Result<DistanceFn, crate::expr::ParseError> {
        Expression::parse(src).map(DistanceFn::Expr)
    }

    pub fn inverse_of(f: DistanceFn, domain: Domain) -> DistanceFn {
        DistanceFn::Inverse {
            of: Box::new(f),
            domain,
            cache: OnceLock::new(),
        }
    }

    pub fn as_expression(&self) -> Option<&Expression> {
        match self {
            DistanceFn::Expr(e) => Some(e),
            _ => None,
        }
    }

    pub fn negated(&self) -> DistanceFn {
        match self {
            DistanceFn::Expr(e) => DistanceFn::Expr(e.negated()),
            DistanceFn::Negate(inner) => (**inner).clone(),
            other => DistanceFn::Negate(Box::new(other.clone())),
        }
    }

    pub fn reflected(&self) -> DistanceFn {
        match self {
            DistanceFn::Expr(e) => DistanceFn::Expr(e.reflected()),
            DistanceFn::Reflect(inner) => (**inner).clone(),
            // -g(-x): keep the reflection innermost so that it can cancel
            DistanceFn::Negate(inner) => inner.reflected().negated(),
            other => DistanceFn::Reflect(Box::new(other.clone())),
        }
    }

    pub fn shifted(&self, v: f64) -> DistanceFn {
        match self {
            DistanceFn::Expr(e) => DistanceFn::Expr(e.shifted(v)),
            DistanceFn::Shift { of, by } if by + v == 0.0 => (**of).clone(),
            DistanceFn::Shift { of, by } => DistanceFn::Shift {
                of: of.clone(),
                by: by + v,
            },
            other => DistanceFn::Shift {
                of: Box::new(other.clone()),
                by: v,
            },
        }
    }

    /// The inverse of `self` restricted to `domain`. Inverting an inverse
    /// returns the original function together with its original domain.
    pub fn inverted(&self, domain: Domain) -> (DistanceFn, Option<Domain>) {
        match self {
            DistanceFn::Inverse { of, domain: d, .. } => ((**of).clone(), Some(*d)),
            other => (DistanceFn::inverse_of(other.clone(), domain), None),
        }
    }

    fn inverter(&self) -> Option<(&DistanceFn, &Inverter)> {
        match self {
            DistanceFn::Inverse { of, domain, cache } => Some((of, cache.get_or_init(|| Inverter::new(&**of, domain)))),
            _ => None,
        }
    }
}

impl RealFn for DistanceFn {
    fn value(&self, x: f64) -> Result<f64, EvalError> {
        match self {
            DistanceFn::Expr(e) => e.value(x),
            DistanceFn::Inverse { .. } => {
                let (of, inv) = self.inverter().expect("inverse variant");
                inv.invert(of, x)
            }
            DistanceFn::Negate(f) => f.value(x).map(|v| -v),
            DistanceFn::Reflect(f) => f.value(-x),
            DistanceFn::Shift { of, by } => of.value(x).map(|v| v + by),
        }
    }

    fn dual(&self, x: f64) -> Result<Dual, EvalError> {
        match self {
            DistanceFn::Expr(e) => e.dual(x),
            DistanceFn::Inverse { .. } => {
                let (of, inv) = self.inverter().expect("inverse variant");
                let y = inv.invert(of, x)?;
                let d = of.dual(y)?;
                Ok(Dual::new(y, 1.0 / d.eps))
            }
            DistanceFn::Negate(f) => f.dual(x).map(|d| Dual::new(-d.re, -d.eps)),
            DistanceFn::Reflect(f) => f.dual(-x).map(|d| Dual::new(d.re, -d.eps)),
            DistanceFn::Shift { of, by } => of.dual(x).map(|d| Dual::new(d.re + by, d.eps)),
        }
    }
}

impl fmt::Display for DistanceFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceFn::Expr(e) => write!(f, "{e}"),
            DistanceFn::Inverse { of, domain, .. } => write!(f, "inverse of {of} on {domain}"),
            DistanceFn::Negate(g) => write!(f, "-({g})"),
            DistanceFn::Reflect(g) => write!(f, "({g}) at -x"),
            DistanceFn::Shift { of, by } => write!(f, "({of}) + {by}"),
        }
    }
}
