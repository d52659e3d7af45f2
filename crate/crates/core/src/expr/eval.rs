use super::ast::{BinOp, Func, Node};
use super::special::{normal_cdf, normal_pdf};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EvalError {
    #[error("{func} is undefined at {arg}")]
    Domain { func: &'static str, arg: f64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("result is not finite ({value})")]
    NonFinite { value: f64 },
    #[error("derivative is not finite at x = {x}")]
    NonFiniteDerivative { x: f64 },
    #[error("{value} lies outside the image of the inverted function")]
    OutsideImage { value: f64 },
}

/// Value paired with its first derivative, for forward-mode differentiation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub eps: f64,
}

impl Dual {
    pub fn new(re: f64, eps: f64) -> Self {
        Dual { re, eps }
    }

    pub fn variable(x: f64) -> Self {
        Dual { re: x, eps: 1.0 }
    }
}

/// Arithmetic shared by plain floats and [`Dual`] numbers, so that both
/// evaluation paths run the same code and agree bit for bit on values.
pub(crate) trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn lift(v: f64) -> Self;
    fn re(self) -> f64;
    /// Apply `f` with derivative `df`, both taken at the real part.
    fn map(self, f: f64, df: impl FnOnce() -> f64) -> Self;
    fn powf(self, e: Self) -> Self;
}

impl Scalar for f64 {
    fn lift(v: f64) -> Self {
        v
    }
    fn re(self) -> f64 {
        self
    }
    fn map(self, f: f64, _df: impl FnOnce() -> f64) -> Self {
        f
    }
    fn powf(self, e: Self) -> Self {
        f64::powf(self, e)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.re * o.re, self.eps * o.re + self.re * o.eps)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let re = self.re / o.re;
        Dual::new(re, (self.eps - re * o.eps) / o.re)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.eps)
    }
}

impl Scalar for Dual {
    fn lift(v: f64) -> Self {
        Dual::new(v, 0.0)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn map(self, f: f64, df: impl FnOnce() -> f64) -> Self {
        // A constant argument stays constant even where df is singular.
        let eps = if self.eps == 0.0 { 0.0 } else { df() * self.eps };
        Dual::new(f, eps)
    }
    fn powf(self, e: Self) -> Self {
        let re = self.re.powf(e.re);
        if e.eps == 0.0 {
            let eps = if self.eps == 0.0 || e.re == 0.0 {
                0.0
            } else {
                e.re * self.re.powf(e.re - 1.0) * self.eps
            };
            Dual::new(re, eps)
        } else {
            let db = if self.eps == 0.0 { 0.0 } else { e.re * self.eps / self.re };
            Dual::new(re, re * (e.eps * self.re.ln() + db))
        }
    }
}

fn domain(func: &'static str, arg: f64) -> EvalError {
    EvalError::Domain { func, arg }
}

fn call<S: Scalar>(func: Func, a: S) -> Result<S, EvalError> {
    let v = a.re();
    let name = func.name();
    let out = match func {
        Func::Sin => a.map(v.sin(), || v.cos()),
        Func::Cos => a.map(v.cos(), || -v.sin()),
        Func::Tan => {
            let t = v.tan();
            a.map(t, || 1.0 + t * t)
        }
        Func::Asin | Func::Acos if !(-1.0..=1.0).contains(&v) => return Err(domain(name, v)),
        Func::Asin => a.map(v.asin(), || 1.0 / (1.0 - v * v).sqrt()),
        Func::Acos => a.map(v.acos(), || -1.0 / (1.0 - v * v).sqrt()),
        Func::Atan => a.map(v.atan(), || 1.0 / (1.0 + v * v)),
        Func::Exp => {
            let ev = v.exp();
            a.map(ev, || ev)
        }
        Func::Ln | Func::Lg if v <= 0.0 => return Err(domain(name, v)),
        Func::Ln => a.map(v.ln(), || 1.0 / v),
        Func::Lg => a.map(v.log10(), || std::f64::consts::LOG10_E / v),
        Func::Sqrt if v < 0.0 => return Err(domain(name, v)),
        Func::Sqrt => {
            let r = v.sqrt();
            a.map(r, || 0.5 / r)
        }
        Func::Cbrt => {
            let r = v.cbrt();
            a.map(r, || 1.0 / (3.0 * r * r))
        }
        Func::Abs => a.map(v.abs(), || {
            if v > 0.0 {
                1.0
            } else if v < 0.0 {
                -1.0
            } else {
                0.0
            }
        }),
        Func::Sinh => a.map(v.sinh(), || v.cosh()),
        Func::Cosh => a.map(v.cosh(), || v.sinh()),
        Func::Tanh => {
            let t = v.tanh();
            a.map(t, || 1.0 - t * t)
        }
        Func::Asinh => a.map(v.asinh(), || 1.0 / (v * v + 1.0).sqrt()),
        Func::Acosh if v < 1.0 => return Err(domain(name, v)),
        Func::Acosh => a.map(v.acosh(), || 1.0 / ((v - 1.0).sqrt() * (v + 1.0).sqrt())),
        Func::Atanh if !(v > -1.0 && v < 1.0) => return Err(domain(name, v)),
        Func::Atanh => a.map(v.atanh(), || 1.0 / (1.0 - v * v)),
        Func::Phi => a.map(normal_cdf(v), || normal_pdf(v)),
    };
    Ok(out)
}

fn power<S: Scalar>(base: S, exp: S, exp_varies: bool) -> Result<S, EvalError> {
    let (b, e) = (base.re(), exp.re());
    if !exp_varies {
        if b < 0.0 && e.fract() != 0.0 {
            return Err(domain("^", b));
        }
        if b == 0.0 && e < 0.0 {
            return Err(EvalError::DivisionByZero);
        }
    } else if b <= 0.0 {
        // a variable exponent needs a positive base
        return Err(domain("^", b));
    }
    Ok(base.powf(exp))
}

pub(crate) fn eval<S: Scalar>(node: &Node, x: S) -> Result<S, EvalError> {
    Ok(match node {
        Node::Num(v) => S::lift(*v),
        Node::Var => x,
        Node::Const(c) => S::lift(c.value()),
        Node::Neg(a) => -eval(a, x)?,
        Node::Call(f, a) => call(*f, eval(a, x)?)?,
        Node::Binary(op, a, b) => {
            let l = eval(a, x)?;
            let r = eval(b, x)?;
            match op {
                BinOp::Add => l + r,
                BinOp::Sub => l - r,
                BinOp::Mul => l * r,
                BinOp::Div => {
                    if r.re() == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    l / r
                }
                BinOp::Pow => power(l, r, b.contains_var())?,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parser::parse;

    fn d(src: &str, x: f64) -> Dual {
        eval(&parse(src).unwrap(), Dual::variable(x)).unwrap()
    }

    #[test]
    fn derivative_rules() {
        assert!((d("x^3", 2.0).eps - 12.0).abs() < 1e-12);
        assert!((d("lg(x)", 10.0).eps - std::f64::consts::LOG10_E / 10.0).abs() < 1e-15);
        assert!((d("2^x", 1.0).eps - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!((d("x^x", 2.0).eps - 4.0 * (2f64.ln() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn constant_subexpressions_stay_finite() {
        // sqrt(0) has an infinite slope but does not depend on x
        let r = d("sqrt(0)*x + x", 1.0);
        assert_eq!(r.eps, 1.0);
    }

    #[test]
    fn negative_base_with_integer_exponent() {
        assert_eq!(eval(&parse("x^3").unwrap(), -2.0).unwrap(), -8.0);
        assert!(matches!(
            eval(&parse("x^0.5").unwrap(), -2.0),
            Err(EvalError::Domain { .. })
        ));
    }

    #[test]
    fn domain_errors_are_reported() {
        for (src, x) in [("lg(x)", 0.0), ("sqrt(x)", -1.0), ("asin(x)", 1.5), ("atanh(x)", 1.0)] {
            assert!(matches!(eval(&parse(src).unwrap(), x), Err(EvalError::Domain { .. })), "{src}");
        }
        assert_eq!(eval(&parse("1/x").unwrap(), 0.0), Err(EvalError::DivisionByZero));
    }
}
