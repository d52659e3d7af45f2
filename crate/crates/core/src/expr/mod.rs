//! Distance-function expressions: parsing, printing and evaluation with
//! forward-mode derivatives.

mod ast;
mod eval;
mod parser;
#[allow(clippy::excessive_precision)] // coefficients kept exactly as published
pub mod special;

pub use ast::{BinOp, Constant, Func, Node};
pub use eval::{Dual, EvalError};
pub use parser::ParseError;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A parsed expression in the single variable `x`.
///
/// Equality is structural. Serialization uses the canonical printed form,
/// which re-parses to an equal tree.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    root: Node,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub derivative: f64,
}

impl Expression {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parser::parse(src).map(|root| Expression { root })
    }

    pub fn from_node(root: Node) -> Self {
        Expression { root }
    }

    pub fn node(&self) -> &Node {
        &self.root
    }

    pub fn into_node(self) -> Node {
        self.root
    }

    pub fn depends_on_x(&self) -> bool {
        self.root.contains_var()
    }

    /// Value only, without derivative bookkeeping.
    pub fn value(&self, x: f64) -> Result<f64, EvalError> {
        let v = eval::eval(&self.root, x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { value: v })
        }
    }

    /// Value and derivative; the value must be finite, the derivative may not be.
    pub fn dual(&self, x: f64) -> Result<Dual, EvalError> {
        let d = eval::eval(&self.root, Dual::variable(x))?;
        if d.re.is_finite() {
            Ok(d)
        } else {
            Err(EvalError::NonFinite { value: d.re })
        }
    }

    /// Value and derivative, both required to be finite.
    pub fn evaluate(&self, x: f64) -> Result<EvalResult, EvalError> {
        let d = self.dual(x)?;
        if !d.eps.is_finite() {
            return Err(EvalError::NonFiniteDerivative { x });
        }
        Ok(EvalResult {
            value: d.re,
            derivative: d.eps,
        })
    }

    /// `-f(x)`, cancelling an existing outer negation.
    pub fn negated(&self) -> Expression {
        match &self.root {
            Node::Neg(inner) => Expression::from_node((**inner).clone()),
            other => Expression::from_node(Node::neg(other.clone())),
        }
    }

    /// `f(-x)`, cancelling double negations of the variable.
    pub fn reflected(&self) -> Expression {
        fn walk(n: &Node) -> Node {
            match n {
                Node::Var => Node::neg(Node::Var),
                Node::Neg(inner) if **inner == Node::Var => Node::Var,
                Node::Num(_) | Node::Const(_) => n.clone(),
                Node::Neg(a) => Node::neg(walk(a)),
                Node::Call(f, a) => Node::call(*f, walk(a)),
                Node::Binary(op, a, b) => Node::binary(*op, walk(a), walk(b)),
            }
        }
        Expression::from_node(walk(&self.root))
    }

    /// `f(x) + v`.
    pub fn shifted(&self, v: f64) -> Expression {
        if v == 0.0 {
            return self.clone();
        }
        let op = if v > 0.0 { BinOp::Add } else { BinOp::Sub };
        Expression::from_node(Node::binary(op, self.root.clone(), Node::Num(v.abs())))
    }
}

/// Evaluate a closed expression such as `pi/2` or `-1e3`.
pub fn eval_constant(src: &str) -> Result<f64, ConstantError> {
    let e = Expression::parse(src)?;
    if e.depends_on_x() {
        return Err(ConstantError::DependsOnX);
    }
    Ok(e.value(0.0)?)
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConstantError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("a constant may not contain x")]
    DependsOnX,
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl FromStr for Expression {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expression::parse(s)
    }
}

impl Serialize for Expression {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Expression {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Expression::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_checks_finiteness() {
        let e = Expression::parse("sqrt(x)").unwrap();
        assert!(matches!(e.evaluate(0.0), Err(EvalError::NonFiniteDerivative { .. })));
        assert_eq!(e.value(0.0), Ok(0.0));
        let big = Expression::parse("exp(x)").unwrap();
        assert!(matches!(big.value(1000.0), Err(EvalError::NonFinite { .. })));
    }

    #[test]
    fn value_and_dual_agree() {
        let e = Expression::parse("x^3/(x^2-x-2)").unwrap();
        for &x in &[-0.5, 0.3, 3.0, 17.25] {
            assert_eq!(e.value(x).unwrap(), e.dual(x).unwrap().re);
        }
    }

    #[test]
    fn symbolic_transforms() {
        let e = Expression::parse("lg(x)").unwrap();
        assert_eq!(e.negated().to_string(), "-lg(x)");
        assert_eq!(e.negated().negated(), e);
        assert_eq!(e.reflected().to_string(), "lg(-x)");
        assert_eq!(e.reflected().reflected(), e);
        assert_eq!(e.shifted(-2.0).to_string(), "lg(x)-2");
    }

    #[test]
    fn constants_evaluate() {
        assert_eq!(eval_constant("pi/2").unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(eval_constant("-1e3").unwrap(), -1000.0);
        assert!(matches!(eval_constant("x+1"), Err(ConstantError::DependsOnX)));
    }

    #[test]
    fn serde_uses_canonical_text() {
        let e = Expression::parse("( x ^ 2 ) + 1").unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, "\"x^2+1\"");
        let back: Expression = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
