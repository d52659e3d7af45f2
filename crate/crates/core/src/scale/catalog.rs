//! Scales of traditional slide rules.
//!
//! A scale marked with `t(x)` carries the number `y = t(x)` where D carries
//! `x`, so its distance function is `lg(t^-1(y))`. Domains are the image
//! under `t` of one D decade, `[1, 10]` or `[0.1, 1]`, except where noted.

use super::{ScaleError, ScaleSpec};
use crate::domain::Domain;
use crate::func::DistanceFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub code: &'static str,
    /// The marking `t(x)` in terms of the D value `x`.
    pub marking: &'static str,
    /// Distance function `lg(t^-1(y))` in the scale's own variable.
    pub distance: &'static str,
    pub domain: &'static str,
    /// The D values whose markings fill the domain.
    pub d_range: (&'static str, &'static str),
}

const fn entry(
    code: &'static str,
    marking: &'static str,
    distance: &'static str,
    domain: &'static str,
    d_range: (&'static str, &'static str),
) -> CatalogEntry {
    CatalogEntry {
        code,
        marking,
        distance,
        domain,
        d_range,
    }
}

const DECADE: (&str, &str) = ("1", "10");
const TENTHS: (&str, &str) = ("0.1", "1");

static ENTRIES: [CatalogEntry; 25] = [
    entry("A", "x^2", "lg(x)/2", "[1:100]", DECADE),
    entry("C", "x", "lg(x)", "[1:10]", DECADE),
    entry("D", "x", "lg(x)", "[1:10]", DECADE),
    entry("CI", "1/x", "-lg(x)", "[1:10]", TENTHS),
    entry("K", "x^3", "lg(x)/3", "[1:1000]", DECADE),
    entry("L", "lg(x)", "x", "[0:1]", DECADE),
    entry("Ln", "ln(x)", "x*lg(e)", "[0:ln(10)]", DECADE),
    entry("LL3", "exp(x)", "lg(ln(x))", "[e:exp(10)]", DECADE),
    entry("LL10", "exp(x*ln(10))", "lg(lg(x))", "[10:1e10]", DECADE),
    entry("LL03", "exp(-x)", "lg(-ln(x))", "[exp(-10):exp(-1)]", DECADE),
    entry("R1", "sqrt(x)", "2*lg(x)", "[1:sqrt(10)]", DECADE),
    entry("H1", "sqrt(1+(0.1*x)^2)", "lg(10*sqrt(x^2-1))", "[sqrt(1.01):sqrt(2)]", DECADE),
    entry("H2", "sqrt(1+x^2)", "lg(sqrt(x^2-1))", "[sqrt(2):sqrt(101)]", DECADE),
    // x = 10 would put y = 0 at -inf, so P1 stops at x = sqrt(99)
    entry("P1", "sqrt(1-(0.1*x)^2)", "lg(10*sqrt(1-x^2))", "[0.1:sqrt(0.99)]", ("1", "sqrt(99)")),
    entry("P2", "sqrt(1-x^2)", "lg(sqrt(1-x^2))", "[0.1:sqrt(0.99)]", ("0.1", "sqrt(0.99)")),
    entry("S0", "sin(x)", "lg(asin(x))", "[sin(0.1):sin(1)]", TENTHS),
    entry("S", "asin(x)", "lg(sin(x))", "[asin(0.1):pi/2]", TENTHS),
    entry("T0", "tan(x)", "lg(atan(x))", "[tan(0.1):tan(1)]", TENTHS),
    entry("T", "atan(x)", "lg(tan(x))", "[atan(0.1):pi/4]", TENTHS),
    entry("Sh", "asinh(x)", "lg(sinh(x))", "[asinh(0.1):asinh(10)]", ("0.1", "10")),
    entry("Ch", "acosh(x)", "lg(cosh(x))", "[0:acosh(10)]", DECADE),
    // the marking of Th is the inverse of tanh; tanh itself would not satisfy the catalog law
    entry("Th", "atanh(x)", "lg(tanh(x))", "[atanh(0.1):3]", ("0.1", "tanh(3)")),
    entry("Sh0", "sinh(x)", "lg(ln(x+sqrt(x^2+1)))", "[sinh(0.1):sinh(1)]", TENTHS),
    entry("Ch0", "cosh(x)", "lg(ln(x+sqrt(x^2-1)))", "[cosh(0.1):cosh(1)]", TENTHS),
    // written with (1+x)/(1-x); the other orientation has a negative logarithm
    entry("Th0", "tanh(x)", "lg(ln((1+x)/(1-x))/2)", "[tanh(0.1):tanh(1)]", TENTHS),
];

pub const CATALOG_CODES: [&str; 25] = [
    "A", "C", "D", "CI", "K", "L", "Ln", "LL3", "LL10", "LL03", "R1", "H1", "H2", "P1", "P2", "S0", "S", "T0", "T", "Sh",
    "Ch", "Th", "Sh0", "Ch0", "Th0",
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

/// The spec of a traditional scale. Codes are case-sensitive.
pub fn catalog_scale(code: &str, unit_mm: f64) -> Result<ScaleSpec, ScaleError> {
    let e = ENTRIES
        .iter()
        .find(|e| e.code == code)
        .ok_or_else(|| ScaleError::UnknownCode {
            code: code.to_string(),
            available: CATALOG_CODES.join(", "),
        })?;
    let f = DistanceFn::parse(e.distance).expect("catalog formula parses");
    let d = Domain::parse(e.domain).expect("catalog domain parses");
    Ok(ScaleSpec::new(e.code, f, d, unit_mm))
}
