#![allow(dead_code)]

use slide_scale::{Domain, DistanceFn};

/// Strictly monotone functions with domains on which each builds a scale.
pub const CORPUS: [(&str, &str); 10] = [
    ("x^2", "[0:3]"),
    ("sqrt(x)", "[0:9]"),
    ("cbrt(1-x^3)", "[-2:2]"),
    ("sqrt(x^2-1)", "[1:5]"),
    ("1/x", "[0.5:5]"),
    ("atan(x)", "-inf:inf"),
    ("exp(x)", "[-2:2]"),
    ("1-exp(-2*x)", "[0:inf)"),
    ("ln(x+sqrt(x^2+1))", "[-3:3]"),
    ("Phi(x)", "-inf:inf"),
];

pub fn corpus() -> Vec<(String, DistanceFn, Domain)> {
    CORPUS
        .iter()
        .map(|(e, d)| (e.to_string(), DistanceFn::parse(e).unwrap(), Domain::parse(d).unwrap()))
        .collect()
}

/// A finite stretch of the domain to draw test points from.
pub fn sampling_range(d: &Domain) -> (f64, f64) {
    (d.lo().finite().unwrap_or(-10.0), d.hi().finite().unwrap_or(10.0))
}
