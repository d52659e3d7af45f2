//! Intervals of the extended real line with open or closed endpoints.

use crate::expr::{eval_constant, ConstantError};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// A real number or one of the two infinities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn as_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn from_f64(v: f64) -> ExtReal {
        if v == f64::INFINITY {
            ExtReal::PosInf
        } else if v == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(v)
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn negate(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(v) => ExtReal::Finite(-v),
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::NegInf => s.serialize_str("-inf"),
            ExtReal::PosInf => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Sym(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtReal::Finite(v)),
            Raw::Sym(s) => match s.as_str() {
                "+inf" | "inf" => Ok(ExtReal::PosInf),
                "-inf" => Ok(ExtReal::NegInf),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number, \"+inf\" or \"-inf\", found \"{other}\""
                ))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DomainError {
    #[error("domain is empty: lower bound {lo} is not below upper bound {hi}")]
    Empty { lo: ExtReal, hi: ExtReal },
    #[error("domain bound is not a number")]
    NotANumber,
    #[error("malformed domain `{0}`: expected a:b, optionally bracketed like [a:b) or (a:b]")]
    Malformed(String),
    #[error("bad domain endpoint `{text}`: {source}")]
    Endpoint {
        text: String,
        #[source]
        source: ConstantError,
    },
}

/// An interval `lo..hi`; infinite endpoints are always open.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDomain", into = "RawDomain")]
pub struct Domain {
    lo: ExtReal,
    hi: ExtReal,
    lo_open: bool,
    hi_open: bool,
}

#[derive(Serialize, Deserialize)]
struct RawDomain {
    lo: ExtReal,
    hi: ExtReal,
    lo_open: bool,
    hi_open: bool,
}

impl TryFrom<RawDomain> for Domain {
    type Error = DomainError;
    fn try_from(r: RawDomain) -> Result<Self, Self::Error> {
        Domain::new(r.lo, r.hi, r.lo_open, r.hi_open)
    }
}

impl From<Domain> for RawDomain {
    fn from(d: Domain) -> Self {
        RawDomain {
            lo: d.lo,
            hi: d.hi,
            lo_open: d.lo_open,
            hi_open: d.hi_open,
        }
    }
}

/// One end of an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Lo,
    Hi,
}

impl Domain {
    pub fn new(lo: ExtReal, hi: ExtReal, lo_open: bool, hi_open: bool) -> Result<Domain, DomainError> {
        if lo.as_f64().is_nan() || hi.as_f64().is_nan() {
            return Err(DomainError::NotANumber);
        }
        if lo.as_f64() >= hi.as_f64() {
            return Err(DomainError::Empty { lo, hi });
        }
        Ok(Domain {
            lo,
            hi,
            lo_open: lo_open || !lo.is_finite(),
            hi_open: hi_open || !hi.is_finite(),
        })
    }

    /// Closed interval `[a, b]`. Panics on an empty interval.
    pub fn closed(a: f64, b: f64) -> Domain {
        Domain::new(ExtReal::from_f64(a), ExtReal::from_f64(b), false, false).expect("non-empty interval")
    }

    /// Open interval `(a, b)`. Panics on an empty interval.
    pub fn open(a: f64, b: f64) -> Domain {
        Domain::new(ExtReal::from_f64(a), ExtReal::from_f64(b), true, true).expect("non-empty interval")
    }

    pub fn lo(&self) -> ExtReal {
        self.lo
    }

    pub fn hi(&self) -> ExtReal {
        self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn bound(&self, end: End) -> ExtReal {
        match end {
            End::Lo => self.lo,
            End::Hi => self.hi,
        }
    }

    pub fn is_open(&self, end: End) -> bool {
        match end {
            End::Lo => self.lo_open,
            End::Hi => self.hi_open,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        let (a, b) = (self.lo.as_f64(), self.hi.as_f64());
        let above = if self.lo_open { x > a } else { x >= a };
        let below = if self.hi_open { x < b } else { x <= b };
        above && below && x.is_finite()
    }

    /// Mirror image under `x -> -x`.
    pub fn negated(&self) -> Domain {
        Domain {
            lo: self.hi.negate(),
            hi: self.lo.negate(),
            lo_open: self.hi_open,
            hi_open: self.lo_open,
        }
    }

    /// Parse `a:b`, `[a:b]`, `(a:b]` and so on. Endpoints are constant
    /// expressions or `inf`; unbracketed finite endpoints are closed.
    pub fn parse(text: &str) -> Result<Domain, DomainError> {
        let t = text.trim();
        let malformed = || DomainError::Malformed(text.to_string());
        let (lo_open, t) = match t.chars().next() {
            Some('[') => (false, &t[1..]),
            Some('(') => (true, &t[1..]),
            _ => (false, t),
        };
        let (hi_open, t) = match t.chars().last() {
            Some(']') => (false, &t[..t.len() - 1]),
            Some(')') if t.matches('(').count() < t.matches(')').count() => (true, &t[..t.len() - 1]),
            _ => (false, t),
        };
        let (a, b) = t.split_once(':').ok_or_else(malformed)?;
        let lo = parse_endpoint(a)?;
        let hi = parse_endpoint(b)?;
        Domain::new(lo, hi, lo_open, hi_open)
    }
}

fn parse_endpoint(text: &str) -> Result<ExtReal, DomainError> {
    match text.trim() {
        "inf" | "+inf" | "infinity" => Ok(ExtReal::PosInf),
        "-inf" | "-infinity" => Ok(ExtReal::NegInf),
        s => eval_constant(s).map(ExtReal::Finite).map_err(|source| DomainError::Endpoint {
            text: s.to_string(),
            source,
        }),
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}
