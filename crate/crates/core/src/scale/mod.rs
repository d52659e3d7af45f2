//! Concrete scales: tick values at physical positions `u * f(x)` measured
//! from the origin S1, plus the transforms that turn one scale into another.

mod catalog;
pub mod decimal;
mod ticks;
mod transform;

pub use catalog::{catalog_entries, catalog_scale, CatalogEntry, CATALOG_CODES};
pub use decimal::Decimal;
pub use ticks::{S_MIN, S_TARGET};
pub use transform::{inverse_scale, negate_scale, reflect_argument_scale, translate_scale, zoom_scale};

use crate::analysis::monotonicity::require_monotone;
use crate::analysis::origin::classify_edges;
use crate::analysis::probe::{blows_up, converges, edge, Edge};
use crate::analysis::{AnalysisError, Monotonicity, OriginKind, OriginReport, DEFAULT_SAMPLES};
use crate::domain::{Domain, End, ExtReal};
use crate::func::DistanceFn;
use crate::par::{self, Execution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ScaleError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("the image of f is unbounded toward x = {at}; the scale would be infinitely long")]
    UnboundedImage { at: ExtReal },
    #[error("unit must be finite and positive, got {0}")]
    InvalidUnit(f64),
    #[error("unknown catalog code {code:?}; available: {available}")]
    UnknownCode { code: String, available: String },
}

/// How tick and origin values are printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "digits", rename_all = "snake_case")]
pub enum LabelFormat {
    /// At most this many significant digits, trailing zeros dropped.
    Significant(u32),
    /// At most this many digits after the point, trailing zeros dropped.
    Decimals(u32),
}

impl Default for LabelFormat {
    fn default() -> Self {
        LabelFormat::Significant(6)
    }
}

impl LabelFormat {
    pub fn format(&self, d: Decimal) -> String {
        let d = match *self {
            LabelFormat::Significant(n) => d.round_significant(n),
            LabelFormat::Decimals(n) => d.round_decimals(n),
        };
        d.to_string()
    }

    pub fn format_f64(&self, x: f64) -> String {
        match Decimal::from_f64_significant(x, 17) {
            Some(d) => self.format(d.round_significant(15)),
            None => x.to_string(),
        }
    }
}

/// Pins the origin classification of a scale whose distance function alone
/// cannot tell, such as an inverse scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OriginOverride {
    pub kind: OriginKind,
    pub x0: Option<ExtReal>,
}

/// The recipe for one scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleSpec {
    pub name: String,
    pub function: DistanceFn,
    pub domain: Domain,
    /// Millimetres per unit of `f`.
    pub unit_mm: f64,
    #[serde(default)]
    pub label_format: LabelFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<OriginOverride>,
}

impl ScaleSpec {
    pub fn new(name: impl Into<String>, function: DistanceFn, domain: Domain, unit_mm: f64) -> ScaleSpec {
        ScaleSpec {
            name: name.into(),
            function,
            domain,
            unit_mm,
            label_format: LabelFormat::default(),
            origin: None,
        }
    }

    pub fn parse(name: &str, expr: &str, domain: &str, unit_mm: f64) -> Result<ScaleSpec, String> {
        let f = DistanceFn::parse(expr).map_err(|e| e.to_string())?;
        let d = Domain::parse(domain).map_err(|e| e.to_string())?;
        Ok(ScaleSpec::new(name, f, d, unit_mm))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tick {
    /// The printed number `x`.
    pub value: f64,
    /// `u * f(x)`, signed distance from S1.
    pub position_mm: f64,
    /// 0 is a major tick, 2 the finest.
    pub level: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// S1 with the symbol printed there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OriginMark {
    #[serde(flatten)]
    pub report: OriginReport,
    pub position_mm: f64,
    /// Number, `+inf`, `-inf`, or empty for a standalone origin.
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderedScale {
    pub spec: ScaleSpec,
    pub origin: OriginMark,
    /// Ordered by position.
    pub ticks: Vec<Tick>,
    /// Hull of S1 and both ends of the scale.
    pub window_mm: [f64; 2],
    /// Finite value range the ticks cover; infinite ends are truncated where
    /// `f` stops moving.
    pub support: [f64; 2],
    /// Positions of the two ends of `support`, in the same order.
    pub end_positions_mm: [f64; 2],
    pub direction: Direction,
    /// Where ticks pile up toward an infinite end of the domain.
    #[serde(default)]
    pub accumulation_mm: Vec<f64>,
}

impl RenderedScale {
    pub fn unit_mm(&self) -> f64 {
        self.spec.unit_mm
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn window_width(&self) -> f64 {
        self.window_mm[1] - self.window_mm[0]
    }

    pub fn majors(&self) -> impl Iterator<Item = &Tick> {
        self.ticks.iter().filter(|t| t.level == 0)
    }
}

/// Steps smaller than this mark where an infinite end stops moving.
const SETTLED: f64 = 1e-12;

/// The usable end of the domain: its value bound, `f` there, and the limit
/// of `f` when the end is infinite.
fn support_end(e: &Edge, bound: ExtReal) -> Result<(f64, f64, Option<f64>), ScaleError> {
    match bound {
        ExtReal::Finite(x) => {
            if blows_up(&e.trail) {
                return Err(ScaleError::UnboundedImage { at: bound });
            }
            Ok((x, e.value, None))
        }
        _ => {
            let limit = converges(&e.trail).ok_or(ScaleError::UnboundedImage { at: bound })?;
            let i = e
                .trail
                .windows(2)
                .position(|w| (w[1].1 - w[0].1).abs() < SETTLED)
                .unwrap_or(e.trail.len() - 1);
            let (x, v) = e.trail[i];
            Ok((x, v, Some(limit)))
        }
    }
}

pub(crate) fn origin_label(report: &OriginReport, format: LabelFormat) -> String {
    match (report.kind, report.x0) {
        (OriginKind::Standalone, _) | (_, None) => String::new(),
        (_, Some(ExtReal::Finite(x))) => format.format_f64(x),
        (_, Some(inf)) => inf.to_string(),
    }
}

pub fn build_scale(spec: &ScaleSpec) -> Result<RenderedScale, ScaleError> {
    build_scale_with(spec, Execution::default())
}

/// Build with an explicit execution mode for the sampling work.
pub fn build_scale_with(spec: &ScaleSpec, exec: Execution) -> Result<RenderedScale, ScaleError> {
    let u = spec.unit_mm;
    if !(u.is_finite() && u > 0.0) {
        return Err(ScaleError::InvalidUnit(u));
    }
    let f = &spec.function;
    let d = &spec.domain;
    let mono = require_monotone(f, d, DEFAULT_SAMPLES)?;
    let lo = edge(f, d, End::Lo)?;
    let hi = edge(f, d, End::Hi)?;
    let (a, va, lim_a) = support_end(&lo, d.lo())?;
    let (b, vb, lim_b) = support_end(&hi, d.hi())?;

    let mut report = classify_edges(f, d, &lo, &hi);
    if let Some(o) = spec.origin {
        report.kind = o.kind;
        report.x0 = o.x0;
    }
    let (pa, pb) = (u * va, u * vb);
    let window_mm = [pa.min(pb).min(0.0), pa.max(pb).max(0.0)];
    let frame = ticks::Frame {
        f,
        domain: d,
        unit: u,
        support: (a, b),
        end_positions: (pa, pb),
        window_width: window_mm[1] - window_mm[0],
        exec,
    };
    let ticks = ticks::place(&frame, spec.label_format);
    let direction = match mono {
        Monotonicity::Decreasing => Direction::RightToLeft,
        _ => Direction::LeftToRight,
    };
    Ok(RenderedScale {
        spec: spec.clone(),
        origin: OriginMark {
            label: origin_label(&report, spec.label_format),
            report,
            position_mm: 0.0,
        },
        ticks,
        window_mm,
        support: [a, b],
        end_positions_mm: [pa, pb],
        direction,
        accumulation_mm: [lim_a, lim_b].into_iter().flatten().map(|l| u * l).collect(),
    })
}

/// Build many scales; parallel across scales, sequential within each.
pub fn build_scales(specs: &[ScaleSpec], exec: Execution) -> Vec<Result<RenderedScale, ScaleError>> {
    par::map(exec, specs, |s| build_scale_with(s, Execution::Sequential))
}
