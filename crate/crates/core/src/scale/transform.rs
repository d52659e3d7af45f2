use super::{build_scale, origin_label, OriginOverride, RenderedScale, ScaleError, Tick};
use crate::analysis::origin::{classify_edges, side_of};
use crate::analysis::probe::{blows_up, converges, edge, Edge};
use crate::analysis::{OriginKind, Side};
use crate::domain::{Domain, End, ExtReal};
use crate::func::{DistanceFn, RealFn};

fn flip_side(side: Side) -> Side {
    match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
        Side::Interior => Side::Interior,
    }
}

fn negate_label(label: &str) -> String {
    match label.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None if label == "0" || label.is_empty() => label.to_string(),
        None => format!("-{label}"),
    }
}

/// Mirror every position through S1 and keep the printed values: the scale of `-f`.
pub fn negate_scale(s: &RenderedScale) -> RenderedScale {
    let mut out = s.clone();
    out.spec.function = s.spec.function.negated();
    out.ticks = s
        .ticks
        .iter()
        .rev()
        .map(|t| Tick {
            position_mm: -t.position_mm,
            ..t.clone()
        })
        .collect();
    out.window_mm = [-s.window_mm[1], -s.window_mm[0]];
    out.end_positions_mm = s.end_positions_mm.map(|p| -p);
    out.accumulation_mm = s.accumulation_mm.iter().map(|p| -p).collect();
    out.direction = s.direction.flipped();
    out.origin.report.side = flip_side(s.origin.report.side);
    out
}

/// Mirror positions and printed values: value `-x` sits at `-u f(x)`, so the
/// distance function becomes `-f(-x)`.
pub fn reflect_argument_scale(s: &RenderedScale) -> RenderedScale {
    let mut out = s.clone();
    out.spec.function = s.spec.function.reflected().negated();
    out.spec.domain = s.spec.domain.negated();
    out.spec.origin = s.spec.origin.map(|o| OriginOverride {
        x0: o.x0.map(ExtReal::negate),
        ..o
    });
    out.ticks = s
        .ticks
        .iter()
        .rev()
        .map(|t| Tick {
            value: -t.value,
            position_mm: -t.position_mm,
            level: t.level,
            label: t.label.as_deref().map(negate_label),
        })
        .collect();
    out.window_mm = [-s.window_mm[1], -s.window_mm[0]];
    out.support = [-s.support[1], -s.support[0]];
    out.end_positions_mm = [-s.end_positions_mm[1], -s.end_positions_mm[0]];
    out.accumulation_mm = s.accumulation_mm.iter().rev().map(|p| -p).collect();
    out.origin.report.x0 = s.origin.report.x0.map(ExtReal::negate);
    out.origin.report.side = flip_side(s.origin.report.side);
    out.origin.label = negate_label(&s.origin.label);
    out
}

/// Add `v` to the distance function. Ticks keep their values and move by
/// `u v`; S1 moves to where `f(x) = -v`, if anywhere.
pub fn translate_scale(s: &RenderedScale, v: f64) -> Result<RenderedScale, ScaleError> {
    let g = s.spec.function.shifted(v);
    let d = &s.spec.domain;
    let lo = edge(&g, d, End::Lo)?;
    let hi = edge(&g, d, End::Hi)?;
    let report = classify_edges(&g, d, &lo, &hi);
    let shift = s.spec.unit_mm * v;

    let mut out = s.clone();
    out.spec.function = g;
    out.spec.origin = s.spec.origin.map(|_| OriginOverride {
        kind: report.kind,
        x0: report.x0,
    });
    for t in &mut out.ticks {
        t.position_mm += shift;
    }
    out.end_positions_mm = s.end_positions_mm.map(|p| p + shift);
    out.accumulation_mm = s.accumulation_mm.iter().map(|p| p + shift).collect();
    let [pa, pb] = out.end_positions_mm;
    out.window_mm = [pa.min(pb).min(0.0), pa.max(pb).max(0.0)];
    out.origin.report = report;
    out.origin.report.side = side_of(pa, pb);
    out.origin.label = origin_label(&report, s.spec.label_format);
    Ok(out)
}

/// Rebuild at a new unit; the tick set adapts to the new length.
pub fn zoom_scale(s: &RenderedScale, new_unit_mm: f64) -> Result<RenderedScale, ScaleError> {
    let mut spec = s.spec.clone();
    spec.unit_mm = new_unit_mm;
    build_scale(&spec)
}

/// An end of the image of `f`: the value there and whether it is open.
fn image_end(e: &Edge) -> (f64, bool) {
    if e.exact {
        (e.value, false)
    } else {
        (converges(&e.trail).unwrap_or(e.value), true)
    }
}

/// Where S1 of the inverse scale sits: `f(0)`, else a limit of `f` at 0.
fn inverse_origin(f: &DistanceFn) -> OriginOverride {
    if let Ok(y) = f.value(0.0) {
        return OriginOverride {
            kind: OriginKind::Root,
            x0: Some(ExtReal::Finite(y)),
        };
    }
    for dir in [1.0, -1.0] {
        let trail: Vec<(f64, f64)> = (1..=15)
            .map(|j| dir * 10f64.powi(-j))
            .map_while(|x| f.value(x).ok().map(|v| (x, v)))
            .collect();
        if blows_up(&trail) {
            let up = trail.last().is_some_and(|p| p.1 > 0.0);
            return OriginOverride {
                kind: OriginKind::LimitEndpoint,
                x0: Some(if up { ExtReal::PosInf } else { ExtReal::NegInf }),
            };
        }
        if let Some(limit) = converges(&trail) {
            return OriginOverride {
                kind: OriginKind::LimitEndpoint,
                x0: Some(ExtReal::Finite(limit)),
            };
        }
    }
    OriginOverride {
        kind: OriginKind::Standalone,
        x0: None,
    }
}

fn inverse_name(name: &str) -> String {
    match name.strip_suffix("^-1") {
        Some(base) => base.to_string(),
        None => format!("{name}^-1"),
    }
}

/// The scale of `f^-1` on the image of `f`, evaluated by numerical inversion.
/// Inverting an inverse restores the original spec.
pub fn inverse_scale(s: &RenderedScale) -> Result<RenderedScale, ScaleError> {
    let f = &s.spec.function;
    let d = &s.spec.domain;
    let (g, restored) = f.inverted(*d);
    let mut spec = s.spec.clone();
    spec.name = inverse_name(&s.spec.name);
    match restored {
        Some(original) => {
            spec.domain = original;
            spec.origin = None;
        }
        None => {
            let lo = edge(f, d, End::Lo)?;
            let hi = edge(f, d, End::Hi)?;
            let (ya, oa) = image_end(&lo);
            let (yb, ob) = image_end(&hi);
            let (lo_end, hi_end) = if ya <= yb { ((ya, oa), (yb, ob)) } else { ((yb, ob), (ya, oa)) };
            spec.domain = Domain::new(
                ExtReal::Finite(lo_end.0),
                ExtReal::Finite(hi_end.0),
                lo_end.1,
                hi_end.1,
            )
            .map_err(|e| crate::analysis::AnalysisError::InvalidParameter(e.to_string()))?;
            spec.origin = Some(inverse_origin(f));
        }
    }
    spec.function = g;
    build_scale(&spec)
}
