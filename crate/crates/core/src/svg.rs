//! SVG output for scale and model documents.
//!
//! Every scale is one `<g>` whose local x axis is the scale's own position
//! axis: S1 sits at x = 0 and a tick's x is its `position_mm`. Coordinates
//! are millimetres with two decimals; the same document always yields the
//! same bytes.

use crate::analysis::OriginKind;
use crate::document::{Document, ModelDocument, ScaleDocument};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvgOptions {
    /// Height of the tick band; level 0 ticks span all of it.
    pub rule_height_mm: f64,
    pub margin_mm: f64,
    pub font_size_mm: f64,
    /// Vertical space between stacked scales.
    pub gap_mm: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            rule_height_mm: 10.0,
            margin_mm: 12.0,
            font_size_mm: 2.5,
            gap_mm: 3.0,
        }
    }
}

const LEVEL_LENGTH: [f64; 3] = [1.0, 0.6, 0.35];

fn mm(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

struct Placed<'a> {
    doc: &'a ScaleDocument,
    /// Horizontal shift of the scale's S1 relative to stator S1.
    shift: f64,
    lath: &'static str,
}

/// Height of one scale row: label line plus tick band plus S1 glyph.
fn row_height(o: &SvgOptions) -> f64 {
    o.font_size_mm * 1.4 + o.rule_height_mm + 2.5 * o.font_size_mm
}

fn scale_group(out: &mut String, p: &Placed, x_origin: f64, top: f64, o: &SvgOptions) {
    let d = p.doc;
    let h = o.rule_height_mm;
    let band = top + o.font_size_mm * 1.4;
    let x = x_origin + p.shift;
    let _ = writeln!(
        out,
        r#"  <g class="scale {}" data-name="{}" transform="translate({} {})">"#,
        p.lath,
        escape(&d.spec.name),
        mm(x),
        mm(band)
    );
    let [w0, w1] = d.window_mm;
    let _ = writeln!(
        out,
        r#"    <line class="edge" x1="{}" y1="0.00" x2="{}" y2="0.00"/>"#,
        mm(w0),
        mm(w1)
    );
    let _ = writeln!(
        out,
        r#"    <text class="name" x="{}" y="{}" text-anchor="end">{}</text>"#,
        mm(w0 - o.font_size_mm),
        mm(0.6 * h),
        escape(&d.spec.name)
    );
    for t in &d.ticks {
        let len = LEVEL_LENGTH[usize::from(t.level.min(2))] * h;
        let px = mm(t.position_mm);
        let _ = writeln!(
            out,
            r#"    <line class="tick l{}" x1="{px}" y1="0.00" x2="{px}" y2="{}"/>"#,
            t.level,
            mm(len)
        );
        if let Some(label) = &t.label {
            let _ = writeln!(
                out,
                r#"    <text class="label" x="{px}" y="{}" text-anchor="middle">{}</text>"#,
                mm(-0.4 * o.font_size_mm),
                escape(label)
            );
        }
    }
    // S1: a triangle pointing up at position 0, hollow when standalone
    let s = 0.8 * o.font_size_mm;
    let class = if d.origin.report.kind == OriginKind::Standalone {
        "s1 standalone"
    } else {
        "s1"
    };
    let _ = writeln!(
        out,
        r#"    <polygon class="{class}" points="0.00,{} {},{} {},{}"/>"#,
        mm(h),
        mm(-s / 2.0),
        mm(h + s),
        mm(s / 2.0),
        mm(h + s)
    );
    if !d.origin.label.is_empty() {
        let _ = writeln!(
            out,
            r#"    <text class="origin" x="0.00" y="{}" text-anchor="middle">{}</text>"#,
            mm(h + s + o.font_size_mm),
            escape(&d.origin.label)
        );
    }
    for &a in &d.accumulation_mm {
        // three dots where marks pile up
        for k in 0..3 {
            let _ = writeln!(
                out,
                r#"    <circle class="crowding" cx="{}" cy="{}" r="0.25"/>"#,
                mm(a),
                mm(0.2 * h + 0.6 * f64::from(k))
            );
        }
    }
    let _ = writeln!(out, "  </g>");
}

fn render(rows: &[Placed], hairline: Option<f64>, o: &SvgOptions) -> String {
    let lo = rows
        .iter()
        .map(|p| p.doc.window_mm[0] + p.shift)
        .fold(f64::INFINITY, f64::min)
        .min(hairline.unwrap_or(f64::INFINITY));
    let hi = rows
        .iter()
        .map(|p| p.doc.window_mm[1] + p.shift)
        .fold(f64::NEG_INFINITY, f64::max)
        .max(hairline.unwrap_or(f64::NEG_INFINITY));
    let (lo, hi) = if rows.is_empty() { (0.0, 0.0) } else { (lo, hi) };
    let width = hi - lo + 2.0 * o.margin_mm;
    let row = row_height(o);
    let height = 2.0 * o.margin_mm + rows.len() as f64 * row + rows.len().saturating_sub(1) as f64 * o.gap_mm;
    let x_origin = o.margin_mm - lo;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}mm" height="{h}mm" viewBox="0 0 {w} {h}">"#,
        w = mm(width),
        h = mm(height)
    );
    let _ = writeln!(
        out,
        "  <style>line{{stroke:black;stroke-width:0.1}} text{{font-family:sans-serif;font-size:{}px}} \
         .s1{{fill:black}} .s1.standalone{{fill:none;stroke:black;stroke-width:0.15}} \
         .crowding{{fill:black}} .hairline{{stroke:red;stroke-width:0.15}}</style>",
        mm(o.font_size_mm)
    );
    for (i, p) in rows.iter().enumerate() {
        let top = o.margin_mm + i as f64 * (row + o.gap_mm);
        scale_group(&mut out, p, x_origin, top, o);
    }
    if let Some(hx) = hairline {
        let x = mm(x_origin + hx);
        let _ = writeln!(
            out,
            r#"  <line class="hairline" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            mm(o.margin_mm / 2.0),
            mm(height - o.margin_mm / 2.0)
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_scale_svg(doc: &ScaleDocument, o: &SvgOptions) -> String {
    render(
        &[Placed {
            doc,
            shift: 0.0,
            lath: "stator",
        }],
        None,
        o,
    )
}

/// Stator scales on top, then the slide shifted by `offset_mm`, with the
/// hairline across both.
pub fn render_model_svg(doc: &ModelDocument, o: &SvgOptions) -> String {
    let rows: Vec<Placed> = doc
        .stator
        .iter()
        .map(|d| Placed {
            doc: d,
            shift: 0.0,
            lath: "stator",
        })
        .chain(doc.slide.iter().map(|d| Placed {
            doc: d,
            shift: doc.offset_mm,
            lath: "slide",
        }))
        .collect();
    render(&rows, Some(doc.hairline_mm), o)
}

pub fn render_svg(doc: &Document, o: &SvgOptions) -> String {
    match doc {
        Document::Scale(d) => render_scale_svg(d, o),
        Document::Model(d) => render_model_svg(d, o),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::{build_scale, catalog_scale};

    fn doc(code: &str) -> ScaleDocument {
        ScaleDocument::from_scale(&build_scale(&catalog_scale(code, 250.0).unwrap()).unwrap())
    }

    #[test]
    fn d_scale_svg() {
        let svg = render_scale_svg(&doc("D"), &SvgOptions::default());
        assert!(svg.contains(r#"viewBox="0 0 274.00 "#), "{}", &svg[..300]);
        assert_eq!(svg.matches(r#"class="label""#).count(), 10);
        assert_eq!(svg.matches(r#"class="tick l0""#).count(), 10);
        assert!(svg.contains(r#"<line class="tick l0" x1="75.26" y1="0.00" x2="75.26" y2="10.00"/>"#));
        assert_eq!(svg.matches("<g ").count(), 1);
    }

    #[test]
    fn output_is_deterministic() {
        let d = doc("LL3");
        let o = SvgOptions::default();
        assert_eq!(render_scale_svg(&d, &o), render_scale_svg(&d.clone(), &o));
    }

    #[test]
    fn escapes_text() {
        assert_eq!(escape("a<b&\"c\">"), "a&lt;b&amp;&quot;c&quot;&gt;");
        assert_eq!(mm(-0.001), "0.00");
    }
}
