mod common;

use proptest::prelude::*;
use slide_scale::analysis::invert_value;
use slide_scale::document::{interpolate_value, DocumentError, DEFAULT_SAMPLE_COUNT};
use slide_scale::scale::{build_scale, catalog_scale, ScaleSpec, CATALOG_CODES};
use slide_scale::svg::{render_model_svg, render_scale_svg, SvgOptions};
use slide_scale::{Document, RealFn, ModelDocument, ScaleDocument, SlideRuleModel};

fn doc(expr: &str, dom: &str, u: f64) -> ScaleDocument {
    ScaleDocument::from_scale(&build_scale(&ScaleSpec::parse("s", expr, dom, u).unwrap()).unwrap())
}

/// Interpolating the samples table recovers values to 0.1% of the value range.
fn check_sample_accuracy(d: &ScaleDocument) {
    let [a, b] = d.support;
    let range = b - a;
    let [pa, pb] = d.end_positions_mm;
    for i in 0..=400 {
        let w = i as f64 / 400.0;
        let p = pa * (1.0 - w) + pb * w;
        let Some(v) = interpolate_value(&d.samples, p) else {
            panic!("{}: no interpolation at {p}", d.spec.name);
        };
        let want = invert_value(&d.spec.function, &d.spec.domain, p / d.spec.unit_mm).unwrap();
        // where f is flat to double precision any value on the flat stretch is right
        let lands = (d.spec.unit_mm * d.spec.function.value(v).unwrap() - p).abs() <= 1e-9 * p.abs().max(1.0);
        assert!((v - want).abs() <= 1e-3 * range || lands, "{}: at {p} mm {v} vs {want}", d.spec.name);
    }
}

#[test]
fn sample_tables_meet_the_interpolation_floor() {
    for (src, f, dom) in common::corpus() {
        let d = ScaleDocument::from_scale(&build_scale(&ScaleSpec::new(src, f, dom, 60.0)).unwrap());
        assert!(d.samples.len() * 100 >= DEFAULT_SAMPLE_COUNT * 95, "{}", d.samples.len());
        check_sample_accuracy(&d);
    }
    for code in CATALOG_CODES {
        check_sample_accuracy(&ScaleDocument::from_scale(&build_scale(&catalog_scale(code, 250.0).unwrap()).unwrap()));
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.json");
    let d = doc("10^x", "(-inf:10]", 2.5e-8);
    d.save(&path).unwrap();
    assert_eq!(ScaleDocument::load(&path).unwrap(), d);
    assert!(std::fs::read_to_string(&path).unwrap().contains("\"-inf\""));
    assert!(matches!(Document::load(&path).unwrap(), Document::Scale(_)));
    assert!(matches!(ScaleDocument::load(dir.path().join("missing.json")), Err(DocumentError::Io { .. })));
}

#[test]
fn model_documents_round_trip_and_render() {
    let b = |c: &str| build_scale(&catalog_scale(c, 250.0).unwrap()).unwrap();
    let mut m = SlideRuleModel::new(vec![b("D"), b("A")], vec![b("C"), b("CI")]).unwrap();
    m.align("C", 1.0, "D", 3.0).unwrap();
    m.set_hairline_at("C", 2.0).unwrap();
    let doc = ModelDocument::from_model(&m);
    let back = ModelDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    let model = back.to_model().unwrap();
    let r = model.read_hairline("D").unwrap();
    assert!((r.value.unwrap() - 6.0).abs() < 1e-12);

    let svg = render_model_svg(&doc, &SvgOptions::default());
    assert_eq!(svg.matches("<g ").count(), 4);
    assert_eq!(svg.matches(r#"class="scale slide""#).count(), 2);
    assert!(svg.contains(r#"class="hairline""#));
    assert_eq!(svg, render_model_svg(&back, &SvgOptions::default()));
}

#[test]
fn exponential_scale_svg_marks_the_limit_origin() {
    let d = doc("10^x", "(-inf:10]", 2.5e-8);
    let svg = render_scale_svg(&d, &SvgOptions::default());
    assert!(svg.contains(r#"<text class="origin" x="0.00""#));
    assert!(svg.contains(">-inf</text>"));
    assert!(svg.contains(r#"class="crowding" cx="0.00""#));
}

#[test]
fn shifted_cubic_ticks_are_point_symmetric() {
    // f(4 - x) = 2 - f(x), so the tick at 4 - v mirrors the tick at v about 36 mm
    let d = doc("(x-2)^3/100+1", "[-5:9]", 36.0);
    let mut mirrored = 0;
    for t in &d.ticks {
        let twin = d.ticks.iter().find(|s| (s.value - (4.0 - t.value)).abs() < 1e-9);
        let twin = twin.unwrap_or_else(|| panic!("no mirror for {}", t.value));
        assert!((twin.position_mm + t.position_mm - 72.0).abs() < 1e-9);
        assert_eq!(twin.level, t.level, "{} vs {}", t.value, twin.value);
        mirrored += 1;
    }
    assert!(mirrored > 20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn json_round_trip_is_exact(a in 0.1..5.0f64, lo in 1.0..10.0f64, k in 2.0..50.0f64, u in 10.0..300.0f64) {
        let d = doc(&format!("{a}*lg(x)"), &format!("[{lo}:{}]", lo * k), u);
        let back = ScaleDocument::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(render_scale_svg(&back, &SvgOptions::default()), render_scale_svg(&d, &SvgOptions::default()));
    }
}
