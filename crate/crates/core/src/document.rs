//! Scale and model documents: the JSON interchange read by the renderer and
//! the browser UI.
//!
//! A scale document carries everything a consumer needs without evaluating
//! expressions: ticks, the origin mark, and a dense `(value, position_mm)`
//! table for interpolation. See `docs/document-format.md` for the schema.

use crate::analysis::{
    check_exp_shift, check_homogeneity, check_point_symmetry, check_self_inverse, classify_monotonicity,
    detect_asymptotes, suggest_symmetry_centers, AsymptoteReport, Inverter, Monotonicity, PropertyReport,
    DEFAULT_SAMPLES,
};
use crate::domain::Domain;
use crate::engine::{EngineError, SlideRuleModel};
use crate::func::RealFn;
use crate::par::{self, Execution};
use crate::scale::{Direction, OriginMark, RenderedScale, ScaleSpec, Tick};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_SAMPLE_COUNT: usize = 1024;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("document version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u64, expected: u32 },
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("malformed document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    Scale,
    Model,
}

/// Analysis results stored alongside a scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSummary {
    pub monotonicity: Option<Monotonicity>,
    pub asymptotes: AsymptoteReport,
    pub properties: Vec<PropertyReport>,
}

impl AnalysisSummary {
    /// Run the analyses that apply to `spec`. Checks that cannot run on this
    /// domain are left out rather than reported as failures.
    pub fn of(spec: &ScaleSpec) -> AnalysisSummary {
        let (f, d) = (&spec.function, &spec.domain);
        let mut properties = Vec::new();
        if let Some(&(q, r)) = suggest_symmetry_centers(f, d).first() {
            properties.push(check_point_symmetry(f, q, r, d, 64));
        }
        properties.extend(check_homogeneity(f, d).ok());
        if d.lo().finite().is_none() && d.hi().finite().is_none() {
            properties.push(check_exp_shift(f));
        }
        properties.extend(check_self_inverse(f, d).ok());
        AnalysisSummary {
            monotonicity: classify_monotonicity(f, d, DEFAULT_SAMPLES).ok(),
            asymptotes: detect_asymptotes(f, d),
            properties,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScaleDocument {
    pub kind: DocumentKind,
    pub format_version: u32,
    pub spec: ScaleSpec,
    pub origin: OriginMark,
    pub ticks: Vec<Tick>,
    pub window_mm: [f64; 2],
    pub support: [f64; 2],
    pub end_positions_mm: [f64; 2],
    pub direction: Direction,
    #[serde(default)]
    pub accumulation_mm: Vec<f64>,
    /// `(value, position_mm)` ordered by value; both columns strictly monotone.
    pub samples: Vec<[f64; 2]>,
    pub analysis: AnalysisSummary,
}

/// A dense table over the support: half the rows evenly spaced in value,
/// half evenly spaced in position, so that both steep and flat stretches
/// are resolved. Where `f` is flat to double precision (far tails) rows
/// would repeat a position, so the value grid shrinks to the stretch where
/// positions still move.
pub fn sample_table(s: &RenderedScale, n: usize, exec: Execution) -> Vec<[f64; 2]> {
    let [a, b] = s.support;
    let mut rows = sample_rows(s, n, (a, b), exec);
    for _ in 0..4 {
        let (lo, hi) = match (rows.first(), rows.last()) {
            (Some(l), Some(h)) => (l[0], h[0]),
            _ => break,
        };
        if rows.len() + 2 >= n || (lo, hi) == (a, b) {
            break;
        }
        let narrower = sample_rows(s, n, (lo, hi), exec);
        if narrower.len() <= rows.len() {
            break;
        }
        rows = narrower;
    }
    rows
}

fn sample_rows(s: &RenderedScale, n: usize, (a, b): (f64, f64), exec: Execution) -> Vec<[f64; 2]> {
    let [pa, pb] = s.end_positions_mm;
    let f = &s.spec.function;
    let u = s.unit_mm();
    let n_value = n - n / 2;
    let n_pos = n / 2;
    let by_value: Vec<f64> = (0..n_value)
        .map(|i| {
            let w = i as f64 / (n_value.max(2) - 1) as f64;
            a * (1.0 - w) + b * w
        })
        .collect();
    // midpoints, so the two grids never share an end row
    let by_pos: Vec<f64> = (0..n_pos).map(|i| pa + (pb - pa) * (i as f64 + 0.5) / n_pos as f64).collect();
    let support = Domain::closed(s.support[0], s.support[1]);
    let inv = Inverter::new(f, &support);

    let mut rows: Vec<[f64; 2]> = par::map(exec, &by_value, |&x| f.value(x).ok().map(|v| [x, u * v]))
        .into_iter()
        .flatten()
        .collect();
    rows.extend(
        par::map(exec, &by_pos, |&p| {
            let x = inv.invert(f, p / u).ok()?;
            f.value(x).ok().map(|v| [x, u * v])
        })
        .into_iter()
        .flatten(),
    );
    rows.sort_by(|x, y| x[0].total_cmp(&y[0]));
    let increasing = pb >= pa;
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(rows.len());
    for r in rows {
        let keep = match out.last() {
            None => true,
            Some(l) => r[0] > l[0] && if increasing { r[1] > l[1] } else { r[1] < l[1] },
        };
        if keep {
            out.push(r);
        }
    }
    out
}

/// Value at `position_mm` by linear interpolation of a sample table, as the
/// UI does it. `None` outside the table.
pub fn interpolate_value(samples: &[[f64; 2]], position_mm: f64) -> Option<f64> {
    let (first, last) = (samples.first()?, samples.last()?);
    let increasing = last[1] >= first[1];
    let key = |r: &[f64; 2]| if increasing { r[1] } else { -r[1] };
    let p = if increasing { position_mm } else { -position_mm };
    if p < key(first) || p > key(last) {
        return None;
    }
    let i = samples.partition_point(|r| key(r) < p);
    if i == 0 {
        return Some(first[0]);
    }
    let (l, r) = (samples[i - 1], samples[i]);
    let t = (p - key(&l)) / (key(&r) - key(&l));
    Some(l[0] + t * (r[0] - l[0]))
}

impl ScaleDocument {
    pub fn from_scale(s: &RenderedScale) -> ScaleDocument {
        ScaleDocument::with_samples(s, DEFAULT_SAMPLE_COUNT, Execution::default())
    }

    pub fn with_samples(s: &RenderedScale, n: usize, exec: Execution) -> ScaleDocument {
        ScaleDocument {
            kind: DocumentKind::Scale,
            format_version: FORMAT_VERSION,
            spec: s.spec.clone(),
            origin: s.origin.clone(),
            ticks: s.ticks.clone(),
            window_mm: s.window_mm,
            support: s.support,
            end_positions_mm: s.end_positions_mm,
            direction: s.direction,
            accumulation_mm: s.accumulation_mm.clone(),
            samples: sample_table(s, n, exec),
            analysis: AnalysisSummary::of(&s.spec),
        }
    }

    pub fn to_scale(&self) -> RenderedScale {
        RenderedScale {
            spec: self.spec.clone(),
            origin: self.origin.clone(),
            ticks: self.ticks.clone(),
            window_mm: self.window_mm,
            support: self.support,
            end_positions_mm: self.end_positions_mm,
            direction: self.direction,
            accumulation_mm: self.accumulation_mm.clone(),
        }
    }

    /// Check the document invariants; `prefix` is prepended to field paths.
    pub fn validate_at(&self, prefix: &str) -> Result<(), DocumentError> {
        let at = |field: &str| format!("{prefix}{field}");
        if self.kind != DocumentKind::Scale {
            return Err(schema(at("kind"), "expected \"scale\""));
        }
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::VersionMismatch {
                found: self.format_version.into(),
                expected: FORMAT_VERSION,
            });
        }
        if !(self.spec.unit_mm.is_finite() && self.spec.unit_mm > 0.0) {
            return Err(schema(at("spec.unit_mm"), "must be a positive number"));
        }
        if self.samples.len() < 2 {
            return Err(schema(at("samples"), "needs at least two rows"));
        }
        let dir = (self.samples[1][1] - self.samples[0][1]).signum();
        for (i, w) in self.samples.windows(2).enumerate() {
            let finite = w.iter().flatten().all(|v| v.is_finite());
            if !finite || w[1][0] <= w[0][0] || (w[1][1] - w[0][1]).signum() != dir || w[1][1] == w[0][1] {
                return Err(schema(
                    at(&format!("samples[{}]", i + 1)),
                    "samples must be finite and strictly monotone in both columns",
                ));
            }
        }
        for (i, t) in self.ticks.iter().enumerate() {
            if !self.spec.domain.contains(t.value) {
                return Err(schema(at(&format!("ticks[{i}].value")), "outside the scale domain"));
            }
            let want = self.spec.function.value(t.value).map(|v| self.spec.unit_mm * v);
            match want {
                Ok(p) if (p - t.position_mm).abs() <= 1e-9 * p.abs().max(1.0) => {}
                _ => return Err(schema(at(&format!("ticks[{i}].position_mm")), "does not match u f(value)")),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        self.validate_at("")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<ScaleDocument, DocumentError> {
        let doc: ScaleDocument = parse_checked(text, DocumentKind::Scale)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), DocumentError> {
        write(path.as_ref(), &self.to_json())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ScaleDocument, DocumentError> {
        ScaleDocument::from_json(&read(path.as_ref())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub kind: DocumentKind,
    pub format_version: u32,
    pub stator: Vec<ScaleDocument>,
    pub slide: Vec<ScaleDocument>,
    pub shared_unit_mm: f64,
    pub offset_mm: f64,
    pub hairline_mm: f64,
}

impl ModelDocument {
    pub fn from_model(m: &SlideRuleModel) -> ModelDocument {
        let docs = |list: &[RenderedScale]| list.iter().map(ScaleDocument::from_scale).collect();
        ModelDocument {
            kind: DocumentKind::Model,
            format_version: FORMAT_VERSION,
            stator: docs(&m.stator_scales),
            slide: docs(&m.slide_scales),
            shared_unit_mm: m.shared_unit_mm,
            offset_mm: m.offset_mm,
            hairline_mm: m.hairline_mm,
        }
    }

    pub fn to_model(&self) -> Result<SlideRuleModel, DocumentError> {
        self.validate()?;
        let model = SlideRuleModel {
            stator_scales: self.stator.iter().map(ScaleDocument::to_scale).collect(),
            slide_scales: self.slide.iter().map(ScaleDocument::to_scale).collect(),
            offset_mm: self.offset_mm,
            hairline_mm: self.hairline_mm,
            shared_unit_mm: self.shared_unit_mm,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn scales(&self) -> impl Iterator<Item = &ScaleDocument> {
        self.stator.iter().chain(&self.slide)
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.kind != DocumentKind::Model {
            return Err(schema("kind", "expected \"model\""));
        }
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::VersionMismatch {
                found: self.format_version.into(),
                expected: FORMAT_VERSION,
            });
        }
        for (lath, list) in [("stator", &self.stator), ("slide", &self.slide)] {
            for (i, d) in list.iter().enumerate() {
                let prefix = format!("{lath}[{i}].");
                d.validate_at(&prefix)?;
                if d.spec.unit_mm != self.shared_unit_mm {
                    return Err(schema(
                        format!("{prefix}spec.unit_mm"),
                        format!("{} differs from shared_unit_mm {}", d.spec.unit_mm, self.shared_unit_mm),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<ModelDocument, DocumentError> {
        let doc: ModelDocument = parse_checked(text, DocumentKind::Model)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), DocumentError> {
        write(path.as_ref(), &self.to_json())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ModelDocument, DocumentError> {
        ModelDocument::from_json(&read(path.as_ref())?)
    }
}

/// Either kind of document, told apart by its `kind` field.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Scale(ScaleDocument),
    Model(ModelDocument),
}

impl Document {
    pub fn from_json(text: &str) -> Result<Document, DocumentError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("kind").and_then(|k| k.as_str()) {
            Some("scale") => ScaleDocument::from_json(text).map(Document::Scale),
            Some("model") => ModelDocument::from_json(text).map(Document::Model),
            _ => Err(schema("kind", "expected \"scale\" or \"model\"")),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Document, DocumentError> {
        Document::from_json(&read(path.as_ref())?)
    }

    pub fn to_json(&self) -> String {
        match self {
            Document::Scale(d) => d.to_json(),
            Document::Model(d) => d.to_json(),
        }
    }
}

/// Check kind and version before the full parse so that an old document
/// reports its version rather than a missing field.
fn parse_checked<T: serde::de::DeserializeOwned>(text: &str, kind: DocumentKind) -> Result<T, DocumentError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let found = value.get("kind").and_then(|k| k.as_str());
    let expected = serde_json::to_value(kind)?;
    if found != expected.as_str() {
        return Err(schema("kind", format!("expected {expected}")));
    }
    match value.get("format_version").and_then(|v| v.as_u64()) {
        Some(v) if v == u64::from(FORMAT_VERSION) => {}
        Some(found) => {
            return Err(DocumentError::VersionMismatch {
                found,
                expected: FORMAT_VERSION,
            })
        }
        None => return Err(schema("format_version", "missing or not an integer")),
    }
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        schema(path, e.into_inner().to_string())
    })
}

fn read(path: &Path) -> Result<String, DocumentError> {
    std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), DocumentError> {
    std::fs::write(path, text).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::{build_scale, catalog_scale};

    fn d_doc() -> ScaleDocument {
        ScaleDocument::from_scale(&build_scale(&catalog_scale("D", 250.0).unwrap()).unwrap())
    }

    #[test]
    fn samples_fill_the_support() {
        let doc = d_doc();
        assert_eq!(doc.samples.len(), DEFAULT_SAMPLE_COUNT);
        assert_eq!(doc.samples[0], [1.0, 0.0]);
        assert_eq!(doc.samples.last().unwrap(), &[10.0, 250.0]);
        doc.validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let doc = d_doc();
        let back = ScaleDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_scale().spec, doc.spec);
    }

    #[test]
    fn non_monotone_samples_name_the_field() {
        let mut doc = d_doc();
        doc.samples.swap(10, 11);
        let err = ScaleDocument::from_json(&doc.to_json()).unwrap_err();
        assert!(err.to_string().contains("samples"), "{err}");
    }

    #[test]
    fn version_and_kind_are_checked() {
        let text = d_doc().to_json().replacen("\"format_version\": 1", "\"format_version\": 2", 1);
        assert!(matches!(
            ScaleDocument::from_json(&text),
            Err(DocumentError::VersionMismatch { found: 2, .. })
        ));
        assert!(matches!(ModelDocument::from_json(&d_doc().to_json()), Err(DocumentError::Schema { .. })));
    }

    #[test]
    fn missing_fields_report_a_path() {
        let text = d_doc().to_json().replacen("\"unit_mm\"", "\"unit\"", 1);
        match ScaleDocument::from_json(&text) {
            Err(DocumentError::Schema { path, .. }) => assert!(path.starts_with("spec"), "{path}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn model_unit_mismatch_is_a_schema_error() {
        let d = build_scale(&catalog_scale("D", 250.0).unwrap()).unwrap();
        let c = build_scale(&catalog_scale("C", 250.0).unwrap()).unwrap();
        let model = SlideRuleModel::new(vec![d], vec![c]).unwrap();
        let mut doc = ModelDocument::from_model(&model);
        assert_eq!(ModelDocument::from_json(&doc.to_json()).unwrap(), doc);
        doc.slide[0] = ScaleDocument::from_scale(&build_scale(&catalog_scale("C", 125.0).unwrap()).unwrap());
        match ModelDocument::from_json(&doc.to_json()) {
            Err(DocumentError::Schema { path, .. }) => assert_eq!(path, "slide[0].spec.unit_mm"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interpolation_handles_both_directions() {
        let rows = [[1.0, 10.0], [2.0, 0.0], [3.0, -10.0]];
        assert_eq!(interpolate_value(&rows, 5.0), Some(1.5));
        assert_eq!(interpolate_value(&rows, -10.0), Some(3.0));
        assert_eq!(interpolate_value(&rows, 11.0), None);
    }
}
