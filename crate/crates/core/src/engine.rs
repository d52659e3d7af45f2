//! The virtual slide rule: scales on a fixed stator and a moving slide.
//!
//! Sliding adds lengths, so with `f` and `h` on the stator and `g` on the
//! slide the rule solves `h(z) = f(x) + g(y)`.

use crate::analysis::Inverter;
use crate::func::RealFn;
use crate::par::{self, Execution};
use crate::scale::{zoom_scale, RenderedScale, ScaleError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lath {
    Stator,
    Slide,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum EngineError {
    #[error("no scale named {0:?} on the rule")]
    UnknownScale(String),
    #[error("scale {name:?} must be on the {expected:?} lath")]
    WrongLath { name: String, expected: Lath },
    #[error("two scales are named {0:?}")]
    DuplicateName(String),
    #[error("scale {name:?} has unit {unit} mm but the rule uses {shared} mm")]
    UnitMismatch { name: String, unit: f64, shared: f64 },
    #[error("{value} is outside the domain {domain} of scale {name:?}")]
    OutsideDomain { name: String, value: f64, domain: String },
    #[error("{value} is undefined on scale {name:?}")]
    Undefined { name: String, value: f64 },
    #[error(
        "off scale: {name:?} would need f = {target}, outside its image [{min}, {max}]; \
         moving the slide by {fold_mm} mm brings the result back"
    )]
    OffScale {
        name: String,
        target: f64,
        min: f64,
        max: f64,
        /// Slide shift that folds the target back into the image by whole image lengths.
        fold_mm: f64,
    },
    #[error(transparent)]
    Scale(#[from] ScaleError),
}

/// What the hairline shows on one scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Readout {
    pub scale_name: String,
    /// `None` when the position is off the scale.
    pub value: Option<f64>,
    pub position_mm: f64,
    pub on_scale: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlideRuleModel {
    pub stator_scales: Vec<RenderedScale>,
    pub slide_scales: Vec<RenderedScale>,
    /// Slide displacement; a slide mark at `p` sits over stator position `p + offset_mm`.
    pub offset_mm: f64,
    pub hairline_mm: f64,
    pub shared_unit_mm: f64,
}

impl SlideRuleModel {
    pub fn new(stator: Vec<RenderedScale>, slide: Vec<RenderedScale>) -> Result<SlideRuleModel, EngineError> {
        let shared = stator
            .iter()
            .chain(&slide)
            .map(|s| s.unit_mm())
            .next()
            .unwrap_or(1.0);
        let model = SlideRuleModel {
            stator_scales: stator,
            slide_scales: slide,
            offset_mm: 0.0,
            hairline_mm: 0.0,
            shared_unit_mm: shared,
        };
        model.validate()?;
        Ok(model)
    }

    /// Check the unit and naming invariants.
    pub fn validate(&self) -> Result<(), EngineError> {
        let mut seen = std::collections::HashSet::new();
        for s in self.stator_scales.iter().chain(&self.slide_scales) {
            if s.unit_mm() != self.shared_unit_mm {
                return Err(EngineError::UnitMismatch {
                    name: s.name().to_string(),
                    unit: s.unit_mm(),
                    shared: self.shared_unit_mm,
                });
            }
            if !seen.insert(s.name()) {
                return Err(EngineError::DuplicateName(s.name().to_string()));
            }
        }
        Ok(())
    }

    pub fn scale(&self, name: &str) -> Result<(Lath, &RenderedScale), EngineError> {
        let on = |list: &'_ [RenderedScale]| list.iter().position(|s| s.name() == name);
        if let Some(i) = on(&self.stator_scales) {
            Ok((Lath::Stator, &self.stator_scales[i]))
        } else if let Some(i) = on(&self.slide_scales) {
            Ok((Lath::Slide, &self.slide_scales[i]))
        } else {
            Err(EngineError::UnknownScale(name.to_string()))
        }
    }

    fn on_lath(&self, name: &str, expected: Lath) -> Result<&RenderedScale, EngineError> {
        match self.scale(name)? {
            (lath, s) if lath == expected => Ok(s),
            _ => Err(EngineError::WrongLath {
                name: name.to_string(),
                expected,
            }),
        }
    }

    /// `u f(x)` on the scale's own lath.
    fn mark(s: &RenderedScale, x: f64) -> Result<f64, EngineError> {
        if !x.is_finite() || !s.spec.domain.contains(x) {
            return Err(EngineError::OutsideDomain {
                name: s.name().to_string(),
                value: x,
                domain: s.spec.domain.to_string(),
            });
        }
        s.spec
            .function
            .value(x)
            .map(|v| s.unit_mm() * v)
            .map_err(|_| EngineError::Undefined {
                name: s.name().to_string(),
                value: x,
            })
    }

    /// Move the slide so that its mark `x` sits over the stator mark `y`.
    pub fn align(&mut self, slide_scale: &str, x: f64, stator_scale: &str, y: f64) -> Result<f64, EngineError> {
        let g = Self::mark(self.on_lath(slide_scale, Lath::Slide)?, x)?;
        let f = Self::mark(self.on_lath(stator_scale, Lath::Stator)?, y)?;
        self.offset_mm = f - g;
        Ok(self.offset_mm)
    }

    /// Place the hairline over the mark `x` of a scale on either lath.
    pub fn set_hairline_at(&mut self, scale: &str, x: f64) -> Result<f64, EngineError> {
        let (lath, s) = self.scale(scale)?;
        let p = Self::mark(s, x)?;
        self.hairline_mm = p + if lath == Lath::Slide { self.offset_mm } else { 0.0 };
        Ok(self.hairline_mm)
    }

    /// The value under a stator position `at_mm`.
    pub fn read(&self, scale: &str, at_mm: f64) -> Result<Readout, EngineError> {
        let (lath, s) = self.scale(scale)?;
        let local = at_mm - if lath == Lath::Slide { self.offset_mm } else { 0.0 };
        let inv = Inverter::new(&s.spec.function, &s.spec.domain);
        let value = inv
            .invert(&s.spec.function, local / s.unit_mm())
            .ok()
            .filter(|&x| s.spec.domain.contains(x));
        Ok(Readout {
            scale_name: s.name().to_string(),
            value,
            position_mm: at_mm,
            on_scale: value.is_some(),
        })
    }

    pub fn read_hairline(&self, scale: &str) -> Result<Readout, EngineError> {
        self.read(scale, self.hairline_mm)
    }

    /// `z = h^-1(f(x) + g(y))`, evaluated directly.
    pub fn compute(&self, f_scale: &str, g_scale: &str, h_scale: &str, x: f64, y: f64) -> Result<Readout, EngineError> {
        let prepared = self.prepare(f_scale, g_scale, h_scale)?;
        prepared.run(x, y)
    }

    /// [`compute`](Self::compute) over many `(x, y)` pairs, sharing the setup.
    pub fn compute_batch(
        &self,
        f_scale: &str,
        g_scale: &str,
        h_scale: &str,
        pairs: &[(f64, f64)],
        exec: Execution,
    ) -> Result<Vec<Result<Readout, EngineError>>, EngineError> {
        let prepared = self.prepare(f_scale, g_scale, h_scale)?;
        Ok(par::map(exec, pairs, |&(x, y)| prepared.run(x, y)))
    }

    /// The same computation done the way a person would: S1 of the slide
    /// over `x`, hairline over `y`, read `h` under the hairline.
    pub fn compute_by_sliding(
        &mut self,
        f_scale: &str,
        g_scale: &str,
        h_scale: &str,
        x: f64,
        y: f64,
    ) -> Result<Readout, EngineError> {
        self.on_lath(h_scale, Lath::Stator)?;
        self.offset_mm = Self::mark(self.on_lath(f_scale, Lath::Stator)?, x)?;
        self.set_hairline_at(g_scale, y)?;
        self.read_hairline(h_scale)
    }

    /// The same rule with every scale rebuilt at a new unit.
    pub fn rescaled(&self, unit_mm: f64) -> Result<SlideRuleModel, EngineError> {
        let zoom = |list: &[RenderedScale]| -> Result<Vec<RenderedScale>, EngineError> {
            list.iter().map(|s| Ok(zoom_scale(s, unit_mm)?)).collect()
        };
        let k = unit_mm / self.shared_unit_mm;
        Ok(SlideRuleModel {
            stator_scales: zoom(&self.stator_scales)?,
            slide_scales: zoom(&self.slide_scales)?,
            offset_mm: self.offset_mm * k,
            hairline_mm: self.hairline_mm * k,
            shared_unit_mm: unit_mm,
        })
    }

    fn prepare<'a>(&'a self, f: &str, g: &str, h: &str) -> Result<Prepared<'a>, EngineError> {
        let h = self.on_lath(h, Lath::Stator)?;
        Ok(Prepared {
            f: self.on_lath(f, Lath::Stator)?,
            g: self.on_lath(g, Lath::Slide)?,
            h,
            inv: Inverter::new(&h.spec.function, &h.spec.domain),
        })
    }
}

struct Prepared<'a> {
    f: &'a RenderedScale,
    g: &'a RenderedScale,
    h: &'a RenderedScale,
    inv: Inverter,
}

impl Prepared<'_> {
    fn run(&self, x: f64, y: f64) -> Result<Readout, EngineError> {
        let u = self.h.unit_mm();
        let target = (SlideRuleModel::mark(self.f, x)? + SlideRuleModel::mark(self.g, y)?) / u;
        let h = &self.h.spec.function;
        let off_scale = || {
            let (min, max) = self.inv.image().unwrap_or((f64::NAN, f64::NAN));
            let span = max - min;
            let folds = if target > max {
                -((target - max) / span).ceil()
            } else {
                ((min - target) / span).ceil()
            };
            EngineError::OffScale {
                name: self.h.name().to_string(),
                target,
                min,
                max,
                fold_mm: folds * span * u,
            }
        };
        let z = self.inv.invert(h, target).map_err(|_| off_scale())?;
        if !self.h.spec.domain.contains(z) {
            return Err(off_scale());
        }
        Ok(Readout {
            scale_name: self.h.name().to_string(),
            value: Some(z),
            position_mm: u * target,
            on_scale: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::{build_scale, catalog_scale};

    fn rule(stator: &[&str], slide: &[&str]) -> SlideRuleModel {
        let b = |c: &&str| build_scale(&catalog_scale(c, 250.0).unwrap()).unwrap();
        SlideRuleModel::new(stator.iter().map(b).collect(), slide.iter().map(b).collect()).unwrap()
    }

    #[test]
    fn align_sets_the_offset() {
        let mut m = rule(&["D"], &["C"]);
        let off = m.align("C", 1.0, "D", 3.0).unwrap();
        assert!((off - 250.0 * 3f64.log10()).abs() < 1e-12);
        assert_eq!(m.align("C", 1.0, "D", 1.0).unwrap(), 0.0);
        let wrapped = m.align("C", 10.0, "D", 3.0).unwrap();
        assert!((wrapped - 250.0 * (3f64.log10() - 1.0)).abs() < 1e-12);
        assert!(matches!(m.align("D", 1.0, "C", 1.0), Err(EngineError::WrongLath { .. })));
        assert!(matches!(m.align("C", 11.0, "D", 1.0), Err(EngineError::OutsideDomain { .. })));
    }

    #[test]
    fn read_inverts_positions() {
        let m = rule(&["D"], &["C"]);
        let r = m.read("D", 250.0 * 6f64.log10()).unwrap();
        assert!((r.value.unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(m.read("D", 0.0).unwrap().value, Some(1.0));
        assert!(!m.read("D", 375.0).unwrap().on_scale);
    }

    #[test]
    fn multiplication_and_off_scale() {
        let m = rule(&["D", "A"], &["C"]);
        let z = m.compute("D", "C", "D", 3.0, 2.0).unwrap().value.unwrap();
        assert!((z - 6.0).abs() < 6e-12);
        let a = m.compute("D", "C", "A", 2.0, 3.0).unwrap().value.unwrap();
        assert!((a - 36.0).abs() < 36e-12);
        match m.compute("D", "C", "D", 5.0, 5.0) {
            Err(EngineError::OffScale { fold_mm, .. }) => assert!((fold_mm + 250.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sliding_agrees_with_direct_computation() {
        let mut m = rule(&["D"], &["C"]);
        let direct = m.compute("D", "C", "D", 2.5, 3.5).unwrap().value.unwrap();
        let slid = m.compute_by_sliding("D", "C", "D", 2.5, 3.5).unwrap().value.unwrap();
        assert!((direct - slid).abs() < 1e-12);
        assert!((m.offset_mm - 250.0 * 2.5f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn unit_mismatch_is_rejected() {
        let d = build_scale(&catalog_scale("D", 250.0).unwrap()).unwrap();
        let c = build_scale(&catalog_scale("C", 125.0).unwrap()).unwrap();
        assert!(matches!(SlideRuleModel::new(vec![d], vec![c]), Err(EngineError::UnitMismatch { .. })));
    }
}
