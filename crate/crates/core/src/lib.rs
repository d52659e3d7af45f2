//! Slide-rule scales for arbitrary strictly monotone distance functions.
//!
//! A scale prints the number `x` at distance `u f(x)` from its origin S1.
//! [`analysis`] checks that `f` can carry a scale and finds S1, [`scale`]
//! places ticks and transforms scales, [`engine`] operates a slide rule made
//! of them, and [`document`] and [`svg`] write them out.
//!
//! ```
//! use slide_scale::scale::{build_scale, catalog_scale};
//!
//! let d = build_scale(&catalog_scale("D", 250.0).unwrap()).unwrap();
//! let two = d.ticks.iter().find(|t| t.value == 2.0).unwrap();
//! assert!((two.position_mm - 250.0 * 2f64.log10()).abs() < 1e-9);
//! ```

pub mod analysis;
pub mod document;
pub mod domain;
pub mod engine;
pub mod expr;
pub mod func;
pub mod numeric;
pub mod par;
pub mod scale;
pub mod svg;

pub use document::{Document, DocumentError, ModelDocument, ScaleDocument};
pub use domain::{Domain, ExtReal};
pub use engine::{EngineError, Readout, SlideRuleModel};
pub use expr::Expression;
pub use func::{DistanceFn, RealFn};
pub use par::Execution;
pub use scale::{build_scale, RenderedScale, ScaleError, ScaleSpec};
