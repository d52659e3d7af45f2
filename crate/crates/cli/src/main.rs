//! `sliderule`: analyze, build, transform and render slide-rule scales.

use clap::{Parser, Subcommand};
use serde_json::json;
use slide_scale::analysis::{
    check_homogeneity, check_self_inverse, classify_monotonicity, detect_asymptotes, locate_origin,
    suggest_symmetry_centers, check_point_symmetry, Monotonicity, Property, PropertyReport, DEFAULT_SAMPLES,
};
use slide_scale::expr::eval_constant;
use slide_scale::scale::{
    build_scale, catalog_entries, catalog_scale, inverse_scale, negate_scale, reflect_argument_scale,
    translate_scale, zoom_scale, LabelFormat, ScaleSpec,
};
use slide_scale::svg::{render_svg, SvgOptions};
use slide_scale::{DistanceFn, Document, Domain, ModelDocument, RenderedScale, ScaleDocument, SlideRuleModel};
use std::error::Error;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

type Result<T> = std::result::Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "sliderule", version, about = "Slide-rule scales for arbitrary monotone functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report monotonicity, origin, asymptotes and properties of f on a domain.
    Analyze {
        expr: String,
        /// Interval such as `1:10`, `[0:1)` or `-inf:inf`.
        #[arg(long, allow_hyphen_values = true)]
        domain: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Print machine-readable JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a scale document from a distance function.
    Build {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        domain: String,
        /// Millimetres per unit of f.
        #[arg(long)]
        unit: f64,
        #[arg(long, default_value = "f")]
        name: String,
        /// Label with this many significant digits.
        #[arg(long, conflicts_with = "decimals")]
        digits: Option<u32>,
        /// Label with this many decimal places.
        #[arg(long)]
        decimals: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply negate, reflect, translate:<v>, zoom:<u> or inverse to a scale document.
    Transform {
        /// Scale document; `-` reads standard input.
        doc: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a traditional scale; without a code, list the catalog.
    Catalog {
        code: Option<String>,
        #[arg(long, default_value_t = 250.0)]
        unit: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve h(z) = f(x) + g(y) on a model; f and h on the stator, g on the slide.
    Compute {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(short = 'x', allow_negative_numbers = true)]
        x: f64,
        #[arg(short = 'y', allow_negative_numbers = true)]
        y: f64,
        /// Also move the slide and hairline and report the reading.
        #[arg(long)]
        slide: bool,
        #[arg(long)]
        json: bool,
    },
    /// Render a scale or model document as SVG.
    Render {
        /// Document; `-` or nothing reads standard input.
        doc: Option<PathBuf>,
        #[arg(long, default_value_t = SvgOptions::default().rule_height_mm)]
        rule_height: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bundle scale documents into a model document for the UI.
    Export {
        #[arg(long, num_args = 1..)]
        stator: Vec<PathBuf>,
        #[arg(long, num_args = 0..)]
        slide: Vec<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        offset: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        hairline: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()).into())
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            let mut out = std::io::stdout().lock();
            let written = out.write_all(text.as_bytes()).and_then(|()| match text.ends_with('\n') {
                true => Ok(()),
                false => out.write_all(b"\n"),
            });
            match written {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn analyze(expr: &str, domain: &str, samples: usize, as_json: bool) -> Result<String> {
    let f = DistanceFn::parse(expr)?;
    let d = Domain::parse(domain)?;
    let mono = classify_monotonicity(&f, &d, samples)?;
    let witness_near = mono.witness().map(|w| w.locate(&f));
    let origin = mono.is_monotone().then(|| locate_origin(&f, &d));
    let asymptotes = detect_asymptotes(&f, &d);
    let mut properties: Vec<PropertyReport> = Vec::new();
    if mono.is_monotone() {
        if let Some(&(q, r)) = suggest_symmetry_centers(&f, &d).first() {
            properties.push(check_point_symmetry(&f, q, r, &d, 64));
        }
        properties.extend(check_homogeneity(&f, &d).ok());
        properties.extend(check_self_inverse(&f, &d).ok());
    }

    if as_json {
        let origin = match &origin {
            Some(Ok(r)) => json!(r),
            Some(Err(e)) => json!({ "error": e.to_string() }),
            None => json!(null),
        };
        let v = json!({
            "expression": f.to_string(),
            "domain": d,
            "monotonicity": mono,
            "witness_near": witness_near,
            "origin": origin,
            "asymptotes": asymptotes,
            "properties": properties,
        });
        return Ok(serde_json::to_string_pretty(&v)?);
    }

    let mut out = String::new();
    match mono {
        Monotonicity::NonMonotone { witness } => {
            out += &format!("NonMonotone, witness near {:.4}\n  {witness}\n", witness_near.unwrap_or(f64::NAN));
        }
        m => out += &format!("{m:?} on {d}\n"),
    }
    match origin {
        Some(Ok(r)) => {
            let x0 = r.x0.map_or("none".to_string(), |x| x.to_string());
            out += &format!("origin: {:?}, x0 = {x0}, S1 {:?}\n", r.kind, r.side);
        }
        Some(Err(e)) => out += &format!("origin: {e}\n"),
        None => {}
    }
    if let Some(s) = asymptotes.slant {
        out += &format!("slant asymptote toward {}: f ~ {} x + {}\n", s.at, s.c, s.b);
    }
    if let Some(h) = asymptotes.horizontal {
        out += &format!("horizontal asymptote toward {}: f -> {}\n", h.at, h.d);
    }
    if let Some(v) = asymptotes.vertical {
        out += &format!("pole at x = {v}\n");
    }
    for p in &properties {
        let verdict = if p.holds { "holds" } else { "fails" };
        out += &format!(
            "{}: {verdict} (max residual {:.3e}, {} samples)\n",
            describe(&p.property),
            p.max_residual,
            p.samples_used
        );
    }
    Ok(out)
}

fn describe(p: &Property) -> String {
    match *p {
        Property::PointSymmetry { q, r } => format!("point symmetry about ({q}, {r})"),
        Property::LogShift { a } => format!("log shift with base {a}"),
        Property::Homogeneous { k: Some(k) } => format!("homogeneous of degree {k}"),
        Property::Homogeneous { k: None } => "homogeneous".into(),
        Property::ExpShift { .. } => "exponential shift".into(),
        Property::SelfInverse => "self-inverse".into(),
    }
}

fn load_scale(path: &PathBuf) -> Result<ScaleDocument> {
    Ok(ScaleDocument::from_json(&read_input(Some(path))?)?)
}

fn transform(s: &RenderedScale, op: &str) -> Result<RenderedScale> {
    let (name, arg) = match op.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (op, None),
    };
    let value = || -> Result<f64> {
        let a = arg.ok_or_else(|| format!("--op {name} needs a value, as in {name}:<v>"))?;
        Ok(eval_constant(a)?)
    };
    Ok(match name {
        "negate" => negate_scale(s),
        "reflect" => reflect_argument_scale(s),
        "translate" => translate_scale(s, value()?)?,
        "zoom" => zoom_scale(s, value()?)?,
        "inverse" => inverse_scale(s)?,
        other => {
            return Err(format!("unknown op {other:?}; expected negate, reflect, translate:<v>, zoom:<u> or inverse").into())
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            expr,
            domain,
            samples,
            json,
        } => emit(None, &analyze(&expr, &domain, samples, json)?),
        Command::Build {
            expr,
            domain,
            unit,
            name,
            digits,
            decimals,
            output,
        } => {
            let mut spec = ScaleSpec::parse(&name, &expr, &domain, unit)?;
            if let Some(n) = digits {
                spec.label_format = LabelFormat::Significant(n);
            }
            if let Some(n) = decimals {
                spec.label_format = LabelFormat::Decimals(n);
            }
            let s = build_scale(&spec)?;
            emit(output.as_ref(), &ScaleDocument::from_scale(&s).to_json())
        }
        Command::Transform { doc, op, output } => {
            let s = load_scale(&doc)?.to_scale();
            let t = transform(&s, &op)?;
            emit(output.as_ref(), &ScaleDocument::from_scale(&t).to_json())
        }
        Command::Catalog { code, unit, output } => match code {
            None => {
                let mut out = String::new();
                for e in catalog_entries() {
                    out += &format!("{:<5} {:<22} {:<28} {}\n", e.code, e.marking, e.distance, e.domain);
                }
                emit(output.as_ref(), &out)
            }
            Some(code) => {
                let s = build_scale(&catalog_scale(&code, unit)?)?;
                emit(output.as_ref(), &ScaleDocument::from_scale(&s).to_json())
            }
        },
        Command::Compute {
            model,
            f,
            g,
            h,
            x,
            y,
            slide,
            json,
        } => {
            let mut m = ModelDocument::from_json(&read_input(Some(&model))?)?.to_model()?;
            let r = m.compute(&f, &g, &h, x, y)?;
            let z = r.value.ok_or("result is off scale")?;
            let slid = if slide { Some(m.compute_by_sliding(&f, &g, &h, x, y)?) } else { None };
            if json {
                let v = json!({ "z": z, "readout": r, "slide": slid.as_ref().map(|s| json!({
                    "offset_mm": m.offset_mm, "hairline_mm": m.hairline_mm, "readout": s
                })) });
                emit(None, &serde_json::to_string_pretty(&v)?)
            } else {
                // twelve significant digits hide the last-place noise of the inversion
                let mut out = format!("z = {}", LabelFormat::Significant(12).format_f64(z));
                if let Some(s) = slid {
                    out += &format!(
                        "\nslide offset {:.3} mm, hairline {:.3} mm, {} reads {}",
                        m.offset_mm,
                        m.hairline_mm,
                        s.scale_name,
                        s.value.map_or("off scale".to_string(), |v| v.to_string())
                    );
                }
                emit(None, &out)
            }
        }
        Command::Render {
            doc,
            rule_height,
            output,
        } => {
            let d = Document::from_json(&read_input(doc.as_ref())?)?;
            let o = SvgOptions {
                rule_height_mm: rule_height,
                ..SvgOptions::default()
            };
            emit(output.as_ref(), &render_svg(&d, &o))
        }
        Command::Export {
            stator,
            slide,
            offset,
            hairline,
            output,
        } => {
            let scales = |paths: &[PathBuf]| -> Result<Vec<RenderedScale>> {
                paths.iter().map(|p| Ok(load_scale(p)?.to_scale())).collect()
            };
            let mut m = SlideRuleModel::new(scales(&stator)?, scales(&slide)?)?;
            m.offset_mm = offset;
            m.hairline_mm = hairline;
            emit(output.as_ref(), &ModelDocument::from_model(&m).to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
