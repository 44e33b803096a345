//! Subcommands and process exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use awin_core::cauchy::cauchy_check;
use awin_core::groups::{check_conditions, subgroup_a, subgroup_b, sum_subgroups};
use awin_core::moving::{awin_moving_diff, delta_awin_moving};
use awin_core::wavefront::{moving_observer_bound, passage_lower_bound};
use awin_core::winding::{awin_diff, degree_periodic, delta_awin, win};
use awin_core::{
    CauchyReport, ComponentDesc, Error, FrontSnapshot, HomotopyTrack, PLCurve, Pt, QuadParams,
    QuotientInt, Rat, Subgroup, Surface, Verdict, Violation,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::format::{self, FormatError};
use crate::render::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "awin", version, about = "Affine winding numbers of PL curves on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Signed passage count of a track through a point, reduced mod A.
    AwinDiff {
        #[arg(long)]
        track: PathBuf,
        #[arg(long, value_parser = point_arg)]
        point: Pt,
        #[arg(long, value_parser = class_arg, allow_hyphen_values = true)]
        class: Option<(i64, i64)>,
    },
    /// Classical winding number of a closed plane curve.
    Win {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_parser = point_arg)]
        point: Pt,
    },
    /// Degree of a periodic track on the torus.
    Degree {
        #[arg(long)]
        track: PathBuf,
    },
    /// Indeterminacy subgroups A, B and A + B.
    Groups {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, value_parser = class_arg, allow_hyphen_values = true)]
        class: Option<(i64, i64)>,
    },
    /// Sufficient conditions for A = 0 from manifold metadata.
    Conditions {
        #[arg(long)]
        meta: PathBuf,
    },
    /// Passage count through a moving observer, reduced mod A + B.
    AwinMoving {
        #[arg(long)]
        track: PathBuf,
        #[arg(long)]
        path: PathBuf,
        #[arg(long, value_parser = class_arg, allow_hyphen_values = true)]
        class: Option<(i64, i64)>,
    },
    /// Numerical check of the generalized Cauchy integral formula.
    Cauchy {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
        #[arg(long)]
        track: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 4)]
        panels: usize,
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
    /// Lower bound on the passages of a front through an observer.
    Passage {
        #[arg(long)]
        front1: PathBuf,
        #[arg(long)]
        front2: PathBuf,
        #[arg(long)]
        track: PathBuf,
        #[arg(long, value_parser = point_arg)]
        point: Pt,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long, value_parser = class_arg, allow_hyphen_values = true)]
        class: Option<(i64, i64)>,
    },
    /// Draw a track as SVG.
    Render {
        #[arg(long)]
        track: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = point_arg)]
        point: Option<Pt>,
    },
}

fn point_arg(s: &str) -> Result<Pt, String> {
    format::parse_point_arg(s).ok_or_else(|| format!("expected X,Y with rational coordinates, got {s:?}"))
}

fn class_arg(s: &str) -> Result<(i64, i64), String> {
    format::parse_class_arg(s).ok_or_else(|| format!("expected M,N with integer entries, got {s:?}"))
}

/// Why a command did not produce a result.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable file, bad JSON or a document that breaks the schema.
    Malformed { file: Option<PathBuf>, error: FormatError },
    /// Well-formed input rejected by the library.
    Core(Error),
    /// Well-formed input rejected by a check made here.
    Rejected { code: &'static str, message: String },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Malformed { .. } => EXIT_MALFORMED,
            Failure::Core(_) | Failure::Rejected { .. } => EXIT_INVALID,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Failure::Malformed { file, error } => json!({
                "error": "malformed_input",
                "file": file.as_ref().map(|f| f.display().to_string()),
                "path": error.path,
                "message": error.message,
            }),
            Failure::Core(e) => error_json(e),
            Failure::Rejected { code, message } => json!({"error": code, "message": message}),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Machine-readable form of a violation, naming the offending indices.
pub fn violation_json(v: &Violation) -> Value {
    let mut o = match *v {
        Violation::TooFewVertices { count } => json!({"type": "too_few_vertices", "count": count}),
        Violation::OffsetOnNonTorus { offset } => {
            json!({"type": "offset_on_non_torus", "offset": [offset.0, offset.1]})
        }
        Violation::PunctureOnCurve { edge, puncture } => {
            json!({"type": "puncture_on_curve", "edge": edge, "puncture": puncture})
        }
        Violation::PointIsPuncture { puncture } => {
            json!({"type": "point_is_puncture", "puncture": puncture})
        }
        Violation::BadEndpoint { frame } => json!({"type": "bad_endpoint", "frame": frame}),
        Violation::NonGeneric { slab, triangle } => {
            json!({"type": "non_generic", "slab": slab, "triangle": triangle})
        }
        Violation::HitsPuncture { slab, triangle, puncture } => json!({
            "type": "hits_puncture", "slab": slab, "triangle": triangle, "puncture": puncture
        }),
        Violation::PathHitsPuncture { segment, puncture } => {
            json!({"type": "path_hits_puncture", "segment": segment, "puncture": puncture})
        }
    };
    o["message"] = Value::from(v.to_string());
    o
}

fn violations_json(vs: &[Violation]) -> Value {
    Value::Array(vs.iter().map(violation_json).collect())
}

/// Machine-readable form of a library error.
pub fn error_json(e: &Error) -> Value {
    let mut o = match e {
        Error::Invalid(v) => json!({"error": "invalid", "violations": violations_json(v)}),
        Error::NonTransverse(v) => {
            json!({"error": "non_transverse", "violations": violations_json(v)})
        }
        Error::NonGenericPole { pole, violations } => json!({
            "error": "non_generic_pole", "pole": pole, "violations": violations_json(violations)
        }),
        Error::MismatchedCurves => json!({"error": "mismatched_curves"}),
        Error::TooFewFrames { count } => json!({"error": "too_few_frames", "count": count}),
        Error::ShrinkNotSupported { from, to } => {
            json!({"error": "shrink_not_supported", "from": from, "to": to})
        }
        Error::EndpointMismatch => json!({"error": "endpoint_mismatch"}),
        Error::PointOnCurve { edge } => json!({"error": "point_on_curve", "edge": edge}),
        Error::NotPeriodic => json!({"error": "not_periodic"}),
        Error::NoGenericSampleFound { tried } => {
            json!({"error": "no_generic_sample_found", "tried": tried})
        }
        Error::ComponentMismatch => json!({"error": "component_mismatch"}),
        Error::LengthMismatch { frames, points } => {
            json!({"error": "length_mismatch", "frames": frames, "points": points})
        }
        Error::SurfaceMismatch => json!({"error": "surface_mismatch"}),
        Error::UnsupportedSurface => json!({"error": "unsupported_surface"}),
        Error::InvalidSurface => json!({"error": "invalid_surface"}),
        Error::TimeOrder => json!({"error": "time_order"}),
        Error::PoleOnContour { pole, edge } => {
            json!({"error": "pole_on_contour", "pole": pole, "edge": edge})
        }
        Error::QuadratureNotConverged { pole, panels } => {
            json!({"error": "quadrature_not_converged", "pole": pole, "panels": panels})
        }
        Error::InvalidFunction(_) => json!({"error": "invalid_function"}),
        Error::PoleIndex { pole } => json!({"error": "pole_index", "pole": pole}),
    };
    o["message"] = Value::from(e.to_string());
    o
}

fn load(file: &Path) -> Result<Value, Failure> {
    let malformed = |message: String| Failure::Malformed {
        file: Some(file.to_path_buf()),
        error: FormatError {
            path: String::new(),
            message,
        },
    };
    let text = std::fs::read_to_string(file).map_err(|e| malformed(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| malformed(format!("invalid JSON: {e}")))
}

fn parse<T>(
    file: &Path,
    role: &str,
    f: impl FnOnce(&Value, &str) -> Result<T, FormatError>,
) -> Result<T, Failure> {
    let v = load(file)?;
    f(&v, role).map_err(|error| Failure::Malformed {
        file: Some(file.to_path_buf()),
        error,
    })
}

fn load_track(file: &Path) -> Result<HomotopyTrack, Failure> {
    let doc = parse(file, "track", format::track_in)?;
    doc.surface.check()?;
    Ok(HomotopyTrack::new(doc.curves())?)
}

fn load_curve(file: &Path, role: &str) -> Result<(PLCurve, Option<Rat>), Failure> {
    let (c, t) = parse(file, role, format::curve_in)?;
    c.surface.check()?;
    c.validate()?;
    Ok((c, t))
}

fn component(surface: &Surface, class: Option<(i64, i64)>, t: &HomotopyTrack) -> Result<ComponentDesc, Failure> {
    Ok(ComponentDesc::new(surface.clone(), class.unwrap_or(t.offset()))?)
}

fn quotient_json(q: QuotientInt) -> Value {
    json!({
        "modulus": q.modulus,
        "value": q.value,
        "quotient": Subgroup::new(q.modulus).to_string(),
        "min_abs": q.min_abs(),
    })
}

fn subgroup_json(s: Subgroup) -> Value {
    json!({"modulus": s.d, "quotient": s.to_string()})
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::HoldsByAssertion => "holds_by_assertion",
        Verdict::NotAsserted => "not_asserted",
    }
}

/// JSON form of a Cauchy comparison.
pub fn cauchy_report_json(r: &CauchyReport) -> Value {
    json!({
        "kind": "cauchy_report",
        "lhs": format::complex_to_json(r.lhs),
        "rhs": format::complex_to_json(r.rhs),
        "awin_differences": r.awin_differences,
        "residues": r.residues.iter().map(|&z| format::complex_to_json(z)).collect::<Vec<_>>(),
        "abs_error": r.abs_error,
        "tol": r.tol,
        "pass": r.pass,
    })
}

enum Output {
    Json(Value),
    Text(String),
    Nothing,
}

fn execute(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::AwinDiff { track, point, class } => {
            let t = load_track(&track)?;
            let comp = component(t.surface(), class, &t)?;
            let q = awin_diff(&t, &point, &comp)?;
            let delta = delta_awin(&t, &point)?;
            let mut o = json!({"kind": "awin_diff", "delta": delta});
            merge(&mut o, quotient_json(q));
            Ok(Output::Json(o))
        }
        Command::Win { curve, point } => {
            let (c, _) = load_curve(&curve, "curve")?;
            Ok(Output::Text(format!("{}\n", win(&c, &point)?)))
        }
        Command::Degree { track } => {
            let t = load_track(&track)?;
            let d = degree_periodic(&t)?;
            Ok(Output::Json(json!({"kind": "degree", "degree": d})))
        }
        Command::Groups { surface, class } => {
            let s = parse(&surface, "surface", format::surface_in)?;
            s.check()?;
            let comp = ComponentDesc::new(s, class.unwrap_or((0, 0)))?;
            let (a, b) = (subgroup_a(&comp), subgroup_b(&comp));
            Ok(Output::Json(json!({
                "kind": "groups",
                "surface": comp.surface.name(),
                "class": [comp.torus_class.0, comp.torus_class.1],
                "a": subgroup_json(a),
                "b": subgroup_json(b),
                "a_plus_b": subgroup_json(sum_subgroups(a, b)),
            })))
        }
        Command::Conditions { meta } => {
            let m = parse(&meta, "meta", format::meta_in)?;
            if !m.is_well_formed() {
                return Err(Failure::Rejected {
                    code: "invalid_meta",
                    message: "Betti numbers are inconsistent with the declared manifolds".into(),
                });
            }
            let r = check_conditions(&m);
            let conditions: Vec<Value> = r
                .conditions
                .iter()
                .enumerate()
                .map(|(i, &v)| json!({"index": i, "verdict": verdict_name(v)}))
                .collect();
            Ok(Output::Json(json!({
                "kind": "conditions",
                "conditions": conditions,
                "condition1_index": r.condition1_index,
                "condition2_index": r.condition2_index,
                "a_is_z": r.a_is_z,
                "b_is_z": r.b_is_z,
            })))
        }
        Command::AwinMoving { track, path, class } => {
            let t = load_track(&track)?;
            let g = parse(&path, "path", format::path_in)?;
            let comp = component(t.surface(), class, &t)?;
            let q = awin_moving_diff(&t, &g, &comp)?;
            let delta = delta_awin_moving(&t, &g)?;
            let mut o = json!({"kind": "awin_moving", "delta": delta});
            merge(&mut o, quotient_json(q));
            Ok(Output::Json(o))
        }
        Command::Cauchy {
            function,
            c1,
            c2,
            track,
            tol,
            panels,
            order,
        } => {
            let f = parse(&function, "function", format::function_in)?.build()?;
            let (c1, _) = load_curve(&c1, "c1")?;
            let (c2, _) = load_curve(&c2, "c2")?;
            let t = load_track(&track)?;
            if panels == 0 || order == 0 || !tol.is_finite() || tol < 0.0 {
                return Err(Failure::Rejected {
                    code: "invalid_parameters",
                    message: "panels and order must be positive and tol finite and nonnegative".into(),
                });
            }
            let params = QuadParams {
                panels_per_edge: panels,
                order,
            };
            let r = cauchy_check(&f, &c1, &c2, &t, tol, params)?;
            Ok(Output::Json(cauchy_report_json(&r)))
        }
        Command::Passage {
            front1,
            front2,
            track,
            point,
            path,
            class,
        } => {
            let (c1, t1) = load_curve(&front1, "front1")?;
            let (c2, t2) = load_curve(&front2, "front2")?;
            let s1 = FrontSnapshot {
                curve: c1,
                time: t1.unwrap_or_else(|| Rat::from_integer(0.into())),
            };
            let s2 = FrontSnapshot {
                curve: c2,
                time: t2.unwrap_or_else(|| Rat::from_integer(1.into())),
            };
            let t = load_track(&track)?;
            let comp = component(t.surface(), class, &t)?;
            let o = match path {
                None => {
                    let bound = passage_lower_bound(&s1, &s2, &t, &point, &comp)?;
                    let delta = delta_awin(&t, &point)?;
                    json!({
                        "kind": "passage",
                        "observer": "fixed",
                        "delta": delta,
                        "modulus": subgroup_a(&comp).d,
                        "lower_bound": bound,
                    })
                }
                Some(path) => {
                    let g = parse(&path, "path", format::path_in)?;
                    if g.points.first() != Some(&point) {
                        return Err(Failure::Rejected {
                            code: "observer_start_mismatch",
                            message: "the observer path must start at --point".into(),
                        });
                    }
                    let bound = moving_observer_bound(&s1, &s2, &t, &g, &comp)?;
                    let delta = delta_awin_moving(&t, &g)?;
                    json!({
                        "kind": "passage",
                        "observer": "moving",
                        "delta": delta,
                        "modulus": sum_subgroups(subgroup_a(&comp), subgroup_b(&comp)).d,
                        "lower_bound": bound,
                    })
                }
            };
            Ok(Output::Json(o))
        }
        Command::Render { track, out, point } => {
            let t = load_track(&track)?;
            let svg = render_svg(&t, point.as_ref());
            std::fs::write(&out, svg).map_err(|e| Failure::Rejected {
                code: "io_error",
                message: format!("cannot write {}: {e}", out.display()),
            })?;
            Ok(Output::Nothing)
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

/// Runs one command line, writing the report to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let report = json!({
                "error": "malformed_input",
                "message": e.render().to_string().trim_end(),
            });
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&report).unwrap_or_default());
            return EXIT_MALFORMED;
        }
    };
    match execute(cli.command) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            EXIT_OK
        }
        Ok(Output::Text(s)) => {
            let _ = write!(out, "{s}");
            EXIT_OK
        }
        Ok(Output::Nothing) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", serde_json::to_string_pretty(&f.to_json()).unwrap_or_default());
            f.exit_code()
        }
    }
}
