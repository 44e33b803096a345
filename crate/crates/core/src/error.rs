use alloc::vec::Vec;
use core::fmt;

/// One violated invariant found while validating a curve, track or path.
///
/// Indices are zero based. `slab` is the index `s` of the time interval
/// between frames `s` and `s + 1`; `triangle` is `2 * edge + {0, 1}` in the
/// canonical triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices { count: usize },
    OffsetOnNonTorus { offset: (i64, i64) },
    /// A vertex (`edge` is the vertex index) or edge of the curve meets a puncture.
    PunctureOnCurve { edge: usize, puncture: usize },
    /// The observation point coincides with a puncture.
    PointIsPuncture { puncture: usize },
    /// The point lies on the first or last frame.
    BadEndpoint { frame: usize },
    /// The point lies on an edge or vertex of an image triangle.
    NonGeneric { slab: usize, triangle: usize },
    HitsPuncture { slab: usize, triangle: usize, puncture: usize },
    /// An observer path passes through a puncture.
    PathHitsPuncture { segment: usize, puncture: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { count } => {
                write!(f, "curve has {count} vertices, at least 3 required")
            }
            Violation::OffsetOnNonTorus { offset } => {
                write!(f, "closure offset {offset:?} on a surface that is not a torus")
            }
            Violation::PunctureOnCurve { edge, puncture } => {
                write!(f, "puncture {puncture} lies on edge {edge}")
            }
            Violation::PointIsPuncture { puncture } => {
                write!(f, "point coincides with puncture {puncture}")
            }
            Violation::BadEndpoint { frame } => write!(f, "point lies on frame {frame}"),
            Violation::NonGeneric { slab, triangle } => {
                write!(f, "point on boundary of triangle {triangle} in slab {slab}")
            }
            Violation::HitsPuncture { slab, triangle, puncture } => write!(
                f,
                "triangle {triangle} in slab {slab} covers puncture {puncture}"
            ),
            Violation::PathHitsPuncture { segment, puncture } => {
                write!(f, "path segment {segment} meets puncture {puncture}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Validation failed; every violated invariant is listed.
    Invalid(Vec<Violation>),
    /// The moving-point reduction is not transverse at the origin.
    NonTransverse(Vec<Violation>),
    /// A declared pole is not a generic point of the track.
    NonGenericPole { pole: usize, violations: Vec<Violation> },
    MismatchedCurves,
    TooFewFrames { count: usize },
    ShrinkNotSupported { from: usize, to: usize },
    EndpointMismatch,
    PointOnCurve { edge: usize },
    NotPeriodic,
    NoGenericSampleFound { tried: usize },
    ComponentMismatch,
    LengthMismatch { frames: usize, points: usize },
    SurfaceMismatch,
    UnsupportedSurface,
    InvalidSurface,
    TimeOrder,
    PoleOnContour { pole: usize, edge: usize },
    QuadratureNotConverged { pole: usize, panels: usize },
    InvalidFunction(&'static str),
    PoleIndex { pole: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(v) | Error::NonTransverse(v) => {
                let what = if matches!(self, Error::Invalid(_)) {
                    "invalid input"
                } else {
                    "reduced track is not transverse"
                };
                write!(f, "{what}: ")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Error::NonGenericPole { pole, .. } => {
                write!(f, "pole {pole} is not a generic point of the track")
            }
            Error::MismatchedCurves => {
                f.write_str("curves differ in surface, vertex count or closure offset")
            }
            Error::TooFewFrames { count } => {
                write!(f, "track has {count} frames, at least 2 required")
            }
            Error::ShrinkNotSupported { from, to } => {
                write!(f, "cannot resample {from} vertices down to {to}")
            }
            Error::EndpointMismatch => f.write_str("track endpoints do not match the given curves"),
            Error::PointOnCurve { edge } => write!(f, "point lies on edge {edge} of the curve"),
            Error::NotPeriodic => f.write_str("first and last frames differ"),
            Error::NoGenericSampleFound { tried } => {
                write!(f, "no generic sample point among {tried} candidates")
            }
            Error::ComponentMismatch => f.write_str("track does not lie in the given component"),
            Error::LengthMismatch { frames, points } => {
                write!(f, "track has {frames} frames but path has {points} points")
            }
            Error::SurfaceMismatch => f.write_str("inputs live on different surfaces"),
            Error::UnsupportedSurface => f.write_str("operation not supported on this surface"),
            Error::InvalidSurface => f.write_str("malformed surface description"),
            Error::TimeOrder => f.write_str("snapshot times must be strictly increasing"),
            Error::PoleOnContour { pole, edge } => {
                write!(f, "pole {pole} lies on edge {edge} of the contour")
            }
            Error::QuadratureNotConverged { pole, panels } => {
                write!(f, "residue quadrature for pole {pole} did not converge with {panels} panels")
            }
            Error::InvalidFunction(why) => write!(f, "invalid rational function: {why}"),
            Error::PoleIndex { pole } => write!(f, "no declared pole with index {pole}"),
        }
    }
}

impl core::error::Error for Error {}
