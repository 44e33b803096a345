//! Closed PL curves, PL homotopy tracks and observer paths.
//!
//! A [`PLCurve`] is a closed polygon given in lift coordinates. On the flat
//! torus the closing edge runs from the last vertex to `vertices[0] + offset`,
//! so the offset is the homology class of the loop. A [`HomotopyTrack`] is a
//! list of frames with matching vertex counts; frame `s` sits at time `s / S`
//! and consecutive frames are interpolated linearly, vertex by vertex.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Violation};
use crate::geom::{
    bbox, classify_point_triangle, on_segment, rat, rat_from_f64, Pt, Rat, TriangleClass,
};
use crate::surface::{translate_shifts, Surface};

/// Denominator used when rounding circle fixtures to rationals.
pub const CIRCLE_DENOM: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLCurve {
    pub surface: Surface,
    pub vertices: Vec<Pt>,
    pub offset: (i64, i64),
}

impl PLCurve {
    pub fn new(surface: Surface, vertices: Vec<Pt>, offset: (i64, i64)) -> Self {
        PLCurve {
            surface,
            vertices,
            offset,
        }
    }

    /// Closed polygon with zero closure offset.
    pub fn polygon(surface: Surface, vertices: Vec<Pt>) -> Self {
        PLCurve::new(surface, vertices, (0, 0))
    }

    /// Counterclockwise `k`-gon inscribed in the circle of the given radius,
    /// vertices at angles `(j + 1/2) * 2pi / k` rounded to multiples of
    /// `1 / CIRCLE_DENOM` before scaling.
    pub fn circle(surface: Surface, center: &Pt, radius: &Rat, k: usize) -> Self {
        let vertices = (0..k)
            .map(|j| {
                let a = (j as f64 + 0.5) * 2.0 * PI / k as f64;
                let ux = rat_from_f64(libm::cos(a), CIRCLE_DENOM);
                let uy = rat_from_f64(libm::sin(a), CIRCLE_DENOM);
                Pt::new(&center.x + ux * radius, &center.y + uy * radius)
            })
            .collect();
        PLCurve::polygon(surface, vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices followed by the closing vertex `vertices[0] + offset`.
    pub fn closed_vertices(&self) -> Vec<Pt> {
        let mut v = self.vertices.clone();
        if let Some(first) = self.vertices.first() {
            v.push(first.translate(self.offset.0, self.offset.1));
        }
        v
    }

    pub fn translate(&self, by: &Pt) -> PLCurve {
        PLCurve {
            surface: self.surface.clone(),
            vertices: self.vertices.iter().map(|v| v + by).collect(),
            offset: self.offset,
        }
    }

    pub fn scaled(&self, k: &Rat) -> PLCurve {
        PLCurve {
            surface: self.surface.clone(),
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            offset: self.offset,
        }
    }

    /// Same loop traversed backwards.
    pub fn reversed(&self) -> PLCurve {
        // start at the closing vertex so the lift stays connected
        let k = self.vertices.len();
        let mut vertices = Vec::with_capacity(k);
        if k > 0 {
            vertices.push(self.vertices[0].translate(self.offset.0, self.offset.1));
            for i in (1..k).rev() {
                vertices.push(self.vertices[i].clone());
            }
        }
        PLCurve {
            surface: self.surface.clone(),
            vertices,
            offset: (-self.offset.0, -self.offset.1),
        }
    }

    /// Reports every violated curve invariant.
    pub fn validate(&self) -> Result<(), Error> {
        let mut v = Vec::new();
        if self.vertices.len() < 3 {
            v.push(Violation::TooFewVertices {
                count: self.vertices.len(),
            });
        }
        if !self.surface.is_torus() && self.offset != (0, 0) {
            v.push(Violation::OffsetOnNonTorus {
                offset: self.offset,
            });
        }
        let closed = self.closed_vertices();
        for (j, q) in self.surface.punctures().iter().enumerate() {
            for (i, w) in closed.windows(2).enumerate() {
                if on_segment(q, &w[0], &w[1]) {
                    v.push(Violation::PunctureOnCurve {
                        edge: i,
                        puncture: j,
                    });
                }
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }

    /// Whether `p` (or, on the torus, any integer translate) lies on the curve.
    /// Returns the first edge hit.
    pub fn edge_through(&self, p: &Pt) -> Option<usize> {
        let closed = self.closed_vertices();
        closed.windows(2).position(|w| {
            if self.surface.is_torus() {
                let (lo, hi) = bbox(w.iter()).unwrap();
                translate_shifts(p, &lo, &hi)
                    .into_iter()
                    .any(|(i, j)| on_segment(&p.translate(i, j), &w[0], &w[1]))
            } else {
                on_segment(p, &w[0], &w[1])
            }
        })
    }

    fn compatible(&self, other: &PLCurve) -> bool {
        self.surface == other.surface
            && self.vertices.len() == other.vertices.len()
            && self.offset == other.offset
    }
}

/// The integer vector `d` with `b = a + d` vertex by vertex, if any. On
/// surfaces other than the torus only `d = (0, 0)` is accepted.
pub fn frames_match(a: &PLCurve, b: &PLCurve) -> Option<(i64, i64)> {
    if !a.compatible(b) || a.vertices.is_empty() {
        return None;
    }
    let d = a.vertices[0].integer_offset_to(&b.vertices[0])?;
    if !a.surface.is_torus() && d != (0, 0) {
        return None;
    }
    a.vertices
        .iter()
        .zip(&b.vertices)
        .all(|(p, q)| &p.translate(d.0, d.1) == q)
        .then_some(d)
}

/// Resamples `c` to `k_new` vertices tracing the same point set.
///
/// The extra `k_new - K` vertices are spread over the edges by count, edge `i`
/// receiving one more than the others while `i < (k_new - K) mod K`, and are
/// placed at equally spaced parameters along their edge.
pub fn resample(c: &PLCurve, k_new: usize) -> Result<PLCurve, Error> {
    let k = c.vertices.len();
    if k_new < k {
        return Err(Error::ShrinkNotSupported { from: k, to: k_new });
    }
    if k == 0 || k_new == k {
        return Ok(c.clone());
    }
    let extra = k_new - k;
    let closed = c.closed_vertices();
    let mut vertices = Vec::with_capacity(k_new);
    for i in 0..k {
        let n = extra / k + usize::from(i < extra % k);
        vertices.push(closed[i].clone());
        for j in 1..=n {
            let t = rat(j as i64, n as i64 + 1);
            vertices.push(closed[i].lerp(&closed[i + 1], &t));
        }
    }
    Ok(PLCurve {
        surface: c.surface.clone(),
        vertices,
        offset: c.offset,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyTrack {
    frames: Vec<PLCurve>,
}

/// One image triangle of the canonical triangulation.
pub(crate) struct Tri<'a> {
    pub slab: usize,
    pub index: usize,
    pub pts: [&'a Pt; 3],
}

impl HomotopyTrack {
    /// Checks that there are at least two frames and that they agree in
    /// surface, vertex count and offset. Per-frame geometry is checked by
    /// [`validate_track`].
    pub fn new(frames: Vec<PLCurve>) -> Result<Self, Error> {
        if frames.len() < 2 {
            return Err(Error::TooFewFrames {
                count: frames.len(),
            });
        }
        if frames.iter().any(|f| !f.compatible(&frames[0])) {
            return Err(Error::MismatchedCurves);
        }
        Ok(HomotopyTrack { frames })
    }

    /// A track that does not move.
    pub fn constant(c: &PLCurve, steps: usize) -> Self {
        HomotopyTrack {
            frames: alloc::vec![c.clone(); steps.max(1) + 1],
        }
    }

    pub fn frames(&self) -> &[PLCurve] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<PLCurve> {
        self.frames
    }

    pub fn first(&self) -> &PLCurve {
        &self.frames[0]
    }

    pub fn last(&self) -> &PLCurve {
        self.frames.last().unwrap()
    }

    /// Number of slabs `S`.
    pub fn steps(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn surface(&self) -> &Surface {
        &self.frames[0].surface
    }

    pub fn offset(&self) -> (i64, i64) {
        self.frames[0].offset
    }

    pub fn vertex_count(&self) -> usize {
        self.frames[0].vertices.len()
    }

    pub fn reversed(&self) -> Self {
        let mut frames = self.frames.clone();
        frames.reverse();
        HomotopyTrack { frames }
    }

    pub fn translate(&self, by: &Pt) -> Self {
        HomotopyTrack {
            frames: self.frames.iter().map(|f| f.translate(by)).collect(),
        }
    }

    /// Splits every slab into `k` slabs by inserting linearly interpolated
    /// frames.
    pub fn refine_time(&self, k: usize) -> Self {
        let k = k.max(1);
        let mut frames = Vec::with_capacity(self.steps() * k + 1);
        for w in self.frames.windows(2) {
            for j in 0..k {
                frames.push(lerp_curve(&w[0], &w[1], &rat(j as i64, k as i64)));
            }
        }
        frames.push(self.last().clone());
        HomotopyTrack { frames }
    }

    /// Resamples every frame to `k_new` vertices with the same rule, so the
    /// vertex correspondence between frames is preserved.
    pub fn resample(&self, k_new: usize) -> Result<Self, Error> {
        let frames = self
            .frames
            .iter()
            .map(|f| resample(f, k_new))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomotopyTrack { frames })
    }

    /// Calls `f` for every triangle of the canonical triangulation.
    pub(crate) fn for_each_triangle(&self, mut f: impl FnMut(Tri<'_>)) {
        let closed: Vec<Vec<Pt>> = self.frames.iter().map(|c| c.closed_vertices()).collect();
        for (s, w) in closed.windows(2).enumerate() {
            let (lo, hi) = (&w[0], &w[1]);
            for i in 0..lo.len() - 1 {
                f(Tri {
                    slab: s,
                    index: 2 * i,
                    pts: [&lo[i], &lo[i + 1], &hi[i + 1]],
                });
                f(Tri {
                    slab: s,
                    index: 2 * i + 1,
                    pts: [&lo[i], &hi[i + 1], &hi[i]],
                });
            }
        }
    }
}

fn lerp_curve(a: &PLCurve, b: &PLCurve, t: &Rat) -> PLCurve {
    PLCurve {
        surface: a.surface.clone(),
        vertices: a
            .vertices
            .iter()
            .zip(&b.vertices)
            .map(|(p, q)| p.lerp(q, t))
            .collect(),
        offset: a.offset,
    }
}

/// Frames `s = 0..=steps` interpolating `c0` to `c1` vertex by vertex.
pub fn straight_line_track(c0: &PLCurve, c1: &PLCurve, steps: usize) -> Result<HomotopyTrack, Error> {
    if !c0.compatible(c1) || steps == 0 {
        return Err(Error::MismatchedCurves);
    }
    let frames = (0..=steps)
        .map(|s| {
            if s == 0 {
                c0.clone()
            } else if s == steps {
                c1.clone()
            } else {
                lerp_curve(c0, c1, &rat(s as i64, steps as i64))
            }
        })
        .collect();
    Ok(HomotopyTrack { frames })
}

pub fn reverse_track(t: &HomotopyTrack) -> HomotopyTrack {
    t.reversed()
}

/// `t1` followed by `t2`. The shared frame appears once; on the torus `t2` is
/// shifted by the integer vector that makes its first frame equal the last
/// frame of `t1`.
pub fn concat_tracks(t1: &HomotopyTrack, t2: &HomotopyTrack) -> Result<HomotopyTrack, Error> {
    let d = frames_match(t1.last(), t2.first()).ok_or(Error::EndpointMismatch)?;
    let back = Pt::int(-d.0, -d.1);
    let mut frames = t1.frames.clone();
    frames.extend(t2.frames[1..].iter().map(|f| {
        if d == (0, 0) {
            f.clone()
        } else {
            f.translate(&back)
        }
    }));
    Ok(HomotopyTrack { frames })
}

/// Outcome of scanning a track against a point: the signed preimage count and
/// every genericity violation seen on the way.
pub(crate) struct Scan {
    pub count: i64,
    pub preimages: u64,
    pub violations: Vec<Violation>,
}

/// Single pass over the canonical triangulation: validates goodness and PL
/// genericity of `p` and sums the orientations of triangles containing it.
pub(crate) fn scan_track(t: &HomotopyTrack, p: &Pt) -> Scan {
    let mut violations = Vec::new();
    let surface = t.surface();
    let torus = surface.is_torus();
    if let Err(Error::Invalid(v)) = t.first().validate() {
        violations.extend(v);
    }
    if let Err(Error::Invalid(v)) = t.last().validate() {
        for x in v {
            if !violations.contains(&x) {
                violations.push(x);
            }
        }
    }
    let punctures = surface.punctures();
    if let Some(j) = punctures.iter().position(|q| q == p) {
        violations.push(Violation::PointIsPuncture { puncture: j });
    }
    for frame in [0, t.steps()] {
        if t.frames[frame].edge_through(p).is_some() {
            violations.push(Violation::BadEndpoint { frame });
        }
    }
    let mut count = 0i64;
    let mut preimages = 0u64;
    t.for_each_triangle(|tri| {
        let [a, b, c] = tri.pts;
        // listed triangles are counterclockwise in (parameter, time); the
        // domain is oriented (time, parameter), hence the minus sign
        let sign = -(crate::geom::orient(a, b, c) as i64);
        let mut hit = |q: &Pt, count: &mut i64| match classify_point_triangle(q, a, b, c) {
            TriangleClass::Interior => {
                *count += sign;
                preimages += 1;
            }
            TriangleClass::Boundary => violations.push(Violation::NonGeneric {
                slab: tri.slab,
                triangle: tri.index,
            }),
            TriangleClass::Outside => {}
        };
        if torus {
            let (lo, hi) = bbox(tri.pts).unwrap();
            for (i, j) in translate_shifts(p, &lo, &hi) {
                hit(&p.translate(i, j), &mut count);
            }
        } else if !outside_bbox(p, &tri.pts) {
            hit(p, &mut count);
        }
        for (j, q) in punctures.iter().enumerate() {
            if !outside_bbox(q, &tri.pts) && classify_point_triangle(q, a, b, c) != TriangleClass::Outside {
                violations.push(Violation::HitsPuncture {
                    slab: tri.slab,
                    triangle: tri.index,
                    puncture: j,
                });
            }
        }
    });
    Scan {
        count,
        preimages,
        violations,
    }
}

fn outside_bbox(p: &Pt, pts: &[&Pt; 3]) -> bool {
    pts.iter().all(|v| p.x < v.x)
        || pts.iter().all(|v| p.x > v.x)
        || pts.iter().all(|v| p.y < v.y)
        || pts.iter().all(|v| p.y > v.y)
}

/// Checks that `t` is a good PL homotopy for `p`: `p` avoids both end frames,
/// lies on no edge of the canonical triangulation, and no triangle covers a
/// puncture.
pub fn validate_track(t: &HomotopyTrack, p: &Pt) -> Result<(), Error> {
    let scan = scan_track(t, p);
    if scan.violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(scan.violations))
    }
}

/// A path in lift coordinates; point `s` is visited at time `s / S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLPath {
    pub surface: Surface,
    pub points: Vec<Pt>,
}

impl PLPath {
    pub fn new(surface: Surface, points: Vec<Pt>) -> Self {
        PLPath { surface, points }
    }

    pub fn constant(surface: Surface, p: &Pt, len: usize) -> Self {
        PLPath {
            surface,
            points: alloc::vec![p.clone(); len],
        }
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        PLPath {
            surface: self.surface.clone(),
            points,
        }
    }

    pub fn negated(&self) -> Self {
        PLPath {
            surface: self.surface.clone(),
            points: self.points.iter().map(|p| -p).collect(),
        }
    }

    /// Punctures met by the path, as violations.
    pub fn puncture_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (j, q) in self.surface.punctures().iter().enumerate() {
            if self.points.len() == 1 && &self.points[0] == q {
                out.push(Violation::PathHitsPuncture {
                    segment: 0,
                    puncture: j,
                });
            }
            for (s, w) in self.points.windows(2).enumerate() {
                if on_segment(q, &w[0], &w[1]) {
                    out.push(Violation::PathHitsPuncture {
                        segment: s,
                        puncture: j,
                    });
                }
            }
        }
        out
    }
}
