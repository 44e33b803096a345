//! Random instance generators shared by the integration suites.

#![allow(dead_code)]

use awin_core::curve::{concat_tracks, straight_line_track};
use awin_core::geom::{int, rat, Pt, Rat};
use awin_core::winding::delta_awin;
use awin_core::{HomotopyTrack, PLCurve, PLPath, Surface};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertex coordinates use this denominator; points use a coprime prime.
pub const VERTEX_DENOM: i64 = 240;
pub const POINT_DENOM: i64 = 10007;

pub fn rand_rat(rng: &mut TestRng, lo: i64, hi: i64, denom: i64) -> Rat {
    rat(rng.gen_range(lo * denom..=hi * denom), denom)
}

pub fn rand_pt(rng: &mut TestRng, lo: i64, hi: i64, denom: i64) -> Pt {
    Pt::new(rand_rat(rng, lo, hi, denom), rand_rat(rng, lo, hi, denom))
}

/// Random closed polygon in the box `[-r, r]^2`; may self-intersect.
pub fn plane_curve(rng: &mut TestRng, k: usize, r: i64) -> PLCurve {
    PLCurve::polygon(
        Surface::Plane,
        (0..k).map(|_| rand_pt(rng, -r, r, VERTEX_DENOM)).collect(),
    )
}

/// Random torus loop of class `(m, n)`: points near the straight segment
/// from a random base to `base + (m, n)`, jittered by up to `1/2`.
pub fn torus_curve(rng: &mut TestRng, k: usize, class: (i64, i64)) -> PLCurve {
    let base = rand_pt(rng, 0, 1, VERTEX_DENOM);
    let vertices = (0..k)
        .map(|j| {
            let t = rat(j as i64, k as i64);
            let on_line = Pt::new(&base.x + int(class.0) * &t, &base.y + int(class.1) * &t);
            let jitter = Pt::new(
                rat(rng.gen_range(-VERTEX_DENOM / 2..=VERTEX_DENOM / 2), VERTEX_DENOM),
                rat(rng.gen_range(-VERTEX_DENOM / 2..=VERTEX_DENOM / 2), VERTEX_DENOM),
            );
            &on_line + &jitter
        })
        .collect();
    PLCurve::new(Surface::FlatTorus, vertices, class)
}

pub fn curve_like(rng: &mut TestRng, surface: &Surface, k: usize, class: (i64, i64)) -> PLCurve {
    match surface {
        Surface::FlatTorus => torus_curve(rng, k, class),
        _ => plane_curve(rng, k, 3),
    }
}

/// Straight-line tracks through the given waypoints, concatenated.
pub fn piecewise_track(waypoints: &[PLCurve], steps: &[usize]) -> HomotopyTrack {
    let mut t = straight_line_track(&waypoints[0], &waypoints[1], steps[0]).unwrap();
    for i in 1..waypoints.len() - 1 {
        let next = straight_line_track(&waypoints[i], &waypoints[i + 1], steps[i]).unwrap();
        t = concat_tracks(&t, &next).unwrap();
    }
    t
}

/// A random multi-leg track from `c0` to `c1` through `legs - 1` random
/// intermediate curves.
pub fn wandering_track(rng: &mut TestRng, c0: &PLCurve, c1: &PLCurve, legs: usize) -> HomotopyTrack {
    let k = c0.len();
    let mut way = vec![c0.clone()];
    for _ in 1..legs {
        way.push(curve_like(rng, &c0.surface, k, c0.offset));
    }
    way.push(c1.clone());
    let steps: Vec<usize> = (0..legs).map(|_| rng.gen_range(1..=3)).collect();
    piecewise_track(&way, &steps)
}

/// Random point on which every given track is generic.
pub fn generic_point(rng: &mut TestRng, tracks: &[&HomotopyTrack], lo: i64, hi: i64) -> Pt {
    loop {
        let p = rand_pt(rng, lo, hi, POINT_DENOM);
        if tracks.iter().all(|t| delta_awin(t, &p).is_ok()) {
            return p;
        }
    }
}

pub fn random_path(rng: &mut TestRng, surface: &Surface, from: &Pt, to: &Pt, len: usize) -> PLPath {
    let mut points = vec![from.clone()];
    for _ in 1..len - 1 {
        points.push(rand_pt(rng, -2, 2, POINT_DENOM));
    }
    points.push(to.clone());
    PLPath::new(surface.clone(), points)
}

pub fn straight_path(surface: &Surface, from: &Pt, to: &Pt, len: usize) -> PLPath {
    let n = (len - 1) as i64;
    PLPath::new(
        surface.clone(),
        (0..len).map(|s| from.lerp(to, &rat(s as i64, n))).collect(),
    )
}

/// Limaçon `r = 1 + 2 cos θ` shifted by `center`; points inside its inner
/// loop are encircled twice.
pub fn limacon(center: &Pt, k: usize) -> PLCurve {
    let vertices = (0..k)
        .map(|j| {
            let a = (j as f64 + 0.5) * 2.0 * std::f64::consts::PI / k as f64;
            let r = 1.0 + 2.0 * a.cos();
            let x = awin_core::geom::rat_from_f64(r * a.cos(), 1 << 20);
            let y = awin_core::geom::rat_from_f64(r * a.sin(), 1 << 20);
            Pt::new(&center.x + x, &center.y + y)
        })
        .collect();
    PLCurve::polygon(Surface::Plane, vertices)
}

/// Runs `f` and reports elapsed seconds with its result.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = std::time::Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

pub fn report_line(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}
