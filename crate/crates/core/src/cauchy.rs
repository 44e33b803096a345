//! Numerical check of the generalized Cauchy integral formula
//!
//! ```text
//! ∮_{C1} f dz = ∮_{C2} f dz + 2πi Σ_j Res f(a_j) (awin_{a_j}(C1) - awin_{a_j}(C2))
//! ```
//!
//! for rational functions on the plane and punctured plane, where the affine
//! winding numbers are integers and their differences are realized as passage
//! counts of a track from `C2` to `C1` through each pole.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::curve::{frames_match, HomotopyTrack, PLCurve};
use crate::error::Error;
use crate::geom::{on_segment, Pt};
use crate::winding::delta_awin;

pub type Complex64 = num_complex::Complex<f64>;

/// Hard cap on panels in the circle quadrature used for higher-order residues.
pub const RESIDUE_PANEL_CAP: usize = 4096;
/// Convergence threshold of the residue quadrature, relative to
/// `max(|estimate|, 1)`.
pub const RESIDUE_TOL: f64 = 1e-10;
const RESIDUE_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub at: Pt,
    pub order: u32,
}

/// `num(z) / den(z)` with coefficients listed from the constant term up, and
/// an explicit list of its poles at exact rational points.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn {
    numerator: Vec<Complex64>,
    denominator: Vec<Complex64>,
    poles: Vec<Pole>,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

fn to_complex(p: &Pt) -> Complex64 {
    let (x, y) = p.to_f64();
    Complex64::new(x, y)
}

impl RationalFn {
    /// Checks that the denominator is nonzero, that every declared pole is a
    /// numerical root of it (`|den(a)| <= 1e-9 (1 + max |coefficient|)`), and
    /// that the poles are distinct.
    pub fn new(
        numerator: Vec<Complex64>,
        denominator: Vec<Complex64>,
        poles: Vec<Pole>,
    ) -> Result<Self, Error> {
        if denominator.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::InvalidFunction("denominator is identically zero"));
        }
        let scale = 1.0
            + denominator
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
        for (j, p) in poles.iter().enumerate() {
            if horner(&denominator, to_complex(&p.at)).norm() > 1e-9 * scale {
                return Err(Error::InvalidFunction("declared pole is not a root of the denominator"));
            }
            if p.order == 0 {
                return Err(Error::InvalidFunction("pole order must be positive"));
            }
            if poles[..j].iter().any(|q| q.at == p.at) {
                return Err(Error::InvalidFunction("duplicate pole"));
            }
        }
        Ok(RationalFn {
            numerator,
            denominator,
            poles,
        })
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.denominator
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.numerator, z) / horner(&self.denominator, z)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Residue of `f` at declared pole `j`.
///
/// Simple poles use `num(a) / den'(a)`. Higher orders integrate `f / (2πi)`
/// over a circle around the pole of radius half the distance to the nearest
/// other pole (1 when there is none), doubling Gauss–Legendre panels until two
/// estimates agree to [`RESIDUE_TOL`].
pub fn residue(f: &RationalFn, j: usize) -> Result<Complex64, Error> {
    let pole = f.poles.get(j).ok_or(Error::PoleIndex { pole: j })?;
    let a = to_complex(&pole.at);
    if pole.order == 1 {
        return Ok(horner(&f.numerator, a) / horner(&derivative(&f.denominator), a));
    }
    let radius = f
        .poles
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(_, q)| (to_complex(&q.at) - a).norm() / 2.0)
        .fold(1.0f64, |r, d| if d < r { d } else { r });
    let nodes = gauss_legendre(RESIDUE_ORDER);
    let circle = |panels: usize| -> Complex64 {
        let h = 2.0 * PI / panels as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..panels {
            let mid = (k as f64 + 0.5) * h;
            for &(x, w) in &nodes {
                let theta = mid + 0.5 * h * x;
                let e = Complex64::new(libm::cos(theta), libm::sin(theta));
                // f(z) dz / (2πi) with dz = i r e^{iθ} dθ
                sum += f.eval(a + e * radius) * e * radius * (0.5 * h * w);
            }
        }
        sum / (2.0 * PI)
    };
    let mut panels = 4;
    let mut prev = circle(panels);
    while panels < RESIDUE_PANEL_CAP {
        panels *= 2;
        let next = circle(panels);
        if (next - prev).norm() < RESIDUE_TOL * next.norm().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::QuadratureNotConverged { pole: j, panels })
}

/// Quadrature parameters for contour integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadParams {
    pub panels_per_edge: usize,
    pub order: usize,
}

impl Default for QuadParams {
    fn default() -> Self {
        QuadParams {
            panels_per_edge: 4,
            order: 16,
        }
    }
}

fn check_plane(c: &PLCurve) -> Result<(), Error> {
    if c.surface.is_torus() {
        Err(Error::UnsupportedSurface)
    } else {
        Ok(())
    }
}

/// `∮_c f dz` over the closed polygon, edge by edge with composite
/// Gauss–Legendre quadrature. Edges are summed in order.
pub fn contour_integral(f: &RationalFn, c: &PLCurve, params: QuadParams) -> Result<Complex64, Error> {
    check_plane(c)?;
    let closed = c.closed_vertices();
    for (j, pole) in f.poles.iter().enumerate() {
        if let Some(edge) = closed
            .windows(2)
            .position(|w| on_segment(&pole.at, &w[0], &w[1]))
        {
            return Err(Error::PoleOnContour { pole: j, edge });
        }
    }
    let nodes = gauss_legendre(params.order);
    let panels = params.panels_per_edge.max(1);
    let pts: Vec<Complex64> = closed.iter().map(to_complex).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let d = b - a;
        let mut edge_sum = Complex64::new(0.0, 0.0);
        for k in 0..panels {
            let lo = k as f64 / panels as f64;
            let half = 0.5 / panels as f64;
            for &(x, wt) in &nodes {
                let t = lo + half * (x + 1.0);
                edge_sum += f.eval(a + d * t) * (wt * half);
            }
        }
        total += edge_sum * d;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `awin_{a_j}(C1) - awin_{a_j}(C2)` per declared pole.
    pub awin_differences: Vec<i64>,
    pub residues: Vec<Complex64>,
    pub abs_error: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Compares both sides of the formula for a track `t` from `c2` to `c1`.
///
/// A tolerance miss is reported through `pass`, not as an error.
pub fn cauchy_check(
    f: &RationalFn,
    c1: &PLCurve,
    c2: &PLCurve,
    t: &HomotopyTrack,
    tol: f64,
    params: QuadParams,
) -> Result<CauchyReport, Error> {
    check_plane(c1)?;
    check_plane(c2)?;
    if frames_match(c2, t.first()).is_none() || frames_match(c1, t.last()).is_none() {
        return Err(Error::EndpointMismatch);
    }
    let mut awin_differences = Vec::with_capacity(f.poles.len());
    for (j, pole) in f.poles.iter().enumerate() {
        match delta_awin(t, &pole.at) {
            Ok(d) => awin_differences.push(d),
            Err(Error::Invalid(violations)) => {
                return Err(Error::NonGenericPole { pole: j, violations })
            }
            Err(e) => return Err(e),
        }
    }
    let residues = (0..f.poles.len())
        .map(|j| residue(f, j))
        .collect::<Result<Vec<_>, _>>()?;
    let lhs = contour_integral(f, c1, params)?;
    let i2pi = Complex64::new(0.0, 2.0 * PI);
    let correction: Complex64 = residues
        .iter()
        .zip(&awin_differences)
        .map(|(r, &d)| r * d as f64)
        .sum();
    let rhs = contour_integral(f, c2, params)? + i2pi * correction;
    let abs_error = (lhs - rhs).norm();
    Ok(CauchyReport {
        lhs,
        rhs,
        awin_differences,
        residues,
        abs_error,
        tol,
        pass: abs_error <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::straight_line_track;
    use crate::geom::{int, rat};
    use crate::surface::Surface;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn simple(at: Pt, order: u32) -> Pole {
        Pole { at, order }
    }

    fn inv_z_minus(a: i64) -> RationalFn {
        RationalFn::new(
            vec![c(1.0, 0.0)],
            vec![c(-a as f64, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::int(a, 0), 1)],
        )
        .unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1usize, 2, 5, 16] {
            let nodes = gauss_legendre(n);
            let wsum: f64 = nodes.iter().map(|(_, w)| w).sum();
            assert!((wsum - 2.0).abs() < 1e-13, "n={n}");
            // exact up to degree 2n - 1
            let deg = 2 * n - 1;
            let got: f64 = nodes.iter().map(|(x, w)| w * libm::pow(*x, deg as f64 - 1.0)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((got - exact).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn residue_examples() {
        assert!((residue(&inv_z_minus(0), 0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((residue(&inv_z_minus(2), 0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        // (3z+1)/((z-1)(z+2)) = A/(z-1) + B/(z+2); 3z + 1 = A(z+2) + B(z-1)
        // z = 1: 4 = 3A; z = -2: -5 = -3B
        let (a_coef, b_coef) = (4.0 / 3.0, 5.0 / 3.0);
        let f = RationalFn::new(
            vec![c(1.0, 0.0), c(3.0, 0.0)],
            vec![c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::int(1, 0), 1), simple(Pt::int(-2, 0), 1)],
        )
        .unwrap();
        assert!((residue(&f, 0).unwrap() - c(a_coef, 0.0)).norm() < 1e-14);
        assert!((residue(&f, 1).unwrap() - c(b_coef, 0.0)).norm() < 1e-14);
        assert_eq!(residue(&f, 2), Err(Error::PoleIndex { pole: 2 }));
    }

    #[test]
    fn quadrature_residue_matches_simple_formula() {
        let f = RationalFn::new(
            vec![c(1.0, 0.0), c(3.0, 0.0)],
            vec![c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::int(1, 0), 1), simple(Pt::int(-2, 0), 1)],
        )
        .unwrap();
        let forced = RationalFn {
            poles: vec![simple(Pt::int(1, 0), 2), simple(Pt::int(-2, 0), 2)],
            ..f.clone()
        };
        for j in 0..2 {
            let exact = residue(&f, j).unwrap();
            let quad = residue(&forced, j).unwrap();
            assert!((exact - quad).norm() <= 1e-8 * exact.norm(), "pole {j}");
        }
    }

    #[test]
    fn double_pole_residues() {
        // 1 / ((z-1)^2 (z+1)): Res at 1 = d/dz (z+1)^-1 = -1/4, at -1 = 1/4
        // denominator (z^2 - 2z + 1)(z + 1) = z^3 - z^2 - z + 1
        let f = RationalFn::new(
            vec![c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::int(1, 0), 2), simple(Pt::int(-1, 0), 1)],
        )
        .unwrap();
        assert!((residue(&f, 0).unwrap() - c(-0.25, 0.0)).norm() < 1e-9);
        assert!((residue(&f, 1).unwrap() - c(0.25, 0.0)).norm() < 1e-12);
        // 1/z^2 has zero residue
        let g = RationalFn::new(
            vec![c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::origin(), 2)],
        )
        .unwrap();
        assert!(residue(&g, 0).unwrap().norm() < 1e-10);
    }

    #[test]
    fn function_validation() {
        assert!(RationalFn::new(vec![c(1.0, 0.0)], vec![c(0.0, 0.0)], vec![]).is_err());
        assert!(RationalFn::new(
            vec![c(1.0, 0.0)],
            vec![c(-2.0, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::int(1, 0), 1)]
        )
        .is_err());
        assert!(RationalFn::new(
            vec![c(1.0, 0.0)],
            vec![c(-2.0, 0.0), c(1.0, 0.0)],
            vec![simple(Pt::int(2, 0), 1), simple(Pt::int(2, 0), 1)]
        )
        .is_err());
    }

    fn circle(r: i64, k: usize) -> PLCurve {
        PLCurve::circle(Surface::Plane, &Pt::origin(), &int(r), k)
    }

    #[test]
    fn contour_examples() {
        let params = QuadParams::default();
        let unit = circle(1, 256);
        let got = contour_integral(&inv_z_minus(0), &unit, params).unwrap();
        assert!((got - c(0.0, 2.0 * PI)).norm() < 1e-9, "{got}");
        let one = RationalFn::new(vec![c(1.0, 0.0)], vec![c(1.0, 0.0)], vec![]).unwrap();
        assert!(contour_integral(&one, &circle(3, 17), params).unwrap().norm() < 1e-12);
        let outside = contour_integral(&inv_z_minus(2), &circle(1, 64), params).unwrap();
        assert!(outside.norm() < 1e-9);
        let sq = PLCurve::polygon(
            Surface::Plane,
            vec![Pt::int(0, 0), Pt::int(2, 0), Pt::int(2, 2), Pt::int(0, 2)],
        );
        assert_eq!(
            contour_integral(&inv_z_minus(1), &sq, params),
            Err(Error::PoleOnContour { pole: 0, edge: 0 })
        );
    }

    #[test]
    fn reversed_contour_negates() {
        let f = inv_z_minus(0);
        let unit = circle(1, 64);
        let fwd = contour_integral(&f, &unit, QuadParams::default()).unwrap();
        let back = contour_integral(&f, &unit.reversed(), QuadParams::default()).unwrap();
        assert!((fwd + back).norm() < 1e-12);
    }

    #[test]
    fn identical_curves_pass_with_zero_differences() {
        let f = inv_z_minus(0);
        let unit = circle(1, 64);
        let t = HomotopyTrack::constant(&unit, 1);
        let r = cauchy_check(&f, &unit, &unit, &t, 1e-12, QuadParams::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.awin_differences, vec![0]);
        assert_eq!(r.abs_error, 0.0);
    }

    #[test]
    fn tolerance_miss_is_a_report() {
        let f = inv_z_minus(0);
        let c1 = circle(1, 8);
        let c2 = PLCurve::circle(Surface::Plane, &Pt::int(3, 0), &rat(1, 10), 8);
        let t = straight_line_track(&c2, &c1, 4).unwrap();
        let coarse = QuadParams {
            panels_per_edge: 1,
            order: 1,
        };
        let r = cauchy_check(&f, &c1, &c2, &t, 1e-14, coarse).unwrap();
        assert!(!r.pass);
        assert_eq!(r.awin_differences, vec![1]);
    }
}
