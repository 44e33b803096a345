//! Passage counts for an observation point that moves along a path.
//!
//! The count `Phi . Gamma` of a track against a path in `M x I` is computed by
//! the comoving reduction `(y, t) -> (y - gamma(t), t)`. On the plane and the
//! flat torus this is an orientation-preserving self-map of `M x I` that sends
//! the path to the constant origin, so the mixed count becomes the stationary
//! count of the reduced track at the origin. The path is sampled at frame
//! times and interpolated linearly like the track, so the reduction is exact.

use alloc::vec::Vec;

use crate::curve::{scan_track, HomotopyTrack, PLCurve, PLPath};
use crate::error::{Error, Violation};
use crate::geom::Pt;
use crate::groups::{quotient_project, subgroup_a, subgroup_b, sum_subgroups};
use crate::surface::{ComponentDesc, Surface};
use crate::winding::{check_component, delta_awin, QuotientInt};

/// Translates frame `s` of the track by `-g.points[s]`.
///
/// Punctures do not move with the observer, so on a punctured plane the
/// reduced track lives on the plane; puncture avoidance is checked on the
/// unreduced inputs by [`delta_awin_moving`].
pub fn comoving_reduce(t: &HomotopyTrack, g: &PLPath) -> Result<HomotopyTrack, Error> {
    if g.points.len() != t.frames().len() {
        return Err(Error::LengthMismatch {
            frames: t.frames().len(),
            points: g.points.len(),
        });
    }
    if &g.surface != t.surface() {
        return Err(Error::SurfaceMismatch);
    }
    let surface = match t.surface() {
        Surface::PuncturedPlane(_) => Surface::Plane,
        s => s.clone(),
    };
    let frames: Vec<PLCurve> = t
        .frames()
        .iter()
        .zip(&g.points)
        .map(|(f, q)| {
            let mut r = f.translate(&-q);
            r.surface = surface.clone();
            r
        })
        .collect();
    HomotopyTrack::new(frames)
}

fn puncture_violations(t: &HomotopyTrack, g: &PLPath) -> Vec<Violation> {
    let mut v = g.puncture_violations();
    if !t.surface().punctures().is_empty() {
        // any point far from everything serves; only puncture checks are kept
        let far = Pt::int(i64::MAX / 4, i64::MAX / 4);
        v.extend(scan_track(t, &far).violations.into_iter().filter(|x| {
            matches!(
                x,
                Violation::HitsPuncture { .. } | Violation::PunctureOnCurve { .. }
            )
        }));
    }
    v
}

/// Intersection number of the track's graph with the path's graph in `M x I`.
pub fn delta_awin_moving(t: &HomotopyTrack, g: &PLPath) -> Result<i64, Error> {
    let reduced = comoving_reduce(t, g)?;
    let pv = puncture_violations(t, g);
    if !pv.is_empty() {
        return Err(Error::Invalid(pv));
    }
    delta_awin(&reduced, &Pt::origin()).map_err(|e| match e {
        Error::Invalid(v) => Error::NonTransverse(v),
        e => e,
    })
}

/// Difference of the moving-point invariant between the endpoint
/// (frame, observer) pairs, in `Z / (A + B)`.
pub fn awin_moving_diff(
    t: &HomotopyTrack,
    g: &PLPath,
    comp: &ComponentDesc,
) -> Result<QuotientInt, Error> {
    check_component(t, comp)?;
    let delta = delta_awin_moving(t, g)?;
    Ok(quotient_project(
        sum_subgroups(subgroup_a(comp), subgroup_b(comp)),
        delta,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::straight_line_track;
    use crate::winding::win;
    use alloc::vec;

    fn square() -> PLCurve {
        PLCurve::polygon(
            Surface::Plane,
            vec![Pt::int(0, 0), Pt::int(2, 0), Pt::int(2, 2), Pt::int(0, 2)],
        )
    }

    fn growing() -> HomotopyTrack {
        let tiny = PLCurve::polygon(
            Surface::Plane,
            vec![Pt::int(5, 5), Pt::frac(21, 20, 4), Pt::frac(20, 21, 4)],
        );
        let large = PLCurve::polygon(
            Surface::Plane,
            vec![Pt::int(-3, -2), Pt::int(4, -1), Pt::int(-1, 5)],
        );
        straight_line_track(&tiny, &large, 4).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let t = straight_line_track(&square(), &square().translate(&Pt::int(1, 3)), 2).unwrap();
        let zero = PLPath::constant(Surface::Plane, &Pt::origin(), 3);
        assert_eq!(comoving_reduce(&t, &zero).unwrap(), t);
        let c = Pt::frac(3, -1, 2);
        let at_c = PLPath::constant(Surface::Plane, &c, 3);
        assert_eq!(comoving_reduce(&t, &at_c).unwrap(), t.translate(&-&c));
        let g = PLPath::new(
            Surface::Plane,
            vec![Pt::int(0, 0), Pt::frac(1, 2, 3), Pt::int(5, -1)],
        );
        let back = comoving_reduce(&comoving_reduce(&t, &g).unwrap(), &g.negated()).unwrap();
        assert_eq!(back, t);
        let short = PLPath::constant(Surface::Plane, &c, 2);
        assert_eq!(
            comoving_reduce(&t, &short),
            Err(Error::LengthMismatch {
                frames: 3,
                points: 2
            })
        );
    }

    #[test]
    fn constant_path_matches_stationary_count() {
        let t = growing();
        for p in [Pt::origin(), Pt::int(1, 1), Pt::frac(-7, 3, 5)] {
            let g = PLPath::constant(Surface::Plane, &p, t.frames().len());
            assert_eq!(delta_awin_moving(&t, &g), delta_awin(&t, &p));
        }
    }

    #[test]
    fn path_crossing_static_curve_and_returning() {
        let t = HomotopyTrack::constant(&square(), 4);
        let g = PLPath::new(
            Surface::Plane,
            vec![
                Pt::frac(-1, 1, 1),
                Pt::frac(3, 5, 3),
                Pt::frac(4, 3, 3),
                Pt::frac(10, 3, 3),
                Pt::frac(-2, 2, 2),
            ],
        );
        let reduced = comoving_reduce(&t, &g).unwrap();
        let oracle = win(reduced.last(), &Pt::origin()).unwrap()
            - win(reduced.first(), &Pt::origin()).unwrap();
        assert_eq!(oracle, 0);
        assert_eq!(delta_awin_moving(&t, &g), Ok(0));
    }

    #[test]
    fn far_drifting_observer() {
        let t = growing();
        let n = t.frames().len() as i64;
        let g = PLPath::new(
            Surface::Plane,
            (0..n)
                .map(|s| {
                    let c = crate::geom::rat(20 * (n - 1) + s, n - 1);
                    Pt::new(c.clone(), c)
                })
                .collect(),
        );
        // the observer drifts from (20,20) to (21,21), outside every frame
        let reduced = comoving_reduce(&t, &g).unwrap();
        let oracle = win(reduced.last(), &Pt::origin()).unwrap()
            - win(reduced.first(), &Pt::origin()).unwrap();
        assert_eq!(oracle, 0);
        assert_eq!(delta_awin_moving(&t, &g), Ok(oracle));
    }

    #[test]
    fn moving_diff_moduli() {
        let t = growing();
        let g = PLPath::constant(Surface::Plane, &Pt::origin(), t.frames().len());
        assert_eq!(
            awin_moving_diff(&t, &g, &ComponentDesc::plane()),
            Ok(QuotientInt::new(0, 1))
        );
    }

    #[test]
    fn path_through_puncture_rejected() {
        let surf = Surface::punctured(vec![Pt::int(10, 10)]).unwrap();
        let c = PLCurve { surface: surf.clone(), ..square() };
        let t = HomotopyTrack::constant(&c, 2);
        let g = PLPath::new(surf, vec![Pt::int(9, 9), Pt::int(11, 11), Pt::int(12, 9)]);
        assert_eq!(
            delta_awin_moving(&t, &g),
            Err(Error::Invalid(vec![Violation::PathHitsPuncture {
                segment: 0,
                puncture: 0
            }]))
        );
    }
}
