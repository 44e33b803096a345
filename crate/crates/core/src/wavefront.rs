//! Lower bounds on how often a propagating front passes through a point.
//!
//! Any good track between two snapshots of the front has a passage count
//! congruent, modulo the indeterminacy subgroup, to that of the true
//! propagation. When the subgroup is `dZ` with `d > 0` the smallest absolute
//! representative of the class is still a lower bound: the true count `c`
//! satisfies `c ≡ Δ (mod d)`, so `|c| >= min_k |Δ + k d|`, and the number of
//! passages is at least `|c|`. With `d = 0` the bound is `|Δ|`.
//!
//! Inputs must be generic; a front that touches the point tangentially or
//! passes through it non-transversally is rejected upstream rather than
//! counted.

use crate::curve::{frames_match, scan_track, HomotopyTrack, PLCurve, PLPath};
use crate::error::Error;
use crate::geom::{Pt, Rat};
use crate::groups::{subgroup_a, subgroup_b, sum_subgroups};
use crate::moving::delta_awin_moving;
use crate::surface::ComponentDesc;
use crate::winding::{check_component, delta_awin, QuotientInt};

/// The front `W(t)` at one moment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontSnapshot {
    pub curve: PLCurve,
    pub time: Rat,
}

fn check_snapshots(s1: &FrontSnapshot, s2: &FrontSnapshot, t: &HomotopyTrack) -> Result<(), Error> {
    if s1.time >= s2.time {
        return Err(Error::TimeOrder);
    }
    if frames_match(&s1.curve, t.first()).is_none() || frames_match(&s2.curve, t.last()).is_none() {
        return Err(Error::EndpointMismatch);
    }
    Ok(())
}

/// Exact number of passages through `p` of a known PL propagation: the
/// unsigned number of preimages, where [`delta_awin`] is the signed one.
pub fn count_passages(t: &HomotopyTrack, p: &Pt) -> Result<u64, Error> {
    let scan = scan_track(t, p);
    if scan.violations.is_empty() {
        Ok(scan.preimages)
    } else {
        Err(Error::Invalid(scan.violations))
    }
}

/// Minimum number of passages of the front through the fixed point `p`
/// between the two snapshots.
pub fn passage_lower_bound(
    s1: &FrontSnapshot,
    s2: &FrontSnapshot,
    t: &HomotopyTrack,
    p: &Pt,
    comp: &ComponentDesc,
) -> Result<u64, Error> {
    check_snapshots(s1, s2, t)?;
    check_component(t, comp)?;
    let delta = delta_awin(t, p)?;
    Ok(QuotientInt::new(subgroup_a(comp).d, delta).min_abs())
}

/// Minimum number of passages of the front through an observer moving along
/// `g`, reduced modulo `A + B`.
pub fn moving_observer_bound(
    s1: &FrontSnapshot,
    s2: &FrontSnapshot,
    t: &HomotopyTrack,
    g: &PLPath,
    comp: &ComponentDesc,
) -> Result<u64, Error> {
    check_snapshots(s1, s2, t)?;
    check_component(t, comp)?;
    let delta = delta_awin_moving(t, g)?;
    let d = sum_subgroups(subgroup_a(comp), subgroup_b(comp)).d;
    Ok(QuotientInt::new(d, delta).min_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};
    use crate::surface::Surface;
    use alloc::vec::Vec;

    fn snap(c: &PLCurve, t: i64) -> FrontSnapshot {
        FrontSnapshot {
            curve: c.clone(),
            time: int(t),
        }
    }

    #[test]
    fn constant_front_gives_zero() {
        let c = PLCurve::circle(Surface::Plane, &Pt::origin(), &int(1), 12);
        let t = HomotopyTrack::constant(&c, 3);
        let p = Pt::int(4, 4);
        assert_eq!(
            passage_lower_bound(&snap(&c, 0), &snap(&c, 1), &t, &p, &ComponentDesc::plane()),
            Ok(0)
        );
        assert_eq!(
            passage_lower_bound(&snap(&c, 1), &snap(&c, 1), &t, &p, &ComponentDesc::plane()),
            Err(Error::TimeOrder)
        );
    }

    #[test]
    fn torus_meridian_component_is_totally_indeterminate() {
        let k = 3;
        let frames: Vec<PLCurve> = (0..=8)
            .map(|s| {
                PLCurve::new(
                    Surface::FlatTorus,
                    (0..k).map(|j| Pt::new(rat(s, 8), rat(j, k))).collect(),
                    (0, 1),
                )
            })
            .collect();
        let t = HomotopyTrack::new(frames).unwrap();
        let p = Pt::new(rat(7, 16), rat(5, 11));
        assert_eq!(delta_awin(&t, &p), Ok(1));
        let (a, b) = (snap(t.first(), 0), snap(t.last(), 1));
        assert_eq!(
            passage_lower_bound(&a, &b, &t, &p, &ComponentDesc::torus(0, 1)),
            Ok(0)
        );
        let g = PLPath::constant(Surface::FlatTorus, &p, 9);
        assert_eq!(
            moving_observer_bound(&a, &b, &t, &g, &ComponentDesc::torus(0, 1)),
            Ok(0)
        );
    }

    #[test]
    fn mismatched_snapshot_rejected() {
        let c = PLCurve::circle(Surface::Plane, &Pt::origin(), &int(1), 12);
        let t = HomotopyTrack::constant(&c, 1);
        let other = c.translate(&Pt::int(1, 0));
        assert_eq!(
            passage_lower_bound(
                &snap(&other, 0),
                &snap(&c, 1),
                &t,
                &Pt::int(9, 9),
                &ComponentDesc::plane()
            ),
            Err(Error::EndpointMismatch)
        );
    }
}
