//! Signed passage counts, classical winding numbers, periodic degrees and the
//! quotient-valued affine winding number.

use core::fmt;

use crate::curve::{frames_match, scan_track, HomotopyTrack, PLCurve};
use crate::error::Error;
use crate::geom::{orient, rat, Pt};
use crate::groups::{quotient_project, subgroup_a};
use crate::surface::{ComponentDesc, Surface};

/// An element of `Z / dZ`. `modulus = 0` stands for `Z` itself; otherwise the
/// value is reduced into `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientInt {
    pub modulus: u64,
    pub value: i64,
}

impl QuotientInt {
    pub fn new(modulus: u64, value: i64) -> Self {
        let value = if modulus == 0 {
            value
        } else {
            value.rem_euclid(modulus as i64)
        };
        QuotientInt { modulus, value }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Representative of smallest absolute value.
    pub fn min_abs(&self) -> u64 {
        if self.modulus == 0 {
            self.value.unsigned_abs()
        } else {
            let r = self.value as u64;
            r.min(self.modulus - r)
        }
    }
}

impl core::ops::Add for QuotientInt {
    type Output = QuotientInt;
    fn add(self, o: QuotientInt) -> QuotientInt {
        debug_assert_eq!(self.modulus, o.modulus);
        QuotientInt::new(self.modulus, self.value + o.value)
    }
}

impl core::ops::Sub for QuotientInt {
    type Output = QuotientInt;
    fn sub(self, o: QuotientInt) -> QuotientInt {
        debug_assert_eq!(self.modulus, o.modulus);
        QuotientInt::new(self.modulus, self.value - o.value)
    }
}

impl fmt::Display for QuotientInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "{}", self.value),
            d => write!(f, "{} mod {}", self.value, d),
        }
    }
}

/// Sum of the signs of the preimages of `p` under the track.
///
/// Each triangle of the canonical triangulation that strictly contains `p`
/// (on the torus: any integer translate of `p`) contributes one preimage,
/// signed as described in the crate-level orientation contract. Fails with the full violation list when the track is not
/// good for `p`.
pub fn delta_awin(t: &HomotopyTrack, p: &Pt) -> Result<i64, Error> {
    let scan = scan_track(t, p);
    if scan.violations.is_empty() {
        Ok(scan.count)
    } else {
        Err(Error::Invalid(scan.violations))
    }
}

/// Classical winding number of a closed plane curve around `p`.
///
/// Counts signed crossings of the ray from `p` in the `+x` direction. An edge
/// counts when exactly one endpoint lies strictly above the ray's line, which
/// settles vertices on the ray without perturbation. On a punctured plane the
/// ambient-plane winding number is returned.
pub fn win(c: &PLCurve, p: &Pt) -> Result<i64, Error> {
    if c.surface.is_torus() {
        return Err(Error::UnsupportedSurface);
    }
    if let Some(edge) = c.edge_through(p) {
        return Err(Error::PointOnCurve { edge });
    }
    let closed = c.closed_vertices();
    let mut w = 0;
    for e in closed.windows(2) {
        let (a, b) = (&e[0], &e[1]);
        let a_up = a.y > p.y;
        let b_up = b.y > p.y;
        if !a_up && b_up && orient(a, b, p) > 0 {
            w += 1;
        } else if a_up && !b_up && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    Ok(w)
}

/// Seed of the sample sequence used by [`degree_periodic`].
pub const DEGREE_SEED: u64 = 0x5eed_0001;
/// Number of sample points tried before giving up.
pub const DEGREE_SAMPLE_BOUND: usize = 1000;
const SAMPLE_DENOM: u64 = 1_000_003;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic rational points in `[0, 1)^2` with a prime denominator.
pub fn sample_points(seed: u64) -> impl Iterator<Item = Pt> {
    let mut state = seed;
    core::iter::repeat_with(move || {
        let x = splitmix64(&mut state) % SAMPLE_DENOM;
        let y = splitmix64(&mut state) % SAMPLE_DENOM;
        Pt::new(
            rat(x as i64, SAMPLE_DENOM as i64),
            rat(y as i64, SAMPLE_DENOM as i64),
        )
    })
}

/// Degree of the map `N x S^1 -> M` obtained by closing up a periodic track.
///
/// Zero on the plane and punctured plane. On the torus it is the signed
/// preimage count of the first generic point of the sample sequence.
pub fn degree_periodic(t: &HomotopyTrack) -> Result<i64, Error> {
    degree_periodic_seeded(t, DEGREE_SEED)
}

pub fn degree_periodic_seeded(t: &HomotopyTrack, seed: u64) -> Result<i64, Error> {
    frames_match(t.first(), t.last()).ok_or(Error::NotPeriodic)?;
    match t.surface() {
        Surface::Plane | Surface::PuncturedPlane(_) => Ok(0),
        Surface::FlatTorus => {
            for p in sample_points(seed).take(DEGREE_SAMPLE_BOUND) {
                let scan = scan_track(t, &p);
                if scan.violations.is_empty() {
                    return Ok(scan.count);
                }
            }
            Err(Error::NoGenericSampleFound {
                tried: DEGREE_SAMPLE_BOUND,
            })
        }
    }
}

pub(crate) fn check_component(t: &HomotopyTrack, comp: &ComponentDesc) -> Result<(), Error> {
    if t.surface() != &comp.surface || t.offset() != comp.torus_class {
        return Err(Error::ComponentMismatch);
    }
    Ok(())
}

/// `awin_p(f_1) - awin_p(f_0)` for the endpoint frames of the track.
pub fn awin_diff(t: &HomotopyTrack, p: &Pt, comp: &ComponentDesc) -> Result<QuotientInt, Error> {
    check_component(t, comp)?;
    let delta = delta_awin(t, p)?;
    Ok(quotient_project(subgroup_a(comp), delta))
}

/// Affine winding number of `f` relative to the preferred curve `eps`,
/// computed through a track from `eps` to `f`.
pub fn awin(
    eps: &PLCurve,
    f: &PLCurve,
    t: &HomotopyTrack,
    p: &Pt,
    comp: &ComponentDesc,
) -> Result<QuotientInt, Error> {
    if frames_match(eps, t.first()).is_none() || frames_match(f, t.last()).is_none() {
        return Err(Error::EndpointMismatch);
    }
    awin_diff(t, p, comp)
}
