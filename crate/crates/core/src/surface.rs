//! Surface models and the torus translate enumeration.
//!
//! Points on the flat torus `R^2 / Z^2` are stored in lift coordinates: any
//! representative in the plane. Two lifts name the same torus point when they
//! differ by an integer vector.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::geom::Pt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    Plane,
    /// The plane minus a finite, nonempty set of distinct points.
    PuncturedPlane(Vec<Pt>),
    FlatTorus,
}

impl Surface {
    /// Checked constructor for a punctured plane.
    pub fn punctured(punctures: Vec<Pt>) -> Result<Self, Error> {
        let s = Surface::PuncturedPlane(punctures);
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<(), Error> {
        if let Surface::PuncturedPlane(ps) = self {
            if ps.is_empty() {
                return Err(Error::InvalidSurface);
            }
            for (i, p) in ps.iter().enumerate() {
                if ps[..i].contains(p) {
                    return Err(Error::InvalidSurface);
                }
            }
        }
        Ok(())
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Surface::FlatTorus)
    }

    pub fn punctures(&self) -> &[Pt] {
        match self {
            Surface::PuncturedPlane(ps) => ps,
            _ => &[],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Surface::Plane => "plane",
            Surface::PuncturedPlane(_) => "punctured_plane",
            Surface::FlatTorus => "flat_torus",
        }
    }
}

/// A connected component of the space of loops on a surface. On the torus the
/// component is fixed by the homology class of the loop (its closure offset);
/// on the plane and punctured plane the class is always `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDesc {
    pub surface: Surface,
    pub torus_class: (i64, i64),
}

impl ComponentDesc {
    pub fn new(surface: Surface, torus_class: (i64, i64)) -> Result<Self, Error> {
        surface.check()?;
        if !surface.is_torus() && torus_class != (0, 0) {
            return Err(Error::ComponentMismatch);
        }
        Ok(ComponentDesc {
            surface,
            torus_class,
        })
    }

    pub fn plane() -> Self {
        ComponentDesc {
            surface: Surface::Plane,
            torus_class: (0, 0),
        }
    }

    pub fn torus(m: i64, n: i64) -> Self {
        ComponentDesc {
            surface: Surface::FlatTorus,
            torus_class: (m, n),
        }
    }
}

/// All points `p + (i, j)`, `i, j` integers, inside the closed box `[lo, hi]`,
/// ordered by `i` then `j`.
pub fn torus_translates(p: &Pt, lo: &Pt, hi: &Pt) -> Vec<Pt> {
    let (i0, i1) = integer_span(&(&lo.x - &p.x), &(&hi.x - &p.x));
    let (j0, j1) = integer_span(&(&lo.y - &p.y), &(&hi.y - &p.y));
    let mut out = Vec::new();
    let mut i = i0.clone();
    while i <= i1 {
        let x = &p.x + crate::geom::Rat::from_integer(i.clone());
        let mut j = j0.clone();
        while j <= j1 {
            out.push(Pt::new(
                x.clone(),
                &p.y + crate::geom::Rat::from_integer(j.clone()),
            ));
            j += 1;
        }
        i += 1;
    }
    out
}

/// `[ceil(lo), floor(hi)]`; empty when the first exceeds the second.
fn integer_span(lo: &crate::geom::Rat, hi: &crate::geom::Rat) -> (BigInt, BigInt) {
    (lo.ceil().to_integer(), hi.floor().to_integer())
}

/// Integer shifts `(i, j)` such that `p + (i, j)` lies in `[lo, hi]`.
pub(crate) fn translate_shifts(p: &Pt, lo: &Pt, hi: &Pt) -> Vec<(i64, i64)> {
    let (i0, i1) = integer_span(&(&lo.x - &p.x), &(&hi.x - &p.x));
    let (j0, j1) = integer_span(&(&lo.y - &p.y), &(&hi.y - &p.y));
    let (Some(i0), Some(i1), Some(j0), Some(j1)) =
        (i0.to_i64(), i1.to_i64(), j0.to_i64(), j1.to_i64())
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for i in i0..=i1 {
        for j in j0..=j1 {
            out.push((i, j));
        }
    }
    out
}

/// Representative of `p` in the unit square `[0, 1)^2`.
pub fn reduce_to_unit_square(p: &Pt) -> Pt {
    Pt::new(&p.x - p.x.floor(), &p.y - p.y.floor())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, Rat};

    #[test]
    fn translate_examples() {
        let p = Pt::frac(1, 1, 2);
        assert_eq!(
            torus_translates(&p, &Pt::int(0, 0), &Pt::int(1, 1)),
            alloc::vec![p.clone()]
        );
        assert_eq!(
            torus_translates(&p, &Pt::int(0, 0), &Pt::int(2, 1)),
            alloc::vec![p.clone(), Pt::new(rat(3, 2), rat(1, 2))]
        );
        assert_eq!(
            torus_translates(&Pt::int(0, 0), &Pt::int(-1, -1), &Pt::int(1, 1)).len(),
            9
        );
    }

    #[test]
    fn empty_box_slice() {
        let p = Pt::frac(1, 1, 2);
        let lo = Pt::frac(1, 1, 8);
        let hi = Pt::frac(3, 3, 8);
        assert!(torus_translates(&p, &lo, &hi).is_empty());
        assert!(translate_shifts(&p, &lo, &hi).is_empty());
    }

    #[test]
    fn punctured_requires_distinct_nonempty() {
        assert!(Surface::punctured(alloc::vec![]).is_err());
        assert!(Surface::punctured(alloc::vec![Pt::int(0, 0), Pt::int(0, 0)]).is_err());
        assert!(Surface::punctured(alloc::vec![Pt::int(0, 0), Pt::int(1, 0)]).is_ok());
    }

    #[test]
    fn component_class_only_on_torus() {
        assert!(ComponentDesc::new(Surface::Plane, (1, 0)).is_err());
        assert!(ComponentDesc::new(Surface::FlatTorus, (1, 0)).is_ok());
    }

    #[test]
    fn unit_square_reduction() {
        let p = Pt::new(Rat::new((-7).into(), 4.into()), rat(9, 4));
        assert_eq!(reduce_to_unit_square(&p), Pt::frac(1, 1, 4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rat> {
            (-40i64..40, 1i64..9).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn count_matches_product(px in small_rat(), py in small_rat(),
                                     lx in small_rat(), ly in small_rat(),
                                     w in 0i64..30, h in 0i64..30) {
                let p = Pt::new(px, py);
                let lo = Pt::new(lx.clone(), ly.clone());
                let hi = Pt::new(lx + rat(w, 4), ly + rat(h, 4));
                let count = |a: &Rat, b: &Rat| -> usize {
                    // brute force over a generous integer range
                    (-100i64..100).filter(|k| {
                        let v = crate::geom::int(*k);
                        a <= &v && &v <= b
                    }).count()
                };
                let expect = count(&(&lo.x - &p.x), &(&hi.x - &p.x))
                    * count(&(&lo.y - &p.y), &(&hi.y - &p.y));
                let got = torus_translates(&p, &lo, &hi);
                prop_assert_eq!(got.len(), expect);
                let mut shifted = torus_translates(&p.translate(3, -2), &lo, &hi);
                let mut orig = got.clone();
                shifted.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
                orig.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
                prop_assert_eq!(shifted, orig);
            }
        }
    }
}
