//! Exact rational points and the orientation predicate.

use core::cmp::Ordering;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nearest rational with denominator `denom` to a float. Used to build fixtures
/// such as polygonal circles; never used on a counting path.
pub fn rat_from_f64(v: f64, denom: i64) -> Rat {
    let n = libm::round(v * denom as f64) as i64;
    rat(n, denom)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pt {
    pub x: Rat,
    pub y: Rat,
}

impl Pt {
    pub fn new(x: Rat, y: Rat) -> Self {
        Pt { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Pt::new(int(x), int(y))
    }

    /// `(xn/d, yn/d)`.
    pub fn frac(xn: i64, yn: i64, d: i64) -> Self {
        Pt::new(rat(xn, d), rat(yn, d))
    }

    pub fn origin() -> Self {
        Pt::int(0, 0)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn scale(&self, k: &Rat) -> Pt {
        Pt::new(&self.x * k, &self.y * k)
    }

    /// `(1 - t) * self + t * other`.
    pub fn lerp(&self, other: &Pt, t: &Rat) -> Pt {
        Pt::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Pt {
        Pt::new(&self.x + int(dx), &self.y + int(dy))
    }

    /// The integer vector `other - self`, if it is one.
    pub fn integer_offset_to(&self, other: &Pt) -> Option<(i64, i64)> {
        let d = other - self;
        if d.x.is_integer() && d.y.is_integer() {
            Some((d.x.to_integer().to_i64()?, d.y.to_integer().to_i64()?))
        } else {
            None
        }
    }
}

impl Add<&Pt> for &Pt {
    type Output = Pt;
    fn add(self, o: &Pt) -> Pt {
        Pt::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&Pt> for &Pt {
    type Output = Pt;
    fn sub(self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Pt {
    type Output = Pt;
    fn neg(self) -> Pt {
        Pt::new(-&self.x, -&self.y)
    }
}

/// `u - v` as an unreduced fraction `(numerator, positive denominator)`.
fn diff(u: &Rat, v: &Rat) -> (BigInt, BigInt) {
    if u.denom() == v.denom() {
        (u.numer() - v.numer(), u.denom().clone())
    } else {
        (
            u.numer() * v.denom() - v.numer() * u.denom(),
            u.denom() * v.denom(),
        )
    }
}

/// Sign of `(b - a) x (c - a)`: `+1` when `a, b, c` turn counterclockwise,
/// `-1` when clockwise, `0` when collinear.
pub fn orient(a: &Pt, b: &Pt, c: &Pt) -> i32 {
    // compare (n1/d1)(n2/d2) with (n3/d3)(n4/d4) by cross-multiplying;
    // denominators are positive so the sign is preserved
    let (n1, d1) = diff(&b.x, &a.x);
    let (n2, d2) = diff(&c.y, &a.y);
    let (n3, d3) = diff(&b.y, &a.y);
    let (n4, d4) = diff(&c.x, &a.x);
    let lhs = n1 * n2 * (d3 * d4);
    let rhs = n3 * n4 * (d1 * d2);
    match lhs.cmp(&rhs) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: &Pt, a: &Pt, b: &Pt) -> bool {
    orient(a, b, p) == 0 && in_range(&p.x, &a.x, &b.x) && in_range(&p.y, &a.y, &b.y)
}

fn in_range(v: &Rat, a: &Rat, b: &Rat) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleClass {
    Interior,
    Boundary,
    Outside,
}

/// Exact position of `p` relative to the closed triangle `abc`.
///
/// Zero-area triangles have no interior: points on their segments are
/// `Boundary`, everything else is `Outside`.
pub fn classify_point_triangle(p: &Pt, a: &Pt, b: &Pt, c: &Pt) -> TriangleClass {
    let s = orient(a, b, c);
    if s == 0 {
        return if on_segment(p, a, b) || on_segment(p, b, c) || on_segment(p, c, a) {
            TriangleClass::Boundary
        } else {
            TriangleClass::Outside
        };
    }
    let signs = [orient(a, b, p), orient(b, c, p), orient(c, a, p)];
    if signs.iter().any(|&o| o == -s) {
        TriangleClass::Outside
    } else if signs.iter().all(|&o| o == s) {
        TriangleClass::Interior
    } else {
        TriangleClass::Boundary
    }
}

/// Closed axis-aligned bounding box of a point set.
pub fn bbox<'a>(pts: impl IntoIterator<Item = &'a Pt>) -> Option<(Pt, Pt)> {
    let mut it = pts.into_iter();
    let first = it.next()?;
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for p in it {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    Some((lo, hi))
}
