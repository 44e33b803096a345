//! Indeterminacy subgroups of `Z` and the sufficient conditions under which
//! they vanish.
//!
//! A component of loops on a surface has two subgroups `A, B <= Z`: `A` is
//! generated by the degrees of maps `N x S^1 -> M` whose circles stay in the
//! component, `B` by intersection numbers of the component's class with
//! `H_1(M)`. The stationary invariant lives in `Z / A`, the moving-point
//! invariant in `Z / (A + B)`.
//!
//! Both subgroups are computed exactly for the surfaces with a geometric
//! model. On the torus a loop of class `(m, n)` swept along a class `(a, b)`
//! gives a map of degree `m b - n a`, and the pairing `(m, n) . (a, b)` is the
//! same determinant, so `A = B = gcd(m, n) Z`. On the plane and punctured
//! plane the target is not closed and every loop pairs to zero, so
//! `A = B = 0`. For other manifolds only the decision procedure in
//! [`check_conditions`] is available; it is sufficient, not necessary. The
//! 2-sphere, for example, has `Z / A = 0` for loops, which no condition
//! detects.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::surface::{ComponentDesc, Surface};
use crate::winding::QuotientInt;

/// The subgroup `dZ` of the integers. `d = 0` is `{0}`, `d = 1` is `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub d: u64,
}

impl Subgroup {
    pub const TRIVIAL: Subgroup = Subgroup { d: 0 };
    pub const WHOLE: Subgroup = Subgroup { d: 1 };

    pub fn new(d: u64) -> Self {
        Subgroup { d }
    }

    pub fn contains(&self, z: i64) -> bool {
        match self.d {
            0 => z == 0,
            d => z.rem_euclid(d as i64) == 0,
        }
    }
}

impl fmt::Display for Subgroup {
    /// Name of the quotient `Z / dZ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            0 => f.write_str("Z"),
            1 => f.write_str("0"),
            d => write!(f, "Z/{d}Z"),
        }
    }
}

fn torus_gcd(class: (i64, i64)) -> u64 {
    class.0.unsigned_abs().gcd(&class.1.unsigned_abs())
}

/// Subgroup generated by the degrees of special maps for the component.
pub fn subgroup_a(comp: &ComponentDesc) -> Subgroup {
    match comp.surface {
        Surface::Plane | Surface::PuncturedPlane(_) => Subgroup::TRIVIAL,
        Surface::FlatTorus => Subgroup::new(torus_gcd(comp.torus_class)),
    }
}

/// Subgroup generated by the pairings of the component's class with `H_1`.
pub fn subgroup_b(comp: &ComponentDesc) -> Subgroup {
    match comp.surface {
        Surface::Plane | Surface::PuncturedPlane(_) => Subgroup::TRIVIAL,
        Surface::FlatTorus => Subgroup::new(torus_gcd(comp.torus_class)),
    }
}

pub fn sum_subgroups(a: Subgroup, b: Subgroup) -> Subgroup {
    Subgroup::new(a.d.gcd(&b.d))
}

/// The quotient map `Z -> Z / A`.
pub fn quotient_project(a: Subgroup, z: i64) -> QuotientInt {
    QuotientInt::new(a.d, z)
}

/// Topological data of a pair `(N, M)` and a component of maps `N -> M`.
///
/// Betti numbers are rational, indexed from 0; missing entries read as zero.
/// The last group of flags records hypotheses that cannot be decided from
/// finite input and are taken on the caller's word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ManifoldMeta {
    pub betti_n: Vec<u64>,
    pub betti_m: Vec<u64>,
    pub m_closed: bool,
    pub component_null_homotopic: bool,
    pub n_is_sphere: bool,
    pub m_is_rational_homology_sphere: bool,
    pub pi1_trivial_image: bool,
    pub pi1_infinite_no_finite_index_z: bool,
    pub negatively_curved_closed: bool,
    /// Maps in the component carry a finite-order fundamental class in
    /// `H_*(M)`. Implied by `component_null_homotopic`.
    pub class_finite_order: bool,
}

impl ManifoldMeta {
    /// Connectedness check: both Betti lists start with 1.
    pub fn is_well_formed(&self) -> bool {
        self.betti_n.first() == Some(&1) && self.betti_m.first() == Some(&1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Holds because the caller asserted its hypotheses.
    HoldsByAssertion,
    NotAsserted,
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsByAssertion)
    }

    fn computed(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    fn asserted(b: bool) -> Self {
        if b {
            Verdict::HoldsByAssertion
        } else {
            Verdict::NotAsserted
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// Verdicts for conditions 0 through 5.
    pub conditions: [Verdict; 6],
    /// Smallest index witnessing condition 1.
    pub condition1_index: Option<usize>,
    /// Smallest index witnessing the Betti part of condition 2.
    pub condition2_index: Option<usize>,
    /// `Z / A = Z` is guaranteed. When false the result is inconclusive, not
    /// a proof that `A` is nontrivial.
    pub a_is_z: bool,
    /// `Z / (A + B) = Z` is guaranteed.
    pub b_is_z: bool,
}

fn betti(v: &[u64], i: usize) -> u64 {
    v.get(i).copied().unwrap_or(0)
}

/// Evaluates the sufficient conditions for `A = 0` (and, with a
/// finite-order class, `A + B = 0`).
pub fn check_conditions(meta: &ManifoldMeta) -> ConditionReport {
    let top = meta.betti_m.len().max(meta.betti_n.len() + 1);
    let n = &meta.betti_n;
    let m = &meta.betti_m;
    let condition1_index =
        (1..top).find(|&i| betti(n, i) + betti(n, i - 1) < betti(m, i));
    let betti2 = (1..top).find(|&i| betti(n, i - 1) < betti(m, i));
    let condition2_index = betti2.filter(|_| meta.component_null_homotopic);
    let conditions = [
        Verdict::computed(!meta.m_closed),
        Verdict::computed(condition1_index.is_some()),
        Verdict::computed(condition2_index.is_some()),
        Verdict::computed(
            meta.n_is_sphere
                && meta.component_null_homotopic
                && !meta.m_is_rational_homology_sphere,
        ),
        Verdict::asserted(meta.pi1_trivial_image && meta.pi1_infinite_no_finite_index_z),
        Verdict::asserted(meta.negatively_curved_closed),
    ];
    let a_is_z = conditions.iter().any(|v| v.holds());
    let finite = meta.class_finite_order || meta.component_null_homotopic;
    ConditionReport {
        conditions,
        condition1_index,
        condition2_index,
        a_is_z,
        b_is_z: a_is_z && finite,
    }
}
