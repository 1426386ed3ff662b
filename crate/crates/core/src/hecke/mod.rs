//! The Hecke algebra of `SL(3, F_q)` acting on flags of the projective
//! plane, from the span picture: flag relations, their orbit
//! classification, and the algebra degroupoidified from the multiplication
//! span.

mod algebra;
mod field;
mod geometry;
mod linear;
mod orbits;
mod plane;
mod relation;

use serde::Serialize;

pub use algebra::{
    hecke_algebra, orbit_algebra, rank_one_hecke_algebra, HeckeAlgebraData, OrbitAlgebra, MAX_RANK_ONE_ORDER,
};
pub use field::{Element, PrimeField};
pub use geometry::{
    line_point_line_paths, line_point_line_to_point_line_point, point_line_point_paths,
    point_line_point_to_line_point_line, verify_geometric_relations, GeometricReport, Path,
};
pub use linear::{
    act_on_flag, determinant, flag_group, flag_permutation, inverse, random_special_linear_3, special_linear_3,
    special_linear_3_order, Matrix3, MAX_ENUMERATED_ORDER,
};
pub use orbits::{sl3_orbits, OrbitReport, OrbitSummary, RelativePosition};
pub use plane::{flags, Flag, FlagVariety, ProjectivePlane, Vector3, MAX_PLANE_ORDER};
pub use relation::{compose_relations, line_relation, point_relation, relation_spans, RelationSpan};

use crate::error::Result;
use crate::rational::Rational;

/// The orbit of `rep` under the classifier, as a relation.
fn orbit_relation(x: &FlagVariety, rep: (usize, usize)) -> RelationSpan {
    let target = RelativePosition::of(x, rep.0, rep.1);
    let n = x.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| RelativePosition::of(x, a, b) == target)
        .collect();
    RelationSpan::from_pairs(n, pairs)
}

/// Checks on the degroupoidified algebra.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraChecks {
    pub unit: bool,
    pub quadratic_point: bool,
    pub quadratic_line: bool,
    pub braid: bool,
    pub associative: bool,
    /// Every structure constant equals the number of middle flags on a
    /// path through the two orbits, counted with [`compose_relations`].
    pub path_counts_agree: bool,
}

impl AlgebraChecks {
    pub fn ok(&self) -> bool {
        self.unit
            && self.quadratic_point
            && self.quadratic_line
            && self.braid
            && self.associative
            && self.path_counts_agree
    }
}

pub fn check_algebra(h: &HeckeAlgebraData) -> Result<AlgebraChecks> {
    let x = flags(h.q)?;
    let index = |label: &str| h.index_of(label);
    let (unit, p, l) = (index("1"), index("P"), index("L"));
    let relations: Vec<RelationSpan> = h.representatives.iter().map(|&r| orbit_relation(&x, r)).collect();
    let mut path_counts_agree = h.dimension() == 6;
    for i in 0..h.dimension() {
        for j in 0..h.dimension() {
            let composite = compose_relations(&relations[j], &relations[i]);
            for (k, &(a, b)) in h.representatives.iter().enumerate() {
                path_counts_agree &=
                    h.structure_constants[i][j][k] == Rational::from_u128(composite.multiplicity(a, b) as u128);
            }
        }
    }
    let both = |f: &dyn Fn(usize, usize) -> bool| matches!((p, l), (Some(p), Some(l)) if f(p, l));
    Ok(AlgebraChecks {
        unit: unit.is_some_and(|u| h.is_unit(u)),
        quadratic_point: both(&|p, _| unit.is_some_and(|u| h.satisfies_quadratic(p, u))),
        quadratic_line: both(&|_, l| unit.is_some_and(|u| h.satisfies_quadratic(l, u))),
        braid: both(&|p, l| h.satisfies_braid(p, l)),
        associative: h.is_associative(),
        path_counts_agree,
    })
}

/// Everything known about the flag geometry at a given `q`: relation
/// checks, orbits and, when the group can be enumerated, the algebra.
#[derive(Debug, Clone, Serialize)]
pub struct HeckeReport {
    pub q: Element,
    pub geometric: GeometricReport,
    pub orbits: OrbitReport,
    pub algebra: Option<HeckeAlgebraData>,
    pub algebra_checks: Option<AlgebraChecks>,
    pub ok: bool,
}

pub fn verify(q: Element) -> Result<HeckeReport> {
    let geometric = verify_geometric_relations(q)?;
    let orbits = sl3_orbits(q)?;
    let (algebra, algebra_checks) = if q <= MAX_ENUMERATED_ORDER {
        let h = hecke_algebra(q)?;
        let checks = check_algebra(&h)?;
        (Some(h), Some(checks))
    } else {
        (None, None)
    };
    let orbits_ok = orbits.orbits.len() == 6
        && orbits.diagonal_is_orbit
        && orbits.point_relation_is_orbit
        && orbits.line_relation_is_orbit
        && orbits.routes_agree != Some(false)
        && orbits.spans_injective != Some(false);
    let ok = geometric.ok && orbits_ok && algebra_checks.as_ref().map_or(true, AlgebraChecks::ok);
    Ok(HeckeReport { q, geometric, orbits, algebra, algebra_checks, ok })
}
