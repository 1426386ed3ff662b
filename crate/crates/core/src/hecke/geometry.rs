//! The quadratic and braid relations among the flag spans `P` and `L`,
//! checked fiberwise, and the explicit bijection between `PLP` and `LPL`
//! paths built from joins and meets.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use super::field::Element;
use super::linear::{flag_permutation, random_special_linear_3};
use super::plane::{flags, Flag, FlagVariety};
use super::relation::{compose_relations, relation_spans, RelationSpan};
use crate::error::Result;

/// Four flags joined by three steps.
pub type Path = [Flag; 4];

/// Every path `(p₁,ℓ₁) → (p₂,ℓ₁) → (p₂,ℓ₂) → (p₃,ℓ₂)` of steps `P`, `L`, `P`.
pub fn point_line_point_paths(x: &FlagVariety) -> Vec<Path> {
    let plane = &x.plane;
    let mut out = Vec::new();
    for &f1 in x.flags() {
        for &p2 in plane.points_on(f1.line).iter().filter(|&&p| p != f1.point) {
            for &l2 in plane.lines_through(p2).iter().filter(|&&l| l != f1.line) {
                for &p3 in plane.points_on(l2).iter().filter(|&&p| p != p2) {
                    out.push([
                        f1,
                        Flag { point: p2, line: f1.line },
                        Flag { point: p2, line: l2 },
                        Flag { point: p3, line: l2 },
                    ]);
                }
            }
        }
    }
    out
}

/// Every path `(p₁,ℓ₁) → (p₁,m) → (r,m) → (r,ℓ₃)` of steps `L`, `P`, `L`.
pub fn line_point_line_paths(x: &FlagVariety) -> Vec<Path> {
    let plane = &x.plane;
    let mut out = Vec::new();
    for &f1 in x.flags() {
        for &m in plane.lines_through(f1.point).iter().filter(|&&l| l != f1.line) {
            for &r in plane.points_on(m).iter().filter(|&&p| p != f1.point) {
                for &l3 in plane.lines_through(r).iter().filter(|&&l| l != m) {
                    out.push([
                        f1,
                        Flag { point: f1.point, line: m },
                        Flag { point: r, line: m },
                        Flag { point: r, line: l3 },
                    ]);
                }
            }
        }
    }
    out
}

/// `PLP → LPL`: the middle line is the join of the outer points.
pub fn point_line_point_to_line_point_line(x: &FlagVariety, path: &Path) -> Option<Path> {
    let [a, _, _, d] = *path;
    let m = x.plane.join(a.point, d.point)?;
    Some([a, Flag { point: a.point, line: m }, Flag { point: d.point, line: m }, d])
}

/// `LPL → PLP`: the middle point is the meet of the outer lines.
pub fn line_point_line_to_point_line_point(x: &FlagVariety, path: &Path) -> Option<Path> {
    let [a, _, _, d] = *path;
    let p = x.plane.meet(a.line, d.line)?;
    Some([a, Flag { point: p, line: a.line }, Flag { point: p, line: d.line }, d])
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometricReport {
    pub q: Element,
    pub points: usize,
    pub lines: usize,
    pub flags: usize,
    pub plane_axioms: bool,
    pub point_relation_size: u64,
    pub line_relation_size: u64,
    /// `P² = (q − 1)P + q·1` with multiplicities.
    pub quadratic_point: bool,
    /// `L² = (q − 1)L + q·1` with multiplicities.
    pub quadratic_line: bool,
    /// `PLP = LPL` with multiplicities.
    pub braid: bool,
    pub braid_paths: usize,
    /// The join and meet maps are mutually inverse, preserve endpoints and
    /// land on valid paths.
    pub braid_bijection: bool,
    pub equivariance_samples: usize,
    /// The bijection commutes with random elements of `SL(3, q)`.
    pub equivariant: bool,
    pub ok: bool,
}

/// Number of random group elements used for the equivariance check.
const EQUIVARIANCE_SAMPLES: usize = 8;

pub fn verify_geometric_relations(q: Element) -> Result<GeometricReport> {
    let x = flags(q)?;
    let n = x.len();
    let plane_axioms = x.plane.validate().ok;
    let (p, l) = relation_spans(&x);
    let id = RelationSpan::identity(n);
    let quadratic = |r: &RelationSpan| compose_relations(r, r) == r.scale(q as u64 - 1).plus(&id.scale(q as u64));
    let plp = compose_relations(&p, &compose_relations(&l, &p));
    let lpl = compose_relations(&l, &compose_relations(&p, &l));

    let forward_paths = point_line_point_paths(&x);
    let backward_paths = line_point_line_paths(&x);
    let backward_set: HashSet<Path> = backward_paths.iter().copied().collect();
    let mut images = HashSet::new();
    let mut bijection = forward_paths.len() == backward_paths.len();
    for path in &forward_paths {
        match point_line_point_to_line_point_line(&x, path) {
            Some(image) if backward_set.contains(&image) => {
                let back = line_point_line_to_point_line_point(&x, &image);
                bijection &= back == Some(*path) && images.insert(image);
            }
            _ => bijection = false,
        }
    }
    bijection &= images.len() == backward_set.len();

    let mut rng = StdRng::seed_from_u64(q as u64);
    let mut equivariant = true;
    for _ in 0..EQUIVARIANCE_SAMPLES {
        let g = random_special_linear_3(x.plane.field(), &mut rng);
        let perm = flag_permutation(&x, &g);
        let act = |f: Flag| x.flag(perm[x.index_of(f).expect("a flag")] as usize);
        for path in &forward_paths {
            let moved = path.map(act);
            let lhs = point_line_point_to_line_point_line(&x, &moved);
            let rhs = point_line_point_to_line_point_line(&x, path).map(|img| img.map(act));
            equivariant &= lhs.is_some() && lhs == rhs;
        }
    }

    let quadratic_point = quadratic(&p);
    let quadratic_line = quadratic(&l);
    let braid = plp == lpl;
    Ok(GeometricReport {
        q,
        points: x.plane.point_count(),
        lines: x.plane.line_count(),
        flags: n,
        plane_axioms,
        point_relation_size: p.total(),
        line_relation_size: l.total(),
        quadratic_point,
        quadratic_line,
        braid,
        braid_paths: forward_paths.len(),
        braid_bijection: bijection,
        equivariance_samples: EQUIVARIANCE_SAMPLES,
        equivariant,
        ok: plane_axioms && quadratic_point && quadratic_line && braid && bijection && equivariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_relations_hold() {
        let r = verify_geometric_relations(2).unwrap();
        assert!(r.ok, "{r:?}");
        // 21 flags, 2 choices at each of three steps.
        assert_eq!(r.braid_paths, 21 * 8);
    }
}
