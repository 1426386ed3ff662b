//! The Hecke algebra of a permutation group, degroupoidified from the
//! multiplication span
//!
//! ```text
//! (X×X)//G × (X×X)//G  ←  (X×X×X)//G  →  (X×X)//G
//!  ((x,y),(y,z))            (x,y,z)          (x,z)
//! ```
//!
//! Basis vectors are the orbit groupoids `O//G` over `(X×X)//G`, whose
//! vectors are `δ_O / |Stab|`; in that basis the structure constants are
//! natural numbers and the diagonal orbit is the unit.

use std::sync::Arc;

use serde::Serialize;

use super::field::{Element, PrimeField};
use super::linear::flag_group;
use super::orbits::RelativePosition;
use super::plane::flags;
use crate::degroupoidify::{matrix, RationalMatrix};
use crate::error::{Error, Result};
use crate::group::{Group, Perm, PermGroup};
use crate::groupoid::{action_groupoid, product, skeleton, FunctorData, GroupAction, ObjectId};
use crate::rational::Rational;
use crate::span::Span;

/// Structure constants of a finite-dimensional algebra with a chosen basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeAlgebraData {
    pub q: Element,
    pub basis: Vec<String>,
    /// Least pair of points in each orbit.
    pub representatives: Vec<(usize, usize)>,
    pub stabilizer_orders: Vec<usize>,
    /// `structure_constants[i][j][k]` is the coefficient of `b_k` in `b_i b_j`.
    pub structure_constants: Vec<Vec<Vec<Rational>>>,
}

impl HeckeAlgebraData {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        (0..self.dimension()).map(|k| if k == i { Rational::one() } else { Rational::zero() }).collect()
    }

    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.dimension();
        let mut out = vec![Rational::zero(); d];
        for i in (0..d).filter(|&i| !a[i].is_zero()) {
            for j in (0..d).filter(|&j| !b[j].is_zero()) {
                let ab = &a[i] * &b[j];
                for (k, c) in self.structure_constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    /// Whether the basis element at `unit` is a two-sided identity.
    pub fn is_unit(&self, unit: usize) -> bool {
        (0..self.dimension()).all(|j| {
            let e = self.basis_vector(j);
            self.multiply(&self.basis_vector(unit), &e) == e && self.multiply(&e, &self.basis_vector(unit)) == e
        })
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` on every basis triple.
    pub fn is_associative(&self) -> bool {
        let d = self.dimension();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (bi, bj, bk) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    self.multiply(&self.multiply(&bi, &bj), &bk) == self.multiply(&bi, &self.multiply(&bj, &bk))
                })
            })
        })
    }

    /// `b_s² = (q − 1) b_s + q·1`.
    pub fn satisfies_quadratic(&self, s: usize, unit: usize) -> bool {
        let q = Rational::from_u128(self.q as u128);
        let bs = self.basis_vector(s);
        let mut expected = vec![Rational::zero(); self.dimension()];
        expected[s] = &q - &Rational::one();
        expected[unit] += &q;
        self.multiply(&bs, &bs) == expected
    }

    /// `b_s b_t b_s = b_t b_s b_t`.
    pub fn satisfies_braid(&self, s: usize, t: usize) -> bool {
        let (bs, bt) = (self.basis_vector(s), self.basis_vector(t));
        self.multiply(&self.multiply(&bs, &bt), &bs) == self.multiply(&self.multiply(&bt, &bs), &bt)
    }
}

/// Orbit data and structure constants of the multiplication span for a
/// group acting on `0..n` through the given permutations.
#[derive(Debug, Clone)]
pub struct OrbitAlgebra {
    pub representatives: Vec<(usize, usize)>,
    pub stabilizer_orders: Vec<usize>,
    /// Matrix of the multiplication span, columns indexed by pairs of orbits.
    pub multiplication: RationalMatrix,
    pub structure_constants: Vec<Vec<Vec<Rational>>>,
}

pub fn orbit_algebra(group: &Arc<Group>, n: usize) -> Result<OrbitAlgebra> {
    if group.degree() != n {
        return Err(Error::InvalidArgument("group degree differs from the number of points".into()));
    }
    let perms: Arc<Vec<Perm>> = Arc::new(group.all_elements());
    let p = perms.clone();
    let pairs = GroupAction::new(group.clone(), n * n, move |g, s| p[g][s / n] as usize * n + p[g][s % n] as usize);
    let p = perms;
    let triples = GroupAction::new(group.clone(), n * n * n, move |g, s| {
        let (x, y, z) = (s / (n * n), s / n % n, s % n);
        (p[g][x] as usize * n + p[g][y] as usize) * n + p[g][z] as usize
    });
    let two = action_groupoid(&pairs);
    let three = action_groupoid(&triples);
    let sk = skeleton(&two.groupoid);

    let project = |f: &dyn Fn(usize) -> usize| -> Result<FunctorData> {
        let to_pairs = FunctorData::from_fn(three.groupoid.clone(), two.groupoid.clone(), f, |m| {
            let (g, s) = three.decode(m);
            two.morphism(g, f(s))
        })?;
        FunctorData::compose(&sk.retraction, &to_pairs)
    };
    let first = project(&|s| s / n)?;
    let second = project(&|s| s % (n * n))?;
    let outer = project(&|s| s / (n * n) * n + s % n)?;
    let both = product(&sk.groupoid, &sk.groupoid);
    let span = Span::new(outer, both.pair(&first, &second)?)?;
    let multiplication = matrix(&span);

    let r = sk.groupoid.object_count();
    let stabilizer_orders: Vec<usize> = (0..r).map(|c| sk.groupoid.group_of(c).order()).collect();
    let representatives: Vec<(usize, usize)> =
        sk.inclusion.object_map().iter().map(|&s: &ObjectId| (s / n, s % n)).collect();
    let structure_constants = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| {
                            let m = &multiplication.entries[k][both.object(i, j)];
                            m * &Rational::ratio(
                                stabilizer_orders[k] as u128,
                                (stabilizer_orders[i] * stabilizer_orders[j]) as u128,
                            )
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(OrbitAlgebra { representatives, stabilizer_orders, multiplication, structure_constants })
}

/// The Hecke algebra of `SL(3, q)` acting on the flags of `P²(F_q)`, with
/// basis labelled by relative position.
pub fn hecke_algebra(q: Element) -> Result<HeckeAlgebraData> {
    let x = flags(q)?;
    let group = Arc::new(Group::Perm(flag_group(&x)?));
    let data = orbit_algebra(&group, x.len())?;
    let basis = data.representatives.iter().map(|&(a, b)| RelativePosition::of(&x, a, b).label().to_string()).collect();
    Ok(HeckeAlgebraData {
        q,
        basis,
        representatives: data.representatives,
        stabilizer_orders: data.stabilizer_orders,
        structure_constants: data.structure_constants,
    })
}

/// Largest field order for the rank-one algebra.
pub const MAX_RANK_ONE_ORDER: Element = 7;

/// The Hecke algebra of `SL(2, q)` acting on the projective line, with
/// basis `1` (equal points) and `s` (distinct points).
pub fn rank_one_hecke_algebra(q: Element) -> Result<HeckeAlgebraData> {
    if q > MAX_RANK_ONE_ORDER {
        return Err(Error::CapExceeded {
            what: "field order for the rank-one Hecke algebra".into(),
            needed: q as u128,
            cap: MAX_RANK_ONE_ORDER as u128,
        });
    }
    let f = PrimeField::new(q)?;
    // Points [1 : a] for a ∈ F_q, then [0 : 1] last.
    let points: Vec<[Element; 2]> = f.elements().map(|a| [1, a]).chain(std::iter::once([0, 1])).collect();
    let point_of = |v: [Element; 2]| -> usize {
        if v[0] == 0 {
            q as usize
        } else {
            f.mul(v[1], f.inv(v[0])) as usize
        }
    };
    let mut perms: Vec<Perm> = Vec::new();
    for code in 0..(q as usize).pow(4) {
        let m = [0, 1, 2, 3].map(|i| (code / (q as usize).pow(i) % q as usize) as Element);
        if f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])) != 1 {
            continue;
        }
        let perm = points
            .iter()
            .map(|v| {
                let image = [f.add(f.mul(m[0], v[0]), f.mul(m[1], v[1])), f.add(f.mul(m[2], v[0]), f.mul(m[3], v[1]))];
                point_of(image) as u16
            })
            .collect();
        perms.push(perm);
    }
    perms.sort_unstable();
    perms.dedup();
    let group = Arc::new(Group::Perm(PermGroup::from_elements(points.len(), perms)?));
    let data = orbit_algebra(&group, points.len())?;
    let basis = data.representatives.iter().map(|&(a, b)| if a == b { "1" } else { "s" }.to_string()).collect();
    Ok(HeckeAlgebraData {
        q,
        basis,
        representatives: data.representatives,
        stabilizer_orders: data.stabilizer_orders,
        structure_constants: data.structure_constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_quadratic_relation() {
        for q in [2, 3, 5] {
            let h = rank_one_hecke_algebra(q).unwrap();
            assert_eq!(h.basis, vec!["1", "s"]);
            assert!(h.is_unit(0));
            assert!(h.satisfies_quadratic(1, 0));
            assert!(h.is_associative());
        }
    }
}
