//! The projective plane over a prime field and its flags.

use std::collections::HashMap;

use serde::Serialize;

use super::field::{Element, PrimeField};
use crate::error::{Error, Result};
use crate::groupoid::ValidationReport;

/// Largest field order accepted for plane and flag constructions.
pub const MAX_PLANE_ORDER: Element = 7;

pub type Vector3 = [Element; 3];

/// Points and lines of `P²(F_q)`. Both are stored as vectors whose first
/// nonzero coordinate is 1; a point `v` lies on a line `ℓ` when `ℓ·v = 0`.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    field: PrimeField,
    points: Vec<Vector3>,
    lines: Vec<Vector3>,
    point_index: HashMap<Vector3, usize>,
    line_index: HashMap<Vector3, usize>,
    points_on: Vec<Vec<usize>>,
    lines_through: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    pub fn new(q: Element) -> Result<Self> {
        if q > MAX_PLANE_ORDER {
            return Err(Error::CapExceeded {
                what: "field order for projective planes".into(),
                needed: q as u128,
                cap: MAX_PLANE_ORDER as u128,
            });
        }
        let field = PrimeField::new(q)?;
        let mut vectors = Vec::new();
        for a in field.elements() {
            for b in field.elements() {
                for c in field.elements() {
                    let v = [a, b, c];
                    if v.iter().find(|&&x| x != 0) == Some(&1) {
                        vectors.push(v);
                    }
                }
            }
        }
        let index: HashMap<Vector3, usize> = vectors.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = vectors.len();
        let mut points_on = vec![Vec::new(); n];
        let mut lines_through = vec![Vec::new(); n];
        for (l, line) in vectors.iter().enumerate() {
            for (p, point) in vectors.iter().enumerate() {
                if dot(&field, line, point) == 0 {
                    points_on[l].push(p);
                    lines_through[p].push(l);
                }
            }
        }
        Ok(ProjectivePlane {
            field,
            points: vectors.clone(),
            lines: vectors,
            point_index: index.clone(),
            line_index: index,
            points_on,
            lines_through,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> Element {
        self.field.order()
    }

    pub fn points(&self) -> &[Vector3] {
        &self.points
    }

    pub fn lines(&self) -> &[Vector3] {
        &self.lines
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Scales a nonzero vector so that its first nonzero coordinate is 1.
    pub fn normalize(&self, v: Vector3) -> Option<Vector3> {
        let lead = *v.iter().find(|&&x| x % self.order() != 0)?;
        let s = self.field.inv(lead);
        Some(v.map(|x| self.field.mul(x, s)))
    }

    pub fn point_of(&self, v: Vector3) -> Option<usize> {
        self.normalize(v).map(|n| self.point_index[&n])
    }

    pub fn line_of(&self, v: Vector3) -> Option<usize> {
        self.normalize(v).map(|n| self.line_index[&n])
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        dot(&self.field, &self.lines[l], &self.points[p]) == 0
    }

    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.points_on[l]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    /// The line through two distinct points.
    pub fn join(&self, p: usize, r: usize) -> Option<usize> {
        self.line_of(cross(&self.field, &self.points[p], &self.points[r]))
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, l: usize, m: usize) -> Option<usize> {
        self.point_of(cross(&self.field, &self.lines[l], &self.lines[m]))
    }

    /// Counts and incidence axioms: `q² + q + 1` points and lines, `q + 1`
    /// points on every line and lines through every point, a unique line
    /// through two distinct points and a unique point on two distinct lines.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let q = self.order() as usize;
        let expected = q * q + q + 1;
        if self.points.len() != expected || self.lines.len() != expected {
            report.push("q² + q + 1 points and lines", vec![self.points.len(), self.lines.len()]);
        }
        for l in 0..self.lines.len() {
            if self.points_on[l].len() != q + 1 {
                report.push("q + 1 points on each line", vec![l]);
            }
        }
        for p in 0..self.points.len() {
            if self.lines_through[p].len() != q + 1 {
                report.push("q + 1 lines through each point", vec![p]);
            }
        }
        for a in 0..self.points.len() {
            for b in a + 1..self.points.len() {
                let common = self.lines_through[a].iter().filter(|l| self.lines_through[b].contains(l)).count();
                if common != 1 || self.join(a, b).map_or(true, |l| !self.incident(a, l) || !self.incident(b, l)) {
                    report.push("unique line through two points", vec![a, b]);
                }
            }
        }
        for l in 0..self.lines.len() {
            for m in l + 1..self.lines.len() {
                let common = self.points_on[l].iter().filter(|p| self.points_on[m].contains(p)).count();
                if common != 1 || self.meet(l, m).map_or(true, |p| !self.incident(p, l) || !self.incident(p, m)) {
                    report.push("unique point on two lines", vec![l, m]);
                }
            }
        }
        report
    }
}

pub(crate) fn dot(f: &PrimeField, a: &Vector3, b: &Vector3) -> Element {
    (0..3).fold(0, |acc, i| f.add(acc, f.mul(a[i], b[i])))
}

pub(crate) fn cross(f: &PrimeField, a: &Vector3, b: &Vector3) -> Vector3 {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

/// A point together with a line through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Flag {
    pub point: usize,
    pub line: usize,
}

/// The set `X` of flags of a projective plane, in lexicographic order.
#[derive(Debug, Clone)]
pub struct FlagVariety {
    pub plane: ProjectivePlane,
    flags: Vec<Flag>,
    index: HashMap<Flag, usize>,
}

impl FlagVariety {
    pub fn new(plane: ProjectivePlane) -> Self {
        let mut flags: Vec<Flag> = (0..plane.point_count())
            .flat_map(|p| plane.lines_through(p).iter().map(move |&l| Flag { point: p, line: l }))
            .collect();
        flags.sort_unstable();
        let index = flags.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        FlagVariety { plane, flags, index }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag(&self, i: usize) -> Flag {
        self.flags[i]
    }

    pub fn index_of(&self, f: Flag) -> Option<usize> {
        self.index.get(&f).copied()
    }
}

/// The flags of `P²(F_q)`.
pub fn flags(q: Element) -> Result<FlagVariety> {
    Ok(FlagVariety::new(ProjectivePlane::new(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane() {
        let plane = ProjectivePlane::new(2).unwrap();
        assert_eq!(plane.point_count(), 7);
        assert!(plane.validate().ok);
        assert_eq!(FlagVariety::new(plane).len(), 21);
    }

    #[test]
    fn larger_planes_satisfy_axioms() {
        for q in [3, 5] {
            let plane = ProjectivePlane::new(q).unwrap();
            assert!(plane.validate().ok);
        }
        assert_eq!(flags(3).unwrap().len(), 52);
        assert!(ProjectivePlane::new(4).is_err());
        assert!(ProjectivePlane::new(11).is_err());
    }
}
