//! Finite groupoids in connected-component form.
//!
//! A finite groupoid is equivalent to a disjoint union of groups, and every
//! connected component is determined by its object list and the automorphism
//! group of its base object (the least object id). Fixing a morphism
//! `τ_x : base → x` for every object, each morphism `x_i → x_j` is written
//! uniquely as `τ_j ∘ g ∘ τ_i⁻¹` with `g ∈ Aut(base)`. Morphism ids enumerate
//! these triples, so composition, identities and inverses are computed
//! rather than stored. This keeps `E` at `N = 10` (over four million
//! morphisms) and the triple-flag action groupoid cheap to hold.

use std::ops::Range;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::rational::Rational;

pub type ObjectId = usize;
pub type MorphismId = usize;

#[derive(Debug, Clone)]
pub struct Component {
    objects: Vec<ObjectId>,
    group: Arc<Group>,
}

impl Component {
    pub fn objects(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn base(&self) -> ObjectId {
        self.objects[0]
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn morphism_count(&self) -> usize {
        self.objects.len() * self.objects.len() * self.group.order()
    }
}

/// A morphism `τ_to ∘ element ∘ τ_from⁻¹` inside `component`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MorphismParts {
    pub component: usize,
    pub from: usize,
    pub to: usize,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { ok: violations.is_empty(), violations }
    }

    pub fn push(&mut self, axiom: &str, witness: Vec<usize>) {
        self.violations.push(Violation { axiom: axiom.to_string(), witness });
        self.ok = false;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.push(&v.axiom, v.witness);
        }
    }
}

impl Default for ValidationReport {
    fn default() -> Self {
        ValidationReport { ok: true, violations: vec![] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoClasses {
    pub classes: Vec<Vec<ObjectId>>,
    /// Least object id in the class of each object.
    pub representative: Vec<ObjectId>,
}

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    components: Vec<Component>,
    locate: Vec<(u32, u32)>,
    offsets: Vec<usize>,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.components.len() == other.components.len()
            && self.locate.len() == other.locate.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.objects == b.objects && (Arc::ptr_eq(&a.group, &b.group) || a.group == b.group))
    }
}

impl Eq for FiniteGroupoid {}

impl FiniteGroupoid {
    /// Builds a groupoid on objects `0..object_count` from a partition into
    /// components, each with the automorphism group of its least object.
    pub fn from_components(object_count: usize, parts: Vec<(Vec<ObjectId>, Arc<Group>)>) -> Result<Self> {
        let mut seen = vec![false; object_count];
        let mut components = Vec::with_capacity(parts.len());
        for (mut objects, group) in parts {
            if objects.is_empty() {
                return Err(Error::Structural("empty component".into()));
            }
            objects.sort_unstable();
            for &x in &objects {
                if x >= object_count {
                    return Err(Error::UnknownObject(x));
                }
                if seen[x] {
                    return Err(Error::Structural(format!("object {x} lies in two components")));
                }
                seen[x] = true;
            }
            components.push(Component { objects, group });
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::Structural(format!("object {x} lies in no component")));
        }
        components.sort_by_key(|c| c.base());
        Ok(Self::assemble(object_count, components))
    }

    fn assemble(object_count: usize, components: Vec<Component>) -> Self {
        let mut locate = vec![(0u32, 0u32); object_count];
        let mut offsets = Vec::with_capacity(components.len() + 1);
        let mut total = 0usize;
        for (c, comp) in components.iter().enumerate() {
            offsets.push(total);
            total += comp.morphism_count();
            for (i, &x) in comp.objects.iter().enumerate() {
                locate[x] = (c as u32, i as u32);
            }
        }
        offsets.push(total);
        FiniteGroupoid { components, locate, offsets }
    }

    pub fn empty() -> Self {
        Self::assemble(0, vec![])
    }

    pub fn object_count(&self) -> usize {
        self.locate.len()
    }

    pub fn morphism_count(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &Component {
        &self.components[c]
    }

    pub fn contains_object(&self, x: ObjectId) -> bool {
        x < self.object_count()
    }

    pub fn check_object(&self, x: ObjectId) -> Result<()> {
        if self.contains_object(x) {
            Ok(())
        } else {
            Err(Error::UnknownObject(x))
        }
    }

    pub fn component_of(&self, x: ObjectId) -> usize {
        self.locate[x].0 as usize
    }

    pub fn position_of(&self, x: ObjectId) -> usize {
        self.locate[x].1 as usize
    }

    pub fn group_of(&self, x: ObjectId) -> &Arc<Group> {
        &self.components[self.component_of(x)].group
    }

    pub fn is_skeletal(&self) -> bool {
        self.components.iter().all(|c| c.objects.len() == 1)
    }

    pub fn is_discrete(&self) -> bool {
        self.is_skeletal() && self.components.iter().all(|c| c.group.order() == 1)
    }

    pub fn encode(&self, p: MorphismParts) -> MorphismId {
        let comp = &self.components[p.component];
        let k = comp.objects.len();
        self.offsets[p.component] + (p.from * k + p.to) * comp.group.order() + p.element
    }

    pub fn decode(&self, m: MorphismId) -> MorphismParts {
        assert!(m < self.morphism_count(), "morphism id {m} out of range");
        let c = self.offsets.partition_point(|&o| o <= m) - 1;
        let comp = &self.components[c];
        let order = comp.group.order();
        let k = comp.objects.len();
        let r = m - self.offsets[c];
        let pair = r / order;
        MorphismParts { component: c, from: pair / k, to: pair % k, element: r % order }
    }

    pub fn try_decode(&self, m: MorphismId) -> Result<MorphismParts> {
        if m < self.morphism_count() {
            Ok(self.decode(m))
        } else {
            Err(Error::UnknownMorphism(m))
        }
    }

    pub fn source(&self, m: MorphismId) -> ObjectId {
        let p = self.decode(m);
        self.components[p.component].objects[p.from]
    }

    pub fn target(&self, m: MorphismId) -> ObjectId {
        let p = self.decode(m);
        self.components[p.component].objects[p.to]
    }

    pub fn identity(&self, x: ObjectId) -> MorphismId {
        let (c, i) = (self.component_of(x), self.position_of(x));
        self.encode(MorphismParts { component: c, from: i, to: i, element: 0 })
    }

    /// `g ∘ f`, or `None` when `target(f) != source(g)`.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        let (pg, pf) = (self.decode(g), self.decode(f));
        if pg.component != pf.component || pg.from != pf.to {
            return None;
        }
        let group = &self.components[pf.component].group;
        Some(self.encode(MorphismParts {
            component: pf.component,
            from: pf.from,
            to: pg.to,
            element: group.mul(pg.element, pf.element),
        }))
    }

    /// Composes a chain given in application order reversed: `chain[0] ∘ chain[1] ∘ …`.
    pub fn compose_all(&self, chain: &[MorphismId]) -> Option<MorphismId> {
        let (&last, rest) = chain.split_last()?;
        rest.iter().rev().try_fold(last, |acc, &g| self.compose(g, acc))
    }

    pub fn inverse(&self, m: MorphismId) -> MorphismId {
        let p = self.decode(m);
        let group = &self.components[p.component].group;
        self.encode(MorphismParts { component: p.component, from: p.to, to: p.from, element: group.inv(p.element) })
    }

    /// The chosen morphism `base → x` of the component of `x`.
    pub fn transport(&self, x: ObjectId) -> MorphismId {
        let (c, i) = (self.component_of(x), self.position_of(x));
        self.encode(MorphismParts { component: c, from: 0, to: i, element: 0 })
    }

    /// The automorphism of the base of component `c` given by group element `g`.
    pub fn base_automorphism(&self, c: usize, g: usize) -> MorphismId {
        self.encode(MorphismParts { component: c, from: 0, to: 0, element: g })
    }

    /// All morphisms `x → y`, a contiguous id range (empty across components).
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> Range<MorphismId> {
        let (cx, cy) = (self.component_of(x), self.component_of(y));
        if cx != cy {
            return 0..0;
        }
        let order = self.components[cx].group.order();
        let start = self.encode(MorphismParts {
            component: cx,
            from: self.position_of(x),
            to: self.position_of(y),
            element: 0,
        });
        start..start + order
    }

    pub fn aut_order(&self, x: ObjectId) -> Result<usize> {
        self.check_object(x)?;
        Ok(self.group_of(x).order())
    }

    pub fn isomorphic(&self, x: ObjectId, y: ObjectId) -> bool {
        self.component_of(x) == self.component_of(y)
    }

    pub fn iso_classes(&self) -> IsoClasses {
        let classes: Vec<Vec<ObjectId>> = self.components.iter().map(|c| c.objects.clone()).collect();
        let representative = (0..self.object_count()).map(|x| self.components[self.component_of(x)].base()).collect();
        IsoClasses { classes, representative }
    }

    /// Least object of every isomorphism class, ascending.
    pub fn class_representatives(&self) -> Vec<ObjectId> {
        self.components.iter().map(|c| c.base()).collect()
    }

    /// `Σ 1/|Aut(x)|` over isomorphism classes.
    pub fn cardinality(&self) -> Rational {
        self.components.iter().map(|c| Rational::recip_of(c.group.order() as u128)).sum()
    }

    /// `Σ 1/|Mor(x, −)|` over all objects, counting morphisms by their source.
    pub fn cardinality_by_sources(&self) -> Rational {
        let mut out_degree = vec![0u128; self.object_count()];
        for m in 0..self.morphism_count() {
            out_degree[self.source(m)] += 1;
        }
        out_degree.into_iter().map(Rational::recip_of).sum()
    }

    /// Exhaustive check of the groupoid axioms through the computed operations.
    /// Cost grows with the cube of the morphism count per component.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.morphism_count();
        for x in 0..self.object_count() {
            let id = self.identity(x);
            if self.source(id) != x || self.target(id) != x {
                report.push("identity endpoints", vec![x, id]);
            }
        }
        for f in 0..n {
            let (s, t) = (self.source(f), self.target(f));
            if self.compose(f, self.identity(s)) != Some(f) || self.compose(self.identity(t), f) != Some(f) {
                report.push("identity is a unit", vec![f]);
            }
            let inv = self.inverse(f);
            if self.compose(inv, f) != Some(self.identity(s)) || self.compose(f, inv) != Some(self.identity(t)) {
                report.push("inverse", vec![f, inv]);
            }
            for g in self.hom_from(t) {
                let gf = match self.compose(g, f) {
                    Some(gf) => gf,
                    None => {
                        report.push("composition defined", vec![g, f]);
                        continue;
                    }
                };
                if self.source(gf) != s || self.target(gf) != self.target(g) {
                    report.push("composition endpoints", vec![g, f, gf]);
                }
                for h in self.hom_from(self.target(g)) {
                    let lhs = self.compose(h, gf);
                    let rhs = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    if lhs != rhs {
                        report.push("associativity", vec![h, g, f]);
                    }
                }
            }
        }
        report
    }

    /// All morphisms with source `x`.
    pub fn hom_from(&self, x: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        let c = self.component_of(x);
        self.components[c].objects.iter().flat_map(move |&y| self.hom(x, y))
    }

    pub fn objects(&self) -> Range<ObjectId> {
        0..self.object_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn sample() -> FiniteGroupoid {
        let z2 = Arc::new(cyclic(2));
        let s3 = Arc::new(Group::Symmetric(3));
        FiniteGroupoid::from_components(5, vec![(vec![3, 1], z2), (vec![0, 4, 2], s3)]).unwrap()
    }

    #[test]
    fn layout_is_sorted_by_base() {
        let g = sample();
        assert_eq!(g.class_representatives(), vec![0, 1]);
        assert_eq!(g.component(1).objects(), &[1, 3]);
        assert_eq!(g.morphism_count(), 9 * 6 + 4 * 2);
        assert_eq!(g.iso_classes().representative, vec![0, 1, 0, 1, 0]);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let g = sample();
        for m in 0..g.morphism_count() {
            assert_eq!(g.encode(g.decode(m)), m);
        }
    }

    #[test]
    fn axioms_hold() {
        let g = sample();
        assert!(g.validate().ok);
        assert_eq!(g.cardinality(), Rational::new(1, 6) + Rational::new(1, 2));
        assert_eq!(g.cardinality(), g.cardinality_by_sources());
    }

    #[test]
    fn hom_ranges() {
        let g = sample();
        for x in g.objects() {
            for y in g.objects() {
                for m in g.hom(x, y) {
                    assert_eq!((g.source(m), g.target(m)), (x, y));
                }
                assert_eq!(g.hom(x, y).len(), if g.isomorphic(x, y) { g.aut_order(x).unwrap() } else { 0 });
            }
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        let t = Arc::new(Group::trivial());
        assert!(FiniteGroupoid::from_components(2, vec![(vec![0], t.clone())]).is_err());
        assert!(FiniteGroupoid::from_components(1, vec![(vec![0], t.clone()), (vec![0], t.clone())]).is_err());
        assert!(FiniteGroupoid::from_components(1, vec![(vec![1], t)]).is_err());
    }
}
