//! Functors and natural isomorphisms between finite groupoids.
//!
//! A functor out of a component-form groupoid is determined by where it
//! sends each object, the images of the transport morphisms `τ_x`, and a
//! homomorphism on each base automorphism group. Every other morphism image
//! follows from `F(τ_j g τ_i⁻¹) = F(τ_j) F(g) F(τ_i)⁻¹`.

use std::sync::Arc;

use serde::Serialize;

use super::construct::terminal;
use super::finite::{FiniteGroupoid, MorphismId, ObjectId, ValidationReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FunctorData {
    source: Arc<FiniteGroupoid>,
    target: Arc<FiniteGroupoid>,
    object_map: Vec<ObjectId>,
    transport: Vec<MorphismId>,
    hom: Vec<Vec<MorphismId>>,
}

impl PartialEq for FunctorData {
    fn eq(&self, other: &Self) -> bool {
        same(&self.source, &other.source)
            && same(&self.target, &other.target)
            && self.object_map == other.object_map
            && self.transport == other.transport
            && self.hom == other.hom
    }
}

impl Eq for FunctorData {}

pub(crate) fn same(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FunctorData {
    /// Assembles a functor from its defining data, checking that every
    /// morphism image has the right endpoints.
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        object_map: Vec<ObjectId>,
        transport: Vec<MorphismId>,
        hom: Vec<Vec<MorphismId>>,
    ) -> Result<Self> {
        if object_map.len() != source.object_count() || transport.len() != source.object_count() {
            return Err(Error::Structural("functor tables do not cover the source objects".into()));
        }
        if hom.len() != source.components().len()
            || hom.iter().zip(source.components()).any(|(h, c)| h.len() != c.group().order())
        {
            return Err(Error::Structural("functor hom tables do not match the source groups".into()));
        }
        for &y in &object_map {
            target.check_object(y)?;
        }
        let n = target.morphism_count();
        for &m in transport.iter().chain(hom.iter().flatten()) {
            if m >= n {
                return Err(Error::UnknownMorphism(m));
            }
        }
        for (c, comp) in source.components().iter().enumerate() {
            let fb = object_map[comp.base()];
            for &x in comp.objects() {
                let t = transport[x];
                if target.source(t) != fb || target.target(t) != object_map[x] {
                    return Err(Error::Structural(format!("image of the transport to object {x} has wrong endpoints")));
                }
            }
            if transport[comp.base()] != target.identity(fb) {
                return Err(Error::Structural("identity not preserved at a base object".into()));
            }
            for &m in &hom[c] {
                if target.source(m) != fb || target.target(m) != fb {
                    return Err(Error::Structural("automorphism image is not an automorphism".into()));
                }
            }
        }
        Ok(FunctorData { source, target, object_map, transport, hom })
    }

    /// Builds a functor by evaluating callbacks on the generating morphisms.
    pub fn from_fn(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        object: impl Fn(ObjectId) -> ObjectId,
        morphism: impl Fn(MorphismId) -> MorphismId,
    ) -> Result<Self> {
        let object_map = source.objects().map(&object).collect();
        let transport = source.objects().map(|x| morphism(source.transport(x))).collect();
        let hom = (0..source.components().len())
            .map(|c| {
                (0..source.component(c).group().order()).map(|g| morphism(source.base_automorphism(c, g))).collect()
            })
            .collect();
        Self::new(source, target, object_map, transport, hom)
    }

    pub fn identity(x: &Arc<FiniteGroupoid>) -> Self {
        Self::from_fn(x.clone(), x.clone(), |o| o, |m| m).expect("identity functor")
    }

    /// The unique functor to the terminal groupoid.
    pub fn to_terminal(x: &Arc<FiniteGroupoid>) -> Self {
        Self::constant(x, &Arc::new(terminal()), 0)
    }

    /// Sends every object to `y` and every morphism to its identity.
    pub fn constant(x: &Arc<FiniteGroupoid>, target: &Arc<FiniteGroupoid>, y: ObjectId) -> Self {
        let id = target.identity(y);
        Self::from_fn(x.clone(), target.clone(), |_| y, |_| id).expect("constant functor")
    }

    /// `g ∘ f`.
    pub fn compose(g: &FunctorData, f: &FunctorData) -> Result<Self> {
        if !same(&f.target, &g.source) {
            return Err(Error::BoundaryMismatch("functor composition: target and source differ".into()));
        }
        let object_map = f.object_map.iter().map(|&y| g.map_object(y)).collect();
        let transport = f.transport.iter().map(|&m| g.map_morphism(m)).collect();
        let hom = f.hom.iter().map(|h| h.iter().map(|&m| g.map_morphism(m)).collect()).collect();
        Ok(FunctorData { source: f.source.clone(), target: g.target.clone(), object_map, transport, hom })
    }

    pub fn source(&self) -> &Arc<FiniteGroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroupoid> {
        &self.target
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.object_map
    }

    pub fn transport_images(&self) -> &[MorphismId] {
        &self.transport
    }

    pub fn hom_images(&self) -> &[Vec<MorphismId>] {
        &self.hom
    }

    pub fn map_object(&self, x: ObjectId) -> ObjectId {
        self.object_map[x]
    }

    pub fn map_morphism(&self, m: MorphismId) -> MorphismId {
        let p = self.source.decode(m);
        let comp = self.source.component(p.component);
        let (x, y) = (comp.objects()[p.from], comp.objects()[p.to]);
        let t = &self.target;
        let inner = t.compose(self.hom[p.component][p.element], t.inverse(self.transport[x])).expect("typed");
        t.compose(self.transport[y], inner).expect("typed")
    }

    /// Complete functoriality check: the hom tables are homomorphisms.
    ///
    /// Given the endpoint typing enforced on construction, this is equivalent
    /// to preserving every composite; it tests each generator against every
    /// group element.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let t = &self.target;
        for (c, comp) in self.source.components().iter().enumerate() {
            let g = comp.group();
            let fb = self.object_map[comp.base()];
            if self.hom[c][0] != t.identity(fb) {
                report.push("preserves identities", vec![c]);
            }
            for s in g.generators() {
                for x in 0..g.order() {
                    let lhs = self.hom[c][g.mul(s, x)];
                    let rhs = t.compose(self.hom[c][s], self.hom[c][x]);
                    if Some(lhs) != rhs {
                        report.push("preserves composition", vec![c, s, x]);
                    }
                }
            }
        }
        report
    }

    /// Literal check over every composable pair of source morphisms.
    pub fn validate_exhaustive(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let (s, t) = (&self.source, &self.target);
        for x in s.objects() {
            if self.map_morphism(s.identity(x)) != t.identity(self.map_object(x)) {
                report.push("preserves identities", vec![x]);
            }
        }
        for f in 0..s.morphism_count() {
            let ff = self.map_morphism(f);
            if t.source(ff) != self.map_object(s.source(f)) || t.target(ff) != self.map_object(s.target(f)) {
                report.push("preserves source and target", vec![f]);
            }
            for g in s.hom_from(s.target(f)) {
                let gf = s.compose(g, f).expect("composable");
                if Some(self.map_morphism(gf)) != t.compose(self.map_morphism(g), ff) {
                    report.push("preserves composition", vec![g, f]);
                }
            }
        }
        report
    }
}

/// A natural isomorphism `from ⇒ to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalIso {
    pub from: FunctorData,
    pub to: FunctorData,
    pub components: Vec<MorphismId>,
}

impl NaturalIso {
    pub fn identity(f: &FunctorData) -> Self {
        let components = f.source.objects().map(|x| f.target.identity(f.map_object(x))).collect();
        NaturalIso { from: f.clone(), to: f.clone(), components }
    }

    /// Checks typing of every component and every naturality square.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let (f, g) = (&self.from, &self.to);
        if !same(&f.source, &g.source) || !same(&f.target, &g.target) {
            report.push("functors share source and target", vec![]);
            return report;
        }
        let (s, t) = (&f.source, &f.target);
        if self.components.len() != s.object_count() {
            report.push("one component per object", vec![self.components.len()]);
            return report;
        }
        for x in s.objects() {
            let c = self.components[x];
            if c >= t.morphism_count() || t.source(c) != f.map_object(x) || t.target(c) != g.map_object(x) {
                report.push("component typed F(x) → G(x)", vec![x]);
                return report;
            }
        }
        for m in 0..s.morphism_count() {
            let (x, y) = (s.source(m), s.target(m));
            let lhs = t.compose(g.map_morphism(m), self.components[x]);
            let rhs = t.compose(self.components[y], f.map_morphism(m));
            if lhs != rhs {
                report.push("naturality square", vec![m]);
            }
        }
        report
    }

    pub fn inverse(&self) -> Self {
        let t = &self.from.target;
        NaturalIso {
            from: self.to.clone(),
            to: self.from.clone(),
            components: self.components.iter().map(|&c| t.inverse(c)).collect(),
        }
    }

    /// Vertical composite `after ∘ self`.
    pub fn then(&self, after: &NaturalIso) -> Result<Self> {
        if self.to != after.from {
            return Err(Error::BoundaryMismatch("natural isomorphisms do not compose".into()));
        }
        let t = &self.from.target;
        let components =
            self.components.iter().zip(&after.components).map(|(&a, &b)| t.compose(b, a).expect("typed")).collect();
        Ok(NaturalIso { from: self.from.clone(), to: after.to.clone(), components })
    }

    /// Left whiskering `k · self`: components `k(η_x)`.
    pub fn whisker_left(&self, k: &FunctorData) -> Result<Self> {
        Ok(NaturalIso {
            from: FunctorData::compose(k, &self.from)?,
            to: FunctorData::compose(k, &self.to)?,
            components: self.components.iter().map(|&c| k.map_morphism(c)).collect(),
        })
    }

    /// Right whiskering `self · f`: components `η_{f(x)}`.
    pub fn whisker_right(&self, f: &FunctorData) -> Result<Self> {
        Ok(NaturalIso {
            from: FunctorData::compose(&self.from, f)?,
            to: FunctorData::compose(&self.to, f)?,
            components: f.object_map.iter().map(|&y| self.components[y]).collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub functor_ok: bool,
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.functor_ok && self.faithful && self.full && self.essentially_surjective
    }
}

/// Decides whether `f` is an equivalence.
///
/// Within one component every hom-set is a translate of the base
/// automorphism group, so faithfulness and fullness are decided on the base
/// hom-sets: each must map bijectively onto the automorphisms of its image,
/// and no two components may land in the same target component (otherwise
/// an empty hom-set maps to a nonempty one).
pub fn check_equivalence(f: &FunctorData) -> EquivalenceReport {
    let (s, t) = (&f.source, &f.target);
    let functor_ok = f.validate().ok;
    let mut faithful = true;
    let mut full = true;
    let mut hit = vec![false; t.components().len()];
    for (c, comp) in s.components().iter().enumerate() {
        let fb = f.map_object(comp.base());
        let tc = t.component_of(fb);
        if hit[tc] {
            full = false;
        }
        hit[tc] = true;
        let mut images: Vec<MorphismId> = f.hom[c].clone();
        images.sort_unstable();
        images.dedup();
        if images.len() != comp.group().order() {
            faithful = false;
        }
        if images.len() != t.hom(fb, fb).len() {
            full = false;
        }
    }
    EquivalenceReport { functor_ok, faithful, full, essentially_surjective: hit.iter().all(|&h| h) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, Group};

    fn two_class() -> Arc<FiniteGroupoid> {
        Arc::new(
            FiniteGroupoid::from_components(
                3,
                vec![(vec![0, 2], Arc::new(cyclic(2))), (vec![1], Arc::new(Group::Symmetric(3)))],
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_is_equivalence() {
        let g = two_class();
        let id = FunctorData::identity(&g);
        assert!(id.validate_exhaustive().ok);
        assert!(check_equivalence(&id).is_equivalence());
        assert!(NaturalIso::identity(&id).validate().ok);
    }

    #[test]
    fn constant_misses_a_class() {
        let g = two_class();
        let c = FunctorData::constant(&g, &g, 1);
        assert!(c.validate_exhaustive().ok);
        let r = check_equivalence(&c);
        assert!(!r.essentially_surjective);
        assert!(!r.is_equivalence());
    }

    #[test]
    fn map_matches_exhaustive_functoriality() {
        let g = two_class();
        let t = FunctorData::to_terminal(&g);
        assert!(t.validate().ok);
        assert!(t.validate_exhaustive().ok);
        assert!(!check_equivalence(&t).faithful);
    }

    #[test]
    fn broken_hom_is_reported() {
        let g = two_class();
        let id = FunctorData::identity(&g);
        let mut hom = id.hom_images().to_vec();
        hom[1].swap(1, 2);
        let bad = FunctorData::new(g.clone(), g.clone(), id.object_map().to_vec(), id.transport_images().to_vec(), hom)
            .unwrap();
        assert!(!bad.validate().ok);
        assert!(!bad.validate_exhaustive().ok);
    }
}
