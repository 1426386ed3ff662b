//! Standard constructions: discrete and one-object groupoids, coproducts,
//! products, full subgroupoids and skeleta.

use std::sync::Arc;

use super::finite::{FiniteGroupoid, MorphismId, MorphismParts, ObjectId};
use super::functor::{same, FunctorData, NaturalIso};
use crate::error::{Error, Result};
use crate::group::Group;

/// `n` objects, identities only.
pub fn discrete(n: usize) -> FiniteGroupoid {
    let trivial = Arc::new(Group::trivial());
    FiniteGroupoid::from_components(n, (0..n).map(|x| (vec![x], trivial.clone())).collect()).expect("discrete")
}

pub fn terminal() -> FiniteGroupoid {
    discrete(1)
}

/// The one-object groupoid `1//G`.
pub fn one_object(group: Arc<Group>) -> FiniteGroupoid {
    FiniteGroupoid::from_components(1, vec![(vec![0], group)]).expect("one object")
}

#[derive(Debug, Clone)]
pub struct Coproduct {
    pub groupoid: Arc<FiniteGroupoid>,
    pub left: FunctorData,
    pub right: FunctorData,
}

/// Disjoint union; the objects of `h` are shifted past those of `g`.
pub fn coproduct(g: &Arc<FiniteGroupoid>, h: &Arc<FiniteGroupoid>) -> Coproduct {
    let shift = g.object_count();
    let mut parts: Vec<(Vec<ObjectId>, Arc<Group>)> =
        g.components().iter().map(|c| (c.objects().to_vec(), c.group().clone())).collect();
    parts.extend(h.components().iter().map(|c| (c.objects().iter().map(|x| x + shift).collect(), c.group().clone())));
    let sum = Arc::new(FiniteGroupoid::from_components(shift + h.object_count(), parts).expect("coproduct"));
    let mshift = g.morphism_count();
    let left = FunctorData::from_fn(g.clone(), sum.clone(), |x| x, |m| m).expect("left injection");
    let right = FunctorData::from_fn(h.clone(), sum.clone(), |x| x + shift, |m| m + mshift).expect("right injection");
    Coproduct { groupoid: sum, left, right }
}

impl Coproduct {
    /// The functor out of the coproduct that restricts to `f` and `g`.
    pub fn copair(&self, f: &FunctorData, g: &FunctorData) -> Result<FunctorData> {
        if !same(f.source(), self.left.source()) || !same(g.source(), self.right.source()) {
            return Err(Error::BoundaryMismatch("copair: sources are not the summands".into()));
        }
        if !same(f.target(), g.target()) {
            return Err(Error::BoundaryMismatch("copair: targets differ".into()));
        }
        let cat = |a: &[usize], b: &[usize]| a.iter().chain(b).copied().collect::<Vec<_>>();
        let hom = f.hom_images().iter().chain(g.hom_images()).cloned().collect();
        FunctorData::new(
            self.groupoid.clone(),
            f.target().clone(),
            cat(f.object_map(), g.object_map()),
            cat(f.transport_images(), g.transport_images()),
            hom,
        )
    }
}

#[derive(Debug, Clone)]
pub struct Product {
    pub groupoid: Arc<FiniteGroupoid>,
    pub first: FunctorData,
    pub second: FunctorData,
    second_objects: usize,
    component_index: Vec<Vec<usize>>,
    factors: (Arc<FiniteGroupoid>, Arc<FiniteGroupoid>),
}

/// Cartesian product; object `(x, y)` has id `x·|Ob H| + y`.
pub fn product(g: &Arc<FiniteGroupoid>, h: &Arc<FiniteGroupoid>) -> Product {
    let nh = h.object_count();
    let mut parts = Vec::with_capacity(g.components().len() * h.components().len());
    for cg in g.components() {
        for ch in h.components() {
            let objects = cg.objects().iter().flat_map(|&x| ch.objects().iter().map(move |&y| x * nh + y)).collect();
            parts.push((objects, Arc::new(Group::Product(cg.group().clone(), ch.group().clone()))));
        }
    }
    let prod = Arc::new(FiniteGroupoid::from_components(g.object_count() * nh, parts).expect("product"));
    let component_index = g
        .components()
        .iter()
        .map(|cg| h.components().iter().map(|ch| prod.component_of(cg.base() * nh + ch.base())).collect())
        .collect();
    let split = |m: MorphismId| {
        let p = prod.decode(m);
        let base = prod.component(p.component).base();
        let (cg, ch) = (g.component_of(base / nh), h.component_of(base % nh));
        let (kh, oh) = (h.component(ch).objects().len(), h.component(ch).group().order());
        let first = MorphismParts { component: cg, from: p.from / kh, to: p.to / kh, element: p.element / oh };
        let second = MorphismParts { component: ch, from: p.from % kh, to: p.to % kh, element: p.element % oh };
        (g.encode(first), h.encode(second))
    };
    let first = FunctorData::from_fn(prod.clone(), g.clone(), |o| o / nh, |m| split(m).0).expect("first projection");
    let second = FunctorData::from_fn(prod.clone(), h.clone(), |o| o % nh, |m| split(m).1).expect("second projection");
    Product { groupoid: prod, first, second, second_objects: nh, component_index, factors: (g.clone(), h.clone()) }
}

impl Product {
    pub fn object(&self, x: ObjectId, y: ObjectId) -> ObjectId {
        x * self.second_objects + y
    }

    pub fn morphism(&self, a: MorphismId, b: MorphismId) -> MorphismId {
        let (g, h) = &self.factors;
        let (pa, pb) = (g.decode(a), h.decode(b));
        let kh = h.component(pb.component).objects().len();
        let oh = h.component(pb.component).group().order();
        self.groupoid.encode(MorphismParts {
            component: self.component_index[pa.component][pb.component],
            from: pa.from * kh + pb.from,
            to: pa.to * kh + pb.to,
            element: pa.element * oh + pb.element,
        })
    }

    /// The functor `z ↦ (f z, g z)`.
    pub fn pair(&self, f: &FunctorData, g: &FunctorData) -> Result<FunctorData> {
        if !same(f.source(), g.source()) {
            return Err(Error::BoundaryMismatch("pair: sources differ".into()));
        }
        if !same(f.target(), &self.factors.0) || !same(g.target(), &self.factors.1) {
            return Err(Error::BoundaryMismatch("pair: targets are not the factors".into()));
        }
        let objects = f.object_map().iter().zip(g.object_map()).map(|(&x, &y)| self.object(x, y)).collect();
        let transport =
            f.transport_images().iter().zip(g.transport_images()).map(|(&a, &b)| self.morphism(a, b)).collect();
        let hom = f
            .hom_images()
            .iter()
            .zip(g.hom_images())
            .map(|(ha, hb)| ha.iter().zip(hb).map(|(&a, &b)| self.morphism(a, b)).collect())
            .collect();
        FunctorData::new(f.source().clone(), self.groupoid.clone(), objects, transport, hom)
    }
}

#[derive(Debug, Clone)]
pub struct Subgroupoid {
    pub groupoid: Arc<FiniteGroupoid>,
    pub inclusion: FunctorData,
    /// Original id of each object of the subgroupoid.
    pub objects: Vec<ObjectId>,
}

/// The full subgroupoid on `objects` (deduplicated, renumbered in ascending order).
pub fn full_subgroupoid(g: &Arc<FiniteGroupoid>, objects: &[ObjectId]) -> Result<Subgroupoid> {
    let mut objects = objects.to_vec();
    objects.sort_unstable();
    objects.dedup();
    for &x in &objects {
        g.check_object(x)?;
    }
    let mut new_id = vec![usize::MAX; g.object_count()];
    for (i, &x) in objects.iter().enumerate() {
        new_id[x] = i;
    }
    let mut by_component: Vec<Vec<ObjectId>> = vec![Vec::new(); g.components().len()];
    for &x in &objects {
        by_component[g.component_of(x)].push(x);
    }
    let parts: Vec<(Vec<ObjectId>, Arc<Group>)> = by_component
        .iter()
        .enumerate()
        .filter(|(_, xs)| !xs.is_empty())
        .map(|(c, xs)| (xs.iter().map(|&x| new_id[x]).collect(), g.component(c).group().clone()))
        .collect();
    let sub = Arc::new(FiniteGroupoid::from_components(objects.len(), parts)?);
    let object_map: Vec<ObjectId> = objects.clone();
    let transport = sub
        .objects()
        .map(|x| {
            let base = sub.component(sub.component_of(x)).base();
            g.hom(objects[base], objects[x]).start
        })
        .collect();
    let hom = sub
        .components()
        .iter()
        .map(|comp| {
            let ob = objects[comp.base()];
            g.hom(ob, ob).collect()
        })
        .collect();
    let inclusion = FunctorData::new(sub.clone(), g.clone(), object_map, transport, hom)?;
    Ok(Subgroupoid { groupoid: sub, inclusion, objects })
}

#[derive(Debug, Clone)]
pub struct Skeleton {
    pub groupoid: Arc<FiniteGroupoid>,
    pub inclusion: FunctorData,
    pub retraction: FunctorData,
    /// `retraction ∘ inclusion ⇒ 1`.
    pub unit: NaturalIso,
    /// `inclusion ∘ retraction ⇒ 1`.
    pub counit: NaturalIso,
}

/// The full subgroupoid on class representatives, with equivalence data.
pub fn skeleton(g: &Arc<FiniteGroupoid>) -> Skeleton {
    let reps = g.class_representatives();
    let sub = full_subgroupoid(g, &reps).expect("representatives exist");
    let skel = sub.groupoid;
    let inclusion = sub.inclusion;
    let retraction = FunctorData::new(
        g.clone(),
        skel.clone(),
        g.objects().map(|x| g.component_of(x)).collect(),
        g.objects().map(|x| skel.identity(g.component_of(x))).collect(),
        g.components()
            .iter()
            .enumerate()
            .map(|(c, comp)| (0..comp.group().order()).map(|e| skel.base_automorphism(c, e)).collect())
            .collect(),
    )
    .expect("retraction");
    let ri = FunctorData::compose(&retraction, &inclusion).expect("composable");
    let ir = FunctorData::compose(&inclusion, &retraction).expect("composable");
    let unit = NaturalIso {
        components: skel.objects().map(|x| skel.identity(x)).collect(),
        from: ri,
        to: FunctorData::identity(&skel),
    };
    let counit = NaturalIso {
        components: g.objects().map(|x| g.transport(x)).collect(),
        from: ir,
        to: FunctorData::identity(g),
    };
    Skeleton { groupoid: skel, inclusion, retraction, unit, counit }
}
