//! Seeded generators of small groups, groupoids, functors and spans, and
//! constructions of equivalent data with explicit witnesses.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::{cyclic, Group};
use crate::groupoid::{FiniteGroupoid, FunctorData, GroupAction, MorphismId, MorphismParts, NaturalIso, ObjectId};
use crate::span::{GroupoidOver, Span, SpanEquivalence, SpanMap};

/// A random group of order at most `max_order` (at least the trivial group).
pub fn random_group(rng: &mut impl Rng, max_order: usize) -> Arc<Group> {
    let candidates: Vec<fn() -> Group> = vec![
        Group::trivial,
        || cyclic(2),
        || cyclic(3),
        || cyclic(4),
        || Group::Product(Arc::new(cyclic(2)), Arc::new(cyclic(2))),
        || Group::Symmetric(3),
    ];
    let fitting: Vec<&fn() -> Group> = candidates.iter().filter(|make| make().order() <= max_order.max(1)).collect();
    Arc::new(fitting.choose(rng).expect("the trivial group fits")())
}

/// A random groupoid with `1..=max_objects` objects and at most
/// `max_morphisms` morphisms. Object ids are shuffled across components.
pub fn random_groupoid(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> FiniteGroupoid {
    let objects = rng.gen_range(1..=max_objects.max(1)).min(max_morphisms.max(1));
    let mut ids: Vec<ObjectId> = (0..objects).collect();
    ids.shuffle(rng);
    let mut remaining_objects = objects;
    // Every object left over needs at least its identity.
    let mut budget = max_morphisms.max(objects) - objects;
    let mut parts = Vec::new();
    let mut next = 0;
    while remaining_objects > 0 {
        let mut k = rng.gen_range(1..=remaining_objects);
        while k > 1 && k * k - k > budget {
            k -= 1;
        }
        let allowance = (budget + k) / (k * k);
        let group = random_group(rng, allowance);
        budget -= k * k * group.order() - k;
        remaining_objects -= k;
        parts.push((ids[next..next + k].to_vec(), group));
        next += k;
    }
    FiniteGroupoid::from_components(objects, parts).expect("a partition of the objects")
}

/// A random homomorphism `g → h` as the image index of every element,
/// found by assigning random images to generators and keeping the first
/// consistent assignment; falls back to the trivial homomorphism.
pub fn random_homomorphism(rng: &mut impl Rng, g: &Group, h: &Group) -> Vec<usize> {
    let gens = g.generators();
    for _ in 0..8 {
        let images: Vec<usize> = gens.iter().map(|_| rng.gen_range(0..h.order())).collect();
        if let Some(map) = extend_homomorphism(g, h, &gens, &images) {
            return map;
        }
    }
    vec![0; g.order()]
}

fn extend_homomorphism(g: &Group, h: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; g.order()];
    map[0] = Some(0);
    let mut queue = vec![0];
    while let Some(e) = queue.pop() {
        let me = map[e].expect("visited");
        for (&s, &img) in gens.iter().zip(images) {
            let t = g.mul(s, e);
            let value = h.mul(img, me);
            match map[t] {
                None => {
                    map[t] = Some(value);
                    queue.push(t);
                }
                Some(v) if v != value => return None,
                Some(_) => {}
            }
        }
    }
    map.into_iter().collect()
}

/// A random functor: each source component lands in a random target
/// component through a random homomorphism and random transports.
pub fn random_functor(rng: &mut impl Rng, source: &Arc<FiniteGroupoid>, target: &Arc<FiniteGroupoid>) -> FunctorData {
    assert!(target.object_count() > 0 || source.object_count() == 0, "no functor into the empty groupoid");
    let mut object_map = vec![0; source.object_count()];
    let mut transport = vec![0; source.object_count()];
    let mut hom = Vec::with_capacity(source.components().len());
    for comp in source.components() {
        let tc = rng.gen_range(0..target.components().len());
        let tcomp = target.component(tc);
        let images: Vec<ObjectId> =
            comp.objects().iter().map(|_| *tcomp.objects().choose(rng).expect("nonempty")).collect();
        let base_image = images[0];
        for (&x, &y) in comp.objects().iter().zip(&images) {
            object_map[x] = y;
            transport[x] = if x == comp.base() {
                target.identity(y)
            } else {
                let range = target.hom(base_image, y);
                rng.gen_range(range)
            };
        }
        let phi = random_homomorphism(rng, comp.group(), tcomp.group());
        let at = target.position_of(base_image);
        hom.push(
            phi.into_iter()
                .map(|e| target.encode(MorphismParts { component: tc, from: at, to: at, element: e }))
                .collect(),
        );
    }
    FunctorData::new(source.clone(), target.clone(), object_map, transport, hom).expect("a valid functor")
}

/// A random span `domain → codomain` with a random apex of bounded size.
pub fn random_span(
    rng: &mut impl Rng,
    domain: &Arc<FiniteGroupoid>,
    codomain: &Arc<FiniteGroupoid>,
    max_apex_objects: usize,
    max_apex_morphisms: usize,
) -> Span {
    let apex = Arc::new(random_groupoid(rng, max_apex_objects, max_apex_morphisms));
    let left = random_functor(rng, &apex, codomain);
    let right = random_functor(rng, &apex, domain);
    Span::new(left, right).expect("legs share the apex")
}

/// A random groupoid over `base`.
pub fn random_groupoid_over(
    rng: &mut impl Rng,
    base: &Arc<FiniteGroupoid>,
    max_objects: usize,
    max_morphisms: usize,
) -> GroupoidOver {
    let total = Arc::new(random_groupoid(rng, max_objects, max_morphisms));
    GroupoidOver::new(random_functor(rng, &total, base))
}

/// `copies` disjoint copies of `G` acting on itself by left multiplication,
/// with the carrier shuffled. The action is free.
pub fn free_action(rng: &mut impl Rng, group: Arc<Group>, copies: usize) -> GroupAction {
    let n = group.order();
    let mut relabel: Vec<usize> = (0..n * copies).collect();
    relabel.shuffle(rng);
    let mut unlabel = vec![0; relabel.len()];
    for (i, &r) in relabel.iter().enumerate() {
        unlabel[r] = i;
    }
    let g = group.clone();
    GroupAction::new(group, n * copies, move |e, s| {
        let s = unlabel[s];
        relabel[s / n * n + g.mul(e, s % n)]
    })
}

/// A groupoid equivalent to a given one, with every object duplicated a
/// random number of times and ids shuffled.
#[derive(Debug, Clone)]
pub struct Bloated {
    pub groupoid: Arc<FiniteGroupoid>,
    /// Sends each copy to its original.
    pub projection: FunctorData,
    /// Sends each object to its first copy; `projection ∘ inclusion = 1`.
    pub inclusion: FunctorData,
}

pub fn bloat_groupoid(rng: &mut impl Rng, g: &Arc<FiniteGroupoid>, max_copies: usize) -> Bloated {
    let copies: Vec<usize> = g.objects().map(|_| rng.gen_range(1..=max_copies.max(1))).collect();
    let total: usize = copies.iter().sum();
    let mut ids: Vec<ObjectId> = (0..total).collect();
    ids.shuffle(rng);
    let mut original = vec![0; total];
    let mut first_copy = vec![0; g.object_count()];
    let mut next = 0;
    for x in g.objects() {
        first_copy[x] = ids[next];
        for &id in &ids[next..next + copies[x]] {
            original[id] = x;
        }
        next += copies[x];
    }
    let mut parts: Vec<(Vec<ObjectId>, Arc<Group>)> =
        g.components().iter().map(|c| (Vec::new(), c.group().clone())).collect();
    for (id, &x) in original.iter().enumerate() {
        parts[g.component_of(x)].0.push(id);
    }
    let bloated = Arc::new(FiniteGroupoid::from_components(total, parts).expect("copies partition"));
    // Morphism (i → j, e) in a component is τ_j ∘ e ∘ τ_i⁻¹, so relabelling
    // positions while keeping the element gives a functor.
    let b = bloated.clone();
    let projection = FunctorData::from_fn(
        bloated.clone(),
        g.clone(),
        |z| original[z],
        |m| {
            let p = b.decode(m);
            let objects = b.component(p.component).objects();
            let (s, t) = (original[objects[p.from]], original[objects[p.to]]);
            g.encode(MorphismParts {
                component: g.component_of(s),
                from: g.position_of(s),
                to: g.position_of(t),
                element: p.element,
            })
        },
    )
    .expect("projection");
    let inclusion = FunctorData::from_fn(
        g.clone(),
        bloated.clone(),
        |x| first_copy[x],
        |m| {
            let p = g.decode(m);
            let objects = g.component(p.component).objects();
            let (s, t) = (first_copy[objects[p.from]], first_copy[objects[p.to]]);
            bloated.encode(MorphismParts {
                component: bloated.component_of(s),
                from: bloated.position_of(s),
                to: bloated.position_of(t),
                element: p.element,
            })
        },
    )
    .expect("inclusion");
    Bloated { groupoid: b, projection, inclusion }
}

/// Conjugates `f` by a random isomorphism at every object, returning the
/// new functor `f'` and the natural isomorphism `f ⇒ f'`.
pub fn twist(rng: &mut impl Rng, f: &FunctorData) -> (FunctorData, NaturalIso) {
    let t = f.target().clone();
    let eta: Vec<MorphismId> = f
        .source()
        .objects()
        .map(|x| {
            let y = f.map_object(x);
            let options: Vec<MorphismId> = t.hom_from(y).collect();
            *options.choose(rng).expect("identity at least")
        })
        .collect();
    let s = f.source().clone();
    let twisted = FunctorData::from_fn(
        s.clone(),
        t.clone(),
        |x| t.target(eta[x]),
        |m| {
            let (x, y) = (s.source(m), s.target(m));
            t.compose_all(&[eta[y], f.map_morphism(m), t.inverse(eta[x])]).expect("typed")
        },
    )
    .expect("a conjugate functor");
    let iso = NaturalIso { from: f.clone(), to: twisted.clone(), components: eta };
    (twisted, iso)
}

/// An equivalent span whose apex is a bloated copy of the original and
/// whose legs are twisted, together with the witnesses of the equivalence.
pub fn bloat_span(rng: &mut impl Rng, s: &Span, max_copies: usize) -> (Span, SpanEquivalence) {
    let bloated = bloat_groupoid(rng, s.apex(), max_copies);
    let (proj, incl) = (&bloated.projection, &bloated.inclusion);
    let left_pulled = FunctorData::compose(s.left(), proj).expect("composable");
    let right_pulled = FunctorData::compose(s.right(), proj).expect("composable");
    let (left, left_eta) = twist(rng, &left_pulled);
    let (right, right_eta) = twist(rng, &right_pulled);
    let bigger = Span::new(left, right).expect("legs share the apex");
    // q = q∘proj∘incl, so η·incl runs q ⇒ q'∘incl.
    let forward = SpanMap {
        source: s.clone(),
        target: bigger.clone(),
        functor: incl.clone(),
        left_iso: left_eta.whisker_right(incl).expect("composable"),
        right_iso: right_eta.whisker_right(incl).expect("composable"),
    };
    let backward = SpanMap {
        source: bigger.clone(),
        target: s.clone(),
        functor: proj.clone(),
        left_iso: left_eta.inverse(),
        right_iso: right_eta.inverse(),
    };
    let gf = FunctorData::compose(proj, incl).expect("composable");
    let apex = s.apex();
    let unit = NaturalIso {
        components: apex.objects().map(|x| apex.identity(x)).collect(),
        from: gf,
        to: FunctorData::identity(apex),
    };
    (bigger, SpanEquivalence { forward, backward, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::check_equivalence;
    use crate::span::check_span_equivalence;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_data_is_valid() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..50 {
            let g = Arc::new(random_groupoid(&mut rng, 8, 40));
            assert!(g.validate().ok);
            assert!(g.morphism_count() <= 40 && g.object_count() <= 8);
            let h = Arc::new(random_groupoid(&mut rng, 4, 20));
            let f = random_functor(&mut rng, &g, &h);
            assert!(f.validate_exhaustive().ok);
        }
    }

    #[test]
    fn bloating_gives_equivalences() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..20 {
            let x = Arc::new(random_groupoid(&mut rng, 3, 12));
            let s = random_span(&mut rng, &x, &x, 4, 16);
            let b = bloat_groupoid(&mut rng, s.apex(), 3);
            assert!(check_equivalence(&b.inclusion).is_equivalence());
            assert!(check_equivalence(&b.projection).is_equivalence());
            let (_, e) = bloat_span(&mut rng, &s, 3);
            let report = check_span_equivalence(&e);
            assert!(report.ok, "{:?}", report.violations);
        }
    }

    #[test]
    fn free_actions_are_free() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = free_action(&mut rng, Arc::new(Group::Symmetric(3)), 2);
        assert!(a.validate().ok && a.is_free());
    }
}
