//! Maps and equivalences of spans, verified from explicit witnesses.

use std::collections::HashMap;

use super::{compose_with_pullback, Span};
use crate::error::Result;
use crate::groupoid::{check_equivalence, FunctorData, MorphismId, NaturalIso, ObjectId, ValidationReport};

/// A map of spans `S → S'`: a functor `F` between apexes with natural
/// isomorphisms `q ⇒ q'F` (left legs) and `p ⇒ p'F` (right legs).
#[derive(Debug, Clone)]
pub struct SpanMap {
    pub source: Span,
    pub target: Span,
    pub functor: FunctorData,
    pub left_iso: NaturalIso,
    pub right_iso: NaturalIso,
}

impl SpanMap {
    pub fn identity(s: &Span) -> Self {
        let id = FunctorData::identity(s.apex());
        SpanMap {
            source: s.clone(),
            target: s.clone(),
            left_iso: NaturalIso::identity(s.left()),
            right_iso: NaturalIso::identity(s.right()),
            functor: id,
        }
    }
}

/// Forward and backward span maps with `γ: GF ⇒ 1`.
#[derive(Debug, Clone)]
pub struct SpanEquivalence {
    pub forward: SpanMap,
    pub backward: SpanMap,
    pub unit: NaturalIso,
}

impl SpanEquivalence {
    pub fn identity(s: &Span) -> Self {
        let map = SpanMap::identity(s);
        let unit = NaturalIso::identity(&map.functor);
        SpanEquivalence { forward: map.clone(), backward: map, unit }
    }
}

/// Checks that a span map is typed correctly and that its functor and both
/// natural isomorphisms are valid.
pub fn check_span_map(m: &SpanMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (s, t) = (&m.source, &m.target);
    let f = &m.functor;
    if f.source() != s.apex() || f.target() != t.apex() {
        report.push("functor runs between the apexes", vec![]);
        return report;
    }
    if s.domain() != t.domain() || s.codomain() != t.codomain() {
        report.push("spans share their endpoints", vec![]);
        return report;
    }
    report.merge(f.validate());
    for (name, iso, leg, leg_prime) in
        [("left", &m.left_iso, s.left(), t.left()), ("right", &m.right_iso, s.right(), t.right())]
    {
        let expected_to = match FunctorData::compose(leg_prime, f) {
            Ok(g) => g,
            Err(_) => {
                report.push("legs compose with the functor", vec![]);
                continue;
            }
        };
        if &iso.from != leg || iso.to != expected_to {
            report.push(&format!("{name} natural isomorphism runs from the leg to the transported leg"), vec![]);
            continue;
        }
        report.merge(iso.validate());
    }
    report
}

/// The composite `(leg·γ) ∘ (η'·F) ∘ η`, which must be the identity on `leg`.
fn triangle(
    leg: &FunctorData,
    eta: &NaturalIso,
    eta_prime: &NaturalIso,
    f: &FunctorData,
    gamma: &NaturalIso,
) -> Result<NaturalIso> {
    eta.then(&eta_prime.whisker_right(f)?)?.then(&gamma.whisker_left(leg)?)
}

/// Verifies an equivalence of spans: the forward functor is an equivalence
/// of groupoids, both span maps and the unit are valid, and at every object
/// the two triangle composites are identities.
pub fn check_span_equivalence(e: &SpanEquivalence) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (fw, bw) = (&e.forward, &e.backward);
    if !check_equivalence(&fw.functor).is_equivalence() {
        report.push("forward functor is an equivalence", vec![]);
    }
    let forward = check_span_map(fw);
    let backward = check_span_map(bw);
    let maps_ok = forward.ok && backward.ok;
    report.merge(forward);
    report.merge(backward);
    if !maps_ok {
        return report;
    }
    if bw.source.apex() != fw.target.apex() || bw.target.apex() != fw.source.apex() {
        report.push("backward map reverses the forward map", vec![]);
        return report;
    }
    let gf = FunctorData::compose(&bw.functor, &fw.functor).expect("apexes checked");
    if e.unit.from != gf || e.unit.to != FunctorData::identity(fw.source.apex()) {
        report.push("unit runs from GF to the identity", vec![]);
        return report;
    }
    let unit_report = e.unit.validate();
    let unit_ok = unit_report.ok;
    report.merge(unit_report);
    if !unit_ok {
        return report;
    }
    let s = &fw.source;
    for (name, leg, eta, eta_prime) in [
        ("right triangle", s.right(), &fw.right_iso, &bw.right_iso),
        ("left triangle", s.left(), &fw.left_iso, &bw.left_iso),
    ] {
        match triangle(leg, eta, eta_prime, &fw.functor, &e.unit) {
            Ok(composite) => {
                let base = leg.target();
                for (x, &c) in composite.components.iter().enumerate() {
                    if c != base.identity(leg.map_object(x)) {
                        report.push(name, vec![x]);
                    }
                }
            }
            Err(_) => report.push(&format!("{name} composite is typed"), vec![]),
        }
    }
    report
}

/// The equivalence `T(SR) → (TS)R` sending `((r, s, α), t, β)` to
/// `(r, (s, t, β), α)`, with its inverse as the backward map.
pub fn associator(t: &Span, s: &Span, r: &Span) -> Result<SpanEquivalence> {
    let (sr, sr_pb) = compose_with_pullback(s, r)?;
    let (left_side, outer_left) = compose_with_pullback(t, &sr)?;
    let (ts, ts_pb) = compose_with_pullback(t, s)?;
    let (right_side, outer_right) = compose_with_pullback(&ts, r)?;

    let ts_index: HashMap<(ObjectId, ObjectId, MorphismId), ObjectId> =
        ts_pb.triples().iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let sr_index: HashMap<(ObjectId, ObjectId, MorphismId), ObjectId> =
        sr_pb.triples().iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let right_index: HashMap<(ObjectId, ObjectId, MorphismId), ObjectId> =
        outer_right.triples().iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let left_index: HashMap<(ObjectId, ObjectId, MorphismId), ObjectId> =
        outer_left.triples().iter().enumerate().map(|(i, &k)| (k, i)).collect();

    // T(SR) object ((r, s, α), t, β) ↦ (r, (s, t, β), α).
    let forward_object = |o: ObjectId| -> ObjectId {
        let (u, tt, beta) = outer_left.triples()[o];
        let (rr, ss, alpha) = sr_pb.triples()[u];
        right_index[&(rr, ts_index[&(ss, tt, beta)], alpha)]
    };
    let backward_object = |o: ObjectId| -> ObjectId {
        let (rr, v, alpha) = outer_right.triples()[o];
        let (ss, tt, beta) = ts_pb.triples()[v];
        left_index[&(sr_index[&(rr, ss, alpha)], tt, beta)]
    };
    let forward_morphism = |m: MorphismId| -> MorphismId {
        let g = left_side.apex();
        let (x, y) = (g.source(m), g.target(m));
        let mu = outer_left.first.map_morphism(m);
        let mt = outer_left.second.map_morphism(m);
        let mr = sr_pb.first.map_morphism(mu);
        let ms = sr_pb.second.map_morphism(mu);
        let (fx, fy) = (forward_object(x), forward_object(y));
        let (vx, vy) = (outer_right.triples()[fx].1, outer_right.triples()[fy].1);
        let mv = ts_pb.morphism_from_pair(vx, vy, ms, mt).expect("square commutes");
        outer_right.morphism_from_pair(fx, fy, mr, mv).expect("square commutes")
    };
    let backward_morphism = |m: MorphismId| -> MorphismId {
        let g = right_side.apex();
        let (x, y) = (g.source(m), g.target(m));
        let mr = outer_right.first.map_morphism(m);
        let mv = outer_right.second.map_morphism(m);
        let ms = ts_pb.first.map_morphism(mv);
        let mt = ts_pb.second.map_morphism(mv);
        let (bx, by) = (backward_object(x), backward_object(y));
        let (ux, uy) = (outer_left.triples()[bx].0, outer_left.triples()[by].0);
        let mu = sr_pb.morphism_from_pair(ux, uy, mr, ms).expect("square commutes");
        outer_left.morphism_from_pair(bx, by, mu, mt).expect("square commutes")
    };

    let forward_functor =
        FunctorData::from_fn(left_side.apex().clone(), right_side.apex().clone(), forward_object, forward_morphism)?;
    let backward_functor =
        FunctorData::from_fn(right_side.apex().clone(), left_side.apex().clone(), backward_object, backward_morphism)?;

    // Both legs agree on the nose, so every witness is an identity.
    let identity_iso = |leg: &FunctorData, leg_prime: &FunctorData, f: &FunctorData| -> Result<NaturalIso> {
        let to = FunctorData::compose(leg_prime, f)?;
        let components = f.source().objects().map(|x| leg.target().identity(leg.map_object(x))).collect();
        Ok(NaturalIso { from: leg.clone(), to, components })
    };
    let forward = SpanMap {
        left_iso: identity_iso(left_side.left(), right_side.left(), &forward_functor)?,
        right_iso: identity_iso(left_side.right(), right_side.right(), &forward_functor)?,
        source: left_side.clone(),
        target: right_side.clone(),
        functor: forward_functor.clone(),
    };
    let backward = SpanMap {
        left_iso: identity_iso(right_side.left(), left_side.left(), &backward_functor)?,
        right_iso: identity_iso(right_side.right(), left_side.right(), &backward_functor)?,
        source: right_side,
        target: left_side.clone(),
        functor: backward_functor.clone(),
    };
    let gf = FunctorData::compose(&backward_functor, &forward_functor)?;
    let apex = left_side.apex();
    let unit = NaturalIso {
        to: FunctorData::identity(apex),
        components: apex.objects().map(|x| apex.identity(gf.map_object(x))).collect(),
        from: gf,
    };
    Ok(SpanEquivalence { forward, backward, unit })
}
