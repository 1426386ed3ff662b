//! Spans of groupoids and their algebra.
//!
//! A span from `X` to `Y` is an apex `S` with a right leg `S → X` and a left
//! leg `S → Y`; degroupoidification turns it into a `Y × X` matrix.

mod equivalence;
mod over;
mod pullback;

use std::sync::Arc;

pub use equivalence::{associator, check_span_equivalence, check_span_map, SpanEquivalence, SpanMap};
pub use over::{apply_span, essential_preimage, inner_product_groupoid, GroupoidOver};
pub use pullback::{
    pullback_cap, set_pullback_cap, weak_pullback, weak_pullback_reduced, Cospan, WeakPullback, DEFAULT_PULLBACK_CAP,
};

use crate::error::{Error, Result};
use crate::groupoid::{coproduct, discrete, product, same, FiniteGroupoid, FunctorData};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    apex: Arc<FiniteGroupoid>,
    left: FunctorData,
    right: FunctorData,
}

impl Span {
    /// `left: apex → Y` and `right: apex → X` give a span from `X` to `Y`.
    pub fn new(left: FunctorData, right: FunctorData) -> Result<Self> {
        if !same(left.source(), right.source()) {
            return Err(Error::BoundaryMismatch("span legs have different sources".into()));
        }
        Ok(Span { apex: left.source().clone(), left, right })
    }

    pub fn apex(&self) -> &Arc<FiniteGroupoid> {
        &self.apex
    }

    pub fn left(&self) -> &FunctorData {
        &self.left
    }

    pub fn right(&self) -> &FunctorData {
        &self.right
    }

    /// The groupoid the span maps from (target of the right leg).
    pub fn domain(&self) -> &Arc<FiniteGroupoid> {
        self.right.target()
    }

    /// The groupoid the span maps to (target of the left leg).
    pub fn codomain(&self) -> &Arc<FiniteGroupoid> {
        self.left.target()
    }
}

fn check_composable(t: &Span, s: &Span) -> Result<()> {
    if !same(s.codomain(), t.domain()) {
        return Err(Error::BoundaryMismatch(
            "compose: codomain of the first span is not the domain of the second".into(),
        ));
    }
    Ok(())
}

fn from_pullback(t: &Span, s: &Span, pb: &WeakPullback) -> Result<Span> {
    Span::new(FunctorData::compose(&t.left, &pb.second)?, FunctorData::compose(&s.right, &pb.first)?)
}

/// `T ∘ S`, with every triple of the weak pullback as an apex object.
pub fn compose(t: &Span, s: &Span) -> Result<Span> {
    compose_with_pullback(t, s).map(|(span, _)| span)
}

/// As [`compose`], also returning the pullback with its projections.
pub fn compose_with_pullback(t: &Span, s: &Span) -> Result<(Span, WeakPullback)> {
    check_composable(t, s)?;
    let pb = weak_pullback(&Cospan::new(s.left.clone(), t.right.clone())?)?;
    Ok((from_pullback(t, s, &pb)?, pb))
}

/// `T ∘ S` on the skeletal weak pullback. Equivalent to [`compose`] as a
/// span, hence equal after degroupoidification.
pub fn compose_reduced(t: &Span, s: &Span) -> Result<Span> {
    check_composable(t, s)?;
    let pb = weak_pullback_reduced(&Cospan::new(s.left.clone(), t.right.clone())?)?;
    from_pullback(t, s, &pb)
}

/// Apex is the coproduct of the apexes.
pub fn sum(s: &Span, t: &Span) -> Result<Span> {
    if !same(s.domain(), t.domain()) || !same(s.codomain(), t.codomain()) {
        return Err(Error::BoundaryMismatch("sum: spans have different endpoints".into()));
    }
    let c = coproduct(&s.apex, &t.apex);
    Span::new(c.copair(&s.left, &t.left)?, c.copair(&s.right, &t.right)?)
}

/// `Λ × S` with both legs factoring through the projection to the apex.
pub fn scalar(lambda: &Arc<FiniteGroupoid>, s: &Span) -> Span {
    let p = product(lambda, &s.apex);
    Span::new(
        FunctorData::compose(&s.left, &p.second).expect("composable"),
        FunctorData::compose(&s.right, &p.second).expect("composable"),
    )
    .expect("shared apex")
}

pub fn identity_span(x: &Arc<FiniteGroupoid>) -> Span {
    let id = FunctorData::identity(x);
    Span { apex: x.clone(), left: id.clone(), right: id }
}

/// The span with empty apex.
pub fn zero_span(x: &Arc<FiniteGroupoid>, y: &Arc<FiniteGroupoid>) -> Span {
    let empty = Arc::new(discrete(0));
    let to = |g: &Arc<FiniteGroupoid>| {
        FunctorData::new(empty.clone(), g.clone(), vec![], vec![], vec![]).expect("empty functor")
    };
    Span { apex: empty.clone(), left: to(y), right: to(x) }
}

/// Swaps the legs.
pub fn adjoint(s: &Span) -> Span {
    Span { apex: s.apex.clone(), left: s.right.clone(), right: s.left.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::groupoid::one_object;
    use crate::rational::Rational;

    fn sets_up_to(n: usize) -> Arc<FiniteGroupoid> {
        let parts = (0..=n).map(|k| (vec![k], Arc::new(Group::Symmetric(k)))).collect();
        Arc::new(FiniteGroupoid::from_components(n + 1, parts).unwrap())
    }

    fn psi(n: usize, e: &Arc<FiniteGroupoid>) -> GroupoidOver {
        let src = Arc::new(one_object(Arc::new(Group::Symmetric(n))));
        let hom = vec![(0..src.morphism_count()).map(|g| e.base_automorphism(n, g)).collect()];
        GroupoidOver::new(FunctorData::new(src, e.clone(), vec![n], vec![e.identity(n)], hom).unwrap())
    }

    fn successor(e: &Arc<FiniteGroupoid>, n: usize) -> Span {
        let small = sets_up_to(n - 1);
        let inclusion = FunctorData::from_fn(
            small.clone(),
            e.clone(),
            |k| k,
            |m| {
                let p = small.decode(m);
                e.base_automorphism(p.component, p.element)
            },
        )
        .unwrap();
        let succ = FunctorData::from_fn(
            small.clone(),
            e.clone(),
            |k| k + 1,
            |m| {
                let p = small.decode(m);
                let mut perm = small.component(p.component).group().element(p.element);
                perm.push(perm.len() as u16);
                let target = e.component(p.component + 1).group();
                e.base_automorphism(p.component + 1, target.index_of(&perm).unwrap())
            },
        )
        .unwrap();
        Span::new(inclusion, succ).unwrap()
    }

    #[test]
    fn discrete_pullback_is_fibered_product() {
        let x = Arc::new(discrete(2));
        let y = Arc::new(discrete(1));
        let z = Arc::new(discrete(1));
        let f = FunctorData::constant(&x, &z, 0);
        let g = FunctorData::constant(&y, &z, 0);
        let pb = weak_pullback(&Cospan::new(f, g).unwrap()).unwrap();
        assert_eq!(pb.groupoid.object_count(), 2);
        assert!(pb.groupoid.is_discrete());
        assert_eq!(pb.triples(), &[(0, 0, 0), (1, 0, 0)]);
    }

    #[test]
    fn inner_products_of_symmetric_points() {
        let e = sets_up_to(4);
        for m in 0..=4 {
            for n in 0..=4 {
                let pb = inner_product_groupoid(&psi(m, &e), &psi(n, &e)).unwrap();
                let expected = if m == n { Rational::ratio(1, crate::group::factorial(n)) } else { Rational::zero() };
                assert_eq!(pb.groupoid.cardinality(), expected, "m={m} n={n}");
                if n <= 3 {
                    assert!(pb.groupoid.validate().ok);
                    assert!(pb.first.validate_exhaustive().ok);
                    assert!(pb.second.validate_exhaustive().ok);
                }
            }
        }
    }

    #[test]
    fn reduced_and_explicit_pullbacks_agree() {
        let e = sets_up_to(4);
        let a = successor(&e, 4);
        let c = Cospan::new(a.right().clone(), a.right().clone()).unwrap();
        let full = weak_pullback(&c).unwrap();
        let reduced = weak_pullback_reduced(&c).unwrap();
        assert_eq!(full.groupoid.cardinality(), reduced.groupoid.cardinality());
        assert!(full.groupoid.validate().ok && reduced.groupoid.validate().ok);
        assert!(reduced.groupoid.is_skeletal());
        for pb in [&full, &reduced] {
            assert!(pb.first.validate_exhaustive().ok);
            assert!(pb.second.validate_exhaustive().ok);
        }
    }

    #[test]
    fn adjoint_is_an_involution_and_sum_checks_endpoints() {
        let e = sets_up_to(3);
        let a = successor(&e, 3);
        assert_eq!(adjoint(&adjoint(&a)), a);
        assert!(sum(&a, &adjoint(&a)).is_ok());
        let other = sets_up_to(2);
        assert!(sum(&a, &identity_span(&other)).is_err());
        assert!(compose(&identity_span(&other), &a).is_err());
    }

    #[test]
    fn associator_and_identity_are_equivalences() {
        let e = sets_up_to(3);
        let a = successor(&e, 3);
        let b = adjoint(&a);
        assert!(check_span_equivalence(&SpanEquivalence::identity(&a)).ok);
        let assoc = associator(&a, &b, &a).unwrap();
        let report = check_span_equivalence(&assoc);
        assert!(report.ok, "{:?}", report.violations);
        let assoc = associator(&b, &a, &b).unwrap();
        assert!(check_span_equivalence(&assoc).ok);
    }

    #[test]
    fn non_surjective_span_map_is_rejected() {
        let e = sets_up_to(2);
        let s = identity_span(&e);
        let mut eq = SpanEquivalence::identity(&s);
        let c = FunctorData::constant(s.apex(), s.apex(), 0);
        eq.forward.functor = c;
        assert!(!check_span_equivalence(&eq).ok);
    }

    #[test]
    fn apply_span_to_empty_is_empty() {
        let e = sets_up_to(3);
        let a = successor(&e, 3);
        let out = apply_span(&a, &GroupoidOver::empty(&e)).unwrap();
        assert_eq!(out.total().object_count(), 0);
        let two = psi(2, &e);
        let out = apply_span(&a, &two).unwrap();
        // One object of size 1 with trivial automorphisms, over the 1-set.
        assert_eq!(essential_preimage(&out, 1).unwrap().groupoid.cardinality(), Rational::one());
    }
}
