//! Groupoids over a base, and spans acting on them.

use std::sync::Arc;

use super::{compose, Cospan, Span, WeakPullback};
use crate::error::{Error, Result};
use crate::groupoid::{
    coproduct, discrete, full_subgroupoid, product, same, terminal, FiniteGroupoid, FunctorData, ObjectId, Subgroupoid,
};
use crate::span::weak_pullback;

/// A groupoid `Ψ` with a functor `v: Ψ → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidOver {
    projection: FunctorData,
}

impl GroupoidOver {
    pub fn new(projection: FunctorData) -> Self {
        GroupoidOver { projection }
    }

    pub fn total(&self) -> &Arc<FiniteGroupoid> {
        self.projection.source()
    }

    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        self.projection.target()
    }

    pub fn projection(&self) -> &FunctorData {
        &self.projection
    }

    /// One object with trivial automorphisms, sent to `x`.
    pub fn point(base: &Arc<FiniteGroupoid>, x: ObjectId) -> Result<Self> {
        base.check_object(x)?;
        Ok(GroupoidOver::new(FunctorData::constant(&Arc::new(terminal()), base, x)))
    }

    pub fn empty(base: &Arc<FiniteGroupoid>) -> Self {
        let e = Arc::new(discrete(0));
        GroupoidOver::new(FunctorData::new(e, base.clone(), vec![], vec![], vec![]).expect("empty functor"))
    }

    /// The span from the terminal groupoid whose left leg is the projection.
    pub fn as_span(&self) -> Span {
        Span::new(self.projection.clone(), FunctorData::to_terminal(self.total())).expect("shared apex")
    }

    /// Disjoint union over the same base.
    pub fn coproduct(&self, other: &GroupoidOver) -> Result<Self> {
        if !same(self.base(), other.base()) {
            return Err(Error::BoundaryMismatch("coproduct over different bases".into()));
        }
        let c = coproduct(self.total(), other.total());
        Ok(GroupoidOver::new(c.copair(&self.projection, &other.projection)?))
    }

    /// `Λ × Ψ`, projecting through `Ψ`.
    pub fn scale(&self, lambda: &Arc<FiniteGroupoid>) -> Self {
        let p = product(lambda, self.total());
        GroupoidOver::new(FunctorData::compose(&self.projection, &p.second).expect("composable"))
    }
}

/// The full subgroupoid of the total groupoid on objects `a` with `v(a) ≅ x`.
pub fn essential_preimage(v: &GroupoidOver, x: ObjectId) -> Result<Subgroupoid> {
    let base = v.base();
    base.check_object(x)?;
    let objects: Vec<ObjectId> =
        v.total().objects().filter(|&a| base.isomorphic(v.projection.map_object(a), x)).collect();
    full_subgroupoid(v.total(), &objects)
}

/// `SΨ`: the weak pullback of the right leg of `S` against the projection of `Ψ`.
pub fn apply_span(s: &Span, v: &GroupoidOver) -> Result<GroupoidOver> {
    if !same(s.domain(), v.base()) {
        return Err(Error::BoundaryMismatch("apply: groupoid is not over the domain of the span".into()));
    }
    let composite = compose(s, &v.as_span())?;
    Ok(GroupoidOver::new(composite.left().clone()))
}

/// `⟨Φ, Ψ⟩`, the weak pullback of the two projections.
pub fn inner_product_groupoid(phi: &GroupoidOver, psi: &GroupoidOver) -> Result<WeakPullback> {
    if !same(phi.base(), psi.base()) {
        return Err(Error::BoundaryMismatch("inner product over different bases".into()));
    }
    weak_pullback(&Cospan::new(phi.projection.clone(), psi.projection.clone())?)
}
