//! Finite groupoids, functors, natural isomorphisms and standard constructions.

mod action;
mod construct;
mod finite;
mod functor;
pub mod search;
mod tables;

pub use action::{action_groupoid, validate_action_tables, ActionGroupoid, GroupAction};
pub use construct::{
    coproduct, discrete, full_subgroupoid, one_object, product, skeleton, terminal, Coproduct, Product, Skeleton,
    Subgroupoid,
};
pub use finite::{
    Component, FiniteGroupoid, IsoClasses, MorphismId, MorphismParts, ObjectId, ValidationReport, Violation,
};
pub use functor::{check_equivalence, EquivalenceReport, FunctorData, NaturalIso};
pub use tables::{validate_tables, GroupoidTables, Imported, MorphismRecord};

pub(crate) use functor::same;
