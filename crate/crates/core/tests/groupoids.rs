mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use groupoidify::group::{cyclic, Group};
use groupoidify::groupoid::{
    action_groupoid, check_equivalence, coproduct, discrete, one_object, product, skeleton, terminal, validate_tables,
    FiniteGroupoid, FunctorData, GroupAction, GroupoidTables, MorphismRecord,
};
use groupoidify::oscillator::build_e;
use groupoidify::Rational;

fn involution_on(points: usize, fixed: usize) -> GroupAction {
    let moved = points - fixed;
    GroupAction::new(Arc::new(cyclic(2)), points, move |g, s| if g == 1 && s < moved { s ^ 1 } else { s })
}

#[test]
fn worked_cardinalities() {
    let e3 = build_e(3).unwrap();
    assert_eq!(e3.groupoid.cardinality(), common::e_partial_sum(3));
    assert_eq!(e3.groupoid.cardinality(), Rational::new(8, 3));
    assert_eq!(action_groupoid(&involution_on(6, 0)).groupoid.cardinality(), Rational::integer(3));
    assert_eq!(action_groupoid(&involution_on(5, 1)).groupoid.cardinality(), Rational::new(5, 2));
    assert_eq!(terminal().cardinality_by_sources(), Rational::one());
    assert_eq!(one_object(Arc::new(Group::Symmetric(3))).cardinality_by_sources(), Rational::new(1, 6));
}

#[test]
fn trivial_action_gives_a_discrete_groupoid() {
    let a = GroupAction::new(Arc::new(Group::trivial()), 4, |_, s| s);
    let g = action_groupoid(&a);
    assert!(g.groupoid.is_discrete());
    assert_eq!(g.groupoid.object_count(), 4);
}

#[test]
fn sums_and_products() {
    let s2 = Arc::new(one_object(Arc::new(Group::Symmetric(2))));
    let p = product(&s2, &s2);
    assert_eq!(p.groupoid.cardinality(), Rational::new(1, 4));
    let d = product(&Arc::new(discrete(2)), &Arc::new(discrete(3)));
    assert!(d.groupoid.is_discrete());
    assert_eq!(d.groupoid.object_count(), 6);
    let empty = Arc::new(FiniteGroupoid::empty());
    let c = coproduct(&s2, &empty);
    assert_eq!(c.groupoid.cardinality(), s2.cardinality());
    assert_eq!(*c.groupoid, *s2);
}

#[test]
fn skeleton_examples() {
    // Two isomorphic objects with trivial automorphisms.
    let pair = Arc::new(FiniteGroupoid::from_components(2, vec![(vec![0, 1], Arc::new(Group::trivial()))]).unwrap());
    let sk = skeleton(&pair);
    assert_eq!(sk.groupoid.object_count(), 1);
    assert_eq!(sk.groupoid.cardinality(), Rational::one());
    assert!(check_equivalence(&sk.inclusion).is_equivalence());
    assert!(sk.unit.validate().ok && sk.counit.validate().ok);
    // Already skeletal: identity witnesses, idempotent.
    let e = build_e(4).unwrap().groupoid;
    let sk = skeleton(&e);
    assert_eq!(*sk.groupoid, *e);
    assert_eq!(sk.inclusion, FunctorData::identity(&e));
    assert_eq!(skeleton(&sk.groupoid).groupoid.object_count(), sk.groupoid.object_count());
}

#[test]
fn equivalence_flags() {
    let x = Arc::new(
        FiniteGroupoid::from_components(2, vec![(vec![0], Arc::new(cyclic(2))), (vec![1], Arc::new(Group::trivial()))])
            .unwrap(),
    );
    assert!(check_equivalence(&FunctorData::identity(&x)).is_equivalence());
    let constant = FunctorData::constant(&x, &x, 1);
    let report = check_equivalence(&constant);
    assert!(report.functor_ok && !report.essentially_surjective && !report.faithful);
}

fn z2_tables() -> GroupoidTables {
    // One object with morphisms 0 (identity) and 1 (an involution).
    GroupoidTables {
        objects: vec![0],
        morphisms: vec![MorphismRecord { id: 0, src: 0, tgt: 0 }, MorphismRecord { id: 1, src: 0, tgt: 0 }],
        identity: BTreeMap::from([(0, 0)]),
        compose: vec![[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]],
        inverse: BTreeMap::from([(0, 0), (1, 1)]),
    }
}

#[test]
fn table_import_and_violations() {
    let t = z2_tables();
    assert!(validate_tables(&t).unwrap().ok);
    let imported = FiniteGroupoid::from_tables(&t).unwrap();
    assert_eq!(imported.groupoid.cardinality(), Rational::new(1, 2));
    let back = imported.groupoid.to_tables(1000).unwrap();
    assert!(validate_tables(&back).unwrap().ok);

    let mut broken = z2_tables();
    broken.compose[3] = [1, 1, 1];
    let report = validate_tables(&broken).unwrap();
    assert!(!report.ok);
    assert!(!report.violations[0].witness.is_empty());
    assert!(FiniteGroupoid::from_tables(&broken).is_err());

    let mut missing = z2_tables();
    missing.inverse.remove(&1);
    assert!(!validate_tables(&missing).unwrap().ok);
}

#[test]
fn json_format_roundtrip() {
    let json = r#"{"objects":[0,1],"morphisms":[{"id":0,"src":0,"tgt":0},{"id":1,"src":1,"tgt":1},{"id":2,"src":0,"tgt":1},{"id":3,"src":1,"tgt":0}],
        "identity":{"0":0,"1":1},"compose":[[0,0,0],[1,1,1],[2,0,2],[1,2,2],[3,1,3],[0,3,3],[3,2,0],[2,3,1]],"inverse":{"0":0,"1":1,"2":3,"3":2}}"#;
    let t: GroupoidTables = serde_json::from_str(json).unwrap();
    let g = FiniteGroupoid::from_tables(&t).unwrap().groupoid;
    assert_eq!(g.cardinality(), Rational::one());
    assert!(g.validate().ok);
}
