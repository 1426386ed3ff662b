mod common;

use std::sync::Arc;

use groupoidify::degroupoidify::{inner_product, inner_product_weighted, matrix, vector};
use groupoidify::groupoid::{check_equivalence, coproduct, product, skeleton, validate_tables, FiniteGroupoid};
use groupoidify::random::{bloat_span, random_groupoid, random_groupoid_over, random_span};
use groupoidify::span::{adjoint, apply_span, compose, sum};
use groupoidify::Rational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn groupoid(seed: u64, objects: usize, morphisms: usize) -> Arc<FiniteGroupoid> {
    Arc::new(random_groupoid(&mut StdRng::seed_from_u64(seed), objects, morphisms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_groupoids_are_valid(seed in any::<u64>()) {
        let g = groupoid(seed, 8, 40);
        prop_assert!(g.validate().ok);
        prop_assert!(validate_tables(&g.to_tables(u128::MAX).unwrap()).unwrap().ok);
    }

    #[test]
    fn cardinality_routes_agree(seed in any::<u64>()) {
        let g = groupoid(seed, 8, 40);
        let raw = common::RawGroupoid::of(&g).cardinality();
        prop_assert_eq!(g.cardinality(), g.cardinality_by_sources());
        prop_assert_eq!(g.cardinality(), raw);
    }

    #[test]
    fn table_roundtrip_preserves_structure(seed in any::<u64>()) {
        let g = groupoid(seed, 6, 30);
        let imported = FiniteGroupoid::from_tables(&g.to_tables(u128::MAX).unwrap()).unwrap().groupoid;
        prop_assert_eq!(imported.cardinality(), g.cardinality());
        prop_assert_eq!(imported.object_count(), g.object_count());
        prop_assert_eq!(imported.morphism_count(), g.morphism_count());
    }

    #[test]
    fn skeleton_is_an_idempotent_equivalence(seed in any::<u64>()) {
        let g = groupoid(seed, 8, 40);
        let sk = skeleton(&g);
        prop_assert!(sk.groupoid.is_skeletal());
        prop_assert_eq!(sk.groupoid.cardinality(), g.cardinality());
        prop_assert!(check_equivalence(&sk.inclusion).is_equivalence());
        prop_assert!(check_equivalence(&sk.retraction).is_equivalence());
        let again = skeleton(&sk.groupoid);
        prop_assert_eq!(&*again.groupoid, &*sk.groupoid);
    }

    #[test]
    fn cardinality_is_additive_and_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let (g, h) = (groupoid(a, 4, 16), groupoid(b, 4, 16));
        prop_assert_eq!(coproduct(&g, &h).groupoid.cardinality(), g.cardinality() + h.cardinality());
        prop_assert_eq!(product(&g, &h).groupoid.cardinality(), g.cardinality() * h.cardinality());
    }

    #[test]
    fn matrix_matches_raw_oracle(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (x, y) = (Arc::new(random_groupoid(&mut rng, 4, 16)), Arc::new(random_groupoid(&mut rng, 4, 16)));
        let s = random_span(&mut rng, &x, &y, 5, 24);
        prop_assert_eq!(matrix(&s).entries, common::span_matrix_oracle(&s));
        prop_assert_eq!(matrix(&adjoint(&s)).entries.len(), matrix(&s).transpose().entries.len());
    }

    #[test]
    fn degroupoidification_is_a_functor(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let gs: Vec<Arc<FiniteGroupoid>> = (0..3).map(|_| Arc::new(random_groupoid(&mut rng, 3, 12))).collect();
        let s = random_span(&mut rng, &gs[0], &gs[1], 4, 16);
        let t = random_span(&mut rng, &gs[1], &gs[2], 4, 16);
        let expected = common::mat_mul(&common::span_matrix_oracle(&t), &common::span_matrix_oracle(&s));
        prop_assert_eq!(matrix(&compose(&t, &s).unwrap()).entries, expected);
        let s2 = random_span(&mut rng, &gs[0], &gs[1], 4, 16);
        prop_assert_eq!(matrix(&sum(&s, &s2).unwrap()), matrix(&s).try_add(&matrix(&s2)).unwrap());
    }

    #[test]
    fn inner_product_is_symmetric_and_positive(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let x = Arc::new(random_groupoid(&mut rng, 4, 16));
        let (phi, psi) = (random_groupoid_over(&mut rng, &x, 4, 16), random_groupoid_over(&mut rng, &x, 4, 16));
        let ip = inner_product(&phi, &psi).unwrap();
        prop_assert_eq!(&ip, &inner_product(&psi, &phi).unwrap());
        prop_assert_eq!(&ip, &inner_product_weighted(&phi, &psi).unwrap());
        let norm = inner_product(&phi, &phi).unwrap();
        prop_assert!(!norm.is_positive() == (phi.total().object_count() == 0));
    }

    #[test]
    fn adjoint_is_adjoint_for_the_inner_product(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (x, y) = (Arc::new(random_groupoid(&mut rng, 3, 12)), Arc::new(random_groupoid(&mut rng, 3, 12)));
        let s = random_span(&mut rng, &x, &y, 4, 16);
        let phi = random_groupoid_over(&mut rng, &x, 3, 12);
        let psi = random_groupoid_over(&mut rng, &y, 3, 12);
        let left = inner_product(&psi, &apply_span(&s, &phi).unwrap()).unwrap();
        let right = inner_product(&apply_span(&adjoint(&s), &psi).unwrap(), &phi).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn bloating_preserves_the_matrix(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (x, y) = (Arc::new(random_groupoid(&mut rng, 4, 16)), Arc::new(random_groupoid(&mut rng, 4, 16)));
        let s = random_span(&mut rng, &x, &y, 4, 16);
        let (bloated, witness) = bloat_span(&mut rng, &s, 3);
        prop_assert!(groupoidify::span::check_span_equivalence(&witness).ok);
        prop_assert_eq!(matrix(&bloated), matrix(&s));
    }

    #[test]
    fn vectors_match_raw_oracle(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let x = Arc::new(random_groupoid(&mut rng, 5, 20));
        let v = random_groupoid_over(&mut rng, &x, 5, 20);
        prop_assert_eq!(vector(&v).entries, common::over_vector_oracle(&v));
    }

    #[test]
    fn rationals_roundtrip_through_text(n in -1000i64..1000, d in 1i64..1000) {
        let r = Rational::new(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }
}
