mod common;

use std::time::Instant;

use groupoidify::degroupoidify::{generating_function, inner_product, matrix, vector};
use groupoidify::oscillator::{
    build_e, feynman_entry, ladder_spans, normal_order, psi_n, realize, two_colored, verify_commutation,
    FormalOperatorSum,
};
use groupoidify::span::{apply_span, sum};
use groupoidify::Rational;

#[test]
fn truncated_sets_have_partial_sum_cardinality() {
    for n in [0u64, 3, 7, 10] {
        let e = build_e(n as usize).unwrap();
        assert_eq!(e.groupoid.cardinality(), common::e_partial_sum(n));
    }
    assert_eq!(build_e(3).unwrap().groupoid.cardinality(), Rational::new(8, 3));
    assert!(build_e(13).is_err());
}

#[test]
fn ladder_matrices_shift_by_one() {
    let n = 6;
    let ladder = ladder_spans(n).unwrap();
    let a = matrix(&ladder.annihilation);
    let astar = matrix(&ladder.creation);
    for row in 0..=n {
        for col in 0..=n {
            let expect_a = if row + 1 == col { Rational::integer(col as i64) } else { Rational::zero() };
            let expect_astar = if row == col + 1 { Rational::one() } else { Rational::zero() };
            assert_eq!(a.entries[row][col], expect_a, "A at ({row},{col})");
            assert_eq!(astar.entries[row][col], expect_astar, "A* at ({row},{col})");
        }
    }
}

#[test]
fn commutation_relation_on_safe_block() {
    let small = verify_commutation(2).unwrap();
    assert!(small.ok);
    assert_eq!(small.excluded_band, vec![2]);
    let report = verify_commutation(5).unwrap();
    assert!(report.ok, "{:?}", report.mismatches);
    let ints = |v: &[Rational]| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
    assert_eq!(&ints(&report.annihilate_after_create_diagonal)[..5], &[1, 2, 3, 4, 5]);
    assert_eq!(ints(&report.create_after_annihilate_diagonal), vec![0, 1, 2, 3, 4, 5]);
}

#[test]
fn stuff_types() {
    let e = build_e(6).unwrap();
    for n in 0..=6 {
        let v = vector(&psi_n(n, &e).unwrap());
        for m in 0..=6 {
            let expected =
                if m == n { Rational::ratio(1, common::factorial(n as u64) as u128) } else { Rational::zero() };
            assert_eq!(v.entries[m], expected);
        }
    }
    let colored = two_colored(&e).unwrap();
    let gf = generating_function(&colored, 6).unwrap();
    for n in 0..=6u64 {
        assert_eq!(gf.coefficients[n as usize], Rational::ratio(1 << n, common::factorial(n) as u128));
    }
    // Colourings of an n-set up to permutation are determined by the number of black points.
    for n in 0..=6 {
        let fiber = groupoidify::span::essential_preimage(&colored, n).unwrap();
        assert_eq!(fiber.groupoid.components().len(), n + 1);
        assert_eq!(fiber.groupoid.object_count(), 1 << n);
    }
    assert!(psi_n(7, &e).is_err());
}

#[test]
fn symmetric_point_inner_products() {
    let e = build_e(6).unwrap();
    for m in 0..=6 {
        for n in 0..=6 {
            let ip = inner_product(&psi_n(m, &e).unwrap(), &psi_n(n, &e).unwrap()).unwrap();
            let expected =
                if m == n { Rational::ratio(1, common::factorial(n as u64) as u128) } else { Rational::zero() };
            assert_eq!(ip, expected, "m={m} n={n}");
        }
    }
}

#[test]
fn field_span_acts_as_derivative_plus_multiplication() {
    let ladder = ladder_spans(6).unwrap();
    let phi = sum(&ladder.annihilation, &ladder.creation).unwrap();
    assert_eq!(realize(&"a + a*".parse().unwrap(), &ladder).unwrap(), phi);
    for n in 1..=5u64 {
        let out = vector(&apply_span(&phi, &psi_n(n as usize, &ladder.sets).unwrap()).unwrap());
        let expect_down = Rational::ratio(n as u128, common::factorial(n) as u128);
        let expect_up = Rational::ratio(1, common::factorial(n) as u128);
        assert_eq!(out.entries[n as usize - 1], expect_down);
        assert_eq!(out.entries[n as usize + 1], expect_up);
    }
}

#[test]
fn normal_order_coefficients_are_binomial() {
    for n in 0..=8usize {
        let s = normal_order(n);
        assert_eq!(s.total(), 1 << n);
        for (w, &c) in s.terms() {
            let stars = w.iter().filter(|l| **l == groupoidify::oscillator::Letter::Create).count();
            let binom = (0..stars).fold(1u64, |acc, k| acc * (n - k) as u64 / (k + 1) as u64);
            assert_eq!(c, binom);
        }
    }
}

#[test]
fn realized_normal_orders_match_matrix_algebra() {
    let ladder = ladder_spans(6).unwrap();
    let a = matrix(&ladder.annihilation);
    let astar = matrix(&ladder.creation);
    let m = matrix(&realize(&normal_order(2), &ladder).unwrap());
    let expected = &(&(&a * &a) + &(&(&astar * &a).scale(&Rational::integer(2)))) + &(&astar * &astar);
    for row in 0..=4 {
        for col in 0..=4 {
            assert_eq!(m.entries[row][col], expected.entries[row][col]);
        }
    }
    assert_eq!(
        realize(&"1".parse().unwrap(), &ladder).unwrap(),
        groupoidify::span::identity_span(&ladder.sets.groupoid)
    );
    // Parity: :Φ³: only connects sizes of opposite parity.
    let m3 = matrix(&realize(&normal_order(3), &ladder).unwrap());
    for row in 0..=3 {
        for col in 0..=3 {
            if (row + col) % 2 == 0 {
                assert!(m3.entries[row][col].is_zero());
            }
        }
    }
}

#[test]
fn diagram_counts_match_labelled_matchings() {
    for valences in common::partitions_up_to(6) {
        for i in 0..=4 {
            for j in 0..=4 {
                assert_eq!(
                    feynman_entry(&valences, i, j).unwrap(),
                    common::labelled_matching_entry(&valences, i, j),
                    "valences {valences:?}, i={i}, j={j}"
                );
            }
        }
    }
}

#[test]
fn diagram_counts_match_realized_spans_small() {
    let ladder = ladder_spans(6).unwrap();
    let started = Instant::now();
    for valences in common::partitions_up_to(4) {
        let mut product = FormalOperatorSum::word(vec![]);
        for &n in &valences {
            product = product.product(&normal_order(n));
        }
        let m = matrix(&realize(&product, &ladder).unwrap());
        for i in 0..=3 {
            for j in 0..=3 {
                assert_eq!(
                    m.entries[j][i],
                    feynman_entry(&valences, i, j).unwrap(),
                    "valences {valences:?}, i={i}, j={j}"
                );
            }
        }
    }
    eprintln!("small two-route check took {:?}", started.elapsed());
}

#[test]
fn verification_suite_at_small_bound() {
    let report = groupoidify::oscillator::verify(4).unwrap();
    assert!(report.ok);
    assert!(report.diagram_checks > 0);
    assert_eq!(report.normal_orders[2], "aa + 2a*a + a*a*".parse().unwrap());
}
