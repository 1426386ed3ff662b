//! A seeded run of the algebraic laws on randomly generated data, used by
//! the command-line `selftest`.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::degroupoidify::{inner_product, inner_product_weighted, matrix, matrix_oracle, vector, RationalMatrix};
use crate::groupoid::{
    action_groupoid, check_equivalence, coproduct, discrete, product, skeleton, FiniteGroupoid, FunctorData,
};
use crate::random::{
    bloat_groupoid, bloat_span, free_action, random_group, random_groupoid, random_groupoid_over, random_span, twist,
};
use crate::rational::Rational;
use crate::span::{
    adjoint, apply_span, check_span_equivalence, compose, essential_preimage, identity_span, scalar, sum,
    weak_pullback, Cospan, GroupoidOver,
};

type Check = fn(&mut StdRng) -> Result<(), String>;

/// One law, checked on `trials` random instances.
pub struct Law {
    pub name: &'static str,
    pub trials: usize,
    pub check: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawResult {
    pub name: String,
    pub trials: usize,
    pub passed: bool,
    /// The first failure, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub laws: Vec<LawResult>,
    pub ok: bool,
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn small(rng: &mut StdRng) -> Arc<FiniteGroupoid> {
    Arc::new(random_groupoid(rng, 4, 20))
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn groupoids_validate(rng: &mut StdRng) -> Result<(), String> {
    let g = random_groupoid(rng, 8, 40);
    let report = g.validate();
    expect(report.ok, || format!("violations {:?}", report.violations))
}

fn cardinality_by_sources(rng: &mut StdRng) -> Result<(), String> {
    let g = random_groupoid(rng, 8, 40);
    expect(g.cardinality() == g.cardinality_by_sources(), || {
        format!("{} vs {}", g.cardinality(), g.cardinality_by_sources())
    })
}

fn sums_and_products(rng: &mut StdRng) -> Result<(), String> {
    let (g, h) = (small(rng), small(rng));
    let c = coproduct(&g, &h);
    let p = product(&g, &h);
    expect(c.groupoid.cardinality() == g.cardinality() + h.cardinality(), || "coproduct".into())?;
    expect(p.groupoid.cardinality() == g.cardinality() * h.cardinality(), || "product".into())
}

fn free_quotients(rng: &mut StdRng) -> Result<(), String> {
    let group = random_group(rng, 6);
    let copies = rng.gen_range(1..=4);
    let order = group.order();
    let a = free_action(rng, group, copies);
    let q = action_groupoid(&a).groupoid.cardinality();
    expect(q == Rational::ratio((order * copies) as u128, order as u128), || format!("|S//G| = {q}"))
}

fn equivalences_preserve_cardinality(rng: &mut StdRng) -> Result<(), String> {
    let g = Arc::new(random_groupoid(rng, 6, 30));
    let b = bloat_groupoid(rng, &g, 3);
    let sk = skeleton(&g);
    expect(check_equivalence(&b.projection).is_equivalence(), || "projection is an equivalence".into())?;
    expect(check_equivalence(&sk.inclusion).is_equivalence(), || "skeleton inclusion is an equivalence".into())?;
    expect(b.groupoid.cardinality() == g.cardinality(), || "bloated cardinality".into())?;
    expect(sk.groupoid.cardinality() == g.cardinality(), || "skeleton cardinality".into())
}

fn matrix_formula_matches_oracle(rng: &mut StdRng) -> Result<(), String> {
    let (x, y) = (small(rng), small(rng));
    let s = random_span(rng, &x, &y, 5, 24);
    expect(matrix(&s) == matrix_oracle(&s).map_err(err)?, || "matrix vs oracle".into())
}

fn composition_is_matrix_product(rng: &mut StdRng) -> Result<(), String> {
    let (x, y, z) = (small(rng), small(rng), small(rng));
    let s = random_span(rng, &x, &y, 5, 24);
    let t = random_span(rng, &y, &z, 5, 24);
    let lhs = matrix(&compose(&t, &s).map_err(err)?);
    expect(lhs == &matrix(&t) * &matrix(&s), || "matrix(T∘S)".into())?;
    expect(matrix(&identity_span(&x)) == RationalMatrix::identity(x.class_representatives()), || "identity".into())
}

fn composition_is_associative(rng: &mut StdRng) -> Result<(), String> {
    let (w, x, y, z) = (small(rng), small(rng), small(rng), small(rng));
    let r = random_span(rng, &w, &x, 3, 12);
    let s = random_span(rng, &x, &y, 3, 12);
    let t = random_span(rng, &y, &z, 3, 12);
    let left = compose(&t, &compose(&s, &r).map_err(err)?).map_err(err)?;
    let right = compose(&compose(&t, &s).map_err(err)?, &r).map_err(err)?;
    expect(matrix(&left) == matrix(&right), || "matrices of T(SR) and (TS)R".into())?;
    let report = check_span_equivalence(&crate::span::associator(&t, &s, &r).map_err(err)?);
    expect(report.ok, || format!("associator {:?}", report.violations))
}

fn linearity(rng: &mut StdRng) -> Result<(), String> {
    let (x, y) = (small(rng), small(rng));
    let s = random_span(rng, &x, &y, 4, 20);
    let t = random_span(rng, &x, &y, 4, 20);
    let lambda = small(rng);
    let card = lambda.cardinality();
    expect(matrix(&sum(&s, &t).map_err(err)?) == &matrix(&s) + &matrix(&t), || "sum".into())?;
    expect(matrix(&scalar(&lambda, &s)) == matrix(&s).scale(&card), || "scalar".into())?;
    let phi = random_groupoid_over(rng, &x, 4, 20);
    let psi = random_groupoid_over(rng, &x, 4, 20);
    expect(vector(&phi.coproduct(&psi).map_err(err)?) == &vector(&phi) + &vector(&psi), || "vector sum".into())?;
    expect(vector(&phi.scale(&lambda)) == vector(&phi).scale(&card), || "vector scalar".into())?;
    let applied = vector(&apply_span(&s, &phi).map_err(err)?);
    expect(applied == matrix(&s).try_apply(&vector(&phi)).map_err(err)?, || "apply vs matrix".into())
}

fn inner_product_laws(rng: &mut StdRng) -> Result<(), String> {
    let (x, y) = (small(rng), small(rng));
    let phi = random_groupoid_over(rng, &x, 4, 20);
    let psi = random_groupoid_over(rng, &x, 4, 20);
    let chi = random_groupoid_over(rng, &x, 4, 20);
    let ip = |a: &GroupoidOver, b: &GroupoidOver| inner_product(a, b).map_err(err);
    expect(ip(&phi, &psi)? == ip(&psi, &phi)?, || "symmetry".into())?;
    expect(ip(&phi, &psi)? == inner_product_weighted(&phi, &psi).map_err(err)?, || "weighted form".into())?;
    let sum_right = ip(&phi, &psi.coproduct(&chi).map_err(err)?)?;
    expect(sum_right == ip(&phi, &psi)? + ip(&phi, &chi)?, || "additivity".into())?;
    let lambda = small(rng);
    expect(ip(&phi, &psi.scale(&lambda))? == lambda.cardinality() * ip(&phi, &psi)?, || "scalar".into())?;
    expect(ip(&phi, &phi)?.is_positive(), || "positivity".into())?;
    let s = random_span(rng, &x, &y, 4, 20);
    let upstairs = random_groupoid_over(rng, &y, 4, 20);
    let lhs = ip(&upstairs, &apply_span(&s, &phi).map_err(err)?)?;
    let rhs = ip(&apply_span(&adjoint(&s), &upstairs).map_err(err)?, &phi)?;
    expect(lhs == rhs, || "adjoint".into())
}

fn adjoint_laws(rng: &mut StdRng) -> Result<(), String> {
    let (x, y, z) = (small(rng), small(rng), small(rng));
    let s = random_span(rng, &y, &z, 4, 20);
    let t = random_span(rng, &x, &y, 4, 20);
    let u = random_span(rng, &y, &z, 4, 20);
    let lhs = matrix(&adjoint(&compose(&s, &t).map_err(err)?));
    let rhs = matrix(&compose(&adjoint(&t), &adjoint(&s)).map_err(err)?);
    expect(lhs == rhs, || "adjoint of a composite".into())?;
    let added = matrix(&adjoint(&sum(&s, &u).map_err(err)?));
    expect(added == matrix(&sum(&adjoint(&s), &adjoint(&u)).map_err(err)?), || "adjoint of a sum".into())?;
    let lambda = small(rng);
    expect(matrix(&adjoint(&scalar(&lambda, &s))) == matrix(&scalar(&lambda, &adjoint(&s))), || {
        "adjoint of a scalar".into()
    })
}

fn well_defined_on_classes(rng: &mut StdRng) -> Result<(), String> {
    let x = small(rng);
    let y = small(rng);
    let target = rng.gen_range(0..x.object_count());
    // |1//S₂ + 1//S₂| = 1 = |point|, over the same object.
    let half = Arc::new(crate::groupoid::one_object(Arc::new(crate::group::Group::Symmetric(2))));
    let two_halves = coproduct(&half, &half).groupoid;
    let over = GroupoidOver::new(FunctorData::constant(&two_halves, &x, target));
    let point = GroupoidOver::new(FunctorData::constant(&Arc::new(discrete(1)), &x, target));
    expect(vector(&over) == vector(&point), || "inputs have equal vectors".into())?;
    let s = random_span(rng, &x, &y, 5, 24);
    let a = vector(&apply_span(&s, &over).map_err(err)?);
    let b = vector(&apply_span(&s, &point).map_err(err)?);
    expect(a == b, || "outputs differ".into())
}

fn equivalent_spans_have_equal_matrices(rng: &mut StdRng) -> Result<(), String> {
    let (x, y) = (small(rng), small(rng));
    let s = random_span(rng, &x, &y, 5, 24);
    let (bigger, e) = bloat_span(rng, &s, 3);
    let report = check_span_equivalence(&e);
    expect(report.ok, || format!("witness {:?}", report.violations))?;
    expect(matrix(&bigger) == matrix(&s), || "matrices differ".into())
}

fn equivalent_cospans_have_equal_pullbacks(rng: &mut StdRng) -> Result<(), String> {
    let z = small(rng);
    let (a, b) = (small(rng), small(rng));
    let f = crate::random::random_functor(rng, &a, &z);
    let g = crate::random::random_functor(rng, &b, &z);
    let (ba, bb) = (bloat_groupoid(rng, &a, 2), bloat_groupoid(rng, &b, 2));
    let (f2, _) = twist(rng, &FunctorData::compose(&f, &ba.projection).map_err(err)?);
    let (g2, _) = twist(rng, &FunctorData::compose(&g, &bb.projection).map_err(err)?);
    let p1 = weak_pullback(&Cospan::new(f, g).map_err(err)?).map_err(err)?;
    let p2 = weak_pullback(&Cospan::new(f2, g2).map_err(err)?).map_err(err)?;
    expect(p1.groupoid.cardinality() == p2.groupoid.cardinality(), || "pullback cardinalities".into())
}

fn equivalences_restrict_to_preimages(rng: &mut StdRng) -> Result<(), String> {
    let x = small(rng);
    let v = random_groupoid_over(rng, &x, 5, 24);
    let b = bloat_groupoid(rng, v.total(), 3);
    let pulled = GroupoidOver::new(FunctorData::compose(v.projection(), &b.projection).map_err(err)?);
    for c in x.class_representatives() {
        let lhs = essential_preimage(&v, c).map_err(err)?.groupoid.cardinality();
        let rhs = essential_preimage(&pulled, c).map_err(err)?.groupoid.cardinality();
        expect(lhs == rhs, || format!("preimage of {c}"))?;
    }
    Ok(())
}

/// Every law with its default number of trials.
pub fn laws() -> Vec<Law> {
    vec![
        Law { name: "generated groupoids validate", trials: 200, check: groupoids_validate },
        Law {
            name: "cardinality by classes equals cardinality by sources",
            trials: 200,
            check: cardinality_by_sources,
        },
        Law { name: "cardinality of sums and products", trials: 50, check: sums_and_products },
        Law { name: "free quotients have cardinality |S|/|G|", trials: 50, check: free_quotients },
        Law { name: "equivalences preserve cardinality", trials: 50, check: equivalences_preserve_cardinality },
        Law { name: "matrix formula equals the pullback oracle", trials: 100, check: matrix_formula_matches_oracle },
        Law {
            name: "composition degroupoidifies to the matrix product",
            trials: 50,
            check: composition_is_matrix_product,
        },
        Law { name: "composition is associative up to equivalence", trials: 20, check: composition_is_associative },
        Law { name: "sums and scalars are linear", trials: 50, check: linearity },
        Law { name: "inner product laws", trials: 30, check: inner_product_laws },
        Law { name: "adjoint laws", trials: 30, check: adjoint_laws },
        Law { name: "spans act on classes", trials: 20, check: well_defined_on_classes },
        Law { name: "equivalent spans have equal matrices", trials: 20, check: equivalent_spans_have_equal_matrices },
        Law {
            name: "equivalent cospans have equal pullbacks",
            trials: 30,
            check: equivalent_cospans_have_equal_pullbacks,
        },
        Law {
            name: "equivalences restrict to essential preimages",
            trials: 30,
            check: equivalences_restrict_to_preimages,
        },
    ]
}

/// Runs every law; each law gets its own generator seeded from `seed`.
pub fn run(seed: u64) -> SelftestReport {
    let laws: Vec<LawResult> = laws()
        .into_iter()
        .enumerate()
        .map(|(i, law)| {
            let mut rng = StdRng::seed_from_u64(seed.wrapping_add(i as u64));
            let failure = (0..law.trials).find_map(|t| (law.check)(&mut rng).err().map(|e| format!("trial {t}: {e}")));
            LawResult { name: law.name.to_string(), trials: law.trials, passed: failure.is_none(), failure }
        })
        .collect();
    let ok = laws.iter().all(|l| l.passed);
    SelftestReport { seed, laws, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_law_holds() {
        let report = run(0);
        for law in &report.laws {
            assert!(law.passed, "{}: {:?}", law.name, law.failure);
        }
    }
}
