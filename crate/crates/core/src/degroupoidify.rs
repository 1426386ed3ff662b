//! From groupoids to rational vectors and from spans to rational matrices.
//!
//! Bases are indexed by isomorphism classes in ascending order of their
//! least object, which is also the order of the components.

use std::fmt::Write as _;
use std::ops::{Add, Mul};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::factorial;
use crate::groupoid::{full_subgroupoid, same, FiniteGroupoid, ObjectId, Subgroupoid};
use crate::rational::Rational;
use crate::span::{apply_span, weak_pullback_reduced, Cospan, GroupoidOver, Span};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalVector {
    /// Class representatives of the base.
    pub classes: Vec<ObjectId>,
    pub entries: Vec<Rational>,
}

impl RationalVector {
    pub fn zero(classes: Vec<ObjectId>) -> Self {
        let entries = vec![Rational::zero(); classes.len()];
        RationalVector { classes, entries }
    }

    /// The entry at the class with representative `x`.
    pub fn at(&self, x: ObjectId) -> Option<&Rational> {
        self.classes.iter().position(|&c| c == x).map(|i| &self.entries[i])
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        RationalVector { classes: self.classes.clone(), entries: self.entries.iter().map(|e| e * lambda).collect() }
    }

    fn check_same_basis(&self, other: &Self) -> Result<()> {
        if self.classes != other.classes {
            return Err(Error::BoundaryMismatch("vectors over different bases".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_basis(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(RationalVector { classes: self.classes.clone(), entries })
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: &RationalVector) -> RationalVector {
        self.try_add(rhs).expect("vectors over the same basis")
    }
}

/// A dense matrix with rows indexed by the classes of the codomain and
/// columns by the classes of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMatrix {
    pub rows: Vec<ObjectId>,
    pub columns: Vec<ObjectId>,
    pub entries: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zero(rows: Vec<ObjectId>, columns: Vec<ObjectId>) -> Self {
        let entries = vec![vec![Rational::zero(); columns.len()]; rows.len()];
        RationalMatrix { rows, columns, entries }
    }

    pub fn identity(classes: Vec<ObjectId>) -> Self {
        let mut m = Self::zero(classes.clone(), classes);
        for i in 0..m.rows.len() {
            m.entries[i][i] = Rational::one();
        }
        m
    }

    /// The entry at row class `y` and column class `x`, by representative.
    pub fn at(&self, y: ObjectId, x: ObjectId) -> Option<&Rational> {
        let i = self.rows.iter().position(|&r| r == y)?;
        let j = self.columns.iter().position(|&c| c == x)?;
        Some(&self.entries[i][j])
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        let entries = self.entries.iter().map(|row| row.iter().map(|e| e * lambda).collect()).collect();
        RationalMatrix { rows: self.rows.clone(), columns: self.columns.clone(), entries }
    }

    pub fn transpose(&self) -> Self {
        let entries =
            (0..self.columns.len()).map(|j| self.entries.iter().map(|row| row[j].clone()).collect()).collect();
        RationalMatrix { rows: self.columns.clone(), columns: self.rows.clone(), entries }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.columns != other.columns {
            return Err(Error::BoundaryMismatch("matrices of different shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(RationalMatrix { rows: self.rows.clone(), columns: self.columns.clone(), entries })
    }

    /// `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.columns != other.rows {
            return Err(Error::BoundaryMismatch("matrix product: inner dimensions differ".into()));
        }
        let mut out = Self::zero(self.rows.clone(), other.columns.clone());
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.entries[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, v: &RationalVector) -> Result<RationalVector> {
        if self.columns != v.classes {
            return Err(Error::BoundaryMismatch("matrix applied to a vector over another basis".into()));
        }
        let entries = self.entries.iter().map(|row| row.iter().zip(&v.entries).map(|(a, b)| a * b).sum()).collect();
        Ok(RationalVector { classes: self.rows.clone(), entries })
    }

    /// Comma-separated values with a header of column representatives and
    /// the row representative leading every line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class");
        for c in &self.columns {
            write!(out, ",{c}").expect("write to string");
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.entries) {
            write!(out, "{r}").expect("write to string");
            for e in row {
                write!(out, ",{e}").expect("write to string");
            }
            out.push('\n');
        }
        out
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_add(rhs).expect("matrices of the same shape")
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("composable matrices")
    }
}

/// Coefficients `c_0, …, c_N` of an exponential generating function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub coefficients: Vec<Rational>,
}

impl CoefficientSeries {
    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }
}

fn classes(x: &FiniteGroupoid) -> Vec<ObjectId> {
    x.class_representatives()
}

/// `Ψ([x]) = |v⁻¹(x)|`. Each component of the total groupoid lies in
/// exactly one essential preimage and contributes `1/|Aut|` there.
pub fn vector(v: &GroupoidOver) -> RationalVector {
    let base = v.base();
    let mut out = RationalVector::zero(classes(base));
    for comp in v.total().components() {
        let class = base.component_of(v.projection().map_object(comp.base()));
        out.entries[class] += Rational::recip_of(comp.group().order() as u128);
    }
    out
}

/// The full subgroupoid of the apex on objects `s` with `p(s) ≅ x` and `q(s) ≅ y`.
pub fn joint_preimage(s: &Span, x: ObjectId, y: ObjectId) -> Result<Subgroupoid> {
    let (dom, cod) = (s.domain(), s.codomain());
    dom.check_object(x)?;
    cod.check_object(y)?;
    let objects: Vec<ObjectId> = s
        .apex()
        .objects()
        .filter(|&a| dom.isomorphic(s.right().map_object(a), x) && cod.isomorphic(s.left().map_object(a), y))
        .collect();
    full_subgroupoid(s.apex(), &objects)
}

/// Tameness of a groupoid over a base: every essential preimage has finite
/// cardinality. Holds for all finite data; the check still walks every fiber.
pub fn is_tame(v: &GroupoidOver) -> bool {
    let v = vector(v);
    v.entries.len() == v.classes.len()
}

/// Square-integrability. Every vector over a finite base qualifies.
pub fn is_square_integrable(_v: &GroupoidOver) -> bool {
    true
}

/// The two tameness conditions on a span: every joint preimage is finite,
/// and the sum defining each matrix entry has finitely many terms.
pub fn span_is_tame(s: &Span) -> bool {
    let m = matrix(s);
    m.entries.iter().all(|row| row.len() == m.columns.len())
}

/// Entry `([y],[x])` is `Σ |Aut(x)|/|Aut(s)|` over the classes `[s]` of the
/// joint preimage of `x` and `y`.
pub fn matrix(s: &Span) -> RationalMatrix {
    let (dom, cod) = (s.domain(), s.codomain());
    let mut out = RationalMatrix::zero(classes(cod), classes(dom));
    for comp in s.apex().components() {
        let b = comp.base();
        let col = dom.component_of(s.right().map_object(b));
        let row = cod.component_of(s.left().map_object(b));
        let aut_x = dom.component(col).group().order() as u128;
        out.entries[row][col] += Rational::ratio(aut_x, comp.group().order() as u128);
    }
    out
}

/// Column `[x]` is the vector of the span applied to the point over `x`.
pub fn matrix_oracle(s: &Span) -> Result<RationalMatrix> {
    let (dom, cod) = (s.domain(), s.codomain());
    let cols = classes(dom);
    let mut out = RationalMatrix::zero(classes(cod), cols.clone());
    for (j, &x) in cols.iter().enumerate() {
        let image = vector(&apply_span(s, &GroupoidOver::point(dom, x)?)?);
        for (i, e) in image.entries.into_iter().enumerate() {
            out.entries[i][j] = e;
        }
    }
    Ok(out)
}

/// `|⟨Φ, Ψ⟩|`, computed on the skeletal weak pullback of the projections.
pub fn inner_product(phi: &GroupoidOver, psi: &GroupoidOver) -> Result<Rational> {
    if !same(phi.base(), psi.base()) {
        return Err(Error::BoundaryMismatch("inner product over different bases".into()));
    }
    let pb = weak_pullback_reduced(&Cospan::new(phi.projection().clone(), psi.projection().clone())?)?;
    Ok(pb.groupoid.cardinality())
}

/// `Σ |Aut(x)| Φ([x]) Ψ([x])` over the classes of the base.
pub fn inner_product_weighted(phi: &GroupoidOver, psi: &GroupoidOver) -> Result<Rational> {
    if !same(phi.base(), psi.base()) {
        return Err(Error::BoundaryMismatch("inner product over different bases".into()));
    }
    let base = phi.base();
    let (a, b) = (vector(phi), vector(psi));
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .enumerate()
        .map(|(c, (x, y))| Rational::from_u128(base.component(c).group().order() as u128) * x * y)
        .sum())
}

/// Whether `x` is the skeletal groupoid of sets of size `0..=N`: one object
/// per size, object `n` with `n!` automorphisms.
pub fn is_truncated_sets(x: &FiniteGroupoid) -> bool {
    x.is_skeletal() && x.objects().all(|n| n <= 20 && x.group_of(n).order() as u128 == factorial(n))
}

/// `c_n = |v⁻¹(n)|` for `n ≤ max`.
pub fn generating_function(v: &GroupoidOver, max: usize) -> Result<CoefficientSeries> {
    let base: &Arc<FiniteGroupoid> = v.base();
    if !is_truncated_sets(base) {
        return Err(Error::InvalidArgument("generating functions need a base of finite sets by size".into()));
    }
    if max >= base.object_count() {
        return Err(Error::InvalidArgument(format!(
            "degree {max} exceeds the truncation at {}",
            base.object_count().saturating_sub(1)
        )));
    }
    let vec = vector(v);
    Ok(CoefficientSeries { coefficients: vec.entries.into_iter().take(max + 1).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::groupoid::{discrete, one_object, FunctorData};
    use crate::span::{essential_preimage, identity_span};

    fn two_classes() -> Arc<FiniteGroupoid> {
        Arc::new(
            FiniteGroupoid::from_components(
                3,
                vec![(vec![0, 2], Arc::new(Group::Symmetric(2))), (vec![1], Arc::new(Group::trivial()))],
            )
            .unwrap(),
        )
    }

    #[test]
    fn vector_matches_essential_preimages() {
        let x = two_classes();
        let v = GroupoidOver::new(FunctorData::identity(&x));
        let vec = vector(&v);
        assert_eq!(vec.classes, vec![0, 1]);
        for &c in &vec.classes {
            assert_eq!(vec.at(c).unwrap(), &essential_preimage(&v, c).unwrap().groupoid.cardinality());
        }
        assert_eq!(vec.entries, vec![Rational::new(1, 2), Rational::one()]);
    }

    #[test]
    fn identity_span_gives_identity_matrix() {
        let x = two_classes();
        let s = identity_span(&x);
        assert_eq!(matrix(&s), RationalMatrix::identity(vec![0, 1]));
        assert_eq!(matrix_oracle(&s).unwrap(), matrix(&s));
    }

    #[test]
    fn point_gives_indicator_and_inner_products_agree() {
        let x = two_classes();
        let p = GroupoidOver::point(&x, 2).unwrap();
        assert_eq!(vector(&p).entries, vec![Rational::one(), Rational::zero()]);
        let g = Arc::new(one_object(Arc::new(Group::Symmetric(2))));
        let q = GroupoidOver::new(FunctorData::from_fn(g, x.clone(), |_| 0, |m| x.base_automorphism(0, m)).unwrap());
        for (a, b) in [(&p, &p), (&p, &q), (&q, &q)] {
            assert_eq!(inner_product(a, b).unwrap(), inner_product_weighted(a, b).unwrap());
        }
        assert_eq!(inner_product(&p, &p).unwrap(), Rational::integer(2));
    }

    #[test]
    fn empty_apex_gives_zero_matrix() {
        let x = two_classes();
        let s = crate::span::zero_span(&x, &x);
        assert_eq!(matrix(&s), RationalMatrix::zero(vec![0, 1], vec![0, 1]));
        assert_eq!(matrix_oracle(&s).unwrap(), matrix(&s));
    }

    #[test]
    fn matrix_algebra_and_csv() {
        let a = RationalMatrix {
            rows: vec![0, 1],
            columns: vec![0, 1],
            entries: vec![vec![Rational::one(), Rational::new(1, 2)], vec![Rational::zero(), Rational::integer(3)]],
        };
        let sq = &a * &a;
        assert_eq!(sq.entries[0][1], Rational::integer(2));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.to_csv(), "class,0,1\n0,1/1,1/2\n1,0/1,3/1\n");
    }

    #[test]
    fn generating_function_requires_sets_by_size() {
        let x = two_classes();
        let v = GroupoidOver::new(FunctorData::identity(&x));
        assert!(generating_function(&v, 1).is_err());
        let d = Arc::new(discrete(2));
        let v = GroupoidOver::new(FunctorData::identity(&d));
        let gf = generating_function(&v, 1).unwrap();
        assert_eq!(gf.coefficients, vec![Rational::one(), Rational::one()]);
        assert!(generating_function(&v, 2).is_err());
    }
}
