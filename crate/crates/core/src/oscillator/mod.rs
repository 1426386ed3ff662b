//! The groupoid of finite sets truncated at a size bound, the ladder spans
//! that degroupoidify to annihilation and creation operators, and the
//! stuff types and diagram counts built on them.

mod feynman;
mod operators;

use std::sync::Arc;

use serde::Serialize;

pub use feynman::{enumerate_diagrams, feynman_entry, FeynmanDiagram, MAX_DIAGRAM_HALF_EDGES};
pub use operators::{normal_order, realize, FormalOperatorSum, Letter, Word};

use crate::degroupoidify::{matrix, RationalMatrix};
use crate::error::{Error, Result};
use crate::group::{Group, MAX_SYMMETRIC_DEGREE};
use crate::groupoid::{action_groupoid, coproduct, one_object, FiniteGroupoid, FunctorData, GroupAction, ObjectId};
use crate::rational::Rational;
use crate::span::{adjoint, compose, identity_span, sum, GroupoidOver, Span};

/// Largest size bound accepted by [`ladder_spans`]. Weak pullbacks of ladder
/// composites work with `S_N` directly, so the bound stays small.
pub const MAX_LADDER_SIZE: usize = 7;

/// Finite sets of size `0..=N` with bijections, one object per size.
#[derive(Debug, Clone)]
pub struct TruncatedE {
    pub max_size: usize,
    pub groupoid: Arc<FiniteGroupoid>,
}

pub fn build_e(max_size: usize) -> Result<TruncatedE> {
    if max_size > MAX_SYMMETRIC_DEGREE {
        return Err(Error::CapExceeded {
            what: "size bound for finite sets".into(),
            needed: max_size as u128,
            cap: MAX_SYMMETRIC_DEGREE as u128,
        });
    }
    let parts = (0..=max_size).map(|n| (vec![n], Arc::new(Group::Symmetric(n)))).collect();
    let groupoid = Arc::new(FiniteGroupoid::from_components(max_size + 1, parts)?);
    Ok(TruncatedE { max_size, groupoid })
}

/// The annihilation span `A` and creation span `A* = A†`.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub sets: TruncatedE,
    pub annihilation: Span,
    pub creation: Span,
}

/// `A` has apex the sets of size below `N`, left leg the inclusion and
/// right leg `S ↦ S + 1`, which extends a permutation by fixing the new
/// top element.
pub fn ladder_spans(max_size: usize) -> Result<Ladder> {
    if max_size == 0 || max_size > MAX_LADDER_SIZE {
        return Err(Error::InvalidArgument(format!("ladder spans need a size bound in 1..={MAX_LADDER_SIZE}")));
    }
    let sets = build_e(max_size)?;
    let e = sets.groupoid.clone();
    let apex = build_e(max_size - 1)?.groupoid;
    let inclusion = FunctorData::from_fn(
        apex.clone(),
        e.clone(),
        |n| n,
        |m| {
            let p = apex.decode(m);
            e.base_automorphism(p.component, p.element)
        },
    )?;
    let successor = FunctorData::from_fn(
        apex.clone(),
        e.clone(),
        |n| n + 1,
        |m| {
            let p = apex.decode(m);
            let mut perm = apex.component(p.component).group().element(p.element);
            perm.push(perm.len() as u16);
            let index = e.component(p.component + 1).group().index_of(&perm).expect("a permutation");
            e.base_automorphism(p.component + 1, index)
        },
    )?;
    let annihilation = Span::new(inclusion, successor)?;
    let creation = adjoint(&annihilation);
    Ok(Ladder { sets, annihilation, creation })
}

/// `Ψ_n ≃ 1//S_n` over the sets of size at most `N`.
pub fn psi_n(n: usize, sets: &TruncatedE) -> Result<GroupoidOver> {
    if n > sets.max_size {
        return Err(Error::InvalidArgument(format!("size {n} exceeds the truncation at {}", sets.max_size)));
    }
    let e = &sets.groupoid;
    let point = Arc::new(one_object(Arc::new(Group::Symmetric(n))));
    let projection = FunctorData::from_fn(point, e.clone(), |_| n, |g| e.base_automorphism(n, g))?;
    Ok(GroupoidOver::new(projection))
}

/// 2-colored finite sets: over size `n`, the colorings of `{0..n}` as bit
/// masks, with color-preserving bijections.
pub fn two_colored(sets: &TruncatedE) -> Result<GroupoidOver> {
    let e = &sets.groupoid;
    let mut acc: Option<GroupoidOver> = None;
    for n in 0..=sets.max_size {
        let group = Arc::new(Group::Symmetric(n));
        let g = group.clone();
        let action = GroupAction::new(group, 1usize << n, move |p, mask| {
            let perm = g.element(p);
            (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| 1usize << perm[i]).sum()
        });
        let quotient = action_groupoid(&action);
        let q = quotient.clone();
        let projection = FunctorData::from_fn(
            quotient.groupoid.clone(),
            e.clone(),
            |_| n,
            |m| e.base_automorphism(n, q.decode(m).0),
        )?;
        let layer = GroupoidOver::new(projection);
        acc = Some(match acc {
            None => layer,
            Some(prev) => {
                let c = coproduct(prev.total(), layer.total());
                GroupoidOver::new(c.copair(prev.projection(), layer.projection())?)
            }
        });
    }
    Ok(acc.expect("at least the empty set"))
}

/// Comparison of `AA*` with `A*A + 1` on the block unaffected by truncation.
#[derive(Debug, Clone, Serialize)]
pub struct CommutationReport {
    pub max_size: usize,
    /// Entries with both sizes at most this are compared.
    pub safe_bound: usize,
    /// Sizes excluded from the comparison.
    pub excluded_band: Vec<usize>,
    pub annihilate_after_create_diagonal: Vec<Rational>,
    pub create_after_annihilate_diagonal: Vec<Rational>,
    /// `(row, column)` of every disagreeing entry in the safe block.
    pub mismatches: Vec<(ObjectId, ObjectId)>,
    pub ok: bool,
}

pub fn verify_commutation(max_size: usize) -> Result<CommutationReport> {
    if max_size < 2 {
        return Err(Error::InvalidArgument("the commutation check needs a size bound of at least 2".into()));
    }
    let ladder = ladder_spans(max_size)?;
    let (a, astar) = (&ladder.annihilation, &ladder.creation);
    let m1 = matrix(&compose(a, astar)?);
    let m2 = matrix(&sum(&compose(astar, a)?, &identity_span(&ladder.sets.groupoid))?);
    let safe = max_size - 1;
    let mut mismatches = Vec::new();
    for m in 0..=safe {
        for n in 0..=safe {
            if m1.entries[m][n] != m2.entries[m][n] {
                mismatches.push((m, n));
            }
        }
    }
    let diagonal = |x: &RationalMatrix| (0..=max_size).map(|n| x.entries[n][n].clone()).collect();
    let astar_a = matrix(&compose(astar, a)?);
    Ok(CommutationReport {
        max_size,
        safe_bound: safe,
        excluded_band: (safe + 1..=max_size).collect(),
        annihilate_after_create_diagonal: diagonal(&m1),
        create_after_annihilate_diagonal: diagonal(&astar_a),
        ok: mismatches.is_empty(),
        mismatches,
    })
}

/// One comparison of a diagram count against a realized span entry.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramCheck {
    pub valences: Vec<usize>,
    pub in_size: usize,
    pub out_size: usize,
    pub diagrams: Rational,
    pub span: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct OscillatorReport {
    pub commutation: CommutationReport,
    /// `:Φⁿ:` for `n = 0..=4`.
    pub normal_orders: Vec<FormalOperatorSum>,
    /// Every normal-ordered coefficient of `a*^j a^k` equals `C(j + k, j)`.
    pub normal_orders_binomial: bool,
    pub diagram_checks: usize,
    pub diagram_mismatches: Vec<DiagramCheck>,
    pub ok: bool,
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Ascending lists of positive valences with sum at most `max`.
fn valence_lists(max: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, least: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(current.clone());
        for p in least..=remaining {
            current.push(p);
            go(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(max, 1, &mut Vec::new(), &mut out);
    out
}

/// Commutation, normal ordering and the two routes to diagram counts, at
/// size bound `N`. Diagram entries are compared for valence sums up to 6
/// and leg counts up to 4 whenever every intermediate size, at most
/// `⌊(i + j + Σ)/2⌋`, stays within the bound.
pub fn verify(max_size: usize) -> Result<OscillatorReport> {
    let commutation = verify_commutation(max_size)?;
    let normal_orders: Vec<FormalOperatorSum> = (0..=4).map(normal_order).collect();
    let normal_orders_binomial = (0..=8).all(|n| {
        normal_order(n).terms().iter().all(|(w, &c)| {
            let stars = w.iter().filter(|l| **l == Letter::Create).count();
            c == binomial(n, stars) && w[..stars].iter().all(|l| *l == Letter::Create)
        })
    });
    let ladder = ladder_spans(max_size)?;
    let mut checks = 0;
    let mut mismatches = Vec::new();
    for valences in valence_lists(6) {
        let total: usize = valences.iter().sum();
        let legs: Vec<(usize, usize)> = (0..=4)
            .flat_map(|i| (0..=4).map(move |j| (i, j)))
            .filter(|&(i, j)| i.max(j).max((i + j + total) / 2) <= max_size)
            .collect();
        if legs.is_empty() {
            continue;
        }
        let mut product = FormalOperatorSum::word(vec![]);
        for &n in &valences {
            product = product.product(&normal_order(n));
        }
        let m = matrix(&realize(&product, &ladder)?);
        for (i, j) in legs {
            let diagrams = feynman_entry(&valences, i, j)?;
            checks += 1;
            if diagrams != m.entries[j][i] {
                mismatches.push(DiagramCheck {
                    valences: valences.clone(),
                    in_size: i,
                    out_size: j,
                    diagrams,
                    span: m.entries[j][i].clone(),
                });
            }
        }
    }
    let ok = commutation.ok && normal_orders_binomial && mismatches.is_empty();
    Ok(OscillatorReport {
        commutation,
        normal_orders,
        normal_orders_binomial,
        diagram_checks: checks,
        diagram_mismatches: mismatches,
        ok,
    })
}
