//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use groupoidify::Rational;

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `Σ_{n ≤ N} 1/n!`, by direct rational summation.
pub fn e_partial_sum(max: u64) -> Rational {
    let mut total = Rational::zero();
    for n in 0..=max {
        total = total + Rational::ratio(1, factorial(n) as u128);
    }
    total
}

/// Half-edge owners: incoming legs, outgoing legs, then one owner per vertex slot.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Owner {
    In,
    Out,
    Vertex(usize),
}

fn may_join(a: Owner, b: Owner) -> bool {
    match (a, b) {
        (Owner::In, Owner::In) | (Owner::Out, Owner::Out) => false,
        (Owner::Vertex(u), Owner::Vertex(v)) => u != v,
        _ => true,
    }
}

fn count_matchings(owners: &[Owner], used: &mut [bool]) -> u64 {
    let Some(first) = used.iter().position(|u| !u) else { return 1 };
    used[first] = true;
    let mut total = 0;
    for other in first + 1..owners.len() {
        if !used[other] && may_join(owners[first], owners[other]) {
            used[other] = true;
            total += count_matchings(owners, used);
            used[other] = false;
        }
    }
    used[first] = false;
    total
}

/// Perfect matchings of labelled half-edges (legs and vertex slots) with no
/// self-loops and no same-side leg pairs, divided by `j!`.
pub fn labelled_matching_entry(valences: &[usize], i: usize, j: usize) -> Rational {
    let mut owners = vec![Owner::In; i];
    owners.extend(std::iter::repeat(Owner::Out).take(j));
    for (v, &n) in valences.iter().enumerate() {
        owners.extend(std::iter::repeat(Owner::Vertex(v)).take(n));
    }
    let mut used = vec![false; owners.len()];
    Rational::ratio(count_matchings(&owners, &mut used) as u128, factorial(j as u64) as u128)
}

/// Partitions of every total up to `max`, parts in ascending order.
pub fn partitions_up_to(max: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, min_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(current.clone());
        for p in min_part..=remaining {
            current.push(p);
            go(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(max, 1, &mut Vec::new(), &mut out);
    out
}

/// A permutation of `{0, 1, 2}`; `p[i]` is the image of `i`.
pub type S3 = [u8; 3];

/// `a ∘ b`.
pub fn s3_compose(a: S3, b: S3) -> S3 {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
}

/// Number of inversions, the Coxeter length for the generators `(0 1)` and `(1 2)`.
pub fn coxeter_length(w: S3) -> usize {
    (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// The product of the letters of a word in `P = (0 1)` and `L = (1 2)`; `"1"` is empty.
pub fn coxeter_element(word: &str) -> S3 {
    let mut w = [0, 1, 2];
    for c in word.chars().filter(|&c| c != '1') {
        let g = if c == 'P' { [1, 0, 2] } else { [0, 2, 1] };
        w = s3_compose(w, g);
    }
    w
}

/// `T_u T_v` in the Iwahori–Hecke algebra of `S3` at parameter `q`,
/// expanded by the generator rule `T_x T_w = T_{xw}` when the length
/// grows and `(q − 1) T_w + q T_{xw}` otherwise.
pub fn hecke_template_product(u: &str, v: &str, q: i64) -> std::collections::BTreeMap<S3, i64> {
    use std::collections::BTreeMap;
    let mut current: BTreeMap<S3, i64> = BTreeMap::from([(coxeter_element(v), 1)]);
    for c in u.chars().filter(|&c| c != '1').collect::<Vec<_>>().into_iter().rev() {
        let x = coxeter_element(&c.to_string());
        let mut next: BTreeMap<S3, i64> = BTreeMap::new();
        for (w, coeff) in current {
            let xw = s3_compose(x, w);
            if coxeter_length(xw) > coxeter_length(w) {
                *next.entry(xw).or_insert(0) += coeff;
            } else {
                *next.entry(w).or_insert(0) += coeff * (q - 1);
                *next.entry(xw).or_insert(0) += coeff * q;
            }
        }
        current = next.into_iter().filter(|&(_, c)| c != 0).collect();
    }
    current
}

/// Raw-table facts about a groupoid: the class representative (least
/// object) of every object and the automorphism count of every object,
/// computed from morphism endpoints alone.
pub struct RawGroupoid {
    pub representative: Vec<usize>,
    pub automorphisms: Vec<u128>,
    pub outgoing: Vec<u128>,
}

impl RawGroupoid {
    pub fn of(g: &groupoidify::groupoid::FiniteGroupoid) -> Self {
        let t = g.to_tables(u128::MAX).expect("small groupoid");
        let n = t.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut automorphisms = vec![0u128; n];
        let mut outgoing = vec![0u128; n];
        for m in &t.morphisms {
            let (a, b) = (m.src as usize, m.tgt as usize);
            outgoing[a] += 1;
            if a == b {
                automorphisms[a] += 1;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let representative = (0..n).map(|x| find(&mut parent, x)).collect();
        RawGroupoid { representative, automorphisms, outgoing }
    }

    pub fn classes(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.representative.clone();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `Σ 1/|morphisms out of x|` over objects.
    pub fn cardinality(&self) -> Rational {
        self.outgoing.iter().map(|&k| Rational::recip_of(k)).fold(Rational::zero(), |a, b| a + b)
    }
}

/// Entry `([y],[x])` is `|Aut x| · Σ 1/|morphisms out of s|` over apex
/// objects `s` whose legs land in `[x]` and `[y]`, from raw tables.
pub fn span_matrix_oracle(s: &groupoidify::span::Span) -> Vec<Vec<Rational>> {
    let apex = RawGroupoid::of(s.apex());
    let dom = RawGroupoid::of(s.domain());
    let cod = RawGroupoid::of(s.codomain());
    let (rows, cols) = (cod.classes(), dom.classes());
    let mut out = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    for a in 0..apex.outgoing.len() {
        let x = dom.representative[s.right().map_object(a)];
        let y = cod.representative[s.left().map_object(a)];
        let (i, j) = (rows.binary_search(&y).unwrap(), cols.binary_search(&x).unwrap());
        out[i][j] = out[i][j].clone() + Rational::ratio(dom.automorphisms[x], apex.outgoing[a]);
    }
    out
}

/// `Σ 1/|morphisms out of t|` over total objects in each class of the base.
pub fn over_vector_oracle(v: &groupoidify::span::GroupoidOver) -> Vec<Rational> {
    let total = RawGroupoid::of(v.total());
    let base = RawGroupoid::of(v.base());
    let classes = base.classes();
    let mut out = vec![Rational::zero(); classes.len()];
    for t in 0..total.outgoing.len() {
        let i = classes.binary_search(&base.representative[v.projection().map_object(t)]).unwrap();
        out[i] = out[i].clone() + Rational::recip_of(total.outgoing[t]);
    }
    out
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

pub fn mat_add(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() + y.clone()).collect()).collect()
}

pub fn mat_scale(a: &[Vec<Rational>], k: &Rational) -> Vec<Vec<Rational>> {
    a.iter().map(|r| r.iter().map(|x| x.clone() * k.clone()).collect()).collect()
}
