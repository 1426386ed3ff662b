//! Feynman diagrams for products of normal-ordered powers of the field span.
//!
//! A diagram has `i` incoming legs, `j` outgoing legs and internal vertices
//! of prescribed valences. Each incoming leg attaches to an internal vertex
//! or directly to an outgoing leg; each outgoing leg attaches to an internal
//! vertex or an incoming leg; the remaining valence is filled by edges
//! between distinct internal vertices. Self-loops and edges between two legs
//! on the same side are excluded.
//!
//! Diagrams are counted up to relabelling of internal vertices and of the
//! half-edges at each vertex, with the legs held fixed. A class with
//! symmetry group `Γ` contributes `|H| / |Γ|`, where `H` is the group of
//! all such relabellings, and the entry is the total divided by `j!`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::factorial;
use crate::rational::Rational;

/// Bound on `i + j + Σ valences` accepted by the enumerator.
pub const MAX_DIAGRAM_HALF_EDGES: usize = 24;

/// Where a leg is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attachment {
    Vertex(usize),
    InLeg(usize),
    OutLeg(usize),
}

/// One isomorphism class, in its canonical vertex labelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeynmanDiagram {
    pub in_size: usize,
    pub out_size: usize,
    /// Valence of each internal vertex, ascending.
    pub valences: Vec<usize>,
    pub in_legs: Vec<Attachment>,
    pub out_legs: Vec<Attachment>,
    /// `(u, v, multiplicity)` with `u < v`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Vertex permutations fixing the diagram, times the permutations of
    /// parallel edges.
    pub symmetry_order: u128,
    /// `|H| / symmetry_order`.
    pub weight: Rational,
}

/// A diagram on labelled internal vertices, in comparable form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Labelled {
    in_legs: Vec<Attachment>,
    out_legs: Vec<Attachment>,
    edges: Vec<(usize, usize, usize)>,
}

impl Labelled {
    fn relabel(&self, perm: &[usize]) -> Labelled {
        let map = |a: &Attachment| match *a {
            Attachment::Vertex(v) => Attachment::Vertex(perm[v]),
            other => other,
        };
        let mut edges: Vec<(usize, usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v, m)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b), m)
            })
            .collect();
        edges.sort_unstable();
        Labelled {
            in_legs: self.in_legs.iter().map(map).collect(),
            out_legs: self.out_legs.iter().map(map).collect(),
            edges,
        }
    }
}

/// All permutations of `0..k` that preserve the (sorted) valence blocks.
fn block_permutations(valences: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=valences.len() {
        if i == valences.len() || valences[i] != valences[start] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut out = vec![(0..valences.len()).collect::<Vec<usize>>()];
    for (lo, hi) in blocks {
        let mut next = Vec::new();
        for base in &out {
            for arrangement in permutations(&(lo..hi).collect::<Vec<_>>()) {
                let mut p = base.clone();
                p[lo..hi].copy_from_slice(&arrangement);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

struct Enumerator<'a> {
    valences: &'a [usize],
    i: usize,
    j: usize,
    out: Vec<Labelled>,
}

impl Enumerator<'_> {
    fn legs(&mut self, in_legs: &mut Vec<Attachment>, out_legs: &mut Vec<Option<Attachment>>, free: &mut Vec<usize>) {
        let (i, j) = (self.i, self.j);
        if in_legs.len() < i {
            let s = in_legs.len();
            for v in 0..free.len() {
                if free[v] > 0 {
                    free[v] -= 1;
                    in_legs.push(Attachment::Vertex(v));
                    self.legs(in_legs, out_legs, free);
                    in_legs.pop();
                    free[v] += 1;
                }
            }
            for t in 0..j {
                if out_legs[t].is_none() {
                    out_legs[t] = Some(Attachment::InLeg(s));
                    in_legs.push(Attachment::OutLeg(t));
                    self.legs(in_legs, out_legs, free);
                    in_legs.pop();
                    out_legs[t] = None;
                }
            }
            return;
        }
        match out_legs.iter().position(Option::is_none) {
            Some(t) => {
                for v in 0..free.len() {
                    if free[v] > 0 {
                        free[v] -= 1;
                        out_legs[t] = Some(Attachment::Vertex(v));
                        self.legs(in_legs, out_legs, free);
                        out_legs[t] = None;
                        free[v] += 1;
                    }
                }
            }
            None => {
                let mut edges = Vec::new();
                let fixed_in = in_legs.clone();
                let fixed_out: Vec<Attachment> = out_legs.iter().map(|a| a.expect("assigned")).collect();
                self.internal(0, free, &mut edges, &fixed_in, &fixed_out);
            }
        }
    }

    /// Fills the remaining valences with edges between distinct vertices,
    /// saturating vertex `u` before moving on.
    fn internal(
        &mut self,
        u: usize,
        free: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize, usize)>,
        in_legs: &[Attachment],
        out_legs: &[Attachment],
    ) {
        let k = free.len();
        if u == k {
            self.out.push(Labelled { in_legs: in_legs.to_vec(), out_legs: out_legs.to_vec(), edges: edges.clone() });
            return;
        }
        if free[u] == 0 {
            self.internal(u + 1, free, edges, in_legs, out_legs);
            return;
        }
        self.spread(u, u + 1, free, edges, in_legs, out_legs);
    }

    fn spread(
        &mut self,
        u: usize,
        v: usize,
        free: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize, usize)>,
        in_legs: &[Attachment],
        out_legs: &[Attachment],
    ) {
        if free[u] == 0 {
            self.internal(u + 1, free, edges, in_legs, out_legs);
            return;
        }
        if v >= free.len() {
            return;
        }
        let most = free[u].min(free[v]);
        for m in (0..=most).rev() {
            free[u] -= m;
            free[v] -= m;
            if m > 0 {
                edges.push((u, v, m));
            }
            self.spread(u, v + 1, free, edges, in_legs, out_legs);
            if m > 0 {
                edges.pop();
            }
            free[u] += m;
            free[v] += m;
        }
    }
}

fn check_bounds(valences: &[usize], i: usize, j: usize) -> Result<()> {
    let half_edges = i + j + valences.iter().sum::<usize>();
    if half_edges > MAX_DIAGRAM_HALF_EDGES {
        return Err(Error::CapExceeded {
            what: "diagram half-edges".into(),
            needed: half_edges as u128,
            cap: MAX_DIAGRAM_HALF_EDGES as u128,
        });
    }
    Ok(())
}

/// Every isomorphism class of admissible diagrams, in canonical form.
pub fn enumerate_diagrams(valences: &[usize], i: usize, j: usize) -> Result<Vec<FeynmanDiagram>> {
    check_bounds(valences, i, j)?;
    let mut sorted = valences.to_vec();
    sorted.sort_unstable();
    if (i + j + sorted.iter().sum::<usize>()) % 2 == 1 {
        return Ok(vec![]);
    }
    let mut e = Enumerator { valences: &sorted, i, j, out: Vec::new() };
    let mut free = e.valences.to_vec();
    e.legs(&mut Vec::new(), &mut vec![None; j], &mut free);
    let labelled = std::mem::take(&mut e.out);

    let perms = block_permutations(&sorted);
    let relabellings: u128 = sorted.iter().map(|&n| factorial(n)).product::<u128>() * perms.len() as u128;
    let mut classes: BTreeMap<Labelled, FeynmanDiagram> = BTreeMap::new();
    for d in labelled {
        let images: Vec<Labelled> = perms.iter().map(|p| d.relabel(p)).collect();
        let canonical = images.iter().min().expect("identity permutation").clone();
        if classes.contains_key(&canonical) {
            continue;
        }
        let fixing = images.iter().filter(|img| **img == d).count() as u128;
        let parallel: u128 = canonical.edges.iter().map(|&(_, _, m)| factorial(m)).product();
        let symmetry_order = fixing * parallel;
        let diagram = FeynmanDiagram {
            in_size: i,
            out_size: j,
            valences: sorted.clone(),
            in_legs: canonical.in_legs.clone(),
            out_legs: canonical.out_legs.clone(),
            edges: canonical.edges.clone(),
            symmetry_order,
            weight: Rational::ratio(relabellings, symmetry_order),
        };
        classes.insert(canonical, diagram);
    }
    Ok(classes.into_values().collect())
}

/// Entry `([j],[i])` of the span of `:Φ^{n_1}: ⋯ :Φ^{n_k}:`, as a sum over
/// diagram classes weighted by their inverse symmetry order.
pub fn feynman_entry(valences: &[usize], i: usize, j: usize) -> Result<Rational> {
    let total: Rational = enumerate_diagrams(valences, i, j)?.iter().map(|d| d.weight.clone()).sum();
    Ok(total * Rational::recip_of(factorial(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_entries() {
        assert_eq!(feynman_entry(&[1], 0, 1).unwrap(), Rational::one());
        assert_eq!(feynman_entry(&[2], 1, 1).unwrap(), Rational::integer(2));
        assert_eq!(feynman_entry(&[1], 0, 0).unwrap(), Rational::zero());
        assert_eq!(feynman_entry(&[], 2, 2).unwrap(), Rational::one());
    }

    #[test]
    fn vacuum_bubble_of_two_cubic_vertices() {
        // Two classes: the theta graph (|Γ| = 2·3!) and the dumbbell is
        // excluded because it needs self-loops.
        let ds = enumerate_diagrams(&[3, 3], 0, 0).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].symmetry_order, 12);
        assert_eq!(feynman_entry(&[3, 3], 0, 0).unwrap(), Rational::integer(6));
    }

    #[test]
    fn block_permutations_respect_valences() {
        assert_eq!(block_permutations(&[1, 2, 2]).len(), 2);
        assert_eq!(block_permutations(&[3, 3, 3]).len(), 6);
        assert!(check_bounds(&[20], 4, 4).is_err());
    }
}
