//! Spans of sets `X ← R → X` with multiplicities, stored as the number of
//! elements of `R` over each pair of flags.

use std::collections::BTreeMap;

use super::plane::FlagVariety;

/// A relation on the flag indices `0..size` with natural-number multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSpan {
    pub size: usize,
    multiplicities: BTreeMap<(usize, usize), u64>,
}

impl RelationSpan {
    pub fn empty(size: usize) -> Self {
        RelationSpan { size, multiplicities: BTreeMap::new() }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_pairs(size, (0..size).map(|x| (x, x)))
    }

    /// Each listed pair counted once per occurrence.
    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(size);
        for p in pairs {
            r.add(p, 1);
        }
        r
    }

    pub fn add(&mut self, pair: (usize, usize), count: u64) {
        assert!(pair.0 < self.size && pair.1 < self.size, "pair outside the flag set");
        if count > 0 {
            *self.multiplicities.entry(pair).or_insert(0) += count;
        }
    }

    pub fn multiplicity(&self, x: usize, y: usize) -> u64 {
        self.multiplicities.get(&(x, y)).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.multiplicities
    }

    /// Number of elements of the apex.
    pub fn total(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn scale(&self, k: u64) -> Self {
        let mut out = Self::empty(self.size);
        for (&p, &m) in &self.multiplicities {
            out.add(p, m * k);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "relations on different sets");
        let mut out = self.clone();
        for (&p, &m) in &other.multiplicities {
            out.add(p, m);
        }
        out
    }
}

/// `second ∘ first`: the multiplicity at `(x, z)` counts paths
/// `x → y → z` with `(x, y)` in `first` and `(y, z)` in `second`.
pub fn compose_relations(second: &RelationSpan, first: &RelationSpan) -> RelationSpan {
    assert_eq!(first.size, second.size, "relations on different sets");
    let mut out_of: Vec<Vec<(usize, u64)>> = vec![Vec::new(); second.size];
    for (&(y, z), &m) in second.multiplicities() {
        out_of[y].push((z, m));
    }
    let mut out = RelationSpan::empty(first.size);
    for (&(x, y), &a) in first.multiplicities() {
        for &(z, b) in &out_of[y] {
            out.add((x, z), a * b);
        }
    }
    out
}

/// `P`: same line, different point.
pub fn point_relation(x: &FlagVariety) -> RelationSpan {
    related(x, |a, b| a.line == b.line && a.point != b.point)
}

/// `L`: same point, different line.
pub fn line_relation(x: &FlagVariety) -> RelationSpan {
    related(x, |a, b| a.point == b.point && a.line != b.line)
}

fn related(x: &FlagVariety, pred: impl Fn(super::Flag, super::Flag) -> bool) -> RelationSpan {
    let n = x.len();
    let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| pred(x.flag(a), x.flag(b)));
    RelationSpan::from_pairs(n, pairs.collect::<Vec<_>>())
}

/// `(P, L)` on the flags.
pub fn relation_spans(x: &FlagVariety) -> (RelationSpan, RelationSpan) {
    (point_relation(x), line_relation(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::plane::flags;

    #[test]
    fn sizes_over_the_fano_plane() {
        let x = flags(2).unwrap();
        let (p, l) = relation_spans(&x);
        assert_eq!(p.total(), 42);
        assert_eq!(l.total(), 42);
        let id = RelationSpan::identity(x.len());
        assert_eq!(compose_relations(&p, &id), p);
        assert_eq!(compose_relations(&id, &l), l);
    }
}
