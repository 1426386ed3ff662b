//! Finite groups presented as permutation groups.
//!
//! Elements are addressed by dense indices with the identity at index 0.
//! Symmetric groups are never materialized; their elements are ranked by
//! Lehmer code so that `S_10` costs nothing to hold.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// A permutation of `0..n`; `p[i]` is the image of `i`.
pub type Perm = Vec<u16>;

/// Largest symmetric group degree we are willing to index.
pub const MAX_SYMMETRIC_DEGREE: usize = 12;

/// Cayley tables are cached for permutation groups up to this order.
const CAYLEY_LIMIT: usize = 256;

/// `a ∘ b`: apply `b` first, then `a`.
pub fn compose_perm(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn invert_perm(a: &[u16]) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

pub fn identity_perm(n: usize) -> Perm {
    (0..n as u16).collect()
}

pub fn is_perm(p: &[u16]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn lehmer_rank(p: &[u16]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn lehmer_unrank(n: usize, mut rank: usize) -> Perm {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u16> = (0..n as u16).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// A permutation group given by an explicit element list.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    generators: OnceLock<Vec<usize>>,
    cayley: OnceLock<Vec<u32>>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_elements_unchecked(degree, vec![identity_perm(degree)])
    }

    /// Builds a group from a full element list, moving the identity to index 0.
    /// Closure is not checked here; see [`PermGroup::is_closed`].
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<Self> {
        if elements.iter().any(|p| p.len() != degree || !is_perm(p)) {
            return Err(Error::Structural("group element is not a permutation of the stated degree".into()));
        }
        let id = identity_perm(degree);
        let pos = elements
            .iter()
            .position(|p| *p == id)
            .ok_or_else(|| Error::Structural("element list lacks the identity".into()))?;
        elements.swap(0, pos);
        let g = Self::from_elements_unchecked(degree, elements);
        if g.index.len() != g.elements.len() {
            return Err(Error::Structural("duplicate group elements".into()));
        }
        Ok(g)
    }

    pub(crate) fn from_elements_unchecked(degree: usize, elements: Vec<Perm>) -> Self {
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        PermGroup { degree, elements, index, generators: OnceLock::new(), cayley: OnceLock::new() }
    }

    /// The closure of `gens` under composition, in breadth-first order from the identity.
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<Self> {
        if gens.iter().any(|p| p.len() != degree || !is_perm(p)) {
            return Err(Error::Structural("generator is not a permutation of the stated degree".into()));
        }
        let id = identity_perm(degree);
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose_perm(g, &elements[i]);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        Ok(PermGroup { degree, elements, index, generators: OnceLock::new(), cayley: OnceLock::new() })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.index.contains_key(&compose_perm(a, b))))
    }

    fn cayley(&self) -> Option<&[u32]> {
        if self.order() > CAYLEY_LIMIT {
            return None;
        }
        let table = self.cayley.get_or_init(|| {
            let n = self.order();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    t.push(self.index[&compose_perm(a, b)] as u32);
                }
            }
            t
        });
        Some(table)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.cayley() {
            return t[a * self.order() + b] as usize;
        }
        self.index[&compose_perm(&self.elements[a], &self.elements[b])]
    }

    fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let n = self.order();
            let mut gens: Vec<usize> = Vec::new();
            let mut reached = vec![false; n];
            reached[0] = true;
            let mut count = 1;
            for cand in 1..n {
                if count == n {
                    break;
                }
                if reached[cand] {
                    continue;
                }
                gens.push(cand);
                reached.iter_mut().for_each(|r| *r = false);
                reached[0] = true;
                count = 1;
                let mut queue = VecDeque::from([0usize]);
                while let Some(x) = queue.pop_front() {
                    for &g in &gens {
                        let y = self.mul(g, x);
                        if !reached[y] {
                            reached[y] = true;
                            count += 1;
                            queue.push_back(y);
                        }
                    }
                }
            }
            gens
        })
    }
}

/// A finite group with indexed elements.
#[derive(Debug)]
pub enum Group {
    /// The full symmetric group on `n` letters, indexed by Lehmer rank.
    Symmetric(usize),
    Perm(PermGroup),
    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    Product(Arc<Group>, Arc<Group>),
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Group::Symmetric(a), Group::Symmetric(b)) => a == b,
            (Group::Perm(a), Group::Perm(b)) => a.degree == b.degree && a.elements == b.elements,
            (Group::Product(a1, a2), Group::Product(b1, b2)) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

impl Eq for Group {}

impl Group {
    pub fn trivial() -> Group {
        Group::Perm(PermGroup::trivial(0))
    }

    pub fn symmetric(n: usize) -> Result<Group> {
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::CapExceeded {
                what: "symmetric group degree".into(),
                needed: n as u128,
                cap: MAX_SYMMETRIC_DEGREE as u128,
            });
        }
        Ok(Group::Symmetric(n))
    }

    pub fn order(&self) -> usize {
        match self {
            Group::Symmetric(n) => factorial(*n) as usize,
            Group::Perm(g) => g.order(),
            Group::Product(a, b) => a.order() * b.order(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Group::Symmetric(n) => *n,
            Group::Perm(g) => g.degree,
            Group::Product(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> Perm {
        match self {
            Group::Symmetric(n) => lehmer_unrank(*n, i),
            Group::Perm(g) => g.elements[i].clone(),
            Group::Product(a, b) => {
                let (i, j) = (i / b.order(), i % b.order());
                let shift = a.degree() as u16;
                let mut p = a.element(i);
                p.extend(b.element(j).into_iter().map(|x| x + shift));
                p
            }
        }
    }

    pub fn index_of(&self, p: &[u16]) -> Option<usize> {
        if p.len() != self.degree() {
            return None;
        }
        match self {
            Group::Symmetric(_) => is_perm(p).then(|| lehmer_rank(p)),
            Group::Perm(g) => g.index.get(p).copied(),
            Group::Product(a, b) => {
                let d = a.degree();
                let i = a.index_of(&p[..d])?;
                let shifted: Option<Perm> =
                    p[d..].iter().map(|&x| (x as usize).checked_sub(d).map(|y| y as u16)).collect();
                let j = b.index_of(&shifted?)?;
                Some(i * b.order() + j)
            }
        }
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Group::Symmetric(n) => lehmer_rank(&compose_perm(&lehmer_unrank(*n, a), &lehmer_unrank(*n, b))),
            Group::Perm(g) => g.mul(a, b),
            Group::Product(x, y) => {
                let m = y.order();
                x.mul(a / m, b / m) * m + y.mul(a % m, b % m)
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match self {
            Group::Symmetric(n) => lehmer_rank(&invert_perm(&lehmer_unrank(*n, a))),
            Group::Perm(g) => g.index[&invert_perm(&g.elements[a])],
            Group::Product(x, y) => {
                let m = y.order();
                x.inv(a / m) * m + y.inv(a % m)
            }
        }
    }

    /// A generating set (element indices), never containing the identity.
    pub fn generators(&self) -> Vec<usize> {
        match self {
            Group::Symmetric(n) => {
                let n = *n;
                if n < 2 {
                    return vec![];
                }
                let mut swap = identity_perm(n);
                swap.swap(0, 1);
                let mut gens = vec![lehmer_rank(&swap)];
                if n > 2 {
                    let cycle: Perm = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
                    gens.push(lehmer_rank(&cycle));
                }
                gens
            }
            Group::Perm(g) => g.generators().to_vec(),
            Group::Product(x, y) => {
                let m = y.order();
                let mut gens: Vec<usize> = x.generators().into_iter().map(|a| a * m).collect();
                gens.extend(y.generators());
                gens
            }
        }
    }

    /// Materializes every element. Intended for small groups.
    pub fn all_elements(&self) -> Vec<Perm> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}

/// Builds the subgroup of `Aut(x) × Aut(y)` generated by the given index pairs.
/// Returns the group (elements are concatenated permutations) together with
/// the pair of factor indices of each element.
pub fn subgroup_of_product(
    left: &Arc<Group>,
    right: &Arc<Group>,
    gens: &[(usize, usize)],
) -> Result<(PermGroup, Vec<(usize, usize)>)> {
    let both = Group::Product(left.clone(), right.clone());
    let m = right.order();
    let perms: Vec<Perm> = gens.iter().map(|&(a, b)| both.element(a * m + b)).collect();
    let g = PermGroup::generate(both.degree(), &perms)?;
    let pairs = g
        .elements()
        .iter()
        .map(|p| {
            let k = both.index_of(p).expect("element of the product");
            (k / m, k % m)
        })
        .collect();
    Ok((g, pairs))
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic(n: usize) -> Group {
    if n <= 1 {
        return Group::Perm(PermGroup::trivial(n));
    }
    let gen: Perm = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
    Group::Perm(PermGroup::generate(n, &[gen]).expect("cyclic generator"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lehmer_roundtrip() {
        for n in 0..6 {
            for r in 0..factorial(n) as usize {
                assert_eq!(lehmer_rank(&lehmer_unrank(n, r)), r);
            }
        }
        assert_eq!(lehmer_unrank(4, 0), identity_perm(4));
    }

    #[test]
    fn symmetric_group_laws() {
        let g = Group::Symmetric(4);
        assert_eq!(g.order(), 24);
        for a in 0..24 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.mul(0, a), a);
            for b in 0..24 {
                for c in [0, 5, 17] {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        let gens = g.generators();
        let perms: Vec<Perm> = gens.iter().map(|&i| g.element(i)).collect();
        assert_eq!(PermGroup::generate(4, &perms).unwrap().order(), 24);
    }

    #[test]
    fn perm_group_generators_span() {
        let g = Group::Symmetric(4);
        let pg = PermGroup::from_elements(4, g.all_elements()).unwrap();
        assert!(pg.is_closed());
        let gens = pg.generators().to_vec();
        let perms: Vec<Perm> = gens.iter().map(|&i| pg.elements[i].clone()).collect();
        assert_eq!(PermGroup::generate(4, &perms).unwrap().order(), 24);
    }

    #[test]
    fn product_indexing() {
        let p = Group::Product(Arc::new(cyclic(3)), Arc::new(Group::Symmetric(3)));
        assert_eq!(p.order(), 18);
        assert_eq!(p.degree(), 6);
        for i in 0..18 {
            assert_eq!(p.index_of(&p.element(i)), Some(i));
            assert_eq!(p.mul(i, p.inv(i)), 0);
        }
        assert_eq!(p.generators().len(), 3);
    }

    #[test]
    fn product_subgroup_pairs() {
        let a = Arc::new(cyclic(2));
        let b = Arc::new(cyclic(2));
        let (g, pairs) = subgroup_of_product(&a, &b, &[(1, 1)]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
    }
}
