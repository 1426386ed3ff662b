//! Bounded brute-force search for equivalences between tiny groupoids.
//!
//! Only used to produce oracles in tests; production code checks given
//! witnesses instead of searching.

use std::collections::VecDeque;
use std::sync::Arc;

use super::finite::FiniteGroupoid;
use super::functor::FunctorData;
use crate::error::{Error, Result};
use crate::group::Group;

pub const SEARCH_OBJECT_LIMIT: usize = 6;

/// An isomorphism `g → h` as an element map, if one exists.
pub fn find_isomorphism(g: &Group, h: &Group) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let gens = g.generators();
    let n = h.order();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend(g, h, &gens, &choice) {
            return Some(map);
        }
        // Odometer over generator images.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend(g: &Group, h: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(s, x);
            let fy = h.mul(t, map[x]);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let mut seen = vec![false; n];
    for &v in &map {
        if v == usize::MAX || seen[v] {
            return None;
        }
        seen[v] = true;
    }
    Some(map)
}

/// Searches for an equivalence `x → y`. Both groupoids must have at most
/// [`SEARCH_OBJECT_LIMIT`] objects.
pub fn find_equivalence(x: &Arc<FiniteGroupoid>, y: &Arc<FiniteGroupoid>) -> Result<Option<FunctorData>> {
    for g in [x, y] {
        if g.object_count() > SEARCH_OBJECT_LIMIT {
            return Err(Error::CapExceeded {
                what: "objects for equivalence search".into(),
                needed: g.object_count() as u128,
                cap: SEARCH_OBJECT_LIMIT as u128,
            });
        }
    }
    let (cx, cy) = (x.components(), y.components());
    if cx.len() != cy.len() {
        return Ok(None);
    }
    let mut assignment: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut used = vec![false; cy.len()];
    if !assign(x, y, 0, &mut used, &mut assignment) {
        return Ok(None);
    }
    let object_map = x.objects().map(|o| cy[assignment[x.component_of(o)].0].base()).collect::<Vec<_>>();
    let transport = object_map.iter().map(|&b| y.identity(b)).collect();
    let hom = assignment.iter().map(|(c, iso)| iso.iter().map(|&e| y.base_automorphism(*c, e)).collect()).collect();
    FunctorData::new(x.clone(), y.clone(), object_map, transport, hom).map(Some)
}

fn assign(
    x: &FiniteGroupoid,
    y: &FiniteGroupoid,
    i: usize,
    used: &mut [bool],
    out: &mut Vec<(usize, Vec<usize>)>,
) -> bool {
    if i == x.components().len() {
        return true;
    }
    for c in 0..y.components().len() {
        if used[c] {
            continue;
        }
        if let Some(iso) = find_isomorphism(x.component(i).group(), y.component(c).group()) {
            used[c] = true;
            out.push((c, iso));
            if assign(x, y, i + 1, used, out) {
                return true;
            }
            out.pop();
            used[c] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, PermGroup};
    use crate::groupoid::construct::{discrete, one_object};
    use crate::groupoid::functor::check_equivalence;

    #[test]
    fn finds_group_isomorphism() {
        let s3 = Group::Symmetric(3);
        let regular = Group::Perm(
            PermGroup::from_elements(6, (0..6).map(|a| (0..6).map(|b| s3.mul(a, b) as u16).collect()).collect())
                .unwrap(),
        );
        assert!(find_isomorphism(&s3, &regular).is_some());
        assert!(find_isomorphism(&s3, &cyclic(6)).is_none());
    }

    #[test]
    fn finds_equivalence_or_reports_none() {
        let a = Arc::new(
            FiniteGroupoid::from_components(
                3,
                vec![(vec![0, 1], Arc::new(cyclic(2))), (vec![2], Arc::new(Group::trivial()))],
            )
            .unwrap(),
        );
        let b = Arc::new(
            FiniteGroupoid::from_components(
                2,
                vec![(vec![0], Arc::new(Group::trivial())), (vec![1], Arc::new(cyclic(2)))],
            )
            .unwrap(),
        );
        let f = find_equivalence(&a, &b).unwrap().unwrap();
        assert!(check_equivalence(&f).is_equivalence());
        let c = Arc::new(one_object(Arc::new(cyclic(2))));
        assert!(find_equivalence(&c, &Arc::new(discrete(1))).unwrap().is_none());
        assert!(find_equivalence(&Arc::new(discrete(7)), &c).is_err());
    }
}
