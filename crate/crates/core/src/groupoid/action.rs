//! Group actions and their action groupoids `S//G`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::finite::{FiniteGroupoid, MorphismId, MorphismParts, ValidationReport};
use crate::error::{Error, Result};
use crate::group::{Group, Perm, PermGroup};

type ActFn = dyn Fn(usize, usize) -> usize + Send + Sync;

/// A left action of an indexed group on the points `0..carrier`.
#[derive(Clone)]
pub struct GroupAction {
    group: Arc<Group>,
    carrier: usize,
    act: Arc<ActFn>,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupAction").field("order", &self.group.order()).field("carrier", &self.carrier).finish()
    }
}

/// Checks group axioms on an explicit multiplication table and the action
/// axioms on an explicit action table.
pub fn validate_action_tables(
    identity: usize,
    mult: &[Vec<usize>],
    inverse: &[usize],
    action: &[Vec<usize>],
) -> Result<ValidationReport> {
    let n = mult.len();
    if mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) || identity >= n || inverse.len() != n {
        return Err(Error::Structural("multiplication table is not square over the element set".into()));
    }
    if action.len() != n {
        return Err(Error::Structural("action table needs one row per group element".into()));
    }
    let carrier = action.first().map_or(0, |r| r.len());
    if action.iter().any(|row| row.len() != carrier || row.iter().any(|&x| x >= carrier)) {
        return Err(Error::Structural("action rows must map the carrier to itself".into()));
    }
    let mut report = ValidationReport::default();
    for a in 0..n {
        if mult[identity][a] != a || mult[a][identity] != a {
            report.push("group unit", vec![a]);
        }
        if inverse[a] >= n || mult[a][inverse[a]] != identity || mult[inverse[a]][a] != identity {
            report.push("group inverse", vec![a]);
        }
        for b in 0..n {
            for c in 0..n {
                if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                    report.push("group associativity", vec![a, b, c]);
                }
            }
        }
    }
    for s in 0..carrier {
        if action[identity][s] != s {
            report.push("action unit", vec![s]);
        }
        for a in 0..n {
            for b in 0..n {
                if action[mult[a][b]][s] != action[a][action[b][s]] {
                    report.push("action compatibility", vec![a, b, s]);
                }
            }
        }
    }
    Ok(report)
}

impl GroupAction {
    pub fn new(group: Arc<Group>, carrier: usize, act: impl Fn(usize, usize) -> usize + Send + Sync + 'static) -> Self {
        GroupAction { group, carrier, act: Arc::new(act) }
    }

    /// Builds an action from explicit tables, failing on any axiom violation.
    /// The group is re-indexed so that the identity comes first.
    pub fn from_tables(
        identity: usize,
        mult: Vec<Vec<usize>>,
        inverse: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let report = validate_action_tables(identity, &mult, &inverse, &action)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Violation(format!("{} at {:?}", v.axiom, v.witness)));
        }
        let n = mult.len();
        let mut order: Vec<usize> = vec![identity];
        order.extend((0..n).filter(|&a| a != identity));
        let mut new_index = vec![0; n];
        for (i, &a) in order.iter().enumerate() {
            new_index[a] = i;
        }
        let perms: Vec<Perm> =
            order.iter().map(|&a| order.iter().map(|&b| new_index[mult[a][b]] as u16).collect()).collect();
        let group = Arc::new(Group::Perm(PermGroup::from_elements(n, perms)?));
        let carrier = action.first().map_or(0, |r| r.len());
        let table: Vec<Vec<usize>> = order.iter().map(|&a| action[a].clone()).collect();
        Ok(Self::new(group, carrier, move |g, s| table[g][s]))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn act(&self, g: usize, s: usize) -> usize {
        (self.act)(g, s)
    }

    /// Unit law plus compatibility `(s·g)x = s(gx)` for every generator `s`,
    /// which by induction covers all products.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let g = &self.group;
        for x in 0..self.carrier {
            if self.act(0, x) != x {
                report.push("action unit", vec![x]);
            }
        }
        for s in g.generators() {
            for a in 0..g.order() {
                for x in 0..self.carrier {
                    if self.act(g.mul(s, a), x) != self.act(s, self.act(a, x)) {
                        report.push("action compatibility", vec![s, a, x]);
                    }
                }
            }
        }
        report
    }

    pub fn is_free(&self) -> bool {
        (1..self.group.order()).all(|g| (0..self.carrier).all(|x| self.act(g, x) != x))
    }
}

/// The weak quotient `S//G` together with the bookkeeping that translates
/// between pairs `(g, s)` and morphism ids.
#[derive(Debug, Clone)]
pub struct ActionGroupoid {
    pub groupoid: Arc<FiniteGroupoid>,
    action: GroupAction,
    /// `transporter[s] · rep(s) = s`.
    transporter: Vec<usize>,
    /// Group element of each stabilizer element, per component.
    stabilizer: Vec<Vec<usize>>,
    stabilizer_index: Vec<HashMap<usize, usize>>,
}

pub fn action_groupoid(action: &GroupAction) -> ActionGroupoid {
    let g = action.group();
    let n = action.carrier();
    let mut transporter = vec![usize::MAX; n];
    let mut parts = Vec::new();
    let mut stabilizers = Vec::new();
    for rep in 0..n {
        if transporter[rep] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stab = Vec::new();
        for e in 0..g.order() {
            let y = action.act(e, rep);
            if transporter[y] == usize::MAX {
                transporter[y] = e;
                orbit.push(y);
            }
            if y == rep {
                stab.push(e);
            }
        }
        let perms = stab.iter().map(|&e| g.element(e)).collect();
        let group = if stab.len() == g.order() {
            g.clone()
        } else {
            Arc::new(Group::Perm(PermGroup::from_elements_unchecked(g.degree(), perms)))
        };
        parts.push((orbit, group));
        stabilizers.push(stab);
    }
    let groupoid = Arc::new(FiniteGroupoid::from_components(n, parts).expect("orbits partition the carrier"));
    // Components come back sorted by least point, which is the order orbits were found in.
    let stabilizer_index = stabilizers.iter().map(|s| s.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();
    ActionGroupoid { groupoid, action: action.clone(), transporter, stabilizer: stabilizers, stabilizer_index }
}

impl ActionGroupoid {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn transporter(&self, s: usize) -> usize {
        self.transporter[s]
    }

    /// The morphism `s → g·s` labelled by `g`.
    pub fn morphism(&self, g: usize, s: usize) -> MorphismId {
        let grp = self.action.group();
        let t = self.action.act(g, s);
        let c = self.groupoid.component_of(s);
        let inner = grp.mul(grp.inv(self.transporter[t]), grp.mul(g, self.transporter[s]));
        self.groupoid.encode(MorphismParts {
            component: c,
            from: self.groupoid.position_of(s),
            to: self.groupoid.position_of(t),
            element: self.stabilizer_index[c][&inner],
        })
    }

    /// Inverse of [`ActionGroupoid::morphism`]: the label and the source point.
    pub fn decode(&self, m: MorphismId) -> (usize, usize) {
        let grp = self.action.group();
        let p = self.groupoid.decode(m);
        let objects = self.groupoid.component(p.component).objects();
        let (s, t) = (objects[p.from], objects[p.to]);
        let h = self.stabilizer[p.component][p.element];
        (grp.mul(self.transporter[t], grp.mul(h, grp.inv(self.transporter[s]))), s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::rational::Rational;

    fn z2_on(points: usize, fixed: usize) -> GroupAction {
        // The generator swaps 2i and 2i+1 below `points - fixed` and fixes the rest.
        let moved = points - fixed;
        GroupAction::new(Arc::new(cyclic(2)), points, move |g, s| if g == 1 && s < moved { s ^ 1 } else { s })
    }

    #[test]
    fn worked_cardinalities() {
        let free = action_groupoid(&z2_on(6, 0));
        assert_eq!(free.groupoid.cardinality(), Rational::integer(3));
        let one_fixed = action_groupoid(&z2_on(5, 1));
        assert_eq!(one_fixed.groupoid.cardinality(), Rational::new(5, 2));
        assert!(z2_on(6, 0).is_free());
        assert!(!z2_on(5, 1).is_free());
    }

    #[test]
    fn morphisms_roundtrip() {
        let s3 = Arc::new(Group::Symmetric(3));
        let grp = s3.clone();
        let action = GroupAction::new(s3, 3 * 3, move |g, x| {
            let p = grp.element(g);
            p[x / 3] as usize * 3 + p[x % 3] as usize
        });
        assert!(action.validate().ok);
        let ag = action_groupoid(&action);
        assert_eq!(ag.groupoid.components().len(), 2);
        assert!(ag.groupoid.validate().ok);
        for g in 0..6 {
            for s in 0..9 {
                let m = ag.morphism(g, s);
                assert_eq!(ag.decode(m), (g, s));
                assert_eq!(ag.groupoid.target(m), action.act(g, s));
            }
        }
        for g in 0..6 {
            for h in 0..6 {
                let s = 1;
                let lhs = ag.groupoid.compose(ag.morphism(g, action.act(h, s)), ag.morphism(h, s));
                assert_eq!(lhs, Some(ag.morphism(action.group().mul(g, h), s)));
            }
        }
    }

    #[test]
    fn tables_route() {
        // Z/3 by addition acting on itself and a fixed point.
        let mult: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let action: Vec<Vec<usize>> = (0..3).map(|a| vec![a % 3, (a + 1) % 3, (a + 2) % 3, 3]).collect();
        let act = GroupAction::from_tables(0, mult.clone(), vec![0, 2, 1], action).unwrap();
        assert_eq!(action_groupoid(&act).groupoid.cardinality(), Rational::new(4, 3));
        let bad = vec![vec![1, 0, 2], vec![0, 1, 2], vec![0, 1, 2]];
        assert!(GroupAction::from_tables(0, mult, vec![0, 2, 1], bad).is_err());
    }
}
