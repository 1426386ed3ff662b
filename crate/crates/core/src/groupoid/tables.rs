//! Explicit-table groupoids: the JSON interchange format.
//!
//! Tables are validated exhaustively before they are converted into the
//! component form used everywhere else.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::finite::{FiniteGroupoid, MorphismId, MorphismParts, ObjectId, ValidationReport};
use crate::error::{Error, Result};
use crate::group::{Group, Perm, PermGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub id: u64,
    pub src: u64,
    pub tgt: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidTables {
    pub objects: Vec<u64>,
    pub morphisms: Vec<MorphismRecord>,
    pub identity: BTreeMap<u64, u64>,
    pub compose: Vec<[u64; 3]>,
    pub inverse: BTreeMap<u64, u64>,
}

/// Tables with ids resolved to dense indices.
struct Resolved {
    objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<Option<usize>>,
    inverse: Vec<Option<usize>>,
    compose: HashMap<(usize, usize), usize>,
    /// Morphisms grouped by source object.
    out: Vec<Vec<usize>>,
}

fn dense(ids: impl Iterator<Item = u64>, what: &str) -> Result<usize> {
    let ids: Vec<u64> = ids.collect();
    let n = ids.len();
    let mut seen = vec![false; n];
    for id in ids {
        let i = usize::try_from(id)
            .ok()
            .filter(|&i| i < n)
            .ok_or_else(|| Error::Structural(format!("{what} ids must be exactly 0..{n}; found {id}")))?;
        if seen[i] {
            return Err(Error::Structural(format!("duplicate {what} id {id}")));
        }
        seen[i] = true;
    }
    Ok(n)
}

fn resolve(t: &GroupoidTables, report: &mut ValidationReport) -> Result<Resolved> {
    let objects = dense(t.objects.iter().copied(), "object")?;
    let m = dense(t.morphisms.iter().map(|r| r.id), "morphism")?;
    let obj = |id: u64| usize::try_from(id).ok().filter(|&i| i < objects).ok_or(Error::UnknownObject(id as usize));
    let mor = |id: u64| usize::try_from(id).ok().filter(|&i| i < m).ok_or(Error::UnknownMorphism(id as usize));
    let mut src = vec![0; m];
    let mut tgt = vec![0; m];
    for r in &t.morphisms {
        src[r.id as usize] = obj(r.src)?;
        tgt[r.id as usize] = obj(r.tgt)?;
    }
    let mut identity = vec![None; objects];
    for (&x, &f) in &t.identity {
        identity[obj(x)?] = Some(mor(f)?);
    }
    let mut inverse = vec![None; m];
    for (&f, &g) in &t.inverse {
        inverse[mor(f)?] = Some(mor(g)?);
    }
    let mut compose = HashMap::new();
    for &[g, f, gf] in &t.compose {
        let (g, f, gf) = (mor(g)?, mor(f)?, mor(gf)?);
        if let Some(prev) = compose.insert((g, f), gf) {
            if prev != gf {
                report.push("composition is single-valued", vec![g, f, prev, gf]);
            }
        }
    }
    let mut out = vec![Vec::new(); objects];
    for f in 0..m {
        out[src[f]].push(f);
    }
    Ok(Resolved { objects, src, tgt, identity, inverse, compose, out })
}

fn check_axioms(r: &Resolved, report: &mut ValidationReport) {
    for x in 0..r.objects {
        match r.identity[x] {
            None => report.push("identity defined", vec![x]),
            Some(id) if r.src[id] != x || r.tgt[id] != x => report.push("identity endpoints", vec![x, id]),
            Some(_) => {}
        }
    }
    for (&(g, f), &gf) in &r.compose {
        if r.tgt[f] != r.src[g] {
            report.push("composition only of composable pairs", vec![g, f, gf]);
        } else if r.src[gf] != r.src[f] || r.tgt[gf] != r.tgt[g] {
            report.push("composition endpoints", vec![g, f, gf]);
        }
    }
    let m = r.src.len();
    for f in 0..m {
        for &g in &r.out[r.tgt[f]] {
            if !r.compose.contains_key(&(g, f)) {
                report.push("composition defined", vec![g, f]);
            }
        }
    }
    if !report.ok {
        // Unit, inverse and associativity checks below assume total composition.
        return;
    }
    let c = |g: usize, f: usize| r.compose[&(g, f)];
    for f in 0..m {
        let (s, t) = (r.src[f], r.tgt[f]);
        let (ids, idt) = (r.identity[s].unwrap(), r.identity[t].unwrap());
        if c(f, ids) != f || c(idt, f) != f {
            report.push("identity is a unit", vec![f]);
        }
        match r.inverse[f] {
            None => report.push("inverse defined", vec![f]),
            Some(inv) => {
                let ok = r.src[inv] == t && r.tgt[inv] == s && c(inv, f) == ids && c(f, inv) == idt;
                if !ok {
                    report.push("inverse", vec![f, inv]);
                }
            }
        }
        for &g in &r.out[t] {
            let gf = c(g, f);
            for &h in &r.out[r.tgt[g]] {
                if c(h, gf) != c(c(h, g), f) {
                    report.push("associativity", vec![h, g, f]);
                }
            }
        }
    }
}

/// Checks the groupoid axioms on explicit tables.
///
/// Unresolvable or non-dense ids are structural errors; axiom failures are
/// reported as violations with witnesses.
pub fn validate_tables(t: &GroupoidTables) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let r = resolve(t, &mut report)?;
    check_axioms(&r, &mut report);
    Ok(report)
}

/// A table groupoid converted into component form.
#[derive(Debug, Clone)]
pub struct Imported {
    pub groupoid: FiniteGroupoid,
    /// Component-form id of each table morphism id.
    pub morphism: Vec<MorphismId>,
}

impl Imported {
    pub fn table_id_of(&self) -> Vec<usize> {
        let mut back = vec![0; self.morphism.len()];
        for (t, &m) in self.morphism.iter().enumerate() {
            back[m] = t;
        }
        back
    }
}

impl FiniteGroupoid {
    /// Validates and imports explicit tables.
    pub fn from_tables(t: &GroupoidTables) -> Result<Imported> {
        let mut report = ValidationReport::default();
        let r = resolve(t, &mut report)?;
        check_axioms(&r, &mut report);
        if let Some(v) = report.violations.first() {
            return Err(Error::Violation(format!("{} at {:?}", v.axiom, v.witness)));
        }
        let c = |g: usize, f: usize| r.compose[&(g, f)];

        // Connected components by union-find over morphism endpoints.
        let mut parent: Vec<usize> = (0..r.objects).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while p[root] != root {
                root = p[root];
            }
            let mut y = x;
            while p[y] != root {
                let next = p[y];
                p[y] = root;
                y = next;
            }
            root
        }
        for f in 0..r.src.len() {
            let (a, b) = (find(&mut parent, r.src[f]), find(&mut parent, r.tgt[f]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut members: BTreeMap<usize, Vec<ObjectId>> = BTreeMap::new();
        for x in 0..r.objects {
            let root = find(&mut parent, x);
            members.entry(root).or_default().push(x);
        }

        // Per component: transport morphisms and the regular representation of Aut(base).
        let mut transport = vec![usize::MAX; r.objects];
        let mut element_of: HashMap<usize, usize> = HashMap::new();
        let mut parts = Vec::new();
        for objects in members.values() {
            let base = objects[0];
            let id = r.identity[base].unwrap();
            for &f in &r.out[base] {
                let y = r.tgt[f];
                if y == base {
                    transport[y] = id;
                } else if transport[y] == usize::MAX || f < transport[y] {
                    transport[y] = f;
                }
            }
            let mut autos: Vec<usize> = r.out[base].iter().copied().filter(|&f| r.tgt[f] == base && f != id).collect();
            autos.insert(0, id);
            let pos: HashMap<usize, usize> = autos.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            let perms: Vec<Perm> =
                autos.iter().map(|&a| autos.iter().map(|&b| pos[&c(a, b)] as u16).collect()).collect();
            for (&f, &i) in &pos {
                element_of.insert(f, i);
            }
            let group = PermGroup::from_elements(autos.len(), perms)?;
            parts.push((objects.clone(), Arc::new(Group::Perm(group))));
        }
        let groupoid = FiniteGroupoid::from_components(r.objects, parts)?;

        let morphism = (0..r.src.len())
            .map(|f| {
                let (x, y) = (r.src[f], r.tgt[f]);
                let inner = c(r.inverse[transport[y]].unwrap(), c(f, transport[x]));
                groupoid.encode(MorphismParts {
                    component: groupoid.component_of(x),
                    from: groupoid.position_of(x),
                    to: groupoid.position_of(y),
                    element: element_of[&inner],
                })
            })
            .collect();
        Ok(Imported { groupoid, morphism })
    }

    /// Exports explicit tables with the component-form ids. The composition
    /// table has `Σ k³|G|²` rows, so a cap guards against blow-up.
    pub fn to_tables(&self, cap: u128) -> Result<GroupoidTables> {
        let rows: u128 = self
            .components()
            .iter()
            .map(|c| (c.objects().len() as u128).pow(3) * (c.group().order() as u128).pow(2))
            .sum();
        if rows > cap {
            return Err(Error::CapExceeded { what: "composition table rows".into(), needed: rows, cap });
        }
        let n = self.morphism_count();
        let objects = (0..self.object_count() as u64).collect();
        let morphisms = (0..n)
            .map(|m| MorphismRecord { id: m as u64, src: self.source(m) as u64, tgt: self.target(m) as u64 })
            .collect();
        let identity = self.objects().map(|x| (x as u64, self.identity(x) as u64)).collect();
        let inverse = (0..n).map(|m| (m as u64, self.inverse(m) as u64)).collect();
        let mut compose = Vec::with_capacity(rows as usize);
        for f in 0..n {
            for g in self.hom_from(self.target(f)).collect::<Vec<_>>() {
                let gf = self.compose(g, f).expect("composable");
                compose.push([g as u64, f as u64, gf as u64]);
            }
        }
        compose.sort_unstable();
        Ok(GroupoidTables { objects, morphisms, identity, compose, inverse })
    }
}
