//! JSON interchange for functors, groupoids over a base, and spans, built
//! on the explicit-table groupoid format.
//!
//! Imported functors are checked on every morphism of their table, not just
//! on generators, so a table that breaks composition is reported with the
//! offending morphism id.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, FunctorData, GroupoidTables, Imported};
use crate::span::{GroupoidOver, Span};

/// Object and morphism images, keyed by table ids of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorTables {
    pub objects: BTreeMap<u64, u64>,
    pub morphisms: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverTables {
    pub base: GroupoidTables,
    pub total: GroupoidTables,
    pub projection: FunctorTables,
}

/// A span `domain → codomain`: `left` goes to the codomain, `right` to the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanTables {
    pub domain: GroupoidTables,
    pub codomain: GroupoidTables,
    pub apex: GroupoidTables,
    pub left: FunctorTables,
    pub right: FunctorTables,
}

/// Largest composition table written on export.
pub const EXPORT_ROW_CAP: u128 = 10_000_000;

struct Loaded {
    groupoid: Arc<FiniteGroupoid>,
    morphism: Vec<usize>,
    table_id_of: Vec<usize>,
}

fn load(t: &GroupoidTables) -> Result<Loaded> {
    let Imported { groupoid, morphism } = FiniteGroupoid::from_tables(t)?;
    let imported = Imported { groupoid, morphism };
    let table_id_of = imported.table_id_of();
    Ok(Loaded { groupoid: Arc::new(imported.groupoid), morphism: imported.morphism, table_id_of })
}

fn load_functor(source: &Loaded, target: &Loaded, f: &FunctorTables) -> Result<FunctorData> {
    let (s, t) = (&source.groupoid, &target.groupoid);
    let lookup = |map: &BTreeMap<u64, u64>, id: usize, what: &str| -> Result<usize> {
        map.get(&(id as u64))
            .map(|&v| v as usize)
            .ok_or_else(|| Error::Structural(format!("functor table has no image for {what} {id}")))
    };
    for x in s.objects() {
        t.check_object(lookup(&f.objects, x, "object")?)?;
    }
    for table_id in 0..source.morphism.len() {
        let image = lookup(&f.morphisms, table_id, "morphism")?;
        if image >= target.morphism.len() {
            return Err(Error::UnknownMorphism(image));
        }
        let (m, fm) = (source.morphism[table_id], target.morphism[image]);
        let object = |x: usize| f.objects[&(x as u64)] as usize;
        if t.source(fm) != object(s.source(m)) || t.target(fm) != object(s.target(m)) {
            return Err(Error::Violation(format!("image of morphism {table_id} has the wrong endpoints")));
        }
    }
    for x in s.objects() {
        let table_id = source.table_id_of[s.identity(x)];
        if target.morphism[f.morphisms[&(table_id as u64)] as usize] != t.identity(f.objects[&(x as u64)] as usize) {
            return Err(Error::Violation(format!("functor does not preserve the identity morphism {table_id}")));
        }
    }
    let functor = FunctorData::from_fn(
        s.clone(),
        t.clone(),
        |x| f.objects[&(x as u64)] as usize,
        |m| target.morphism[f.morphisms[&(source.table_id_of[m] as u64)] as usize],
    )?;
    for table_id in 0..source.morphism.len() {
        let expected = target.morphism[f.morphisms[&(table_id as u64)] as usize];
        if functor.map_morphism(source.morphism[table_id]) != expected {
            return Err(Error::Violation(format!("functor does not preserve composition at morphism {table_id}")));
        }
    }
    if let Some(v) = functor.validate_exhaustive().violations.first() {
        let witness: Vec<usize> = v.witness.iter().map(|&m| source.table_id_of[m]).collect();
        return Err(Error::Violation(format!(
            "functor table fails to {} at morphisms {witness:?}",
            v.axiom.replace("preserves", "preserve")
        )));
    }
    Ok(functor)
}

fn export_functor(f: &FunctorData) -> FunctorTables {
    let s = f.source();
    FunctorTables {
        objects: s.objects().map(|x| (x as u64, f.map_object(x) as u64)).collect(),
        morphisms: (0..s.morphism_count()).map(|m| (m as u64, f.map_morphism(m) as u64)).collect(),
    }
}

pub fn groupoid_from_tables(t: &GroupoidTables) -> Result<Arc<FiniteGroupoid>> {
    Ok(load(t)?.groupoid)
}

impl OverTables {
    pub fn import(&self) -> Result<GroupoidOver> {
        let (base, total) = (load(&self.base)?, load(&self.total)?);
        Ok(GroupoidOver::new(load_functor(&total, &base, &self.projection)?))
    }

    pub fn export(v: &GroupoidOver) -> Result<Self> {
        Ok(OverTables {
            base: v.base().to_tables(EXPORT_ROW_CAP)?,
            total: v.total().to_tables(EXPORT_ROW_CAP)?,
            projection: export_functor(v.projection()),
        })
    }
}

impl SpanTables {
    pub fn import(&self) -> Result<Span> {
        let (domain, codomain, apex) = (load(&self.domain)?, load(&self.codomain)?, load(&self.apex)?);
        Span::new(load_functor(&apex, &codomain, &self.left)?, load_functor(&apex, &domain, &self.right)?)
    }

    pub fn export(s: &Span) -> Result<Self> {
        Ok(SpanTables {
            domain: s.domain().to_tables(EXPORT_ROW_CAP)?,
            codomain: s.codomain().to_tables(EXPORT_ROW_CAP)?,
            apex: s.apex().to_tables(EXPORT_ROW_CAP)?,
            left: export_functor(s.left()),
            right: export_functor(s.right()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degroupoidify::matrix;
    use crate::oscillator::ladder_spans;

    #[test]
    fn spans_roundtrip_through_tables() {
        let ladder = ladder_spans(3).unwrap();
        let tables = SpanTables::export(&ladder.annihilation).unwrap();
        let back = tables.import().unwrap();
        assert_eq!(matrix(&back), matrix(&ladder.annihilation));
        assert_eq!(SpanTables::export(&back).unwrap(), tables);
    }

    #[test]
    fn broken_functor_is_a_violation() {
        let ladder = ladder_spans(3).unwrap();
        let mut tables = SpanTables::export(&ladder.annihilation).unwrap();
        // Object 2 of the apex carries S_2; send its identity to the swap.
        let id = tables.apex.identity[&2];
        let swap = tables.apex.morphisms.iter().find(|m| m.src == 2 && m.id != id).unwrap().id;
        let image = tables.left.morphisms[&swap];
        tables.left.morphisms.insert(id, image);
        assert!(matches!(tables.import(), Err(Error::Violation(_))));
    }

    #[test]
    fn non_homomorphism_is_a_violation() {
        let ladder = ladder_spans(4).unwrap();
        let mut tables = SpanTables::export(&ladder.annihilation).unwrap();
        // Object 3 of the apex carries S_3; collapse a single transposition.
        let id = tables.apex.identity[&3];
        let autos: Vec<u64> = tables.apex.morphisms.iter().filter(|m| m.src == 3 && m.tgt == 3).map(|m| m.id).collect();
        let transposition = autos
            .iter()
            .copied()
            .find(|&m| m != id && tables.apex.compose.iter().any(|r| r[0] == m && r[1] == m && r[2] == id))
            .unwrap();
        let identity_image = tables.left.morphisms[&id];
        tables.left.morphisms.insert(transposition, identity_image);
        let err = tables.import().unwrap_err();
        assert!(matches!(err, Error::Violation(ref msg) if msg.contains("composition")), "{err}");
    }
}
