//! Orbits of `SL(3, q)` on pairs of flags, found by two independent routes:
//! closing under the enumerated group, and classifying by relative position.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::field::Element;
use super::linear::flag_group;
use super::plane::{flags, FlagVariety};
use crate::error::Result;

/// How two flags `(p₁, ℓ₁)` and `(p₂, ℓ₂)` sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelativePosition {
    pub same_point: bool,
    pub same_line: bool,
    /// `p₁ ∈ ℓ₂`.
    pub first_point_on_second_line: bool,
    /// `p₂ ∈ ℓ₁`.
    pub second_point_on_first_line: bool,
}

impl RelativePosition {
    pub fn of(x: &FlagVariety, a: usize, b: usize) -> Self {
        let (f, g) = (x.flag(a), x.flag(b));
        RelativePosition {
            same_point: f.point == g.point,
            same_line: f.line == g.line,
            first_point_on_second_line: x.plane.incident(f.point, g.line),
            second_point_on_first_line: x.plane.incident(g.point, f.line),
        }
    }

    /// The basis element named by the shortest product of `P` and `L`
    /// reaching this position: `1`, `P`, `L`, `PL`, `LP` or `PLP`.
    pub fn label(&self) -> &'static str {
        match (self.same_point, self.same_line, self.first_point_on_second_line, self.second_point_on_first_line) {
            (true, true, _, _) => "1",
            (false, true, _, _) => "P",
            (true, false, _, _) => "L",
            (false, false, false, true) => "PL",
            (false, false, true, false) => "LP",
            _ => "PLP",
        }
    }
}

impl fmt::Display for RelativePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    pub label: String,
    pub position: RelativePosition,
    /// The least pair `(a, b)` of flag indices in the orbit.
    pub representative: (usize, usize),
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub q: Element,
    pub flags: usize,
    /// Orbits by relative position, ordered by representative.
    pub orbits: Vec<OrbitSummary>,
    /// Only the classifier ran; the group is too large to enumerate.
    pub classifier_only: bool,
    pub group_order: Option<usize>,
    /// Orbits found by applying every group element.
    pub enumerated_orbits: Option<usize>,
    /// Both routes give the same partition of pairs.
    pub routes_agree: Option<bool>,
    /// `|orbit| · |stabilizer| = |G|` for every orbit, so each irreducible
    /// span `G/Stab → X × X` is injective.
    pub spans_injective: Option<bool>,
    pub diagonal_is_orbit: bool,
    pub point_relation_is_orbit: bool,
    pub line_relation_is_orbit: bool,
}

/// Partition of `0..n²` (pair `(a, b)` at `a·n + b`) into classes listed by
/// least element, each class sorted.
fn partition_by<K: Ord>(n: usize, key: impl Fn(usize, usize) -> K) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            classes.entry(key(a, b)).or_default().push(a * n + b);
        }
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort_unstable_by_key(|c| c[0]);
    out
}

pub fn sl3_orbits(q: Element) -> Result<OrbitReport> {
    let x = flags(q)?;
    let n = x.len();
    let by_position = partition_by(n, |a, b| RelativePosition::of(&x, a, b));
    let orbits: Vec<OrbitSummary> = by_position
        .iter()
        .map(|class| {
            let (a, b) = (class[0] / n, class[0] % n);
            let position = RelativePosition::of(&x, a, b);
            OrbitSummary { label: position.label().to_string(), position, representative: (a, b), size: class.len() }
        })
        .collect();
    let whole = |pred: &dyn Fn(usize, usize) -> bool| {
        let members: Vec<usize> = (0..n * n).filter(|&s| pred(s / n, s % n)).collect();
        by_position.iter().any(|c| *c == members)
    };
    let diagonal_is_orbit = whole(&|a, b| a == b);
    let point_relation_is_orbit = whole(&|a, b| {
        let (f, g) = (x.flag(a), x.flag(b));
        f.line == g.line && f.point != g.point
    });
    let line_relation_is_orbit = whole(&|a, b| {
        let (f, g) = (x.flag(a), x.flag(b));
        f.point == g.point && f.line != g.line
    });

    let mut report = OrbitReport {
        q,
        flags: n,
        orbits,
        classifier_only: true,
        group_order: None,
        enumerated_orbits: None,
        routes_agree: None,
        spans_injective: None,
        diagonal_is_orbit,
        point_relation_is_orbit,
        line_relation_is_orbit,
    };
    if q > super::linear::MAX_ENUMERATED_ORDER {
        return Ok(report);
    }
    let group = flag_group(&x)?;
    let elements = group.elements();
    let mut orbit_of = vec![usize::MAX; n * n];
    let mut by_group: Vec<Vec<usize>> = Vec::new();
    let mut injective = true;
    for s in 0..n * n {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let (a, b) = (s / n, s % n);
        let mut members = Vec::new();
        let mut stabilizer = 0;
        for g in elements {
            let t = g[a] as usize * n + g[b] as usize;
            if t == s {
                stabilizer += 1;
            }
            if orbit_of[t] == usize::MAX {
                orbit_of[t] = by_group.len();
                members.push(t);
            }
        }
        members.sort_unstable();
        injective &= members.len() * stabilizer == elements.len();
        by_group.push(members);
    }
    report.classifier_only = false;
    report.group_order = Some(group.order());
    report.enumerated_orbits = Some(by_group.len());
    report.routes_agree = Some(by_group == by_position);
    report.spans_injective = Some(injective);
    Ok(report)
}
