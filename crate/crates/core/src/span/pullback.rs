//! Weak pullbacks of cospans.
//!
//! For components `a ⊆ X` and `b ⊆ Y` landing in one component of `Z`, the
//! triples `(s, t, α)` are classified by `γ = g(τ_t)⁻¹ ∘ α ∘ f(τ_s)`, an
//! element of the base group `G_z` of that component. A pair of morphisms
//! acts on `γ` through `γ ↦ ψ(k) γ φ(h)⁻¹`, so the components of the
//! pullback are the orbits of `Aut(a) × Aut(b)` on `G_z`, with stabilizers as
//! automorphism groups.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Group, Perm, PermGroup};
use crate::groupoid::{same, FiniteGroupoid, FunctorData, MorphismId, MorphismParts, ObjectId};

pub const DEFAULT_PULLBACK_CAP: u64 = 1_000_000;

static PULLBACK_CAP: AtomicU64 = AtomicU64::new(DEFAULT_PULLBACK_CAP);

/// Sets the process-wide cap on candidate triples examined by a weak pullback.
pub fn set_pullback_cap(cap: u64) {
    PULLBACK_CAP.store(cap, Ordering::Relaxed);
}

pub fn pullback_cap() -> u64 {
    PULLBACK_CAP.load(Ordering::Relaxed)
}

/// A pair of functors `X → Z ← Y`.
#[derive(Debug, Clone)]
pub struct Cospan {
    pub left: FunctorData,
    pub right: FunctorData,
}

impl Cospan {
    pub fn new(left: FunctorData, right: FunctorData) -> Result<Self> {
        if !same(left.target(), right.target()) {
            return Err(Error::BoundaryMismatch("cospan legs have different targets".into()));
        }
        Ok(Cospan { left, right })
    }
}

#[derive(Debug, Clone)]
pub struct WeakPullback {
    pub groupoid: Arc<FiniteGroupoid>,
    /// Projection to the source of the left leg.
    pub first: FunctorData,
    /// Projection to the source of the right leg.
    pub second: FunctorData,
    triples: Vec<(ObjectId, ObjectId, MorphismId)>,
    pairs: Vec<Vec<(usize, usize)>>,
    pair_index: Vec<HashMap<(usize, usize), usize>>,
}

impl WeakPullback {
    /// `(s, t, α)` for every object, in id order.
    pub fn triples(&self) -> &[(ObjectId, ObjectId, MorphismId)] {
        &self.triples
    }

    /// The morphism given by a pair `(a: s → s', b: t → t')` between two
    /// pullback objects, if the square commutes.
    pub fn morphism_from_pair(&self, from: ObjectId, to: ObjectId, a: MorphismId, b: MorphismId) -> Option<MorphismId> {
        let g = &self.groupoid;
        let c = g.component_of(from);
        if g.component_of(to) != c {
            return None;
        }
        let (gx, gy) = (self.first.target(), self.second.target());
        let (sf, tf, _) = self.triples[from];
        let (st, tt, _) = self.triples[to];
        if gx.source(a) != sf || gx.target(a) != st || gy.source(b) != tf || gy.target(b) != tt {
            return None;
        }
        let inner_a =
            gx.compose_all(&[gx.inverse(self.first.transport_images()[to]), a, self.first.transport_images()[from]])?;
        let inner_b =
            gy.compose_all(&[gy.inverse(self.second.transport_images()[to]), b, self.second.transport_images()[from]])?;
        let h = gx.decode(inner_a).element;
        let k = gy.decode(inner_b).element;
        let sigma = *self.pair_index[c].get(&(h, k))?;
        Some(g.encode(MorphismParts { component: c, from: g.position_of(from), to: g.position_of(to), element: sigma }))
    }

    /// The pair of factor group elements of a base automorphism in component `c`.
    pub fn pair_of(&self, c: usize, sigma: usize) -> (usize, usize) {
        self.pairs[c][sigma]
    }
}

/// One block: a component of X and one of Y mapping into the same component of Z.
struct Block {
    a: usize,
    b: usize,
    z: usize,
    p: usize,
    q: usize,
    /// Orbit id of every element of `G_z`.
    orbit: Vec<usize>,
    /// `(h, k)` with `γ = ψ(k) γ₀ φ(h)⁻¹`.
    transporter: Vec<(usize, usize)>,
    /// Least element of each orbit.
    reps: Vec<usize>,
}

fn element_of(z: &FiniteGroupoid, m: MorphismId) -> usize {
    z.decode(m).element
}

fn blocks(c: &Cospan) -> Result<Vec<Block>> {
    let (f, g) = (&c.left, &c.right);
    let (x, y, z) = (f.source(), g.source(), f.target());
    let mut candidates: u128 = 0;
    let mut out = Vec::new();
    for (a, ca) in x.components().iter().enumerate() {
        let fa = f.map_object(ca.base());
        for (b, cb) in y.components().iter().enumerate() {
            let gb = g.map_object(cb.base());
            if !z.isomorphic(fa, gb) {
                continue;
            }
            let zc = z.component_of(fa);
            let gz = z.component(zc).group();
            candidates += gz.order() as u128;
            if candidates > pullback_cap() as u128 {
                return Err(Error::CapExceeded {
                    what: "weak pullback candidates".into(),
                    needed: candidates,
                    cap: pullback_cap() as u128,
                });
            }
            let phi: Vec<usize> = f.hom_images()[a].iter().map(|&m| element_of(z, m)).collect();
            let psi: Vec<usize> = g.hom_images()[b].iter().map(|&m| element_of(z, m)).collect();
            let (hg, kg) = (ca.group(), cb.group());
            let n = gz.order();
            let mut orbit = vec![usize::MAX; n];
            let mut transporter = vec![(0, 0); n];
            let mut reps = Vec::new();
            let (hgens, kgens) = (hg.generators(), kg.generators());
            let phi_inv: Vec<usize> = hgens.iter().map(|&h| gz.inv(phi[h])).collect();
            for start in 0..n {
                if orbit[start] != usize::MAX {
                    continue;
                }
                let id = reps.len();
                reps.push(start);
                orbit[start] = id;
                let mut queue = VecDeque::from([start]);
                while let Some(gamma) = queue.pop_front() {
                    let (th, tk) = transporter[gamma];
                    for (i, &h) in hgens.iter().enumerate() {
                        let next = gz.mul(gamma, phi_inv[i]);
                        if orbit[next] == usize::MAX {
                            orbit[next] = id;
                            transporter[next] = (hg.mul(h, th), tk);
                            queue.push_back(next);
                        }
                    }
                    for &k in &kgens {
                        let next = gz.mul(psi[k], gamma);
                        if orbit[next] == usize::MAX {
                            orbit[next] = id;
                            transporter[next] = (th, kg.mul(k, tk));
                            queue.push_back(next);
                        }
                    }
                }
            }
            out.push(Block { a, b, z: zc, p: z.position_of(fa), q: z.position_of(gb), orbit, transporter, reps });
        }
    }
    Ok(out)
}

/// Stabilizer of `γ₀` in `Aut(a) × Aut(b)` as `(h, k)` pairs, identity first.
fn stabilizer(c: &Cospan, blk: &Block, gamma0: usize) -> Vec<(usize, usize)> {
    let (f, g) = (&c.left, &c.right);
    let z = f.target();
    let gz = z.component(blk.z).group();
    let hg = f.source().component(blk.a).group();
    let mut preimage: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, &m) in g.hom_images()[blk.b].iter().enumerate() {
        preimage.entry(element_of(z, m)).or_default().push(k);
    }
    let g0_inv = gz.inv(gamma0);
    let mut out = Vec::new();
    for h in 0..hg.order() {
        let phi = element_of(z, f.hom_images()[blk.a][h]);
        let need = gz.mul(gamma0, gz.mul(phi, g0_inv));
        if let Some(ks) = preimage.get(&need) {
            out.extend(ks.iter().map(|&k| (h, k)));
        }
    }
    out
}

fn stabilizer_group(hg: &Arc<Group>, kg: &Arc<Group>, pairs: &[(usize, usize)]) -> Arc<Group> {
    if pairs.len() == hg.order() * kg.order() {
        return Arc::new(Group::Product(hg.clone(), kg.clone()));
    }
    let shift = hg.degree() as u16;
    let perms: Vec<Perm> = pairs
        .iter()
        .map(|&(h, k)| {
            let mut p = hg.element(h);
            p.extend(kg.element(k).into_iter().map(|v| v + shift));
            p
        })
        .collect();
    Arc::new(Group::Perm(PermGroup::from_elements_unchecked(hg.degree() + kg.degree(), perms)))
}

/// Orders pairs to match the element indexing of [`stabilizer_group`].
fn ordered_pairs(hg: &Group, kg: &Group, pairs: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    if pairs.len() == hg.order() * kg.order() {
        let m = kg.order();
        (0..pairs.len()).map(|i| (i / m, i % m)).collect()
    } else {
        pairs
    }
}

/// The weak pullback with every triple `(s, t, α)` as an object, ordered
/// lexicographically by `(s, t, α)`.
pub fn weak_pullback(c: &Cospan) -> Result<WeakPullback> {
    let (f, g) = (&c.left, &c.right);
    let (x, y, z) = (f.source(), g.source(), f.target());
    let blocks = blocks(c)?;
    let mut block_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, blk) in blocks.iter().enumerate() {
        block_of.insert((blk.a, blk.b), i);
    }

    let mut total: u128 = 0;
    for s in x.objects() {
        for t in y.objects() {
            total += z.hom(f.map_object(s), g.map_object(t)).len() as u128;
        }
    }
    if total > pullback_cap() as u128 {
        return Err(Error::CapExceeded {
            what: "weak pullback objects".into(),
            needed: total,
            cap: pullback_cap() as u128,
        });
    }

    // Enumerate triples and group them by (block, orbit).
    let mut triples = Vec::with_capacity(total as usize);
    let mut gamma_of = Vec::with_capacity(total as usize);
    let mut key_of = Vec::with_capacity(total as usize);
    let mut comp_key: HashMap<(usize, usize), usize> = HashMap::new();
    let mut members: Vec<Vec<ObjectId>> = Vec::new();
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for s in x.objects() {
        let fs = f.map_object(s);
        let ftr = f.transport_images()[s];
        for t in y.objects() {
            let gt = g.map_object(t);
            let range = z.hom(fs, gt);
            if range.is_empty() {
                continue;
            }
            let blk_id = block_of[&(x.component_of(s), y.component_of(t))];
            let gtr_inv = z.inverse(g.transport_images()[t]);
            for alpha in range {
                let normalized = z.compose_all(&[gtr_inv, alpha, ftr]).expect("typed");
                let gamma = element_of(z, normalized);
                let key = (blk_id, blocks[blk_id].orbit[gamma]);
                let id = triples.len();
                let k = *comp_key.entry(key).or_insert_with(|| {
                    members.push(Vec::new());
                    keys.push(key);
                    members.len() - 1
                });
                members[k].push(id);
                triples.push((s, t, alpha));
                gamma_of.push(gamma);
                key_of.push(k);
            }
        }
    }

    let mut parts = Vec::with_capacity(members.len());
    let mut comp_pairs = Vec::with_capacity(members.len());
    for (k, objs) in members.iter().enumerate() {
        let (bi, oi) = keys[k];
        let blk = &blocks[bi];
        let gamma0 = blk.reps[oi];
        debug_assert_eq!(gamma_of[objs[0]], gamma0);
        let (hg, kg) = (x.component(blk.a).group(), y.component(blk.b).group());
        let pairs = ordered_pairs(hg, kg, stabilizer(c, blk, gamma0));
        parts.push((objs.clone(), stabilizer_group(hg, kg, &pairs)));
        comp_pairs.push(pairs);
    }
    let groupoid = Arc::new(FiniteGroupoid::from_components(triples.len(), parts)?);
    // Components were created in order of their least object, so indices agree.
    let pair_index: Vec<HashMap<(usize, usize), usize>> =
        comp_pairs.iter().map(|ps| ps.iter().enumerate().map(|(i, &p)| (p, i)).collect()).collect();

    let project = |side: usize| -> Result<FunctorData> {
        let src = if side == 0 { x } else { y };
        let object_map = triples.iter().map(|&(s, t, _)| if side == 0 { s } else { t }).collect();
        let transport = (0..triples.len())
            .map(|id| {
                let (s, t, _) = triples[id];
                let o = if side == 0 { s } else { t };
                let blk = &blocks[keys[key_of[id]].0];
                let (th, tk) = blk.transporter[gamma_of[id]];
                let (comp, e) = if side == 0 { (blk.a, th) } else { (blk.b, tk) };
                src.encode(MorphismParts { component: comp, from: 0, to: src.position_of(o), element: e })
            })
            .collect();
        let hom = keys
            .iter()
            .zip(&comp_pairs)
            .map(|(&(bi, _), pairs)| {
                let comp = if side == 0 { blocks[bi].a } else { blocks[bi].b };
                pairs.iter().map(|&(h, k)| src.base_automorphism(comp, if side == 0 { h } else { k })).collect()
            })
            .collect();
        FunctorData::new(groupoid.clone(), src.clone(), object_map, transport, hom)
    };
    let first = project(0)?;
    let second = project(1)?;
    Ok(WeakPullback { groupoid, first, second, triples, pairs: comp_pairs, pair_index })
}

/// A skeletal weak pullback: one object `(base_a, base_b, γ₀)` per
/// component. Equivalent to [`weak_pullback`], and far smaller.
pub fn weak_pullback_reduced(c: &Cospan) -> Result<WeakPullback> {
    let (f, g) = (&c.left, &c.right);
    let (x, y, z) = (f.source(), g.source(), f.target());
    let blocks = blocks(c)?;
    let mut triples = Vec::new();
    let mut parts = Vec::new();
    let mut comp_pairs = Vec::new();
    let mut origin = Vec::new();
    for blk in &blocks {
        let (hg, kg) = (x.component(blk.a).group(), y.component(blk.b).group());
        let (sa, tb) = (x.component(blk.a).base(), y.component(blk.b).base());
        for &gamma0 in &blk.reps {
            let alpha = z.encode(MorphismParts { component: blk.z, from: blk.p, to: blk.q, element: gamma0 });
            let pairs = ordered_pairs(hg, kg, stabilizer(c, blk, gamma0));
            parts.push((vec![triples.len()], stabilizer_group(hg, kg, &pairs)));
            triples.push((sa, tb, alpha));
            comp_pairs.push(pairs);
            origin.push((blk.a, blk.b));
        }
    }
    let groupoid = Arc::new(FiniteGroupoid::from_components(triples.len(), parts)?);
    let pair_index = comp_pairs.iter().map(|ps| ps.iter().enumerate().map(|(i, &p)| (p, i)).collect()).collect();
    let first = FunctorData::new(
        groupoid.clone(),
        x.clone(),
        triples.iter().map(|t| t.0).collect(),
        triples.iter().map(|t| x.identity(t.0)).collect(),
        comp_pairs
            .iter()
            .zip(&origin)
            .map(|(ps, &(a, _))| ps.iter().map(|&(h, _)| x.base_automorphism(a, h)).collect())
            .collect(),
    )?;
    let second = FunctorData::new(
        groupoid.clone(),
        y.clone(),
        triples.iter().map(|t| t.1).collect(),
        triples.iter().map(|t| y.identity(t.1)).collect(),
        comp_pairs
            .iter()
            .zip(&origin)
            .map(|(ps, &(_, b))| ps.iter().map(|&(_, k)| y.base_automorphism(b, k)).collect())
            .collect(),
    )?;
    Ok(WeakPullback { groupoid, first, second, triples, pairs: comp_pairs, pair_index })
}
