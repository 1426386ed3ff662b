//! `SL(3, F_q)` and its action on points, lines and flags.

use rand::Rng;

use super::field::{Element, PrimeField};
use super::plane::{dot, Flag, FlagVariety, Vector3};
use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup};

/// Largest field order for which `SL(3, F_q)` is enumerated element by element.
pub const MAX_ENUMERATED_ORDER: Element = 3;

/// A 3×3 matrix over `F_q`, row-major.
pub type Matrix3 = [Element; 9];

pub fn determinant(f: &PrimeField, m: &Matrix3) -> Element {
    let minor = |a: usize, b: usize, c: usize, d: usize| f.sub(f.mul(m[a], m[d]), f.mul(m[b], m[c]));
    let t0 = f.mul(m[0], minor(4, 5, 7, 8));
    let t1 = f.mul(m[1], minor(3, 5, 6, 8));
    let t2 = f.mul(m[2], minor(3, 4, 6, 7));
    f.add(f.sub(t0, t1), t2)
}

/// The inverse of an invertible matrix, by the adjugate.
pub fn inverse(f: &PrimeField, m: &Matrix3) -> Matrix3 {
    let d = f.inv(determinant(f, m));
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        f.sub(f.mul(m[r0 * 3 + c0], m[r1 * 3 + c1]), f.mul(m[r0 * 3 + c1], m[r1 * 3 + c0]))
    };
    // Entry (i, j) of the adjugate is the cofactor of (j, i).
    let adj = [
        c(1, 2, 1, 2),
        f.neg(c(0, 2, 1, 2)),
        c(0, 1, 1, 2),
        f.neg(c(1, 2, 0, 2)),
        c(0, 2, 0, 2),
        f.neg(c(0, 1, 0, 2)),
        c(1, 2, 0, 1),
        f.neg(c(0, 2, 0, 1)),
        c(0, 1, 0, 1),
    ];
    adj.map(|x| f.mul(x, d))
}

/// `g v` for a column vector `v`.
pub fn apply(f: &PrimeField, g: &Matrix3, v: &Vector3) -> Vector3 {
    [0, 1, 2].map(|i| dot(f, &[g[i * 3], g[i * 3 + 1], g[i * 3 + 2]], v))
}

/// `ℓ h` for a row vector `ℓ`.
pub fn apply_row(f: &PrimeField, l: &Vector3, h: &Matrix3) -> Vector3 {
    [0, 1, 2].map(|j| dot(f, l, &[h[j], h[3 + j], h[6 + j]]))
}

/// Points move by `p ↦ g p` and lines by `ℓ ↦ ℓ g⁻¹`, which preserves incidence.
pub fn act_on_flag(x: &FlagVariety, g: &Matrix3, flag: Flag) -> Flag {
    let plane = &x.plane;
    let f = plane.field();
    let point = plane.point_of(apply(f, g, &plane.points()[flag.point])).expect("invertible");
    let line = plane.line_of(apply_row(f, &plane.lines()[flag.line], &inverse(f, g))).expect("invertible");
    Flag { point, line }
}

/// The permutation of flag indices induced by `g`.
pub fn flag_permutation(x: &FlagVariety, g: &Matrix3) -> Perm {
    x.flags().iter().map(|&fl| x.index_of(act_on_flag(x, g, fl)).expect("flags map to flags") as u16).collect()
}

/// Every matrix of determinant 1, in lexicographic order of entries.
pub fn special_linear_3(f: &PrimeField) -> Result<Vec<Matrix3>> {
    let q = f.order();
    if q > MAX_ENUMERATED_ORDER {
        return Err(Error::CapExceeded {
            what: "field order for enumerating SL(3, q)".into(),
            needed: q as u128,
            cap: MAX_ENUMERATED_ORDER as u128,
        });
    }
    let total = (q as usize).pow(9);
    let mut out = Vec::new();
    for code in 0..total {
        let mut m = [0; 9];
        let mut c = code;
        for e in m.iter_mut().rev() {
            *e = (c % q as usize) as Element;
            c /= q as usize;
        }
        if determinant(f, &m) == 1 {
            out.push(m);
        }
    }
    Ok(out)
}

/// `|SL(3, q)| = q³ (q² − 1)(q³ − 1)`.
pub fn special_linear_3_order(q: u64) -> u64 {
    q.pow(3) * (q * q - 1) * (q.pow(3) - 1)
}

/// A uniformly random invertible matrix with its first row rescaled to
/// determinant 1.
pub fn random_special_linear_3(f: &PrimeField, rng: &mut impl Rng) -> Matrix3 {
    let q = f.order();
    loop {
        let mut m: Matrix3 = [0; 9];
        for e in m.iter_mut() {
            *e = rng.gen_range(0..q);
        }
        let d = determinant(f, &m);
        if d != 0 {
            let s = f.inv(d);
            for e in m.iter_mut().take(3) {
                *e = f.mul(*e, s);
            }
            return m;
        }
    }
}

/// The image of `SL(3, q)` in the permutations of the flags.
pub fn flag_group(x: &FlagVariety) -> Result<PermGroup> {
    let mut perms: Vec<Perm> = special_linear_3(x.plane.field())?.iter().map(|g| flag_permutation(x, g)).collect();
    perms.sort_unstable();
    perms.dedup();
    PermGroup::from_elements(x.len(), perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::plane::flags;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn orders_of_special_linear_groups() {
        for q in [2u32, 3] {
            let f = PrimeField::new(q).unwrap();
            assert_eq!(special_linear_3(&f).unwrap().len() as u64, special_linear_3_order(q as u64));
        }
        assert_eq!(special_linear_3_order(2), 168);
        assert_eq!(special_linear_3_order(3), 5616);
        assert!(special_linear_3(&PrimeField::new(5).unwrap()).is_err());
    }

    #[test]
    fn inverse_and_incidence() {
        let x = flags(5).unwrap();
        let f = *x.plane.field();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_special_linear_3(&f, &mut rng);
            assert_eq!(determinant(&f, &g), 1);
            let h = inverse(&f, &g);
            assert_eq!(apply(&f, &h, &apply(&f, &g, &[1, 2, 3])), [1, 2, 3]);
            let perm = flag_permutation(&x, &g);
            assert!(crate::group::is_perm(&perm));
        }
    }

    #[test]
    fn center_is_trivial_for_small_fields() {
        for q in [2, 3] {
            let x = flags(q).unwrap();
            assert_eq!(flag_group(&x).unwrap().order() as u64, special_linear_3_order(q as u64));
        }
    }
}
