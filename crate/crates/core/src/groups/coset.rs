//! Coset spaces `G/B` and `G/P` realized as point sets of the natural
//! geometry, together with the generator permutations and a coset
//! representative `g_x` (with `g_x · x_0 = x`) for each point.
//!
//! * `SL_3(q)/P`: projective row vectors `n`, acted on by `n ↦ n A^{-1}`;
//!   the base point `e_3^T` has stabilizer `P` (bottom row `(0, 0, *)`).
//! * `SL_3(q)/B`: incident flags `(⟨v⟩, ⟨n⟩)` with `n v = 0`; base `(e_1, e_3^T)`.
//! * `SU_3(q)/B`: isotropic points of the Hermitian form; base `e_1`.

use std::collections::HashMap;

use super::{Family, GroupSpec, Mat3};
use crate::error::{Error, Result};
use crate::gf::{FFElem, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stabilizer {
    B,
    P,
}

type Point = [FFElem; 6];

#[derive(Clone, Debug)]
pub struct CosetAction {
    family: Family,
    stabilizer: Stabilizer,
    points: Vec<Point>,
    index: HashMap<Point, u32>,
    gen_perms: Vec<Vec<u32>>,
    reps: Vec<Mat3>,
    u_gen_count: usize,
}

impl CosetAction {
    pub fn stabilizer(&self) -> Stabilizer {
        self.stabilizer
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Permutation images, one per group generator, as `perm[x] = g·x`.
    pub fn gen_perms(&self) -> &[Vec<u32>] {
        &self.gen_perms
    }

    /// Permutations of the generators of `U`.
    pub fn u_gen_perms(&self) -> &[Vec<u32>] {
        &self.gen_perms[..self.u_gen_count]
    }

    /// Coset representatives: `reps[x] · base = x`, with `reps[0] = 1`.
    pub fn representatives(&self) -> &[Mat3] {
        &self.reps
    }

    /// Index of `g · x`.
    pub fn act(&self, g: &GroupSpec, elem: &Mat3, x: usize) -> Result<usize> {
        let inv = g.inv(elem)?;
        let image = apply(g, self.stabilizer, elem, &inv, &self.points[x]);
        self.index
            .get(&image)
            .map(|&i| i as usize)
            .ok_or_else(|| Error::Consistency("image point outside the orbit".into()))
    }

    /// Closed-form number of points.
    pub fn expected_len(family: Family, stabilizer: Stabilizer, q: u64) -> u64 {
        match (family, stabilizer) {
            (Family::SL, Stabilizer::P) => q * q + q + 1,
            (Family::SL, Stabilizer::B) => (q + 1) * (q * q + q + 1),
            (Family::SU, Stabilizer::B) => q * q * q + 1,
            (Family::SU, Stabilizer::P) => 0,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }
}

fn normalize(fld: &FieldSpec, v: [FFElem; 3]) -> [FFElem; 3] {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .copied()
        .expect("nonzero vector");
    let inv = fld.inv(lead).expect("nonzero");
    v.map(|x| fld.mul(x, inv))
}

fn col_action(g: &GroupSpec, a: &Mat3, v: [FFElem; 3]) -> [FFElem; 3] {
    let fld = g.field();
    let mut out = [FFElem::ZERO; 3];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, &vj) in v.iter().enumerate() {
            *o = fld.add(*o, fld.mul(a.at(i, j), vj));
        }
    }
    normalize(fld, out)
}

fn row_action(g: &GroupSpec, a_inv: &Mat3, n: [FFElem; 3]) -> [FFElem; 3] {
    let fld = g.field();
    let mut out = [FFElem::ZERO; 3];
    for (j, o) in out.iter_mut().enumerate() {
        for (i, &ni) in n.iter().enumerate() {
            *o = fld.add(*o, fld.mul(ni, a_inv.at(i, j)));
        }
    }
    normalize(fld, out)
}

fn apply(g: &GroupSpec, stab: Stabilizer, a: &Mat3, a_inv: &Mat3, x: &Point) -> Point {
    let first = [x[0], x[1], x[2]];
    let second = [x[3], x[4], x[5]];
    match (g.family(), stab) {
        (Family::SL, Stabilizer::P) => {
            let n = row_action(g, a_inv, first);
            [n[0], n[1], n[2], FFElem::ZERO, FFElem::ZERO, FFElem::ZERO]
        }
        (Family::SL, Stabilizer::B) => {
            let v = col_action(g, a, first);
            let n = row_action(g, a_inv, second);
            [v[0], v[1], v[2], n[0], n[1], n[2]]
        }
        _ => {
            let v = col_action(g, a, first);
            [v[0], v[1], v[2], FFElem::ZERO, FFElem::ZERO, FFElem::ZERO]
        }
    }
}

/// Builds the action of the generators on `G/stab`.
pub fn coset_action(g: &GroupSpec, stab: Stabilizer) -> Result<CosetAction> {
    if g.family() == Family::SU && stab == Stabilizer::P {
        return Err(Error::Parameter("only G/B is supported for SU".into()));
    }
    let fld = g.field();
    let (z, o) = (fld.zero(), fld.one());
    let base: Point = match (g.family(), stab) {
        (Family::SL, Stabilizer::P) => [z, z, o, z, z, z],
        (Family::SL, Stabilizer::B) => [o, z, z, z, z, o],
        _ => [o, z, z, z, z, z],
    };
    let gens = g.generators();
    let inverses: Vec<Mat3> = gens.iter().map(|s| g.inv(s)).collect::<Result<_>>()?;
    let mut points = vec![base];
    let mut reps = vec![g.identity()];
    let mut index = HashMap::new();
    index.insert(base, 0u32);
    let mut gen_perms: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut next = 0;
    while next < points.len() {
        let x = points[next];
        for (k, (s, s_inv)) in gens.iter().zip(&inverses).enumerate() {
            let y = apply(g, stab, s, s_inv, &x);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = points.len() as u32;
                    index.insert(y, j);
                    points.push(y);
                    reps.push(g.mul(s, &reps[next]));
                    j
                }
            };
            gen_perms[k].push(j);
        }
        next += 1;
    }
    let expected = CosetAction::expected_len(g.family(), stab, g.q());
    if points.len() as u64 != expected {
        return Err(Error::Consistency(format!(
            "orbit of the base point has {} points, expected {expected}",
            points.len()
        )));
    }
    Ok(CosetAction {
        family: g.family(),
        stabilizer: stab,
        points,
        index,
        gen_perms,
        reps,
        u_gen_count: g.unipotent_generators_slice().len(),
    })
}

/// Number of `U`-orbits on the points.
pub fn u_orbit_count(action: &CosetAction, _g: &GroupSpec) -> usize {
    let n = action.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for perm in action.u_gen_perms() {
        for (x, &y) in perm.iter().enumerate() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y as usize));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Isotropic projective points of `F_{q^2}^3`, by exhaustive search.
pub fn count_isotropic_points(g: &GroupSpec) -> u64 {
    let fld = g.field();
    let q = g.q();
    let mut count = 0u64;
    for a in fld.elements() {
        for b in fld.elements() {
            for c in fld.elements() {
                let v = [a, b, c];
                let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
                    continue;
                };
                if *lead != fld.one() {
                    continue;
                }
                let h = fld.add(
                    fld.add(fld.mul(fld.pow(a, q), c), fld.mul(fld.pow(b, q), b)),
                    fld.mul(fld.pow(c, q), a),
                );
                if h.is_zero() {
                    count += 1;
                }
            }
        }
    }
    count
}

impl CosetAction {
    /// Checks that each generator permutation is a bijection.
    pub fn perms_are_bijections(&self) -> bool {
        self.gen_perms.iter().all(|perm| {
            let mut seen = vec![false; perm.len()];
            perm.iter()
                .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        })
    }
}
