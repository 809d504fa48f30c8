//! Monomial models of `Ind_B^G(θ)` on the coset space `G/B`, and the
//! orbit-wise solution of the invariance equations for symmetric forms and
//! for fixed vectors.

use std::collections::HashMap;

use crate::chartab::TorusChar;
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::groups::{coset_action, CosetAction, GroupSpec, Mat3, Stabilizer};

use super::linalg::cyclotomic_det;

/// A representation in which every generator acts by `e_x ↦ μ_n^{c(x)} e_{π(x)}`.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    /// Order of the root of unity carrying the scalars.
    pub order: u64,
    pub perms: Vec<Vec<u32>>,
    pub scalars: Vec<Vec<u64>>,
    /// How many leading generators span `U`.
    pub u_gens: usize,
    pub theta: Option<TorusChar>,
}

impl MonomialRep {
    pub fn dim(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    /// The permutation representation of a coset action.
    pub fn from_action(action: &CosetAction) -> MonomialRep {
        let perms = action.gen_perms().to_vec();
        let scalars = perms.iter().map(|p| vec![0; p.len()]).collect();
        MonomialRep {
            order: 1,
            perms,
            scalars,
            u_gens: action.u_gen_perms().len(),
            theta: None,
        }
    }

    /// Composition of generator images along a word (applied right to left).
    pub fn word(&self, word: &[usize]) -> (Vec<u32>, Vec<u64>) {
        let n = self.dim();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut scal = vec![0u64; n];
        for &s in word.iter().rev() {
            for x in 0..n {
                let y = perm[x] as usize;
                scal[x] = (scal[x] + self.scalars[s][y]) % self.order;
                perm[x] = self.perms[s][y];
            }
        }
        (perm, scal)
    }
}

fn cocycle_exponent(g: &GroupSpec, theta: &TorusChar, b: &Mat3) -> Result<u64> {
    if !(b.at(1, 0).is_zero() && b.at(2, 0).is_zero() && b.at(2, 1).is_zero()) {
        return Err(Error::Construction(
            "coset cocycle left the Borel subgroup".into(),
        ));
    }
    let (a, c) = g.torus_coordinates(b)?;
    let e = theta.exponent_at(a, c);
    let step = theta.modulus() / theta.order();
    if !e.is_multiple_of(step) {
        return Err(Error::Construction(
            "torus value outside the character's image".into(),
        ));
    }
    Ok(e / step)
}

/// The monomial representation `Ind_B^G(θ)` on `G/B`.
pub fn build_induced_rep(g: &GroupSpec, theta: &TorusChar, max_dim: usize) -> Result<MonomialRep> {
    let action = coset_action(g, Stabilizer::B)?;
    if action.len() > max_dim {
        return Err(Error::Capacity(format!(
            "induced module of dimension {} exceeds the cap {max_dim}",
            action.len()
        )));
    }
    build_on_action(g, theta, &action)
}

fn reps_inverses(g: &GroupSpec, action: &CosetAction) -> Result<Vec<Mat3>> {
    action.representatives().iter().map(|r| g.inv(r)).collect()
}

fn build_on_action(g: &GroupSpec, theta: &TorusChar, action: &CosetAction) -> Result<MonomialRep> {
    let reps = action.representatives();
    let inv = reps_inverses(g, action)?;
    let mut scalars = Vec::new();
    for (s, perm) in g.generators().iter().zip(action.gen_perms()) {
        let row = (0..action.len())
            .map(|x| {
                let y = perm[x] as usize;
                let b = g.mul(&inv[y], &g.mul(s, &reps[x]));
                cocycle_exponent(g, theta, &b)
            })
            .collect::<Result<Vec<u64>>>()?;
        scalars.push(row);
    }
    Ok(MonomialRep {
        order: theta.order(),
        perms: action.gen_perms().to_vec(),
        scalars,
        u_gens: action.u_gen_perms().len(),
        theta: Some(*theta),
    })
}

/// Checks that the generator images multiply like the group elements along
/// each word: the composed monomial matrix must equal the one obtained from
/// the product matrix directly.
pub fn check_words(g: &GroupSpec, rep: &MonomialRep, words: &[Vec<usize>]) -> Result<()> {
    let Some(theta) = rep.theta else {
        return Ok(());
    };
    let action = coset_action(g, Stabilizer::B)?;
    let reps = action.representatives();
    let inv = reps_inverses(g, &action)?;
    for w in words {
        let elem = w
            .iter()
            .fold(g.identity(), |acc, &s| g.mul(&acc, &g.generators()[s]));
        let (perm, scal) = rep.word(w);
        for x in 0..rep.dim() {
            let y = action.act(g, &elem, x)?;
            let b = g.mul(&inv[y], &g.mul(&elem, &reps[x]));
            if perm[x] as usize != y || cocycle_exponent(g, &theta, &b)? != scal[x] {
                return Err(Error::Construction(format!(
                    "word {w:?} is not represented consistently at {x}"
                )));
            }
        }
    }
    Ok(())
}

/// A symmetric invariant form with entries `0` or `μ_n^{e}`.
#[derive(Clone, Debug)]
pub struct GramForm {
    pub order: u64,
    pub dim: usize,
    entries: HashMap<(u32, u32), u64>,
    /// Dimension of the space of invariant symmetric forms.
    pub solution_dim: usize,
}

impl GramForm {
    pub fn entry(&self, i: usize, j: usize) -> Option<u64> {
        let key = if i <= j {
            (i as u32, j as u32)
        } else {
            (j as u32, i as u32)
        };
        self.entries.get(&key).copied()
    }

    pub fn nonzero_entries(&self) -> usize {
        self.entries
            .keys()
            .map(|&(i, j)| if i == j { 1 } else { 2 })
            .sum()
    }

    /// `ρ(s)ᵀ X ρ(s) = X` for every generator.
    pub fn is_invariant(&self, rep: &MonomialRep) -> bool {
        let n = rep.order;
        rep.perms.iter().zip(&rep.scalars).all(|(perm, sc)| {
            (0..self.dim).all(|a| {
                (a..self.dim).all(|b| {
                    let lhs = self.entry(perm[a] as usize, perm[b] as usize);
                    let rhs = self.entry(a, b);
                    match (lhs, rhs) {
                        (None, None) => true,
                        (Some(l), Some(r)) => (l + sc[a] + sc[b]) % n == r % n,
                        _ => false,
                    }
                })
            })
        })
    }

    /// `det X` in `ℚ(μ_n)`.
    pub fn determinant(&self) -> Result<CycloElem> {
        cyclotomic_det(self.order, self.dim, |i, j| self.entry(i, j))
    }
}

fn neg(e: u64, n: u64) -> u64 {
    (n - e % n) % n
}

/// Solves `X_{π(a),π(b)} = μ^{-c(a)-c(b)} X_{a,b}` orbit by orbit on unordered
/// pairs. Each orbit on which the propagated values are consistent carries
/// one basis form; the returned form is the one supported on the orbit of the
/// diagonal pair `(0, 0)` when that orbit is consistent, otherwise the first
/// consistent orbit.
pub fn invariant_form(rep: &MonomialRep) -> Result<GramForm> {
    let n = rep.order;
    let d = rep.dim();
    let key = |a: usize, b: usize| {
        if a <= b {
            (a as u32, b as u32)
        } else {
            (b as u32, a as u32)
        }
    };
    let mut value: HashMap<(u32, u32), u64> = HashMap::new();
    let mut orbit_of: HashMap<(u32, u32), usize> = HashMap::new();
    let mut consistent: Vec<bool> = Vec::new();
    let mut orbits: Vec<Vec<(u32, u32)>> = Vec::new();
    for a in 0..d {
        for b in a..d {
            if orbit_of.contains_key(&(a as u32, b as u32)) {
                continue;
            }
            let id = orbits.len();
            let mut ok = true;
            let mut members = vec![(a as u32, b as u32)];
            value.insert((a as u32, b as u32), 0);
            orbit_of.insert((a as u32, b as u32), id);
            let mut next = 0;
            while next < members.len() {
                let (x, y) = members[next];
                let vx = value[&(x, y)];
                for (perm, sc) in rep.perms.iter().zip(&rep.scalars) {
                    let (px, py) = (perm[x as usize] as usize, perm[y as usize] as usize);
                    let k = key(px, py);
                    let v = (vx + neg(sc[x as usize], n) + neg(sc[y as usize], n)) % n;
                    match value.get(&k) {
                        Some(&old) => {
                            if old != v {
                                ok = false;
                            }
                        }
                        None => {
                            value.insert(k, v);
                            orbit_of.insert(k, id);
                            members.push(k);
                        }
                    }
                }
                next += 1;
            }
            orbits.push(members);
            consistent.push(ok);
        }
    }
    let solution_dim = consistent.iter().filter(|&&c| c).count();
    if solution_dim == 0 {
        return Err(Error::Consistency(
            "no nonzero invariant symmetric form".into(),
        ));
    }
    let chosen = if consistent[orbit_of[&(0, 0)]] {
        orbit_of[&(0, 0)]
    } else {
        consistent
            .iter()
            .position(|&c| c)
            .expect("one consistent orbit")
    };
    let entries = orbits[chosen].iter().map(|k| (*k, value[k])).collect();
    Ok(GramForm {
        order: n,
        dim: d,
        entries,
        solution_dim,
    })
}

/// Dimension of the common fixed space of the `U`-generators.
pub fn u_fixed_dim(rep: &MonomialRep) -> usize {
    let n = rep.order;
    let d = rep.dim();
    let mut value: Vec<Option<u64>> = vec![None; d];
    let mut fixed = 0;
    for start in 0..d {
        if value[start].is_some() {
            continue;
        }
        value[start] = Some(0);
        let mut stack = vec![start];
        let mut members = vec![start];
        let mut ok = true;
        while let Some(x) = stack.pop() {
            let vx = value[x].expect("visited");
            for s in 0..rep.u_gens {
                let y = rep.perms[s][x] as usize;
                let v = (vx + rep.scalars[s][x]) % n;
                match value[y] {
                    Some(old) => ok &= old == v,
                    None => {
                        value[y] = Some(v);
                        stack.push(y);
                        members.push(y);
                    }
                }
            }
        }
        if ok {
            fixed += 1;
        }
    }
    fixed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_group_q, Family};

    #[test]
    fn trivial_theta_is_permutation_module() {
        let g = make_group_q(Family::SL, 2).unwrap();
        let r = build_induced_rep(&g, &TorusChar::trivial(&g), 1000).unwrap();
        assert_eq!(r.dim(), 21);
        assert!(r.scalars.iter().flatten().all(|&s| s == 0));
        assert_eq!(u_fixed_dim(&r), 6);
    }

    #[test]
    fn words_are_consistent() {
        let g = make_group_q(Family::SL, 3).unwrap();
        let theta = TorusChar::sl(&g, 1, 0);
        let r = build_induced_rep(&g, &theta, 1000).unwrap();
        let k = g.generators().len();
        let words: Vec<Vec<usize>> = (0..k)
            .flat_map(|a| (0..k).map(move |b| vec![a, b, a]))
            .collect();
        check_words(&g, &r, &words).unwrap();
    }

    #[test]
    fn permutation_forms() {
        let g = make_group_q(Family::SU, 2).unwrap();
        let r = build_induced_rep(&g, &TorusChar::trivial(&g), 1000).unwrap();
        let f = invariant_form(&r).unwrap();
        assert_eq!(f.solution_dim, 2);
        assert!(f.is_invariant(&r));
        assert_eq!(u_fixed_dim(&r), 2);
    }
}
