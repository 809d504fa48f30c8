//! Sizes of the intersections of the unipotent conjugacy classes with `U`.
//!
//! Classes meeting `U` are `C_1` (identity), `C_2` (`rank(g - I) = 1`) and
//! `C_3^{(l)}`, `0 ≤ l < d` (regular unipotents). The regular classes are
//! told apart by a torus-invariant of the superdiagonal: `a²c` modulo cubes
//! for `SL`, and `a` modulo cubes of `τ` for `SU`. Only the per-class counts
//! matter downstream, so the labelling `l` is a convention.

use super::{Family, GroupSpec, Mat3};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentCounts {
    pub c1: u64,
    pub c2: u64,
    pub c3: Vec<u64>,
}

impl UnipotentCounts {
    pub fn total(&self) -> u64 {
        self.c1 + self.c2 + self.c3.iter().sum::<u64>()
    }
}

/// Closed-form counts `|C_i ∩ U|`.
pub fn unipotent_class_counts(g: &GroupSpec) -> UnipotentCounts {
    let q = g.q();
    let d = g.d();
    let (c2, c3_total) = match g.family() {
        Family::SL => (2 * q * q - q - 1, q * q * q - 2 * q * q + q),
        Family::SU => (q - 1, q * q * q - q),
    };
    UnipotentCounts {
        c1: 1,
        c2,
        c3: vec![c3_total / d; d as usize],
    }
}

/// Every element of `U`, found by testing all unitriangular matrices over the
/// matrix field for membership.
pub fn enumerate_unipotent_radical(g: &GroupSpec) -> Vec<Mat3> {
    let fld = g.field();
    let mut out = Vec::new();
    for a in fld.elements() {
        for b in fld.elements() {
            for c in fld.elements() {
                let m = g.unitriangular(a, b, c);
                if g.is_member(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Counts by enumerating `U` and bucketing by `rank(g - I)` and the regular
/// class invariant.
pub fn enumerate_unipotent_class_counts(g: &GroupSpec) -> Result<UnipotentCounts> {
    let fld = g.field();
    let d = g.d();
    let mut counts = UnipotentCounts {
        c1: 0,
        c2: 0,
        c3: vec![0; d as usize],
    };
    for u in enumerate_unipotent_radical(g) {
        match g.rank_minus_identity(&u) {
            0 => counts.c1 += 1,
            1 => counts.c2 += 1,
            _ => {
                let (a, c) = (u.at(0, 1), u.at(1, 2));
                let label = match g.family() {
                    Family::SL => {
                        // log base t of a²c; F_q = matrix field
                        fld.log(fld.mul(fld.mul(a, a), c))? % d
                    }
                    Family::SU => fld.log(a)? % d,
                };
                counts.c3[label as usize] += 1;
            }
        }
    }
    Ok(counts)
}
