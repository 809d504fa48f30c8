use std::collections::HashSet;

use super::{GroupSpec, Mat3};
use crate::error::{Error, Result};
use crate::gf::FFElem;

/// All elements of a (small) group, produced by closing the generators.
#[derive(Clone, Debug)]
pub struct GroupElements {
    pub elements: Vec<Mat3>,
}

fn key(m: &Mat3, size: u64) -> u128 {
    m.0.iter()
        .fold(0u128, |acc, x| acc * size as u128 + x.code() as u128)
}

/// Closure of the generator list under right multiplication.
pub fn enumerate_group(g: &GroupSpec, max_order: usize) -> Result<GroupElements> {
    let size = g.field().size();
    let id = g.identity();
    let mut seen = HashSet::new();
    seen.insert(key(&id, size));
    let mut elements = vec![id];
    let mut next = 0;
    while next < elements.len() {
        let x = elements[next];
        next += 1;
        for s in g.generators() {
            let y = g.mul(&x, s);
            if seen.insert(key(&y, size)) {
                if elements.len() >= max_order {
                    return Err(Error::Capacity(format!("group order exceeds {max_order}")));
                }
                elements.push(y);
            }
        }
    }
    Ok(GroupElements { elements })
}

/// Counts group members among all `|field|^9` matrices.
pub fn brute_force_order(g: &GroupSpec, max_candidates: u64) -> Result<u64> {
    let size = g.field().size();
    let total = size
        .checked_pow(9)
        .filter(|&t| t <= max_candidates)
        .ok_or_else(|| Error::Capacity(format!("{size}^9 candidate matrices")))?;
    let mut count = 0u64;
    let mut entries = [FFElem::ZERO; 9];
    for code in 0..total {
        let mut v = code;
        for e in entries.iter_mut() {
            *e = g.field().elem_from_code(v % size)?;
            v /= size;
        }
        if g.is_member(&Mat3(entries)) {
            count += 1;
        }
    }
    Ok(count)
}
