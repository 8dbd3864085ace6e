//! Combinatorics of monomial ideals: standard-monomial counts and dimension.
//!
//! Counting splits the staircase along one variable at a time. Cells whose
//! exponent in the split variable lies between two consecutive generator
//! exponents see the same slice ideal, so each slice is counted once and
//! multiplied by its thickness.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

type Exps = SmallVec<[u32; 6]>;

/// Cells below which the staircase is enumerated directly.
const ENUMERATION_THRESHOLD: u64 = 4096;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort_by_key(|g| (g.iter().map(|&e| e as u64).sum::<u64>(), g.clone()));
    gens.dedup();
    let mut kept: Vec<Exps> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept
}

fn pure_power(g: &[u32], active: &[usize]) -> Option<usize> {
    let mut found = None;
    for &v in active {
        if g[v] > 0 {
            if found.is_some() {
                return None;
            }
            found = Some(v);
        }
    }
    found
}

struct Counter {
    memo: HashMap<(Vec<usize>, Vec<Exps>), BigUint>,
    threshold: u64,
}

impl Counter {
    fn count(&mut self, gens: Vec<Exps>, active: &[usize]) -> BigUint {
        let gens = minimalize(gens);
        if gens.iter().any(|g| active.iter().all(|&v| g[v] == 0)) {
            return BigUint::zero();
        }
        if active.is_empty() {
            return BigUint::one();
        }
        let mut box_sides: Vec<u32> = Vec::with_capacity(active.len());
        for &v in active {
            let side = gens
                .iter()
                .filter(|g| pure_power(g, active) == Some(v))
                .map(|g| g[v])
                .min()
                .expect("finite staircase has a pure power of every variable");
            box_sides.push(side);
        }
        if gens.iter().all(|g| pure_power(g, active).is_some()) {
            return box_sides.iter().fold(BigUint::one(), |acc, &s| acc * BigUint::from(s));
        }
        let cells = box_sides.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s as u64));
        if let Some(c) = cells {
            if c <= self.threshold {
                return BigUint::from(enumerate_box(&gens, active, &box_sides));
            }
        }
        let key = (active.to_vec(), gens.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }

        // Split on the variable with the fewest distinct exponent levels.
        let (pos, levels) = active
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                let mut lv: Vec<u32> = gens
                    .iter()
                    .map(|g| g[v])
                    .filter(|&e| e < box_sides[pos])
                    .chain(std::iter::once(0))
                    .collect();
                lv.sort_unstable();
                lv.dedup();
                (pos, lv)
            })
            .min_by_key(|(pos, lv)| (lv.len(), *pos))
            .unwrap();
        let v = active[pos];
        let rest: Vec<usize> = active.iter().copied().filter(|&u| u != v).collect();
        let mut total = BigUint::zero();
        for (k, &lo) in levels.iter().enumerate() {
            let hi = levels.get(k + 1).copied().unwrap_or(box_sides[pos]);
            let slice: Vec<Exps> = gens
                .iter()
                .filter(|g| g[v] <= lo)
                .map(|g| {
                    let mut h = g.clone();
                    h[v] = 0;
                    h
                })
                .collect();
            total += self.count(slice, &rest) * BigUint::from(hi - lo);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

fn enumerate_box(gens: &[Exps], active: &[usize], sides: &[u32]) -> u64 {
    let n = gens.first().map_or(0, |g| g.len());
    let mut cell: Exps = SmallVec::from_elem(0, n);
    let mut count = 0u64;
    loop {
        if !gens.iter().any(|g| divides(g, &cell)) {
            count += 1;
        }
        // Odometer increment over the active coordinates.
        let mut k = 0;
        loop {
            if k == active.len() {
                return count;
            }
            let v = active[k];
            cell[v] += 1;
            if cell[v] < sides[k] {
                break;
            }
            cell[v] = 0;
            k += 1;
        }
    }
}

/// Number of monomials outside the ideal generated by `gens`, or `None` when
/// that number is infinite (some variable has no pure power among `gens`).
pub fn count_standard(gens: &[Monomial], nvars: usize) -> Option<BigUint> {
    count_with_threshold(gens, nvars, ENUMERATION_THRESHOLD)
}

fn count_with_threshold(gens: &[Monomial], nvars: usize, threshold: u64) -> Option<BigUint> {
    let exps: Vec<Exps> = gens.iter().map(|m| Exps::from_slice(m.exponents())).collect();
    if exps.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Some(BigUint::zero());
    }
    let active: Vec<usize> = (0..nvars).collect();
    for &v in &active {
        if !exps.iter().any(|g| pure_power(g, &active) == Some(v)) {
            return None;
        }
    }
    let mut counter = Counter {
        memo: HashMap::new(),
        threshold,
    };
    Some(counter.count(exps, &active))
}

/// All standard monomials, when there are finitely many.
pub fn standard_monomials(gens: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let mut sides = vec![0u32; nvars];
    for g in gens {
        if let Some(v) = g.pure_power_var() {
            let e = g.exponents()[v];
            if sides[v] == 0 || e < sides[v] {
                sides[v] = e;
            }
        } else if g.is_one() {
            return Some(Vec::new());
        }
    }
    if sides.contains(&0) {
        return None;
    }
    let mut out = Vec::new();
    let mut cell = Monomial::one(nvars);
    loop {
        if !gens.iter().any(|g| g.divides(&cell)) {
            out.push(cell.clone());
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return Some(out);
            }
            let e = cell.exps_mut();
            e[k] += 1;
            if e[k] < sides[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Krull dimension of `F_p[x]/(gens)`: the largest set of variables `S` such
/// that no generator is a monomial in the variables of `S` alone.
pub fn dimension(gens: &[Monomial], nvars: usize) -> Result<usize> {
    if nvars > 20 {
        return Err(Error::InvalidInput(format!(
            "dimension search supports at most 20 variables, got {nvars}"
        )));
    }
    let supports: Vec<u32> = gens
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    if supports.contains(&0) {
        return Err(Error::EmptyVariety);
    }
    let mut best = 0;
    for subset in 0u32..(1u32 << nvars) {
        let size = subset.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !subset != 0) {
            best = size;
        }
    }
    Ok(best)
}
