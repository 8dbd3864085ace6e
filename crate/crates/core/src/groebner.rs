//! Normal forms and reduced Gröbner bases by Buchberger's algorithm.
//!
//! Pairs are selected by the normal strategy (smallest lcm first) and pruned
//! with the product and chain criteria. Ties are broken by pair indices, so a
//! given input always produces the same sequence of reductions.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{same_ring, PolyRing, Polynomial, Term};
use crate::ring::{Limits, PresentedRing};

fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | (1 << (i % 64)))
}

/// A list of divisors with cached leading data for fast divisor lookup.
struct Reducer<'a> {
    ring: &'a Arc<PolyRing>,
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
    /// Inverse leading coefficients.
    inv_lc: Vec<u32>,
}

impl<'a> Reducer<'a> {
    fn new(ring: &'a Arc<PolyRing>, polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys
            .iter()
            .map(|p| support_mask(p.leading_monomial().unwrap()))
            .collect();
        let field = ring.field();
        let inv_lc = polys
            .iter()
            .map(|p| field.inv(p.leading_coeff()).expect("nonzero leading coefficient"))
            .collect();
        Reducer {
            ring,
            polys,
            masks,
            inv_lc,
        }
    }

    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        (0..self.polys.len())
            .find(|&k| self.masks[k] & !mask == 0 && self.polys[k].leading_monomial().unwrap().divides(m))
    }

    /// Full reduction: repeatedly rewrites the largest reducible term with the
    /// first divisor in list order.
    fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.polys.is_empty() {
            return Ok(f.clone());
        }
        let field = self.ring.field();
        let order = self.ring.order();
        let mut p: Vec<Term> = f.terms().to_vec();
        let mut start = 0;
        let mut rem: Vec<Term> = Vec::new();
        while start < p.len() {
            let Some(k) = self.find_divisor(&p[start].0) else {
                rem.push(p[start].clone());
                start += 1;
                continue;
            };
            let g = self.polys[k];
            let (lm, c) = &p[start];
            let shift = lm.div(g.leading_monomial().unwrap());
            let coef = field.neg(field.mul(*c, self.inv_lc[k]));
            // p <- p[start+1..] + coef * shift * tail(g)
            let tail = &g.terms()[1..];
            let rest = &p[start + 1..];
            let mut merged = Vec::with_capacity(rest.len() + tail.len());
            let (mut i, mut j) = (0, 0);
            let mut shifted: Option<Term> = None;
            loop {
                if shifted.is_none() && j < tail.len() {
                    shifted = Some((tail[j].0.mul(&shift)?, field.mul(tail[j].1, coef)));
                    j += 1;
                }
                match (rest.get(i), shifted.as_ref()) {
                    (None, None) => break,
                    (Some(a), None) => {
                        merged.push(a.clone());
                        i += 1;
                    }
                    (None, Some(_)) => merged.push(shifted.take().unwrap()),
                    (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                        Ordering::Greater => {
                            merged.push(a.clone());
                            i += 1;
                        }
                        Ordering::Less => merged.push(shifted.take().unwrap()),
                        Ordering::Equal => {
                            let v = field.add(a.1, b.1);
                            if v != 0 {
                                merged.push((a.0.clone(), v));
                            }
                            i += 1;
                            shifted = None;
                        }
                    },
                }
            }
            p = merged;
            start = 0;
        }
        Ok(Polynomial::from_sorted(self.ring, rem))
    }
}

/// Normal form of `f` with respect to the list `divisors`. The result differs
/// from `f` by an element of the ideal they generate, and none of its terms is
/// divisible by a leading monomial of `divisors`.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    if divisors.iter().any(|g| !same_ring(g.ring(), f.ring())) {
        return Err(Error::RingMismatch);
    }
    Reducer::new(f.ring(), divisors).reduce(f)
}

fn s_polynomial(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
    let l = la.lcm(lb);
    let field = a.ring().field();
    let left = a.mul_term(&l.div(la), field.inv(a.leading_coeff())?)?;
    let cb = field.inv(b.leading_coeff())?;
    left.sub_term_multiple(cb, &l.div(lb), b)
}

fn minimalize_monomials(mut ms: Vec<Monomial>, ring: &PolyRing) -> Vec<Monomial> {
    let order = ring.order();
    ms.sort_by(|a, b| order.cmp(a, b));
    ms.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(ms.len());
    for m in ms {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

fn interreduce(ring: &Arc<PolyRing>, mut g: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    g.sort_by(|a, b| {
        order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
    });
    let mut minimal: Vec<Polynomial> = Vec::with_capacity(g.len());
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|k| k.leading_monomial().unwrap().divides(lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        if p.is_monomial() {
            out.push(p.make_monic());
            continue;
        }
        let others = Reducer::new(
            ring,
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q),
        );
        out.push(others.reduce(p)?.make_monic());
    }
    Ok(out)
}

type PairKey = Reverse<(SmallVec<[i64; 8]>, usize, usize)>;

/// Reduced Gröbner basis of `initial ∪ gens`, where `initial` is already a
/// reduced Gröbner basis (pairs inside it are not revisited).
pub(crate) fn reduced_basis(
    ring: &Arc<PolyRing>,
    initial: &[Polynomial],
    gens: &[Polynomial],
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let mut todo: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        if g.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        todo.push(g.make_monic());
    }
    if initial.iter().chain(&todo).all(|g| g.is_monomial()) {
        let ms = initial
            .iter()
            .chain(&todo)
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        return Ok(minimalize_monomials(ms, ring)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m, 1))
            .collect());
    }

    let order = ring.order();
    let mut basis: Vec<Polynomial> = initial.to_vec();
    let n_initial = basis.len();
    let mut seen: HashSet<Vec<Term>> = basis.iter().map(|b| b.terms().to_vec()).collect();
    for t in todo {
        if seen.insert(t.terms().to_vec()) {
            basis.push(t);
        }
    }

    let mut heap: BinaryHeap<PairKey> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let push_pair = |heap: &mut BinaryHeap<PairKey>,
                     pending: &mut HashSet<(usize, usize)>,
                     basis: &[Polynomial],
                     i: usize,
                     j: usize| {
        let l = basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap());
        heap.push(Reverse((order.sort_key(&l), i, j)));
        pending.insert((i, j));
    };
    for j in n_initial..basis.len() {
        for i in 0..j {
            push_pair(&mut heap, &mut pending, &basis, i, j);
        }
    }
    if pending.len() > limits.spair_cap {
        return Err(spair_error(pending.len(), limits));
    }

    while let Some(Reverse((_, i, j))) = heap.pop() {
        pending.remove(&(i, j));
        let (li, lj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = Reducer::new(ring, &basis).reduce(&s)?;
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        basis.push(h.make_monic());
        let new = basis.len() - 1;
        for k in 0..new {
            push_pair(&mut heap, &mut pending, &basis, k, new);
        }
        if pending.len() > limits.spair_cap {
            return Err(spair_error(pending.len(), limits));
        }
    }
    interreduce(ring, basis)
}

fn spair_error(n: usize, limits: &Limits) -> Error {
    Error::ResourceLimit(format!("S-pair queue reached {n} pairs (cap {})", limits.spair_cap))
}

/// Reduced Gröbner basis of an ideal of a presented ring; the ring's
/// relations are always part of the ideal.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PresentedRing>,
    polys: Vec<Polynomial>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.polys == other.polys
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    /// Monic, interreduced elements sorted ascending by leading monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), self.ring.base()) {
            return Err(Error::RingMismatch);
        }
        Reducer::new(self.ring.base(), &self.polys).reduce(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Buchberger's criterion: every S-polynomial of a pair of basis elements
    /// reduces to zero.
    pub fn verify(&self) -> Result<bool> {
        let red = Reducer::new(self.ring.base(), &self.polys);
        for j in 0..self.polys.len() {
            for i in 0..j {
                let s = s_polynomial(&self.polys[i], &self.polys[j])?;
                if !red.reduce(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Reduced Gröbner basis of `(gens) + (relations of ring)`.
pub fn buchberger(ring: &Arc<PresentedRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let polys = reduced_basis(ring.base(), ring.relations_basis(), gens, ring.limits())?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        polys,
    })
}

/// Membership test `f ∈ (G)`.
pub fn ideal_member(f: &Polynomial, basis: &GroebnerBasis) -> Result<bool> {
    basis.contains(f)
}
