//! Numerical invariants: Krull dimension, global and local colength, lengths
//! of quotients `J/I`, and Hilbert–Samuel multiplicities of a parameter on a
//! one-dimensional quotient.
//!
//! Lengths are lengths over the local ring at the origin. A finite-colength
//! ideal whose quotient is supported only at the origin (a graded quotient, or
//! one in which every variable is nilpotent) has local colength equal to its
//! global colength. Otherwise the affine points away from the origin are cut
//! off by adjoining pure powers `x_i^N` with `N` beyond the global colength,
//! which bounds the nilpotency index of the local factor.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::staircase;

/// Length of a module over the local ring; `Infinite` for non-Artinian
/// quotients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(BigUint),
    Infinite,
}

impl Length {
    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }

    pub fn into_finite(self) -> Option<BigUint> {
        match self {
            Length::Finite(v) => Some(v),
            Length::Infinite => None,
        }
    }
}

impl From<u64> for Length {
    fn from(v: u64) -> Self {
        Length::Finite(BigUint::from(v))
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => a.cmp(b),
            (Length::Finite(_), Length::Infinite) => Ordering::Less,
            (Length::Infinite, Length::Finite(_)) => Ordering::Greater,
            (Length::Infinite, Length::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(v) => write!(f, "{v}"),
            Length::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `e(x; R/J)` for a parameter `x` on a one-dimensional quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityResult {
    #[serde(serialize_with = "ser_biguint")]
    pub value: BigUint,
    /// First `N` of the three agreeing differences `λ(N+1) - λ(N)`.
    pub stabilized_at: u64,
    pub certified: bool,
    /// Computed starting point for `N` when the data is graded: past it the
    /// difference sequence is provably constant.
    pub degree_bound: Option<u64>,
}

pub(crate) fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn leading_monomials(gb: &GroebnerBasis) -> Vec<Monomial> {
    gb.leading_monomials()
}

/// Krull dimension of `R/I`.
pub fn dimension(ideal: &Ideal) -> Result<usize> {
    let gb = ideal.groebner_basis()?;
    if gb.is_unit() {
        return Err(Error::EmptyVariety);
    }
    staircase::dimension(&leading_monomials(&gb), ideal.ring().nvars())
}

/// Number of standard monomials of `I + relations`.
pub fn colength(ideal: &Ideal) -> Result<Length> {
    let gb = ideal.groebner_basis()?;
    if gb.is_unit() {
        return Ok(Length::Finite(BigUint::zero()));
    }
    Ok(
        match staircase::count_standard(&leading_monomials(&gb), ideal.ring().nvars()) {
            Some(v) => Length::Finite(v),
            None => Length::Infinite,
        },
    )
}

/// Positive integer weights making every polynomial weighted homogeneous,
/// preferring the standard grading.
pub fn positive_grading(polys: &[&Polynomial], nvars: usize) -> Option<Vec<u64>> {
    let ones = vec![1u64; nvars];
    if polys.iter().all(|p| p.is_weighted_homogeneous(&ones)) {
        return Some(ones);
    }
    // Rows: exponent differences that must be orthogonal to the weights.
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for p in polys {
        let terms = p.terms();
        if let Some((first, _)) = terms.first() {
            for (m, _) in &terms[1..] {
                rows.push(
                    (0..nvars)
                        .map(|i| {
                            BigRational::from_integer(BigInt::from(
                                m.exponents()[i] as i64 - first.exponents()[i] as i64,
                            ))
                        })
                        .collect(),
                );
            }
        }
    }
    let (reduced, pivots) = rref(rows, nvars);
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return None;
    }
    // Try small positive values for the free weights.
    let mut choice = vec![1i64; free.len()];
    loop {
        let mut w = vec![BigRational::zero(); nvars];
        for (k, &c) in free.iter().enumerate() {
            w[c] = BigRational::from_integer(BigInt::from(choice[k]));
        }
        for (r, &pc) in reduced.iter().zip(&pivots) {
            let mut v = BigRational::zero();
            for &c in &free {
                v -= &r[c] * &w[c];
            }
            w[pc] = v;
        }
        if w.iter().all(|v| v.is_positive()) {
            let den = w.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<BigInt> = w.iter().map(|v| (v * &den).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            return ints.iter().map(|v| (v / &g).to_u64()).collect();
        }
        // Odometer over {1, 2, 3}^free.
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] <= 3 {
                break;
            }
            choice[k] = 1;
            k += 1;
        }
    }
}

fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                    *v -= pv * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn ideal_grading(ideal: &Ideal, extra: &[&Polynomial]) -> Option<Vec<u64>> {
    let polys: Vec<&Polynomial> = ideal
        .generators()
        .iter()
        .chain(ideal.ring().relations())
        .chain(extra.iter().copied())
        .collect();
    positive_grading(&polys, ideal.ring().nvars())
}

/// `x_i` is nilpotent modulo the basis: `x_i^(2^k)` reduces to zero for some
/// `2^k >= bound`.
fn variable_nilpotent(gb: &GroebnerBasis, var: usize, bound: &BigUint) -> Result<bool> {
    let base = gb.ring().base();
    let mut r = gb.normal_form(&Polynomial::var(base, var))?;
    let mut power = BigUint::one();
    loop {
        if r.is_zero() {
            return Ok(true);
        }
        if &power >= bound {
            return Ok(false);
        }
        r = gb.normal_form(&r.checked_mul(&r)?)?;
        power <<= 1;
    }
}

/// Length of `R/I` over the local ring at the origin.
pub fn local_colength(ideal: &Ideal) -> Result<Length> {
    let global = colength(ideal)?;
    let Length::Finite(c) = &global else {
        return Ok(Length::Infinite);
    };
    if c.is_zero() {
        return Ok(global);
    }
    if ideal_grading(ideal, &[]).is_some() {
        return Ok(global);
    }
    let gb = ideal.groebner_basis()?;
    let nvars = ideal.ring().nvars();
    let mut all_nilpotent = true;
    for v in 0..nvars {
        if !variable_nilpotent(&gb, v, c)? {
            all_nilpotent = false;
            break;
        }
    }
    if all_nilpotent {
        return Ok(global);
    }
    let n = c
        .to_u32()
        .filter(|&n| n < u32::MAX - 2)
        .ok_or_else(|| Error::ResourceLimit(format!("global colength {c} too large for localization")))?;
    let truncated = |exp: u32| -> Result<Length> {
        let base = ideal.ring().base();
        let mut gens = ideal.generators().to_vec();
        gens.extend((0..nvars).map(|v| Polynomial::monomial(base, Monomial::var_power(nvars, v, exp), 1)));
        colength(&Ideal::new(ideal.ring(), gens)?)
    };
    let first = truncated(n + 1)?;
    let second = truncated(n + 2)?;
    if first != second {
        return Err(Error::Stabilization(format!(
            "local colength did not stabilize past N = {n}: {first} vs {second}"
        )));
    }
    Ok(first)
}

/// `λ(J/I) = λ(R/I) - λ(R/J)` for `I ⊆ J`, with `λ(R/R) = 0`.
pub fn quotient_length(i: &Ideal, j: &Ideal) -> Result<Length> {
    if !j.contains(i)? {
        return Err(Error::NotContained(format!(
            "{} is not contained in {}",
            i.label(),
            j.label()
        )));
    }
    let li = local_colength(i)?;
    let Length::Finite(li) = li else {
        return Err(Error::InvalidInput(format!(
            "{} is not m-primary (infinite colength)",
            i.label()
        )));
    };
    let lj = if j.is_unit()? {
        BigUint::zero()
    } else {
        local_colength(j)?.into_finite().expect("J contains an m-primary ideal")
    };
    Ok(Length::Finite(li - lj))
}

/// `e(x; R/J)` as the stabilized first difference of `N -> λ(R/(J, x^N))`.
///
/// The difference sequence is non-increasing and eventually equal to the
/// multiplicity. When `J`, the relations and `x` are homogeneous for some
/// positive grading, it is constant from `N = ceil(Σ w_i E_i / w(x))` on,
/// where `E_i` is the largest exponent of `x_i` in the leading-term ideal of
/// `J`; that value raises the floor. Otherwise only the configured floor and
/// the three-agreeing-differences rule apply.
pub fn hilbert_samuel(x: &Polynomial, j: &Ideal) -> Result<MultiplicityResult> {
    let ring = j.ring();
    let dim_j = dimension(j)?;
    if dim_j != 1 {
        return Err(Error::InvalidInput(format!(
            "multiplicity needs dim(R/J) = 1, got {dim_j}"
        )));
    }
    let jx = j.add_element(x)?;
    match dimension(&jx) {
        Ok(0) => {}
        Ok(d) => {
            return Err(Error::InvalidInput(format!(
                "{x} is not a parameter on R/J: dim(R/(J, x)) = {d}"
            )))
        }
        Err(Error::EmptyVariety) => return Err(Error::InvalidInput(format!("{x} is a unit modulo J"))),
        Err(e) => return Err(e),
    }
    let limits = *ring.limits();
    let degree_bound = ideal_grading(j, &[x]).and_then(|w| {
        let wx = x.leading_monomial()?.weighted_degree(&w);
        if wx == 0 {
            return None;
        }
        let gb = j.groebner_basis().ok()?;
        let mut top = vec![0u64; ring.nvars()];
        for m in gb.leading_monomials() {
            for (t, &e) in top.iter_mut().zip(m.exponents()) {
                *t = (*t).max(e as u64);
            }
        }
        let total: u64 = top.iter().zip(&w).map(|(e, w)| e * w).sum();
        Some(total.div_ceil(wx))
    });
    let floor = limits.n_floor.max(degree_bound.unwrap_or(0)).max(1);
    if floor + 3 > limits.n_cap {
        return Err(Error::Stabilization(format!(
            "multiplicity needs N up to {} but the cap is {}",
            floor + 3,
            limits.n_cap
        )));
    }
    let length_at = |n: u64| -> Result<BigUint> {
        let xn = x.pow(n)?;
        local_colength(&j.add_element(&xn)?)?
            .into_finite()
            .ok_or_else(|| Error::InvalidInput("R/(J, x^N) is not Artinian".into()))
    };
    let mut values: Vec<BigUint> = Vec::new();
    let mut n = floor;
    for k in 0..4 {
        values.push(length_at(floor + k)?);
    }
    loop {
        let k = values.len();
        let d: Vec<BigInt> = (k - 4..k - 1)
            .map(|i| BigInt::from(values[i + 1].clone()) - BigInt::from(values[i].clone()))
            .collect();
        if d[0] == d[1] && d[1] == d[2] {
            if !d[0].is_positive() {
                return Err(Error::Stabilization(format!(
                    "difference sequence stabilized at non-positive value {}",
                    d[0]
                )));
            }
            return Ok(MultiplicityResult {
                value: d[0].to_biguint().unwrap(),
                stabilized_at: n,
                certified: true,
                degree_bound,
            });
        }
        n += 1;
        if n + 3 > limits.n_cap {
            return Err(Error::Stabilization(format!(
                "no three agreeing differences before N = {}",
                limits.n_cap
            )));
        }
        values.push(length_at(n + 3)?);
    }
}
