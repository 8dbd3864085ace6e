//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 6]>;

/// A power product `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    /// The monomial `x_var^exp`.
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = exp;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of variables with a positive exponent.
    pub fn support_len(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    /// `Some(i)` when the monomial is a pure power of variable `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(
                a.checked_add(*b)
                    .ok_or_else(|| Error::ExponentOverflow("monomial product exceeds 2^32".into()))?,
            );
        }
        Ok(Monomial { exps })
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, q: u64) -> Result<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for &e in &self.exps {
            let v = e as u64 * q;
            if v > u32::MAX as u64 {
                return Err(Error::ExponentOverflow(format!("exponent {e} * {q} exceeds 2^32")));
            }
            exps.push(v as u32);
        }
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        self.scale(k)
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Exponents {
        &mut self.exps
    }
}

/// The three supported order kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    Grlex,
}

impl OrderKind {
    pub fn name(&self) -> &'static str {
        match self {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(OrderKind::Grevlex),
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::Grlex),
            other => Err(Error::InvalidInput(format!("unknown monomial order `{other}`"))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial order together with a variable precedence. `precedence[0]` is
/// the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Order of the given kind with declaration-order precedence.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || seen[v] {
                return Err(Error::InvalidInput("variable precedence must be a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => self.lex(ea, eb),
            OrderKind::Grlex => a.degree().cmp(&b.degree()).then_with(|| self.lex(ea, eb)),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.precedence.iter().rev() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn lex(&self, ea: &[u32], eb: &[u32]) -> Ordering {
        for &v in &self.precedence {
            match ea[v].cmp(&eb[v]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// A key whose lexicographic comparison agrees with [`MonomialOrder::cmp`].
    pub fn sort_key(&self, m: &Monomial) -> SmallVec<[i64; 8]> {
        let e = m.exponents();
        let mut key = SmallVec::new();
        match self.kind {
            OrderKind::Lex => key.extend(self.precedence.iter().map(|&v| e[v] as i64)),
            OrderKind::Grlex => {
                key.push(m.degree() as i64);
                key.extend(self.precedence.iter().map(|&v| e[v] as i64));
            }
            OrderKind::Grevlex => {
                key.push(m.degree() as i64);
                key.extend(self.precedence.iter().rev().map(|&v| -(e[v] as i64)));
            }
        }
        key
    }
}
