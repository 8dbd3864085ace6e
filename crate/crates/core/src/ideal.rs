//! Ideals of a presented ring with a lazily computed Gröbner basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis};
use crate::poly::{same_ring, Polynomial};
use crate::ring::PresentedRing;

/// An ideal given by generators. The ring relations are always adjoined when a
/// basis is formed. Values are immutable; every constructor returns a fresh
/// ideal with an empty cache.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PresentedRing>,
    name: Option<String>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Ideal {
    /// Generators with a nonzero constant term are accepted only when the
    /// ideal turns out to be the unit ideal.
    pub fn new(ring: &Arc<PresentedRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !same_ring(g.ring(), ring.base()) {
                return Err(Error::RingMismatch);
            }
        }
        let ideal = Self::from_parts(ring, gens);
        if ideal.gens.iter().any(|g| g.constant_term() != 0) && !ideal.is_unit()? {
            return Err(Error::InvalidInput(
                "generator with nonzero constant term in a proper ideal (ideals must lie in m)".into(),
            ));
        }
        Ok(ideal)
    }

    fn from_parts(ring: &Arc<PresentedRing>, gens: Vec<Polynomial>) -> Self {
        Ideal {
            ring: ring.clone(),
            name: None,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    /// The maximal ideal `m = (x_1, ..., x_n)` at the origin.
    pub fn maximal(ring: &Arc<PresentedRing>) -> Self {
        Self::from_parts(ring, ring.vars()).named("m")
    }

    pub fn unit(ring: &Arc<PresentedRing>) -> Self {
        Self::from_parts(ring, vec![Polynomial::one(ring.base())]).named("R")
    }

    pub fn zero(ring: &Arc<PresentedRing>) -> Self {
        Self::from_parts(ring, Vec::new()).named("0")
    }

    pub fn principal(ring: &Arc<PresentedRing>, f: Polynomial) -> Result<Self> {
        Self::new(ring, vec![f])
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if set, otherwise the generator list.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_string())
    }

    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner::buchberger(&self.ring, &self.gens)?);
        // A concurrent caller may have won the race; both values are equal.
        Ok(self.gb.get_or_init(|| gb).clone())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_unit())
    }

    pub fn contains_element(&self, f: &Polynomial) -> Result<bool> {
        self.groebner_basis()?.contains(f)
    }

    /// `other ⊆ self`, checked generator by generator.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.groebner_basis()?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `I^[q] = (g^q : g a generator)`. Ring relations are not raised.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(q))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::from_parts(&self.ring, gens);
        if q == 1 {
            out.name = self.name.clone();
        } else if let Some(n) = &self.name {
            out.name = Some(format!("{n}^[{q}]"));
        }
        Ok(out)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_parts(&self.ring, gens))
    }

    /// `I + (f)`.
    pub fn add_element(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), self.ring.base()) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.push(f.clone());
        Ok(Self::from_parts(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                let ab = a.checked_mul(b)?;
                if !gens.contains(&ab) {
                    gens.push(ab);
                }
            }
        }
        Ok(Self::from_parts(&self.ring, gens))
    }

    /// `I^k`; `I^0` is the unit ideal.
    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        acc.name = None;
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Equality of ideals, by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner_basis()?.polys() == other.groebner_basis()?.polys())
    }

    /// The same generators in another presentation of the ring (typically a
    /// different monomial order).
    pub fn transport(&self, ring: &Arc<PresentedRing>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.reorder(ring.base()))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::from_parts(ring, gens);
        out.name = self.name.clone();
        Ok(out)
    }

    /// Every generator and every ring relation is homogeneous for `weights`.
    pub fn is_weighted_homogeneous(&self, weights: &[u64]) -> bool {
        self.gens
            .iter()
            .chain(self.ring.relations())
            .all(|g| g.is_weighted_homogeneous(weights))
    }
}

/// `ideal_equal(I, J)`.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}
