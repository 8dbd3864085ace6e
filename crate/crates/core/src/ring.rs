//! Presented rings `F_p[x_1..x_n] / (relations)`, modelling the local ring at
//! the origin.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner;
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, PolyRing, Polynomial};
use crate::staircase;

/// Count-based resource limits. Exceeding one is an error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Limits {
    /// Maximum number of pending S-pairs in a single basis computation.
    pub spair_cap: usize,
    /// Smallest `N` at which a multiplicity may be certified.
    pub n_floor: u64,
    /// Largest `N` tried before giving up on stabilization.
    pub n_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            spair_cap: 1_000_000,
            n_floor: 3,
            n_cap: 64,
        }
    }
}

#[derive(Debug)]
pub struct PresentedRing {
    name: String,
    base: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    relations_basis: Vec<Polynomial>,
    dim: usize,
    limits: Limits,
}

impl PresentedRing {
    pub fn new(base: Arc<PolyRing>, relations: Vec<Polynomial>, limits: Limits) -> Result<Arc<Self>> {
        Self::named("R", base, relations, limits)
    }

    pub fn named(
        name: impl Into<String>,
        base: Arc<PolyRing>,
        relations: Vec<Polynomial>,
        limits: Limits,
    ) -> Result<Arc<Self>> {
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            if !same_ring(r.ring(), &base) {
                return Err(Error::RingMismatch);
            }
            if r.constant_term() != 0 {
                return Err(Error::InvalidInput(format!("relation has nonzero constant term: {r}")));
            }
            if !r.is_zero() {
                rels.push(r);
            }
        }
        let relations_basis = groebner::reduced_basis(&base, &[], &rels, &limits)?;
        let leading: Vec<_> = relations_basis
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect();
        let dim = staircase::dimension(&leading, base.nvars())?;
        Ok(Arc::new(PresentedRing {
            name: name.into(),
            base,
            relations: rels,
            relations_basis,
            dim,
            limits,
        }))
    }

    /// Convenience constructor: `F_p[vars]` with grevlex in declaration order.
    pub fn polynomial_ring(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        let base = PolyRing::new(
            PrimeField::new(p)?,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::grevlex(vars.len()),
        )?;
        Self::new(base, Vec::new(), Limits::default())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn field(&self) -> &PrimeField {
        self.base.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn order(&self) -> &MonomialOrder {
        self.base.order()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Reduced Gröbner basis of the relations ideal.
    pub fn relations_basis(&self) -> &[Polynomial] {
        &self.relations_basis
    }

    /// Krull dimension of the presented ring.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.base, i)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// The same presentation under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        let base = self.base.with_order(order)?;
        let rels = self
            .relations
            .iter()
            .map(|r| r.reorder(&base))
            .collect::<Result<Vec<_>>>()?;
        Self::named(self.name.clone(), base, rels, self.limits)
    }

    pub fn with_limits(&self, limits: Limits) -> Arc<Self> {
        Arc::new(PresentedRing {
            name: self.name.clone(),
            base: self.base.clone(),
            relations: self.relations.clone(),
            relations_basis: self.relations_basis.clone(),
            dim: self.dim,
            limits,
        })
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (same_ring(&self.base, &other.base) && self.relations == other.relations)
    }
}
