//! Exact Hilbert–Kunz and Hilbert–Samuel computations for quotients of
//! polynomial rings over prime fields, localized at the origin.

pub mod checks;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert_kunz;
pub mod ideal;
pub mod monomial;
pub mod numerics;
pub mod poly;
pub mod ring;
pub mod session;
pub mod staircase;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use numerics::{Length, MultiplicityResult};
pub use poly::{PolyRing, Polynomial};
pub use ring::{Limits, PresentedRing};
