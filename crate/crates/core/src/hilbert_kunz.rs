//! Hilbert–Kunz functions `q -> λ(R/I^[q])`, the normalized ratios
//! `λ(R/I^[q]) / q^d`, a two-point extrapolation of their limit, and lengths
//! of Frobenius powers of a prime localized at that prime.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::numerics::{self, ser_biguint, Length, MultiplicityResult};
use crate::poly::Polynomial;

/// Exact rational serialized as `{"num": "...", "den": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

/// Method tag of an extrapolated limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EstimateMethod {
    #[serde(rename = "exact-stationary")]
    ExactStationary,
    #[serde(rename = "two-point")]
    TwoPoint,
    #[serde(rename = "none")]
    Absent,
}

impl EstimateMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            EstimateMethod::ExactStationary => "exact-stationary",
            EstimateMethod::TwoPoint => "two-point",
            EstimateMethod::Absent => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HkRow {
    pub e: u32,
    #[serde(serialize_with = "ser_biguint")]
    pub q: BigUint,
    pub colength: Length,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HkReport {
    pub ring: String,
    pub ideal: String,
    pub d: usize,
    pub rows: Vec<HkRow>,
    pub estimate: Option<Rational>,
    pub estimate_method: EstimateMethod,
}

/// Two-point extrapolation with its convergence diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EhkEstimate {
    pub estimate: Rational,
    pub last_ratio: Rational,
    pub gap: Rational,
    pub method: EstimateMethod,
    pub report: HkReport,
}

fn rational(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

fn q_power(q: &BigUint, k: i64) -> BigRational {
    let base = rational(q);
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

/// Rows `e = 1..=e_max` of the Hilbert–Kunz function of `I`, normalized by
/// `q^d` with `d` the dimension of the ring. Rows are computed in parallel and
/// assembled in order of `e`.
pub fn hk_function(ideal: &Ideal, e_max: u32) -> Result<HkReport> {
    let ring = ideal.ring();
    if !numerics::local_colength(ideal)?.is_finite() {
        return Err(Error::InvalidInput(format!(
            "{} is not m-primary (infinite colength)",
            ideal.label()
        )));
    }
    let d = ring.dim();
    let field = ring.field();
    let rows = (1..=e_max)
        .into_par_iter()
        .map(|e| -> Result<HkRow> {
            let q = field.power_of_p(e)?;
            let colength = numerics::local_colength(&ideal.bracket_power(q)?)?;
            let q = BigUint::from(q);
            let value = colength
                .finite()
                .ok_or_else(|| Error::InvalidInput("bracket power has infinite colength".into()))?;
            let ratio = rational(value) / q_power(&q, d as i64);
            Ok(HkRow {
                e,
                q,
                colength,
                ratio: Rational(ratio),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (estimate, estimate_method) = extrapolate(&rows, d);
    Ok(HkReport {
        ring: ring.name().to_string(),
        ideal: ideal.label(),
        d,
        rows,
        estimate: estimate.map(Rational),
        estimate_method,
    })
}

fn extrapolate(rows: &[HkRow], d: usize) -> (Option<BigRational>, EstimateMethod) {
    let Some(last) = rows.last() else {
        return (None, EstimateMethod::Absent);
    };
    if rows.iter().all(|r| r.ratio == last.ratio) {
        return (Some(last.ratio.0.clone()), EstimateMethod::ExactStationary);
    }
    if rows.len() < 2 {
        return (None, EstimateMethod::Absent);
    }
    // λ(q) = a q^d + b q^(d-1): λ/q^(d-1) is linear in q with slope a.
    let prev = &rows[rows.len() - 2];
    let scaled = |r: &HkRow| rational(r.colength.finite().unwrap()) / q_power(&r.q, d as i64 - 1);
    let slope = (scaled(last) - scaled(prev)) / (rational(&last.q) - rational(&prev.q));
    (Some(slope), EstimateMethod::TwoPoint)
}

/// `e_HK(I)` estimated from the last two rows up to `e_max`, with the last raw
/// ratio and the gap between the two.
pub fn ehk_estimate(ideal: &Ideal, e_max: u32) -> Result<EhkEstimate> {
    if e_max < 2 {
        return Err(Error::InvalidInput(format!(
            "e_HK estimation needs e_max >= 2, got {e_max}"
        )));
    }
    let report = hk_function(ideal, e_max)?;
    let last_ratio = report.rows.last().expect("e_max >= 2").ratio.clone();
    let estimate = report.estimate.clone().expect("at least two rows");
    let gap = Rational((&estimate.0 - &last_ratio.0).abs());
    Ok(EhkEstimate {
        estimate,
        last_ratio,
        gap,
        method: report.estimate_method,
        report,
    })
}

/// `λ_{R_P}((R/P^[q])_P)` together with the two multiplicities it is read
/// from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusColength {
    #[serde(serialize_with = "ser_biguint")]
    pub length: BigUint,
    pub bracket_multiplicity: MultiplicityResult,
    pub prime_multiplicity: MultiplicityResult,
}

/// Length of `R/P^[q]` localized at a one-dimensional prime `P`, computed as
/// `e(x; R/P^[q]) / e(x; R/P)`. `P` is the only minimal prime of `P^[q]`, so
/// the associativity formula has a single term.
pub fn localized_frobenius_colength_detail(prime: &Ideal, q: u64, x: &Polynomial) -> Result<FrobeniusColength> {
    prime.ring().field().log_p(q)?;
    let prime_multiplicity = numerics::hilbert_samuel(x, prime)?;
    let bracket_multiplicity = if q == 1 {
        prime_multiplicity.clone()
    } else {
        numerics::hilbert_samuel(x, &prime.bracket_power(q)?)?
    };
    let (length, rem) = (
        &bracket_multiplicity.value / &prime_multiplicity.value,
        &bracket_multiplicity.value % &prime_multiplicity.value,
    );
    if !rem.is_zero() || length.is_zero() {
        return Err(Error::AssociativityRatio(format!(
            "e(x; R/P^[{q}]) = {} is not a positive multiple of e(x; R/P) = {}",
            bracket_multiplicity.value, prime_multiplicity.value
        )));
    }
    Ok(FrobeniusColength {
        length,
        bracket_multiplicity,
        prime_multiplicity,
    })
}

pub fn localized_frobenius_colength(prime: &Ideal, q: u64, x: &Polynomial) -> Result<Length> {
    Ok(Length::Finite(localized_frobenius_colength_detail(prime, q, x)?.length))
}

/// `ratio >= 1` for every row, the Kunz lower bound on `m`.
pub fn ratios_at_least_one(report: &HkReport) -> bool {
    let one = BigRational::one();
    report.rows.iter().all(|r| r.ratio.0 >= one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Limits, PresentedRing};
    use std::sync::Arc;

    fn cone(p: u64, n: u64) -> Arc<PresentedRing> {
        let r = PresentedRing::polynomial_ring(p, &["x", "y", "z"]).unwrap();
        let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(n).unwrap();
        PresentedRing::new(r.base().clone(), vec![rel], Limits::default()).unwrap()
    }

    fn ratio(n: i64, d: i64) -> Rational {
        Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn regular_plane_has_unit_ratios() {
        let r = PresentedRing::polynomial_ring(5, &["x", "y"]).unwrap();
        let rep = hk_function(&Ideal::maximal(&r), 2).unwrap();
        let ratios: Vec<_> = rep.rows.iter().map(|r| r.ratio.clone()).collect();
        assert_eq!(ratios, vec![ratio(1, 1), ratio(1, 1)]);
        assert_eq!(rep.estimate_method, EstimateMethod::ExactStationary);
        assert!(ratios_at_least_one(&rep));
    }

    #[test]
    fn monomial_ideal_rows_scale_exactly() {
        let r = PresentedRing::polynomial_ring(5, &["x", "y"]).unwrap();
        let i = Ideal::new(&r, vec![r.var(0).pow(4).unwrap(), r.var(1).pow(2).unwrap()]).unwrap();
        let rep = hk_function(&i, 2).unwrap();
        let cols: Vec<_> = rep.rows.iter().map(|r| r.colength.clone()).collect();
        assert_eq!(cols, vec![Length::from(200), Length::from(5000)]);
        let est = ehk_estimate(&i, 2).unwrap();
        assert_eq!(est.estimate, ratio(8, 1));
        assert!(est.gap.0.is_zero());
    }

    #[test]
    fn quadric_cone_closed_form_rows() {
        let k = cone(5, 2);
        let est = ehk_estimate(&Ideal::maximal(&k), 2).unwrap();
        let cols: Vec<_> = est.report.rows.iter().map(|r| r.colength.clone()).collect();
        assert_eq!(cols, vec![Length::from(37), Length::from(937)]);
        assert_eq!(est.method, EstimateMethod::TwoPoint);
        // (937/25 - 37/5) / 20 = 30/20 + 1/500 - ... computed exactly.
        let expected = (BigRational::new(937.into(), 25.into()) - BigRational::new(37.into(), 5.into()))
            / BigRational::from_integer(20.into());
        assert_eq!(est.estimate.0, expected);
        assert!(est.last_ratio.0 > BigRational::one());
    }

    #[test]
    fn estimate_requires_two_rows() {
        let r = PresentedRing::polynomial_ring(5, &["x"]).unwrap();
        assert!(ehk_estimate(&Ideal::maximal(&r), 1).is_err());
    }

    #[test]
    fn non_primary_ideal_rejected() {
        let r = PresentedRing::polynomial_ring(5, &["x", "y"]).unwrap();
        let i = Ideal::principal(&r, r.var(0)).unwrap();
        assert!(matches!(hk_function(&i, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn localized_colength_regular_and_cone() {
        let r = PresentedRing::polynomial_ring(5, &["x", "y", "z"]).unwrap();
        let p = Ideal::new(&r, vec![r.var(1), r.var(2)]).unwrap();
        let x = r.var(0);
        assert_eq!(localized_frobenius_colength(&p, 5, &x).unwrap(), Length::from(25));
        assert_eq!(localized_frobenius_colength(&p, 1, &x).unwrap(), Length::from(1));
        assert!(localized_frobenius_colength(&p, 3, &x).is_err());

        let k = cone(5, 2);
        let p = Ideal::new(&k, vec![k.var(1), k.var(2)]).unwrap();
        assert_eq!(localized_frobenius_colength(&p, 5, &k.var(0)).unwrap(), Length::from(5));
    }

    #[test]
    fn rows_are_independent_of_thread_count() {
        let k = cone(5, 3);
        let m = Ideal::maximal(&k);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = one.install(|| hk_function(&m, 2)).unwrap();
        assert_eq!(serial, hk_function(&m, 2).unwrap());
    }
}
