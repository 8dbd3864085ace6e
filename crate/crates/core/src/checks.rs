//! Executable verdicts for the inequalities and identities relating
//! Hilbert–Kunz data, colengths and regularity. Every comparison is made on
//! exact integers or rationals; a tolerance appears only where a limit is
//! estimated, and it is reported alongside the value.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert_kunz::{self, EhkEstimate, Rational};
use crate::ideal::Ideal;
use crate::numerics::{self, Length};
use crate::poly::Polynomial;
use crate::ring::PresentedRing;

/// Default absolute tolerance for checks that compare an estimated limit.
pub const LIMIT_TOLERANCE: (i64, i64) = (1, 20);

pub fn limit_tolerance() -> BigRational {
    BigRational::new(LIMIT_TOLERANCE.0.into(), LIMIT_TOLERANCE.1.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INAPPLICABLE")]
    Inapplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inapplicable => "INAPPLICABLE",
        }
    }
}

/// An exact computed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Integer(BigInt),
    Length(Length),
    Rational(Rational),
    Bool(bool),
    Text(String),
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Integer(v) => s.serialize_str(&v.to_string()),
            Value::Length(v) => v.serialize(s),
            Value::Rational(v) => v.serialize(s),
            Value::Bool(v) => s.serialize_bool(*v),
            Value::Text(v) => s.serialize_str(v),
        }
    }
}

impl From<BigUint> for Value {
    fn from(v: BigUint) -> Self {
        Value::Integer(v.into())
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Integer(v.into())
    }
}

impl From<Length> for Value {
    fn from(v: Length) -> Self {
        Value::Length(v)
    }
}

impl From<BigRational> for Value {
    fn from(v: BigRational) -> Self {
        Value::Rational(Rational(v))
    }
}

impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        Value::Rational(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: Vec<Input>,
    pub quantities: Vec<Quantity>,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckReport {
    fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            inputs: Vec::new(),
            quantities: Vec::new(),
            verdict: Verdict::Pass,
            detail: String::new(),
        }
    }

    fn input(mut self, name: &str, value: impl ToString) -> Self {
        self.inputs.push(Input {
            name: name.to_string(),
            value: value.to_string(),
        });
        self
    }

    fn quantity(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.quantities.push(Quantity {
            name: name.into(),
            value: value.into(),
        });
    }

    fn inapplicable(mut self, why: impl Into<String>) -> Self {
        self.verdict = Verdict::Inapplicable;
        self.detail = format!("precondition unmet: {}", why.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.quantities.iter().find(|q| q.name == name).map(|q| &q.value)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn ring_label(ring: &PresentedRing) -> String {
    let mut s = format!("F_{}[{}]", ring.characteristic(), ring.base().var_names().join(", "));
    if !ring.is_polynomial_ring() {
        let rels: Vec<String> = ring.relations().iter().map(|r| r.to_string()).collect();
        s.push_str(&format!("/({})", rels.join(", ")));
    }
    s
}

fn q_list_label(qs: &[u64]) -> String {
    qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

fn finite(l: Length, what: &str) -> Result<BigUint> {
    l.into_finite()
        .ok_or_else(|| Error::InvalidInput(format!("{what} has infinite colength")))
}

fn pow(q: u64, d: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), d)
}

fn validate_qs(ring: &PresentedRing, qs: &[u64]) -> Result<()> {
    for &q in qs {
        ring.field().log_p(q)?;
    }
    Ok(())
}

/// `λ(R/m^[q]) >= q^d` for each listed `q`, with equality reported.
pub fn check_kunz(ring: &Arc<PresentedRing>, qs: &[u64]) -> Result<CheckReport> {
    validate_qs(ring, qs)?;
    let d = ring.dim();
    let mut rep = CheckReport::new("kunz")
        .input("ring", ring_label(ring))
        .input("q", q_list_label(qs));
    rep.quantity("d", d as u64);
    let m = Ideal::maximal(ring);
    let mut failures = Vec::new();
    let mut strict = Vec::new();
    for &q in qs {
        let lambda = finite(numerics::local_colength(&m.bracket_power(q)?)?, "m^[q]")?;
        let bound = pow(q, d);
        if lambda < bound {
            failures.push(format!("q={q}: lambda(R/m^[q]) = {lambda} < q^d = {bound}"));
        } else if lambda > bound {
            strict.push(q);
        }
        rep.quantity(format!("lambda(R/m^[{q}])"), lambda);
        rep.quantity(format!("q^d(q={q})"), bound);
    }
    let equality = failures.is_empty() && strict.is_empty();
    rep.quantity("equality", equality);
    if !failures.is_empty() {
        rep.verdict = Verdict::Fail;
        rep.detail = failures.join("; ");
    } else if equality {
        rep.detail = "lambda(R/m^[q]) = q^d at every q: consistent with a regular ring".into();
    } else {
        rep.detail = format!(
            "strict inequality at q = {}: the ring is not regular",
            q_list_label(&strict)
        );
    }
    Ok(rep)
}

/// `λ(R/I^[q]) = q^d λ(R/I)` on a polynomial ring.
pub fn check_flatness(ideal: &Ideal, qs: &[u64]) -> Result<CheckReport> {
    let ring = ideal.ring();
    validate_qs(ring, qs)?;
    let rep = CheckReport::new("flatness")
        .input("ring", ring_label(ring))
        .input("ideal", ideal.label())
        .input("q", q_list_label(qs));
    if !ring.is_polynomial_ring() {
        return Ok(rep.inapplicable("the ring has relations; the identity is stated for regular rings"));
    }
    let Length::Finite(base) = numerics::local_colength(ideal)? else {
        return Ok(rep.inapplicable(format!("{} is not m-primary", ideal.label())));
    };
    let mut rep = rep;
    let d = ring.dim();
    rep.quantity("d", d as u64);
    rep.quantity("lambda(R/I)", base.clone());
    let mut failures = Vec::new();
    for &q in qs {
        let lhs = finite(numerics::local_colength(&ideal.bracket_power(q)?)?, "I^[q]")?;
        let rhs = pow(q, d) * &base;
        if lhs != rhs {
            failures.push(format!("q={q}: lambda(R/I^[q]) = {lhs} != q^d*lambda(R/I) = {rhs}"));
        }
        rep.quantity(format!("lambda(R/I^[{q}])"), lhs);
        rep.quantity(format!("q^d*lambda(R/I)(q={q})"), rhs);
    }
    if failures.is_empty() {
        rep.detail = "lambda(R/I^[q]) = q^d * lambda(R/I) at every q".into();
    } else {
        rep.verdict = Verdict::Fail;
        rep.detail = failures.join("; ");
    }
    Ok(rep)
}

/// `λ(R/I^[q]) <= λ(J/I) λ(R/m^[q]) + λ(R/J^[q])` for `I ⊆ J`, `J = R`
/// allowed. A failed containment is an error.
pub fn check_lemma21(i: &Ideal, j: &Ideal, qs: &[u64]) -> Result<CheckReport> {
    let ring = i.ring();
    validate_qs(ring, qs)?;
    let mut rep = CheckReport::new("lemma21")
        .input("ring", ring_label(ring))
        .input("ideal_i", i.label())
        .input("ideal_j", j.label())
        .input("q", q_list_label(qs));
    if !numerics::local_colength(i)?.is_finite() {
        return Ok(rep.inapplicable(format!("{} is not m-primary", i.label())));
    }
    let quotient = finite(numerics::quotient_length(i, j)?, "I")?;
    rep.quantity("lambda(J/I)", quotient.clone());
    let m = Ideal::maximal(ring);
    let mut failures = Vec::new();
    let mut all_equal = true;
    for &q in qs {
        let lhs = finite(numerics::local_colength(&i.bracket_power(q)?)?, "I^[q]")?;
        let mq = finite(numerics::local_colength(&m.bracket_power(q)?)?, "m^[q]")?;
        let jq = finite(numerics::local_colength(&j.bracket_power(q)?)?, "J^[q]")?;
        let rhs = &quotient * &mq + &jq;
        if lhs > rhs {
            failures.push(format!("q={q}: lhs = {lhs} > rhs = {rhs}"));
        }
        all_equal &= lhs == rhs;
        rep.quantity(format!("lambda(R/I^[{q}])"), lhs);
        rep.quantity(format!("lambda(R/m^[{q}])"), mq);
        rep.quantity(format!("lambda(R/J^[{q}])"), jq);
        rep.quantity(format!("rhs(q={q})"), rhs);
    }
    rep.quantity("equality", all_equal && failures.is_empty());
    if failures.is_empty() {
        rep.detail = "lambda(R/I^[q]) <= lambda(J/I)*lambda(R/m^[q]) + lambda(R/J^[q]) at every q".into();
    } else {
        rep.verdict = Verdict::Fail;
        rep.detail = failures.join("; ");
    }
    Ok(rep)
}

/// A declared minimal prime of `J`, with its declared height.
#[derive(Debug, Clone)]
pub struct DeclaredPrime {
    pub ideal: Ideal,
    pub height: usize,
}

fn parameter_problem(x: &Polynomial, j: &Ideal) -> Result<Option<String>> {
    match numerics::dimension(j) {
        Ok(1) => {}
        Ok(d) => return Ok(Some(format!("dim(R/{}) = {d}, need 1", j.label()))),
        Err(Error::EmptyVariety) => return Ok(Some(format!("{} is the unit ideal", j.label()))),
        Err(e) => return Err(e),
    }
    match numerics::dimension(&j.add_element(x)?) {
        Ok(0) => Ok(None),
        Ok(d) => Ok(Some(format!("{x} is not a parameter: dim(R/(J, x)) = {d}"))),
        Err(Error::EmptyVariety) => Ok(Some(format!("{x} is a unit modulo {}", j.label()))),
        Err(e) => Err(e),
    }
}

/// `e_HK(I) >= λ(R/I)` for `I = J + (x)` when `R/J` is one-dimensional with
/// parameter `x` and `R_P` is regular at each declared minimal prime `P`.
///
/// Regularity of `R_P` is checked by `λ_{R_P}((R/P^[p])_P) = p^{ht P}`. Only
/// the parameter condition on `x` is verified, not that it is a
/// non-zerodivisor on `R/J`.
pub fn check_thm23(
    j: &Ideal,
    x: &Polynomial,
    primes: &[DeclaredPrime],
    e_max: u32,
    tolerance: &BigRational,
) -> Result<CheckReport> {
    let ring = j.ring();
    let names: Vec<String> = primes.iter().map(|p| p.ideal.label()).collect();
    let mut rep = CheckReport::new("thm23")
        .input("ring", ring_label(ring))
        .input("ideal_j", j.label())
        .input("param", x)
        .input("primes", names.join(","))
        .input("emax", e_max);
    if let Some(why) = parameter_problem(x, j)? {
        return Ok(rep.inapplicable(why));
    }
    if primes.is_empty() {
        return Ok(rep.inapplicable("no minimal primes declared"));
    }
    let d = ring.dim();
    let p = ring.characteristic() as u64;
    for prime in primes {
        let label = prime.ideal.label();
        if !prime.ideal.contains(j)? {
            return Ok(rep.inapplicable(format!("{} does not contain {}", label, j.label())));
        }
        let dim_p = match numerics::dimension(&prime.ideal) {
            Ok(v) => v,
            Err(Error::EmptyVariety) => return Ok(rep.inapplicable(format!("{label} is the unit ideal"))),
            Err(e) => return Err(e),
        };
        if dim_p != 1 || prime.height + dim_p != d {
            return Ok(rep.inapplicable(format!(
                "{label}: declared height {} with dim(R/P) = {dim_p} does not give a minimal prime of J in a ring of dimension {d}",
                prime.height
            )));
        }
        let local = match hilbert_kunz::localized_frobenius_colength_detail(&prime.ideal, p, x) {
            Ok(v) => v.length,
            Err(Error::InvalidInput(why)) => return Ok(rep.inapplicable(why)),
            Err(e) => return Err(e),
        };
        let regular = pow(p, prime.height);
        rep.quantity(format!("lambda_P(R/{label}^[{p}])"), local.clone());
        if local != regular {
            return Ok(rep.inapplicable(format!(
                "R_P is not regular at {label}: length {local} != p^height = {regular}"
            )));
        }
    }
    let i = j.add_element(x)?;
    let lambda = finite(numerics::local_colength(&i)?, "J + (x)")?;
    let EhkEstimate {
        estimate,
        last_ratio,
        gap,
        ..
    } = hilbert_kunz::ehk_estimate(&i, e_max)?;
    let lambda_q = BigRational::from_integer(BigInt::from(lambda.clone()));
    let margin = &estimate.0 - &lambda_q;
    rep.quantity("lambda(R/I)", lambda.clone());
    rep.quantity("estimate", estimate.clone());
    rep.quantity("last_ratio", last_ratio);
    rep.quantity("gap", gap);
    rep.quantity("margin", margin.clone());
    rep.quantity("tolerance", tolerance.clone());
    if margin >= -tolerance.clone() {
        rep.detail = if margin.is_positive() {
            format!(
                "e_HK estimate {} exceeds lambda(R/I) = {lambda} by {}",
                estimate, margin
            )
        } else {
            format!(
                "e_HK estimate {} is within tolerance of lambda(R/I) = {lambda}",
                estimate
            )
        };
        rep.detail
            .push_str("; x is checked to be a parameter, not a non-zerodivisor");
    } else {
        rep.verdict = Verdict::Fail;
        rep.detail = format!(
            "e_HK estimate {} < lambda(R/I) - tolerance = {} - {}",
            estimate, lambda, tolerance
        );
    }
    Ok(rep)
}

/// `q · λ_{R_P}((R/P^[q])_P) <= λ(R/m^[q])` for a prime with `dim(R/P) = 1`.
pub fn check_thm33(prime: &Ideal, x: &Polynomial, qs: &[u64]) -> Result<CheckReport> {
    let ring = prime.ring();
    validate_qs(ring, qs)?;
    let mut rep = CheckReport::new("thm33")
        .input("ring", ring_label(ring))
        .input("prime", prime.label())
        .input("param", x)
        .input("q", q_list_label(qs));
    if let Some(why) = parameter_problem(x, prime)? {
        return Ok(rep.inapplicable(why));
    }
    let d = ring.dim();
    let height = d - 1;
    let m = Ideal::maximal(ring);
    let mut failures = Vec::new();
    let mut strict = false;
    let mut hk_local = Vec::new();
    for &q in qs {
        let local = hilbert_kunz::localized_frobenius_colength_detail(prime, q, x)?.length;
        let lhs = &local * BigUint::from(q);
        let rhs = finite(numerics::local_colength(&m.bracket_power(q)?)?, "m^[q]")?;
        if lhs > rhs {
            failures.push(format!("q={q}: q*lambda_P = {lhs} > lambda(R/m^[q]) = {rhs}"));
        }
        strict |= lhs < rhs;
        let ratio_p = BigRational::new(BigInt::from(local.clone()), BigInt::from(pow(q, height)));
        let ratio_m = BigRational::new(BigInt::from(rhs.clone()), BigInt::from(pow(q, d)));
        hk_local.push(ratio_p <= ratio_m);
        rep.quantity(format!("lambda_P(R/P^[{q}])"), local);
        rep.quantity(format!("lhs(q={q})"), lhs);
        rep.quantity(format!("lambda(R/m^[{q}])"), rhs);
        rep.quantity(format!("ratio_P(q={q})"), ratio_p);
        rep.quantity(format!("ratio_m(q={q})"), ratio_m);
    }
    rep.quantity("strict", strict);
    if failures.is_empty() {
        rep.detail = format!(
            "q*lambda_P(R/P^[q]) <= lambda(R/m^[q]) at every q ({}); local ratio <= global ratio at every q: {}",
            if strict {
                "strict somewhere"
            } else {
                "equality throughout"
            },
            hk_local.iter().all(|&b| b)
        );
    } else {
        rep.verdict = Verdict::Fail;
        rep.detail = failures.join("; ");
    }
    Ok(rep)
}

/// `λ(R/(m^[p])^[p^e]) = λ(R/m^[p^(e+1)])`.
pub fn check_rescaling(ring: &Arc<PresentedRing>, e: u32) -> Result<CheckReport> {
    if e < 1 {
        return Err(Error::InvalidInput("rescaling check needs e >= 1".into()));
    }
    let p = ring.characteristic() as u64;
    let mut rep = CheckReport::new("rescaling")
        .input("ring", ring_label(ring))
        .input("e", e);
    let m = Ideal::maximal(ring);
    let qe = ring.field().power_of_p(e)?;
    let composed = m.bracket_power(p)?.bracket_power(qe)?;
    let direct = m.bracket_power(ring.field().power_of_p(e + 1)?)?;
    let lhs = numerics::local_colength(&composed)?;
    let rhs = numerics::local_colength(&direct)?;
    rep.quantity("lambda(R/(m^[p])^[p^e])", lhs.clone());
    rep.quantity("lambda(R/m^[p^(e+1)])", rhs.clone());
    rep.quantity("ideals_equal", composed.equals(&direct)?);
    if lhs == rhs {
        rep.detail = format!("both sides equal {lhs}");
    } else {
        rep.verdict = Verdict::Fail;
        rep.detail = format!("{lhs} != {rhs}");
    }
    Ok(rep)
}

/// Whether a ratio is exactly one.
pub fn is_one(r: &Rational) -> bool {
    r.0 == BigRational::one()
}

/// The `e_HK(I)` estimate at `e_max` lies within `tolerance` of `target`
/// and, when `lower` is given, strictly above it.
pub fn check_ehk_target(
    ideal: &Ideal,
    e_max: u32,
    target: &BigRational,
    tolerance: &BigRational,
    lower: Option<&BigRational>,
) -> Result<CheckReport> {
    let ring = ideal.ring();
    let mut rep = CheckReport::new("ehk-target")
        .input("ring", ring_label(ring))
        .input("ideal", ideal.label())
        .input("emax", e_max);
    let est = hilbert_kunz::ehk_estimate(ideal, e_max)?;
    let distance = (&est.estimate.0 - target).abs();
    rep.quantity("estimate", est.estimate.clone());
    rep.quantity("last_ratio", est.last_ratio.clone());
    rep.quantity("gap", est.gap.clone());
    rep.quantity("target", target.clone());
    rep.quantity("distance", distance.clone());
    rep.quantity("tolerance", tolerance.clone());
    let mut failures = Vec::new();
    if &distance > tolerance {
        failures.push(format!(
            "|{} - {}| = {} > {}",
            est.estimate, target, distance, tolerance
        ));
    }
    if let Some(lower) = lower {
        rep.quantity("lower_bound", lower.clone());
        if &est.estimate.0 <= lower {
            failures.push(format!("estimate {} <= {}", est.estimate, lower));
        }
    }
    if failures.is_empty() {
        rep.detail = format!("estimate {} within {} of {}", est.estimate, tolerance, target);
    } else {
        rep.verdict = Verdict::Fail;
        rep.detail = failures.join("; ");
    }
    Ok(rep)
}

/// Ratios `λ(R/m^[q]) / q^d` for `e = 1..=e_max`: all at least one, and
/// either all equal to one (`expect_regular`) or none equal to one.
pub fn check_ratio_dichotomy(ring: &Arc<PresentedRing>, e_max: u32, expect_regular: bool) -> Result<CheckReport> {
    let mut rep = CheckReport::new("ratio-dichotomy")
        .input("ring", ring_label(ring))
        .input("emax", e_max)
        .input("expect_regular", expect_regular);
    let report = hilbert_kunz::hk_function(&Ideal::maximal(ring), e_max)?;
    for row in &report.rows {
        rep.quantity(format!("ratio(e={})", row.e), row.ratio.clone());
    }
    let ones: Vec<bool> = report.rows.iter().map(|r| is_one(&r.ratio)).collect();
    let all_one = ones.iter().all(|&b| b);
    let none_one = ones.iter().all(|&b| !b);
    if !hilbert_kunz::ratios_at_least_one(&report) {
        rep.verdict = Verdict::Fail;
        rep.detail = "a ratio is below one".into();
    } else if !(all_one || none_one) {
        rep.verdict = Verdict::Fail;
        rep.detail = "ratio equals one at some but not all e".into();
    } else if all_one != expect_regular {
        rep.verdict = Verdict::Fail;
        rep.detail = format!(
            "ratios {} one, expected {}",
            if all_one { "all equal" } else { "never equal" },
            if expect_regular {
                "a regular ring"
            } else {
                "a singular ring"
            }
        );
    } else {
        rep.detail = if all_one {
            "ratio is exactly one at every e".into()
        } else {
            "ratio exceeds one at every e".into()
        };
    }
    Ok(rep)
}
