//! The fixture corpus: regular rings, cone singularities, and seeded random
//! families of monomial ideals. Every expectation carries a provenance tag.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{self, CheckReport, Verdict};
use crate::error::{Error, Result};
use crate::ring::Limits;
use crate::session::{Session, SessionInput};

pub const DEFAULT_SEED: u64 = 42;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Stated in the source literature.
    #[serde(rename = "PAPER")]
    Paper,
    /// Immediate from the definitions.
    #[serde(rename = "TRIVIAL")]
    Trivial,
    /// Computed, with an independent cross-check in the test suite.
    #[serde(rename = "DERIVED")]
    Derived,
}

/// A fraction given as `(numerator, denominator)`.
pub type Fraction = (i64, i64);

fn frac((n, d): Fraction) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Task {
    Kunz {
        q: Vec<u64>,
    },
    Flatness {
        ideal: String,
        q: Vec<u64>,
    },
    Lemma21 {
        ideal_i: String,
        ideal_j: String,
        q: Vec<u64>,
    },
    Thm23 {
        ideal_j: String,
        param: String,
        primes: Vec<String>,
        emax: u32,
    },
    Thm33 {
        prime: String,
        param: String,
        q: Vec<u64>,
    },
    Rescaling {
        e: u32,
    },
    EhkTarget {
        ideal: String,
        emax: u32,
        target: Fraction,
        tolerance: Fraction,
        lower: Option<Fraction>,
    },
    RatioDichotomy {
        emax: u32,
        expect_regular: bool,
    },
}

impl Task {
    pub fn run(&self, session: &Session) -> Result<CheckReport> {
        let ring = session.ring();
        match self {
            Task::Kunz { q } => checks::check_kunz(ring, q),
            Task::Flatness { ideal, q } => checks::check_flatness(&session.ideal(ideal)?, q),
            Task::Lemma21 { ideal_i, ideal_j, q } => {
                checks::check_lemma21(&session.ideal(ideal_i)?, &session.ideal(ideal_j)?, q)
            }
            Task::Thm23 {
                ideal_j,
                param,
                primes,
                emax,
            } => {
                let primes = primes.iter().map(|p| session.prime(p)).collect::<Result<Vec<_>>>()?;
                checks::check_thm23(
                    &session.ideal(ideal_j)?,
                    &session.param(param)?,
                    &primes,
                    *emax,
                    &checks::limit_tolerance(),
                )
            }
            Task::Thm33 { prime, param, q } => checks::check_thm33(&session.ideal(prime)?, &session.param(param)?, q),
            Task::Rescaling { e } => checks::check_rescaling(ring, *e),
            Task::EhkTarget {
                ideal,
                emax,
                target,
                tolerance,
                lower,
            } => checks::check_ehk_target(
                &session.ideal(ideal)?,
                *emax,
                &frac(*target),
                &frac(*tolerance),
                lower.map(frac).as_ref(),
            ),
            Task::RatioDichotomy { emax, expect_regular } => {
                checks::check_ratio_dichotomy(ring, *emax, *expect_regular)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub claim: String,
    pub provenance: Provenance,
    pub task: Task,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub id: String,
    pub notes: String,
    pub source: String,
    pub expectations: Vec<Expectation>,
}

impl Fixture {
    pub fn session_input(&self) -> Result<SessionInput> {
        SessionInput::parse(&self.source)
    }

    pub fn session(&self, limits: Limits) -> Result<Session> {
        self.session_input()?.build(None, limits)
    }
}

fn expect(claim: &str, provenance: Provenance, task: Task) -> Expectation {
    Expectation {
        claim: claim.to_string(),
        provenance,
        task,
    }
}

fn powers(p: u64, e_max: u32) -> Vec<u64> {
    (1..=e_max).map(|e| p.pow(e)).collect()
}

const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

fn regular(p: u64, d: usize) -> Fixture {
    use Provenance::*;
    let vars = &VAR_NAMES[..d];
    // Cap at p^2 in three variables over F_5.
    let e_max = if d == 3 && p == 5 { 2 } else { 3 };
    let mut source = format!("char {p}\nvars {}\n", vars.join(" "));
    let mut expectations = vec![
        expect(
            "lambda(R/m^[q]) = q^d at every q",
            Paper,
            Task::Kunz { q: powers(p, e_max) },
        ),
        expect(
            "every Hilbert-Kunz ratio of m is exactly 1",
            Paper,
            Task::RatioDichotomy {
                emax: e_max,
                expect_regular: true,
            },
        ),
        expect("bracket powers of m compose", Trivial, Task::Rescaling { e: 1 }),
    ];
    if d >= 2 {
        source.push_str(&format!(
            "prime P = {} height {}\nparam f = x\n",
            vars[1..].join(", "),
            d - 1
        ));
        source.push_str("param f3 = x^3\n");
        expectations.push(expect(
            "q * lambda_P(R/P^[q]) = q^d: both sides agree on a regular ring",
            Trivial,
            Task::Thm33 {
                prime: "P".into(),
                param: "f".into(),
                q: vec![p, p * p],
            },
        ));
        expectations.push(expect(
            "e_HK(P + (x^3)) = lambda(R/(P + (x^3))) = 3",
            Paper,
            Task::Thm23 {
                ideal_j: "P".into(),
                param: "f3".into(),
                primes: vec!["P".into()],
                emax: 2,
            },
        ));
    }
    Fixture {
        id: format!("regular-{d}d-p{p}"),
        notes: format!(
            "polynomial ring in {d} variable{} over F_{p}",
            if d == 1 { "" } else { "s" }
        ),
        source,
        expectations,
    }
}

fn cone(id: &str, p: u64, n: u64, thm33_q: Vec<u64>) -> Fixture {
    use Provenance::*;
    let source = format!("char {p}\nvars x y z\nmod x*y - z^{n}\nprime P = y, z height 1\nparam f = x\n");
    let target = (2 * n as i64 - 1, n as i64);
    Fixture {
        id: id.to_string(),
        notes: format!(
            "A_{} surface singularity xy = z^{n} over F_{p}; odd characteristic only, since in characteristic 2 the quadric is singular along a curve",
            n - 1
        ),
        source,
        expectations: vec![
            expect(
                "lambda(R/m^[q]) > q^2 at every q: the ring is singular",
                Paper,
                Task::Kunz { q: vec![p, p * p] },
            ),
            expect(
                "no Hilbert-Kunz ratio of m equals 1",
                Paper,
                Task::RatioDichotomy { emax: 2, expect_regular: false },
            ),
            expect(
                "e_HK(m) within 1/20 of (2n-1)/n and above 6/5",
                Paper,
                Task::EhkTarget {
                    ideal: "m".into(),
                    emax: 3,
                    target,
                    tolerance: checks::LIMIT_TOLERANCE,
                    lower: Some((6, 5)),
                },
            ),
            expect(
                "e_HK(m) >= lambda(R/m) = 1, strictly",
                Paper,
                Task::Thm23 { ideal_j: "P".into(), param: "f".into(), primes: vec!["P".into()], emax: 3 },
            ),
            expect(
                "q * lambda_P(R/P^[q]) < lambda(R/m^[q])",
                Derived,
                Task::Thm33 { prime: "P".into(), param: "f".into(), q: thm33_q },
            ),
            expect("bracket powers of m compose", Trivial, Task::Rescaling { e: 1 }),
        ],
    }
}

/// Exponent pairs of a random m-primary monomial ideal of `F_p[x, y]`; the
/// first two are the pure powers.
fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let a = rng.gen_range(1..=6u32);
    let b = rng.gen_range(1..=6u32);
    let mut gens = vec![(a, 0), (0, b)];
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..a);
        let j = rng.gen_range(0..b);
        if i + j > 0 {
            gens.push((i, j));
        }
    }
    gens
}

fn monomial_list(gens: &[(u32, u32)]) -> String {
    gens.iter()
        .map(|&(i, j)| match (i, j) {
            (i, 0) => format!("x^{i}"),
            (0, j) => format!("y^{j}"),
            (i, j) => format!("x^{i}*y^{j}"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Non-monomial m-primary ideals of `F_5[x, y]` added to the random family.
pub const FIXED_NON_MONOMIAL: [&str; 5] = [
    "x + y, x^2",
    "x^2 + y^2, x*y",
    "x^2 - y^3, x*y^2",
    "x + y^2, y^3",
    "x^2 - x^3, y",
];

fn flatness_family(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut source = String::from("char 5\nvars x y\n");
    let mut expectations = Vec::new();
    for k in 0..20 {
        source.push_str(&format!(
            "ideal I{k} = {}\n",
            monomial_list(&random_monomial_ideal(&mut rng))
        ));
    }
    for (k, gens) in FIXED_NON_MONOMIAL.iter().enumerate() {
        source.push_str(&format!("ideal N{k} = {gens}\n"));
    }
    for k in 0..20 {
        expectations.push(expect(
            "lambda(R/I^[q]) = q^2 lambda(R/I)",
            Provenance::Paper,
            Task::Flatness {
                ideal: format!("I{k}"),
                q: vec![5, 25],
            },
        ));
    }
    for k in 0..FIXED_NON_MONOMIAL.len() {
        expectations.push(expect(
            "lambda(R/I^[q]) = q^2 lambda(R/I)",
            Provenance::Paper,
            Task::Flatness {
                ideal: format!("N{k}"),
                q: vec![5, 25],
            },
        ));
    }
    Fixture {
        id: "flatness-random-p5".into(),
        notes: format!("20 random monomial ideals (seed {seed}) and 5 fixed non-monomial ideals in F_5[x,y]"),
        source,
        expectations,
    }
}

fn nested_pair_family(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0021);
    let mut source = String::from("char 5\nvars x y\n");
    let mut expectations = Vec::new();
    for k in 0..100 {
        // Every fifth pair uses J = R.
        let j_name = if k % 5 == 0 {
            let gens = random_monomial_ideal(&mut rng);
            source.push_str(&format!("ideal I{k} = {}\n", monomial_list(&gens)));
            "R".to_string()
        } else {
            // Multiples of the generators of J, keeping pure powers pure.
            let j = random_monomial_ideal(&mut rng);
            let i: Vec<(u32, u32)> = j
                .iter()
                .map(|&(a, b)| {
                    let (r, s) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                    match (a, b) {
                        (_, 0) => (a + r, 0),
                        (0, _) => (0, b + s),
                        _ => (a + r, b + s),
                    }
                })
                .collect();
            source.push_str(&format!("ideal J{k} = {}\n", monomial_list(&j)));
            source.push_str(&format!("ideal I{k} = {}\n", monomial_list(&i)));
            format!("J{k}")
        };
        expectations.push(expect(
            "lambda(R/I^[q]) <= lambda(J/I) lambda(R/m^[q]) + lambda(R/J^[q])",
            Provenance::Derived,
            Task::Lemma21 {
                ideal_i: format!("I{k}"),
                ideal_j: j_name,
                q: vec![5, 25],
            },
        ));
    }
    Fixture {
        id: "lemma21-random-p5".into(),
        notes: format!("100 random pairs I in J of monomial ideals in F_5[x,y] (seed {seed}), J = R for every fifth"),
        source,
        expectations,
    }
}

/// The full corpus for a seed.
pub fn corpus(seed: u64) -> Vec<Fixture> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        for d in 1..=3 {
            out.push(regular(p, d));
        }
    }
    out.push(cone("quadric-cone-p5", 5, 2, vec![5, 25]));
    out.push(cone("quadric-cone-p7", 7, 2, vec![7]));
    out.push(cone("cubic-cone-p5", 5, 3, vec![5, 25]));
    out.push(flatness_family(seed));
    out.push(nested_pair_family(seed));
    out
}

pub fn fixture(id: &str, seed: u64) -> Result<Fixture> {
    corpus(seed)
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::InvalidInput(format!("no fixture `{id}`")))
}

/// The result of one expectation: a report, or the error it raised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Report(CheckReport),
    Error { error: String, exit_code: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectationResult {
    pub claim: String,
    pub provenance: Provenance,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub id: String,
    pub passed: usize,
    pub failed: usize,
    pub inapplicable: usize,
    pub errors: usize,
    pub results: Vec<ExpectationResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub fixtures: Vec<FixtureResult>,
    pub passed: usize,
    pub failed: usize,
    pub inapplicable: usize,
    pub errors: usize,
}

impl CorpusReport {
    /// 0 when everything passed or was inapplicable, 1 on a failed check,
    /// otherwise the exit code of the first error.
    pub fn exit_code(&self) -> i32 {
        let first_error = self
            .fixtures
            .iter()
            .flat_map(|f| &f.results)
            .find_map(|r| match &r.outcome {
                Outcome::Error { exit_code, .. } => Some(*exit_code),
                Outcome::Report(_) => None,
            });
        match first_error {
            Some(code) => code,
            None if self.failed > 0 => 1,
            None => 0,
        }
    }
}

pub fn run_fixture(fixture: &Fixture, limits: Limits) -> FixtureResult {
    let session = fixture.session(limits);
    let results: Vec<ExpectationResult> = fixture
        .expectations
        .par_iter()
        .map(|exp| {
            let outcome = match session.as_ref().map_err(Clone::clone).and_then(|s| exp.task.run(s)) {
                Ok(rep) => Outcome::Report(rep),
                Err(e) => Outcome::Error {
                    error: e.to_string(),
                    exit_code: e.exit_code(),
                },
            };
            ExpectationResult {
                claim: exp.claim.clone(),
                provenance: exp.provenance,
                outcome,
            }
        })
        .collect();
    let count = |v: Verdict| {
        results
            .iter()
            .filter(|r| matches!(&r.outcome, Outcome::Report(rep) if rep.verdict == v))
            .count()
    };
    FixtureResult {
        id: fixture.id.clone(),
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        inapplicable: count(Verdict::Inapplicable),
        errors: results
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Error { .. }))
            .count(),
        results,
    }
}

pub fn run_corpus(fixtures: &[Fixture], seed: u64, limits: Limits) -> CorpusReport {
    let results: Vec<FixtureResult> = fixtures.par_iter().map(|f| run_fixture(f, limits)).collect();
    CorpusReport {
        seed,
        passed: results.iter().map(|f| f.passed).sum(),
        failed: results.iter().map(|f| f.failed).sum(),
        inapplicable: results.iter().map(|f| f.inapplicable).sum(),
        errors: results.iter().map(|f| f.errors).sum(),
        fixtures: results,
    }
}
