//! Acceptance suite: one line per criterion, at the stated tolerances and
//! runtime targets. Exits nonzero if any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{all_terms, graded_colength, pure_power, truncated_colength};
use hkmult::checks::{self, Value, Verdict};
use hkmult::corpus::{self, Fixture, Task, DEFAULT_SEED};
use hkmult::hilbert_kunz::{ehk_estimate, hk_function, localized_frobenius_colength_detail};
use hkmult::numerics::{colength, local_colength, positive_grading};
use hkmult::session::Session;
use hkmult::{Ideal, Length, Limits, OrderKind, PresentedRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Id, description, runtime target in seconds, and the check itself.
type Criterion = (&'static str, &'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn finite(l: &Length) -> Result<u64, String> {
    l.finite()
        .ok_or_else(|| "infinite length".to_string())?
        .try_into()
        .map_err(err)
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cone(p: u64, n: u64) -> Arc<PresentedRing> {
    let r = PresentedRing::polynomial_ring(p, &["x", "y", "z"]).unwrap();
    let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(n).unwrap();
    PresentedRing::new(r.base().clone(), vec![rel], Limits::default()).unwrap()
}

fn oracle_gens(ideal: &Ideal) -> Vec<common::Terms> {
    all_terms(ideal.ring().relations().iter().chain(ideal.generators()))
}

/// Runs every expectation of `fixture` whose task satisfies `pick`, requiring
/// a PASS from each; returns how many ran.
fn run_tasks(fixture: &Fixture, pick: impl Fn(&Task) -> bool) -> Result<usize, String> {
    let session = fixture.session(Limits::default()).map_err(err)?;
    let mut n = 0;
    for exp in fixture.expectations.iter().filter(|e| pick(&e.task)) {
        let rep = exp.task.run(&session).map_err(|e| format!("{}: {e}", fixture.id))?;
        ensure!(
            rep.verdict == Verdict::Pass,
            "{}: {:?} gave {}: {}",
            fixture.id,
            exp.task,
            rep.verdict.as_str(),
            rep.detail
        );
        n += 1;
    }
    Ok(n)
}

fn ac1_kunz() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for d in 1..=3usize {
            let vars = &["x", "y", "z"][..d];
            let r = PresentedRing::polynomial_ring(p, vars).map_err(err)?;
            let e_max = if d == 3 && p == 5 { 2 } else { 3 };
            for e in 1..=e_max {
                let q = p.pow(e);
                let l = local_colength(&Ideal::maximal(&r).bracket_power(q).map_err(err)?).map_err(err)?;
                ensure!(l == Length::from(q.pow(d as u32)), "p={p} d={d} q={q}: lambda = {l}");
                cases += 1;
            }
            let rep = checks::check_ratio_dichotomy(&r, e_max, true).map_err(err)?;
            ensure!(rep.passed(), "p={p} d={d}: ratios not identically 1");
        }
    }
    Ok(format!("{cases} cases lambda(R/m^[q]) = q^d, ratios identically 1"))
}

fn ac2_flatness() -> Outcome {
    let f = corpus::fixture("flatness-random-p5", DEFAULT_SEED).map_err(err)?;
    let n = run_tasks(&f, |t| matches!(t, Task::Flatness { .. }))?;
    ensure!(n == 25, "expected 25 ideals, ran {n}");
    Ok(format!("{n} ideals, q in {{5, 25}}"))
}

fn ac3_limit() -> Outcome {
    let tol = checks::limit_tolerance();
    let mut lines = Vec::new();
    for (p, n, weights) in [(5u64, 2u64, [1u64, 1, 1]), (7, 2, [1, 1, 1]), (5, 3, [1, 2, 1])] {
        let r = cone(p, n);
        let m = Ideal::maximal(&r);
        // Rows for e <= 2 against the linear-algebra oracle.
        let rows = hk_function(&m, 2).map_err(err)?.rows;
        for row in &rows {
            let q: u64 = (&row.q).try_into().map_err(err)?;
            let oracle = graded_colength(p, &weights, &oracle_gens(&m.bracket_power(q).map_err(err)?), 1000);
            ensure!(
                finite(&row.colength)? == oracle,
                "n={n} p={p} q={q}: {} != oracle {oracle}",
                row.colength
            );
        }
        let est = ehk_estimate(&m, 3).map_err(err)?;
        let target = frac(2 * n as i64 - 1, n as i64);
        let diff = (est.estimate.value() - &target).abs();
        ensure!(
            diff <= tol,
            "n={n} p={p}: estimate {} off target {target} by {diff}",
            est.estimate
        );
        ensure!(
            est.estimate.value() > &frac(6, 5),
            "n={n} p={p}: estimate {} not above 6/5",
            est.estimate
        );
        let dich = checks::check_ratio_dichotomy(&r, 2, false).map_err(err)?;
        ensure!(dich.passed(), "n={n} p={p}: some ratio equals 1");
        lines.push(format!("(n={n},p={p}) {}", est.estimate));
    }
    Ok(lines.join(", "))
}

fn ac4_pair_inequality() -> Outcome {
    let f = corpus::fixture("lemma21-random-p5", DEFAULT_SEED).map_err(err)?;
    let unit = f
        .expectations
        .iter()
        .filter(|e| matches!(&e.task, Task::Lemma21 { ideal_j, .. } if ideal_j == "R"))
        .count();
    let n = run_tasks(&f, |t| matches!(t, Task::Lemma21 { .. }))?;
    ensure!(n == 100, "expected 100 pairs, ran {n}");
    ensure!(unit > 0, "no J = R cases");
    Ok(format!("{n} pairs ({unit} with J = R), q in {{5, 25}}"))
}

fn ac5_hk_lower_bound() -> Outcome {
    let tol = checks::limit_tolerance();
    let mut lines = Vec::new();
    for id in ["quadric-cone-p5", "quadric-cone-p7", "cubic-cone-p5"] {
        let f = corpus::fixture(id, DEFAULT_SEED).map_err(err)?;
        let s = f.session(Limits::default()).map_err(err)?;
        let j = s.ideal("P").map_err(err)?;
        let rep = checks::check_thm23(&j, &s.param("x").map_err(err)?, &[s.prime("P").map_err(err)?], 3, &tol)
            .map_err(err)?;
        ensure!(rep.verdict == Verdict::Pass, "{id}: {}", rep.detail);
        let Some(Value::Rational(margin)) = rep.get("margin") else {
            return Err(format!("{id}: no margin reported"));
        };
        ensure!(margin.value() >= &frac(1, 5), "{id}: margin {margin} below 1/5");
        lines.push(format!("{id} margin {margin}"));
    }
    Ok(lines.join(", "))
}

/// `e(x; R/J)` from the graded oracle: the difference of `λ(R/(J, x^N))` at
/// three consecutive `N` starting at `n0`, which must agree.
fn oracle_multiplicity(j: &Ideal, n0: u32) -> Result<u64, String> {
    let p = j.ring().characteristic() as u64;
    let f = |n: u32| {
        let mut gens = oracle_gens(j);
        gens.push(pure_power(3, 0, n));
        graded_colength(p, &[1, 1, 1], &gens, 2000)
    };
    let (a, b, c) = (f(n0), f(n0 + 1), f(n0 + 2));
    ensure!(b - a == c - b, "oracle differences {} and {} disagree", b - a, c - b);
    Ok(b - a)
}

fn ac6_localized_bound() -> Outcome {
    let regular = PresentedRing::polynomial_ring(5, &["x", "y", "z"]).map_err(err)?;
    let mut lines = Vec::new();
    for (label, r, expect_strict) in [("F_5[x,y,z]", regular, false), ("xy - z^2", cone(5, 2), true)] {
        let prime = Ideal::new(&r, vec![r.var(1), r.var(2)]).map_err(err)?;
        let x = r.var(0);
        let rep = checks::check_thm33(&prime, &x, &[5, 25]).map_err(err)?;
        ensure!(rep.verdict == Verdict::Pass, "{label}: {}", rep.detail);
        ensure!(
            rep.get("strict") == Some(&Value::Bool(expect_strict)),
            "{label}: strictness {:?}, expected {expect_strict}",
            rep.get("strict")
        );
        for q in [5u64, 25] {
            let detail = localized_frobenius_colength_detail(&prime, q, &x).map_err(err)?;
            let n0 = detail.bracket_multiplicity.stabilized_at as u32 + 2;
            let bracket = oracle_multiplicity(&prime.bracket_power(q).map_err(err)?, n0)?;
            let base = oracle_multiplicity(&prime, n0)?;
            ensure!(
                bracket % base == 0 && detail.length == (bracket / base).into(),
                "{label} q={q}: ratio {} vs oracle {bracket}/{base}",
                detail.length
            );
        }
        lines.push(format!("{label} {}", if expect_strict { "strict" } else { "equal" }));
    }
    Ok(lines.join(", "))
}

fn ac7_rescaling() -> Outcome {
    let mut rings = 0;
    for f in corpus::corpus(DEFAULT_SEED) {
        let s = f.session(Limits::default()).map_err(err)?;
        let rep = checks::check_rescaling(s.ring(), 1).map_err(err)?;
        ensure!(rep.verdict == Verdict::Pass, "{}: {}", f.id, rep.detail);
        rings += 1;
    }
    Ok(format!("{rings} corpus rings, e = 1"))
}

/// Every ideal a fixture names, plus `m^[p]`.
fn fixture_ideals(s: &Session) -> Result<Vec<Ideal>, String> {
    let mut out = vec![Ideal::maximal(s.ring())
        .bracket_power(s.ring().characteristic() as u64)
        .map_err(err)?];
    for i in &s.input().ideals {
        out.push(s.ideal(&i.name).map_err(err)?);
    }
    for p in &s.input().primes {
        out.push(s.ideal(&p.name).map_err(err)?);
    }
    Ok(out)
}

fn ac8_properties() -> Outcome {
    let fixtures = corpus::corpus(DEFAULT_SEED);

    // Reduced bases are canonical under generator permutation.
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut shuffles = 0;
    for f in &fixtures {
        let s = f.session(Limits::default()).map_err(err)?;
        for ideal in fixture_ideals(&s)?.into_iter().take(6) {
            let reference = ideal.groebner_basis().map_err(err)?.polys().to_vec();
            let mut gens = ideal.generators().to_vec();
            for _ in 0..100 {
                gens.shuffle(&mut rng);
                let again = Ideal::new(s.ring(), gens.clone()).map_err(err)?;
                ensure!(
                    again.groebner_basis().map_err(err)?.polys() == reference.as_slice(),
                    "{}: basis depends on order",
                    f.id
                );
                shuffles += 1;
            }
        }
    }

    // Colength agrees across the three orders.
    let mut compared = 0;
    for f in &fixtures {
        let input = f.session_input().map_err(err)?;
        let per_order = [OrderKind::Grevlex, OrderKind::Lex, OrderKind::Grlex]
            .into_iter()
            .map(|k| {
                let s = input.build(Some(k), Limits::default()).map_err(err)?;
                fixture_ideals(&s)?
                    .iter()
                    .map(|i| Ok((colength(i).map_err(err)?, local_colength(i).map_err(err)?)))
                    .collect::<Result<Vec<_>, String>>()
            })
            .collect::<Result<Vec<_>, String>>()?;
        ensure!(
            per_order.iter().all(|v| v == &per_order[0]),
            "{}: colength depends on the order",
            f.id
        );
        compared += per_order[0].len();
    }

    // Staircase counts against the linear-algebra oracle.
    let mut oracled = 0;
    for f in &fixtures {
        let s = f.session(Limits::default()).map_err(err)?;
        let p = s.ring().characteristic() as u64;
        let n = s.ring().nvars();
        let mut ideals = fixture_ideals(&s)?;
        ideals.push(Ideal::maximal(s.ring()).bracket_power(p * p).map_err(err)?);
        for i in &ideals {
            let global = colength(i).map_err(err)?;
            let Length::Finite(_) = global else { continue };
            let polys: Vec<_> = s.ring().relations().iter().chain(i.generators()).collect();
            if let Some(w) = positive_grading(&polys, n) {
                let g = finite(&global)?;
                if g > 500 {
                    continue;
                }
                let oracle = graded_colength(p, &w, &oracle_gens(i), 4 * g + 64);
                ensure!(g == oracle, "{}: {} has colength {g}, oracle {oracle}", f.id, i.label());
            } else {
                let local = finite(&local_colength(i).map_err(err)?)?;
                if local > 500 {
                    continue;
                }
                let oracle = truncated_colength(p, n, &oracle_gens(i), local + 1);
                ensure!(
                    local == oracle,
                    "{}: {} has local colength {local}, oracle {oracle}",
                    f.id,
                    i.label()
                );
            }
            oracled += 1;
        }
    }

    // Bracket powers compose as ideals.
    let mut composed = 0;
    for f in &fixtures {
        let s = f.session(Limits::default()).map_err(err)?;
        let p = s.ring().characteristic() as u64;
        let mut ideals = vec![Ideal::maximal(s.ring())];
        ideals.extend(fixture_ideals(&s)?.into_iter().skip(1));
        for i in &ideals {
            let twice = i.bracket_power(p).and_then(|j| j.bracket_power(p)).map_err(err)?;
            ensure!(
                twice.equals(&i.bracket_power(p * p).map_err(err)?).map_err(err)?,
                "{}: {} fails to compose",
                f.id,
                i.label()
            );
            composed += 1;
        }
    }

    Ok(format!(
        "{shuffles} shuffles, {compared} ideals x 3 orders, {oracled} oracle colengths, {composed} compositions"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1", "Kunz equality on regular rings", 5, ac1_kunz),
        ("AC2", "flatness identity", 30, ac2_flatness),
        ("AC3", "e_HK limit on cones", 120, ac3_limit),
        (
            "AC4",
            "Frobenius length inequality on pairs I in J",
            60,
            ac4_pair_inequality,
        ),
        ("AC5", "e_HK(J + (x)) >= lambda(R/(J + (x)))", 60, ac5_hk_lower_bound),
        ("AC6", "localized Frobenius length bound", 60, ac6_localized_bound),
        ("AC7", "rescaling identity", 30, ac7_rescaling),
        ("AC8", "property suites", 120, ac8_properties),
    ];
    let mut failed = 0;
    for (id, name, target, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(target) => {
                Err(format!("{detail}; took {elapsed:.2?}, over the {target}s target"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("{id} PASS {name} ({elapsed:.2?}, target {target}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {name} ({elapsed:.2?}, target {target}s): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
