//! Colengths and multiplicities checked against the Macaulay-matrix oracle.

mod common;

use std::sync::Arc;

use common::{all_terms, graded_colength, pure_power, truncated_colength};
use hkmult::hilbert_kunz::{ehk_estimate, hk_function, localized_frobenius_colength_detail};
use hkmult::numerics::{colength, hilbert_samuel, local_colength};
use hkmult::session::SessionInput;
use hkmult::{Ideal, Length, Limits, PresentedRing};

fn cone(p: u64, n: u64) -> Arc<PresentedRing> {
    let r = PresentedRing::polynomial_ring(p, &["x", "y", "z"]).unwrap();
    let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(n).unwrap();
    PresentedRing::new(r.base().clone(), vec![rel], Limits::default()).unwrap()
}

fn finite(l: Length) -> u64 {
    l.finite().expect("finite length").try_into().unwrap()
}

/// Relations plus generators, as oracle input.
fn oracle_gens(ideal: &Ideal) -> Vec<common::Terms> {
    all_terms(ideal.ring().relations().iter().chain(ideal.generators()))
}

#[test]
fn bracket_powers_of_m_on_cones_match_graded_oracle() {
    for (p, n, weights) in [(5u64, 2u64, [1u64, 1, 1]), (7, 2, [1, 1, 1]), (5, 3, [1, 2, 1])] {
        let r = cone(p, n);
        for q in [p, p * p] {
            let i = Ideal::maximal(&r).bracket_power(q).unwrap();
            let expected = graded_colength(p, &weights, &oracle_gens(&i), 400);
            assert_eq!(finite(local_colength(&i).unwrap()), expected, "p={p} n={n} q={q}");
        }
    }
}

#[test]
fn hk_rows_frozen_from_oracle() {
    // Row values from the graded oracle, e <= 2.
    let cases: [(u64, u64, [u64; 2]); 3] = [(5, 2, [37, 937]), (7, 2, [73, 3601]), (5, 3, [41, 1041])];
    for (p, n, rows) in cases {
        let report = hk_function(&Ideal::maximal(&cone(p, n)), 2).unwrap();
        let got: Vec<u64> = report.rows.iter().map(|r| finite(r.colength.clone())).collect();
        assert_eq!(got, rows, "p={p} n={n}");
    }
}

#[test]
fn ehk_estimates_frozen() {
    let cases = [(5u64, 2u64, "4688/3125"), (7, 2, "25211/16807"), (5, 3, "5209/3125")];
    for (p, n, expected) in cases {
        let est = ehk_estimate(&Ideal::maximal(&cone(p, n)), 3).unwrap();
        assert_eq!(est.estimate.value().to_string(), expected, "p={p} n={n}");
    }
}

#[test]
fn non_monomial_ideals_match_truncated_oracle() {
    // Local lengths at the origin: x^2 - x^3 has a second root at x = 1,
    // which the global count sees and the local one must not.
    let cases = [
        "x + y, x^2",
        "x^2 + y^2, x*y",
        "x^2 - y^3, x*y^2",
        "x + y^2, y^3",
        "x^2 - x^3, y",
    ];
    for gens in cases {
        let input = SessionInput::parse(&format!("char 5\nvars x y\nideal I = {gens}\n")).unwrap();
        let s = input.build(None, Limits::default()).unwrap();
        let ideal = s.ideal("I").unwrap();
        for q in [1u64, 5] {
            let i = if q == 1 {
                ideal.clone()
            } else {
                ideal.bracket_power(q).unwrap()
            };
            let local = finite(local_colength(&i).unwrap());
            // A proper truncation degree: past it the truncated length is stable.
            let d = local + 1;
            let oracle = truncated_colength(5, 2, &oracle_gens(&i), d);
            assert_eq!(local, oracle, "I = ({gens}), q = {q}");
            assert_eq!(
                oracle,
                truncated_colength(5, 2, &oracle_gens(&i), d + 3),
                "I = ({gens}), q = {q}"
            );
        }
    }
}

#[test]
fn global_and_local_colength_differ_off_the_origin() {
    let input = SessionInput::parse("char 5\nvars x y\nideal I = x^2 - x^3, y\n").unwrap();
    let s = input.build(None, Limits::default()).unwrap();
    let i = s.ideal("I").unwrap();
    assert_eq!(finite(colength(&i).unwrap()), 3);
    assert_eq!(finite(local_colength(&i).unwrap()), 2);
}

/// `λ(R/(J, x^N))` by the graded oracle, for homogeneous `J` and a variable `x`.
fn oracle_quotient(j: &Ideal, var: usize, n: u32, weights: &[u64]) -> u64 {
    let mut gens = oracle_gens(j);
    gens.push(pure_power(weights.len(), var, n));
    graded_colength(j.ring().characteristic() as u64, weights, &gens, 1000)
}

#[test]
fn localized_colength_matches_stabilized_differences() {
    // (ring, q, expected localized length)
    let regular = PresentedRing::polynomial_ring(5, &["x", "y", "z"]).unwrap();
    let cases = [
        (cone(5, 2), 5u64, 5u64),
        (cone(5, 2), 25, 25),
        (regular.clone(), 5, 25),
        (regular, 25, 625),
    ];
    for (r, q, expected) in cases {
        let p = Ideal::new(&r, vec![r.var(1), r.var(2)]).unwrap();
        let x = r.var(0);
        let detail = localized_frobenius_colength_detail(&p, q, &x).unwrap();
        assert_eq!(detail.length, expected.into(), "q = {q}");
        // Independent: differences of the graded oracle well past the bound.
        let pq = p.bracket_power(q).unwrap();
        let n0 = detail.bracket_multiplicity.stabilized_at as u32 + 4;
        let f = |n| oracle_quotient(&pq, 0, n, &[1, 1, 1]);
        let (a, b, c) = (f(n0), f(n0 + 1), f(n0 + 2));
        assert_eq!(b - a, c - b);
        assert_eq!(b - a, expected, "q = {q}");
        assert_eq!(
            oracle_quotient(&p, 0, n0 + 1, &[1, 1, 1]) - oracle_quotient(&p, 0, n0, &[1, 1, 1]),
            1
        );
    }
}

#[test]
fn embedded_component_multiplicity_matches_oracle() {
    // M = F_5[x,y]/(xy, y^2): lambda(M/x^N M) = N + 1, so e(x; M) = 1 even
    // though x kills y.
    let r = PresentedRing::polynomial_ring(5, &["x", "y"]).unwrap();
    let j = Ideal::new(&r, vec![&r.var(0) * &r.var(1), r.var(1).pow(2).unwrap()]).unwrap();
    let e = hilbert_samuel(&r.var(0), &j).unwrap();
    assert_eq!(e.value, 1u32.into());
    for n in 3..8 {
        assert_eq!(oracle_quotient(&j, 0, n, &[1, 1]), n as u64 + 1);
    }
    // lambda(M/xM) - lambda(0 :_M x) = 2 - 1.
    assert_eq!(oracle_quotient(&j, 0, 1, &[1, 1]), 2);
}

#[test]
fn weighted_grading_oracle_agrees_on_cubic_cone_maximal_ideal() {
    let r = cone(5, 3);
    let m = Ideal::maximal(&r);
    assert_eq!(graded_colength(5, &[1, 2, 1], &oracle_gens(&m), 10), 1);
}
