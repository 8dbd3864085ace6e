//! q lambda_P(R/P^[q]) <= lambda(R/m^[q]) for a one-dimensional prime,
//! with the localized length read off multiplicities.

use hkmult::checks::check_thm33;
use hkmult::hilbert_kunz::localized_frobenius_colength_detail;
use hkmult::{Ideal, Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    let r = PresentedRing::polynomial_ring(5, &["x", "y", "z"])?;
    let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(2)?;
    let cone = PresentedRing::new(r.base().clone(), vec![rel], Limits::default())?;
    let p = Ideal::new(&cone, vec![cone.var(1), cone.var(2)])?;
    let x = cone.var(0);

    for q in [5, 25] {
        let d = localized_frobenius_colength_detail(&p, q, &x)?;
        println!(
            "q = {q}: lambda_P = {} = {} / {}",
            d.length, d.bracket_multiplicity.value, d.prime_multiplicity.value
        );
    }
    let rep = check_thm33(&p, &x, &[5, 25])?;
    println!("{}: {}", rep.verdict.as_str(), rep.detail);
    Ok(())
}
