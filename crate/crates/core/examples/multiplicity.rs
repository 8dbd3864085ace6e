//! Hilbert-Samuel multiplicity e(x; R/J) of a parameter on a
//! one-dimensional quotient.

use hkmult::numerics::hilbert_samuel;
use hkmult::{Ideal, Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    let r = PresentedRing::polynomial_ring(5, &["x", "y", "z"])?;
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let cone = PresentedRing::new(r.base().clone(), vec![&(&x * &y) - &z.pow(2)?], Limits::default())?;
    let p = Ideal::new(&cone, vec![y.clone(), z.clone()])?;

    for q in [1, 5, 25] {
        let j = if q == 1 { p.clone() } else { p.bracket_power(q)? };
        let e = hilbert_samuel(&x, &j)?;
        println!(
            "e(x; R/P^[{q}]) = {} (stabilized at N = {}, certified: {}, bound {:?})",
            e.value, e.stabilized_at, e.certified, e.degree_bound
        );
    }
    Ok(())
}
