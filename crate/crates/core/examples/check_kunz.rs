//! Kunz's bound lambda(R/m^[q]) >= q^d: equality on a polynomial ring,
//! strict on a singular one.

use hkmult::checks::check_kunz;
use hkmult::{Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    let regular = PresentedRing::polynomial_ring(3, &["x", "y"])?;
    let r = PresentedRing::polynomial_ring(3, &["x", "y", "z"])?;
    let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(2)?;
    let cone = PresentedRing::new(r.base().clone(), vec![rel], Limits::default())?;

    for (label, ring) in [("F_3[x,y]", regular), ("xy = z^2", cone)] {
        let rep = check_kunz(&ring, &[3, 9, 27])?;
        println!("{label}: {} ({})", rep.verdict.as_str(), rep.detail);
    }
    Ok(())
}
