//! (m^[p])^[p^e] and m^[p^(e+1)] have the same colength.

use hkmult::checks::check_rescaling;
use hkmult::{Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    let r = PresentedRing::polynomial_ring(7, &["x", "y", "z"])?;
    let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(2)?;
    let cone = PresentedRing::new(r.base().clone(), vec![rel], Limits::default())?;
    let rep = check_rescaling(&cone, 1)?;
    println!("{}: {}", rep.verdict.as_str(), rep.detail);
    Ok(())
}
