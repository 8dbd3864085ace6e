//! Rows of the Hilbert-Kunz function of the maximal ideal of a cone.

use hkmult::hilbert_kunz::hk_function;
use hkmult::{Ideal, Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    let r = PresentedRing::polynomial_ring(5, &["x", "y", "z"])?;
    let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(2)?;
    let cone = PresentedRing::new(r.base().clone(), vec![rel], Limits::default())?;

    let report = hk_function(&Ideal::maximal(&cone), 3)?;
    println!("{:>3} {:>6} {:>10} ratio", "e", "q", "lambda");
    for row in &report.rows {
        println!(
            "{:>3} {:>6} {:>10} {}",
            row.e,
            row.q.to_string(),
            row.colength.to_string(),
            row.ratio
        );
    }
    if let Some(est) = &report.estimate {
        println!("estimate ({}): {est}", report.estimate_method.tag());
    }
    Ok(())
}
