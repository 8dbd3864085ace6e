//! Two-point estimates of e_HK(m) on A_{n-1} surface singularities, next to
//! the limit (2n - 1)/n.

use hkmult::hilbert_kunz::ehk_estimate;
use hkmult::{Ideal, Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    for (p, n) in [(5u64, 2u64), (7, 2), (5, 3)] {
        let r = PresentedRing::polynomial_ring(p, &["x", "y", "z"])?;
        let rel = &(&r.var(0) * &r.var(1)) - &r.var(2).pow(n)?;
        let cone = PresentedRing::new(r.base().clone(), vec![rel], Limits::default())?;
        let est = ehk_estimate(&Ideal::maximal(&cone), 3)?;
        println!(
            "xy = z^{n} over F_{p}: estimate {} (gap {}), limit {}/{}",
            est.estimate,
            est.gap,
            2 * n - 1,
            n
        );
    }
    Ok(())
}
