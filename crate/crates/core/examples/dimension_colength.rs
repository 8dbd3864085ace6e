//! Krull dimension and colength (standard monomial count) of quotients.

use hkmult::numerics::{colength, dimension};
use hkmult::{Ideal, PresentedRing};

fn main() -> hkmult::Result<()> {
    let r = PresentedRing::polynomial_ring(3, &["x", "y", "z"])?;
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));

    let line = Ideal::new(&r, vec![y.clone(), z.clone()])?;
    println!("dim R/(y, z) = {}", dimension(&line)?);
    println!("lambda(R/(y, z)) = {}", colength(&line)?);

    let point = Ideal::new(&r, vec![x.pow(2)?, &(&x * &y) + &z.pow(3)?, y.pow(3)?, z.pow(4)?])?;
    println!("dim R/I = {}", dimension(&point)?);
    println!("lambda(R/I) = {}", colength(&point)?);
    Ok(())
}
