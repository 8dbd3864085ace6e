//! Reduced Gröbner basis of an ideal in a quotient ring, and membership tests.

use hkmult::{Ideal, Limits, PresentedRing};

fn main() -> hkmult::Result<()> {
    let r = PresentedRing::polynomial_ring(5, &["x", "y", "z"])?;
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let cone = PresentedRing::new(r.base().clone(), vec![&(&x * &y) - &z.pow(2)?], Limits::default())?;

    let i = Ideal::new(&cone, vec![x.pow(2)?, y.clone()])?;
    let gb = i.groebner_basis()?;
    println!("basis of (x^2, y) + (xy - z^2):");
    for g in gb.polys() {
        println!("  {g}");
    }
    println!("z^2 in I: {}", i.contains_element(&z.pow(2)?)?);
    println!("z in I:   {}", i.contains_element(&z)?);
    Ok(())
}
