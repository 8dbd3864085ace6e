//! Length at the origin versus the global count when the variety has points
//! away from the origin.

use hkmult::numerics::{colength, local_colength};
use hkmult::session::SessionInput;
use hkmult::Limits;

fn main() -> hkmult::Result<()> {
    let s = SessionInput::parse("char 5\nvars x y\nideal I = x^2 - x^3, y\n")?.build(None, Limits::default())?;
    let i = s.ideal("I")?;
    // x^2 (1 - x): a double point at the origin and a simple one at x = 1.
    println!("global colength: {}", colength(&i)?);
    println!("local colength:  {}", local_colength(&i)?);
    Ok(())
}
