//! lambda(R/I^[q]) = q^d lambda(R/I) for an m-primary ideal of a polynomial
//! ring.

use hkmult::checks::check_flatness;
use hkmult::session::SessionInput;
use hkmult::Limits;

fn main() -> hkmult::Result<()> {
    let s = SessionInput::parse("char 5\nvars x y\nideal I = x^2 - y^3, x*y^2\n")?.build(None, Limits::default())?;
    let rep = check_flatness(&s.ideal("I")?, &[5, 25])?;
    println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
    Ok(())
}
