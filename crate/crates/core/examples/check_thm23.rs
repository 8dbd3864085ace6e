//! e_HK(J + (x)) >= lambda(R/(J + (x))) on a cone, and the failure when x
//! is a zero divisor, which the check cannot detect.

use hkmult::checks::{check_thm23, limit_tolerance};
use hkmult::session::SessionInput;
use hkmult::Limits;

fn run(text: &str) -> hkmult::Result<()> {
    let s = SessionInput::parse(text)?.build(None, Limits::default())?;
    let rep = check_thm23(&s.ideal("J")?, &s.param("x")?, &[s.prime("P")?], 3, &limit_tolerance())?;
    println!("{}: {}", rep.verdict.as_str(), rep.detail);
    Ok(())
}

fn main() -> hkmult::Result<()> {
    run("char 5\nvars x y z\nmod x*y - z^2\nideal J = y, z\nprime P = y, z height 1\n")?;
    // x kills y: e_HK((x)) = 1 while lambda(R/(x)) = 2.
    run("char 5\nvars x y\nmod y^2, x*y\nideal J = y^2\nprime P = y height 0\n")
}
