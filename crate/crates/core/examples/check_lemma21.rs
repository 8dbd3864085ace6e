//! lambda(R/I^[q]) <= lambda(J/I) lambda(R/m^[q]) + lambda(R/J^[q]) for
//! I in J on a singular ring.

use hkmult::checks::check_lemma21;
use hkmult::session::SessionInput;
use hkmult::Limits;

fn main() -> hkmult::Result<()> {
    let text = "char 5\nvars x y z\nmod x*y - z^2\nideal J = x, y, z\nideal I = x^2, y^2, z\n";
    let s = SessionInput::parse(text)?.build(None, Limits::default())?;
    let rep = check_lemma21(&s.ideal("I")?, &s.ideal("J")?, &[5, 25])?;
    for q in &rep.quantities {
        println!(
            "{:>28} = {}",
            q.name,
            serde_json::to_string(&q.value).expect("value serializes")
        );
    }
    println!("{}: {}", rep.verdict.as_str(), rep.detail);
    Ok(())
}
