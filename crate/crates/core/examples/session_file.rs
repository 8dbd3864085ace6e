//! Parsing the ring description language and looking up declared objects.

use hkmult::numerics::{dimension, local_colength};
use hkmult::session::SessionInput;
use hkmult::{Limits, OrderKind};

const SOURCE: &str = "\
char 7
vars x y z
order lex
mod x*y - z^3
ideal I = x^2, y^2, z
prime P = y, z height 1
param f = x + y
";

fn main() -> hkmult::Result<()> {
    let input = SessionInput::parse(SOURCE)?;
    print!("normalized:\n{}", input.to_dsl());
    for order in [None, Some(OrderKind::Grevlex)] {
        let s = input.build(order, Limits::default())?;
        let i = s.ideal("I")?;
        println!(
            "order {:?}: dim R/P = {}, lambda(R/I) = {}, f = {}",
            order,
            dimension(&s.ideal("P")?)?,
            local_colength(&i)?,
            s.param("f")?
        );
    }
    match SessionInput::parse("char 7\nvars x\nideal I = x^^2\n") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("parse error: {e}"),
    }
    Ok(())
}
