//! First, Follow and Last of a marked expression.

use treeregex::posfun::PositionFunctions;
use treeregex::terms::{parse_alphabet, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?
    .linearize();
    let pf = PositionFunctions::new(&e)?;

    println!("{e}");
    println!("First = {}", pf.first());
    println!("Last  = {}", pf.last());
    for p in pf.positions() {
        println!("Follow({p}) = {}", pf.follow_position(&p));
    }

    // unmarked input is refused
    let plain = parse_expr("f(a) + f(b)", &sigma)?;
    if let Err(err) = PositionFunctions::new(&plain) {
        println!("{plain}: {err}");
    }
    Ok(())
}
