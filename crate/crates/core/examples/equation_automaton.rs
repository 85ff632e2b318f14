//! Derived terms: f⁻¹ splits an expression into one expression per argument,
//! and the equation automaton closes the input under these splits.

use treeregex::construct::{f_inverse, partial_derivative, EquationAutomaton};
use treeregex::terms::{parse_alphabet, parse_expr, Letter};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?;
    for f in ["f", "h", "g"] {
        for tuple in f_inverse(&Letter::from(f), &e) {
            println!("{f}^-1 contains {tuple}");
        }
    }
    let w = [Letter::from("g"), Letter::from("g")];
    for d in partial_derivative(&e, &w) {
        println!("derivative by gg: {d}");
    }

    let a = EquationAutomaton::build(&e, &sigma)?;
    println!("{}", a.automaton.summary());
    for (i, s) in a.states.iter().enumerate() {
        println!("  q{i} = {s}");
    }

    // a low state budget trips the watchdog
    match EquationAutomaton::build_with_limit(&e, &sigma, 3) {
        Ok(_) => println!("built within 3 states"),
        Err(err) => println!("limit 3: {err}"),
    }
    Ok(())
}
