//! Continuations: the expression describing what may hang below one slot of
//! a marked symbol. Their automaton is isomorphic to the position automaton.

use treeregex::construct::{c_continuation, ContinuationAutomaton, PositionAutomaton};
use treeregex::posfun::{first_of_any, PositionFunctions};
use treeregex::terms::{parse_alphabet, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?;
    let lin = e.linearize();
    let pf = PositionFunctions::new(&lin)?;
    for p in pf.positions() {
        let c = c_continuation(&lin, &p)?;
        println!("{p:>7}: {c}");
        assert_eq!(first_of_any(&c), pf.follow_position(&p));
    }

    let c = ContinuationAutomaton::build(&e, &sigma)?;
    let p = PositionAutomaton::build(&e, &sigma)?;
    println!("continuation: {}", c.automaton.summary());
    println!("position:     {}", p.automaton.summary());
    let phi = p.automaton.isomorphic(&c.automaton).expect("isomorphic");
    for (q, r) in phi.iter().enumerate() {
        println!("  {} -> {}", p.automaton.label(q), c.states[*r].position);
    }
    Ok(())
}
