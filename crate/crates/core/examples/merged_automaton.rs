//! Joining follow equality with equality of unmarked continuations gives an
//! automaton no larger than either the follow or the equation automaton.

use treeregex::construct::{EquationAutomaton, FollowAutomaton};
use treeregex::relations::{VMerge, VMergeOptions};
use treeregex::terms::{parse_alphabet, parse_expr, parse_tree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?;
    let v = VMerge::build(&e, &sigma, &VMergeOptions::default())?;
    let f = FollowAutomaton::build(&e, &sigma)?.automaton;
    let a = EquationAutomaton::build(&e, &sigma)?.automaton;
    println!("follow:   {}", f.summary());
    println!("equation: {}", a.summary());
    println!("stage 1:  {}", v.stage1_automaton.summary());
    println!("merged:   {}", v.automaton.summary());
    for q in 0..v.automaton.num_states() {
        println!("  {}", v.automaton.label(q));
    }
    for text in ["h(f(b))", "g(b,a)", "f(f(b))", "g(a,a)"] {
        let t = parse_tree(text, &sigma)?;
        println!("{text:>8}: {}", v.automaton.accepts(&t)?);
    }
    Ok(())
}
