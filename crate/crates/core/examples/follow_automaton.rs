//! The follow automaton merges positions with equal Follow sets. On the
//! family below it collapses n+1 positions into a single state.

use treeregex::construct::{FollowAutomaton, PositionAutomaton};
use treeregex::terms::{parse_alphabet, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let mut alphabet = String::from("a:0");
    let mut body = String::from("f1(a)*[a]");
    alphabet.push_str(" f1:1");
    for i in 2..=n {
        alphabet.push_str(&format!(" f{i}:1"));
        body = format!("({body}) .[a] f{i}(a)*[a]");
    }
    let sigma = parse_alphabet(&alphabet)?;
    let e = parse_expr(&format!("({body})*[a]"), &sigma)?;
    println!("{e}");

    let p = PositionAutomaton::build(&e, &sigma)?;
    let f = FollowAutomaton::build(&e, &sigma)?;
    println!("position: {}", p.automaton.summary());
    println!("follow:   {}", f.automaton.summary());
    for (pos, &q) in &f.state_of {
        println!("  {pos} -> {}", f.sets[q]);
    }
    Ok(())
}
