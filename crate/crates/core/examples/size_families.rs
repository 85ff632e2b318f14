//! Two families where the follow and equation automata trade places: on the
//! first the follow automaton has one state, on the second the equation
//! automaton has two.

use treeregex::construct::{EquationAutomaton, FollowAutomaton};
use treeregex::relations::v_merge_automaton;
use treeregex::terms::{parse_alphabet, parse_expr, RankedAlphabet, RegExpr};

fn chain(n: usize) -> Result<(RegExpr, RankedAlphabet), Box<dyn std::error::Error>> {
    let mut alphabet = String::from("a:0 f1:1");
    let mut body = String::from("f1(a)*[a]");
    for i in 2..=n {
        alphabet.push_str(&format!(" f{i}:1"));
        body = format!("({body}) .[a] f{i}(a)*[a]");
    }
    let sigma = parse_alphabet(&alphabet)?;
    Ok((parse_expr(&format!("({body})*[a]"), &sigma)?, sigma))
}

fn repeated(n: usize) -> Result<(RegExpr, RankedAlphabet), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 f:1")?;
    Ok((parse_expr(&vec!["f(a)*[a]"; n].join(" + "), &sigma)?, sigma))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>22} {:>22}", "n", "chain F/A/merged", "repeated F/A/merged");
    for n in 1..=8 {
        let mut row = format!("{n:>3}");
        for (e, sigma) in [chain(n)?, repeated(n)?] {
            let f = FollowAutomaton::build(&e, &sigma)?.automaton.num_states();
            let a = EquationAutomaton::build(&e, &sigma)?.automaton.num_states();
            let v = v_merge_automaton(&e, &sigma)?.num_states();
            row.push_str(&format!(" {:>22}", format!("{f}/{a}/{v}")));
        }
        println!("{row}");
    }
    Ok(())
}
