//! JSON and Graphviz output. Pipe the DOT text into `dot -Tsvg`.

use treeregex::automaton::TreeAutomaton;
use treeregex::construct::FollowAutomaton;
use treeregex::terms::{parse_alphabet, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr("g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]", &sigma)?;
    let f = FollowAutomaton::build(&e, &sigma)?.automaton;

    let json = f.to_json();
    println!("{json}");
    let back = TreeAutomaton::from_json(&json)?;
    assert!(back.isomorphic(&f).is_some());

    println!("{}", f.to_dot());
    Ok(())
}
