//! The K-position automaton: one state per argument slot of each marked
//! symbol, plus the root.

use treeregex::construct::PositionAutomaton;
use treeregex::terms::{parse_alphabet, parse_expr, parse_tree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?;
    let p = PositionAutomaton::build(&e, &sigma)?;
    println!("{}", p.automaton.summary());
    for t in p.automaton.transitions() {
        let sources: Vec<&str> = t.sources.iter().map(|&q| p.automaton.label(q)).collect();
        println!("  {}({}) -> {}", t.symbol, sources.join(", "), p.automaton.label(t.target));
    }

    for text in ["h(f(b))", "g(b,a)", "a", "g(g(c,a),a)", "f(h(b))"] {
        let t = parse_tree(text, &sigma)?;
        let reached: Vec<&str> = p.automaton.run(&t)?.iter().map(|&q| p.automaton.label(q)).collect();
        let verdict = if p.automaton.accepts(&t)? { "accept" } else { "reject" };
        println!("{text:>14}  {verdict:6}  reaches {{{}}}", reached.join(", "));
    }
    Ok(())
}
