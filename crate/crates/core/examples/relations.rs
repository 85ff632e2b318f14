//! Equivalences on the continuation automaton and the quotients they give.

use treeregex::construct::{ContinuationAutomaton, EquationAutomaton, FollowAutomaton};
use treeregex::relations::{
    combined_quotient, equation_quotient, rel_combined, rel_e, RelationKind, RelationSpec,
    StateDomain,
};
use treeregex::terms::{parse_alphabet, parse_expr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?;
    let c = ContinuationAutomaton::build(&e, &sigma)?;
    let show = |name: &str, blocks: &[Vec<usize>]| {
        let text: Vec<String> = blocks
            .iter()
            .map(|b| {
                let members: Vec<String> =
                    b.iter().map(|&q| c.states[q].position.to_string()).collect();
                format!("{{{}}}", members.join(" "))
            })
            .collect();
        println!("{name}: {}", text.join(" "));
    };
    show("same unmarked continuation", rel_e(&c.states).blocks());
    show("same Follow", rel_combined(&c)?.blocks());

    let by_e = equation_quotient(&c)?;
    let a = EquationAutomaton::build(&e, &sigma)?.automaton;
    println!("C/~e: {}; isomorphic to A: {}", by_e.summary(), by_e.isomorphic(&a).is_some());
    let by_f = combined_quotient(&c)?;
    let f = FollowAutomaton::build(&e, &sigma)?.automaton;
    println!("C/==: {}; isomorphic to F: {}", by_f.summary(), by_f.isomorphic(&f).is_some());

    // the same relations through the generic entry point
    let spec = RelationSpec::new(RelationKind::FollowEquality, StateDomain::Position)?;
    let (p, partition) = spec.apply(&e, &sigma)?;
    println!("P:    {}", p.summary());
    println!("P/~F: {}", p.quotient(&partition)?.summary());
    match RelationSpec::new(RelationKind::HImageEquality, StateDomain::Position) {
        Ok(_) => println!("accepted"),
        Err(err) => println!("{err}"),
    }
    Ok(())
}
