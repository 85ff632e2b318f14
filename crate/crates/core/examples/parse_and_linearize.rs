//! Parse an alphabet and an expression, then mark it and look at its parts.

use treeregex::terms::{parse_alphabet, parse_expr, parse_tree};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let e = parse_expr(
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
        &sigma,
    )?;
    println!("expression: {e}");
    println!("size:       {} nodes", e.size());
    println!("linear:     {}", e.is_linear());

    let lin = e.linearize();
    println!("marked:     {lin}");
    println!("linear:     {}", lin.is_linear());
    assert_eq!(lin.unmark(), e);

    let letters: Vec<String> = lin.letters().iter().map(ToString::to_string).collect();
    println!("letters:    {}", letters.join(" "));
    println!("leaf constants in the language: {:?}", e.constants_in_language());

    let t = parse_tree("g(b, a)", &sigma)?;
    println!("tree {t} has {} nodes", t.size());

    match parse_expr("g(a)", &sigma) {
        Ok(_) => unreachable!(),
        Err(err) => println!("g(a) is rejected: {err}"),
    }
    Ok(())
}
