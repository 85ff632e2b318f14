//! Random expressions checked against every claim relating the
//! constructions; a failure is shrunk before it is reported.
//!
//!     cargo run --release --example differential -- 500 7

use treeregex::cli::{shrink, verify, Generator, GeneratorConfig};
use treeregex::terms::parse_alphabet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(Ok(100), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(0), |s| s.parse())?;
    let depth = 7;

    let sigma = parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2")?;
    let config = GeneratorConfig::new(sigma.clone(), seed);
    let mut failures = 0;
    for e in Generator::new(config)?.take(count) {
        let report = verify(&e, &sigma, depth)?;
        if report.passed() {
            continue;
        }
        failures += 1;
        let fails = |x: &_| verify(x, &sigma, depth).map_or(true, |r| !r.passed());
        let small = shrink(&e, &sigma, fails);
        println!("failure on {e}, shrunk to {small}");
        for claim in verify(&small, &sigma, depth)?.claims.iter().filter(|c| !c.holds) {
            println!("  {claim}");
        }
    }
    println!("{count} expressions, {failures} failures");
    Ok(())
}
