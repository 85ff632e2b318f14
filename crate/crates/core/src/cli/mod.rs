//! The command surface behind the `treeregex` binary.
//!
//! Each command takes already-read text inputs and returns an [`Outcome`]
//! holding what to print and the exit code:
//! 0 ok, 1 a verified claim failed, 2 bad user input, 3 internal error.

mod generate;
mod shrink;
mod verify;

pub use generate::{generate_expr, Generator, GeneratorConfig, OperatorWeights};
pub use shrink::shrink;
pub use verify::{is_largest_similarity, verify, Claim, Constructions, Report};

use std::fmt::Write;

use clap::ValueEnum;

use crate::automaton::{AutomatonError, TreeAutomaton};
use crate::construct::{
    equation_automaton, follow_automaton, k_c_continuation_automaton, k_position_automaton,
    ContinuationAutomaton, PositionAutomaton,
};
use crate::error::Error;
use crate::posfun::{last, PositionFunctions};
use crate::relations::{rel_combined, rel_e, rel_follow, v_merge_automaton, VMerge, VMergeOptions};
use crate::terms::{parse_alphabet, parse_expr, parse_tree, RankedAlphabet, RegExpr};

/// The alphabet used when none is given.
pub const DEFAULT_ALPHABET: &str = "a:0 b:0 c:0 f:1 h:1 g:2";

pub const DEFAULT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Kpos,
    Follow,
    Equation,
    Kcc,
    Vmerge,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::Kpos,
        Construction::Follow,
        Construction::Equation,
        Construction::Kcc,
        Construction::Vmerge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::Kpos => "kpos",
            Construction::Follow => "follow",
            Construction::Equation => "equation",
            Construction::Kcc => "kcc",
            Construction::Vmerge => "vmerge",
        }
    }

    pub fn build(self, e: &RegExpr, sigma: &RankedAlphabet) -> Result<TreeAutomaton, Error> {
        match self {
            Construction::Kpos => k_position_automaton(e, sigma),
            Construction::Follow => follow_automaton(e, sigma),
            Construction::Equation => equation_automaton(e, sigma),
            Construction::Kcc => k_c_continuation_automaton(e, sigma),
            Construction::Vmerge => v_merge_automaton(e, sigma),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    /// Exit 2 for input problems, 3 for broken invariants.
    pub fn from_error(err: &Error) -> Self {
        let (code, prefix) = match err {
            Error::Parse(_) | Error::Generator(_) => (2, "error"),
            Error::Automaton(AutomatonError::UnknownSymbol(_))
            | Error::Automaton(AutomatonError::ArityMismatch { .. }) => (2, "error"),
            Error::Watchdog { .. } => (3, "watchdog"),
            _ => (3, "internal error"),
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("{prefix}: {err}\n"),
            code,
        }
    }
}

/// Parses the alphabet (or the default) and then the expression.
pub fn parse_inputs(expr: &str, alphabet: Option<&str>) -> Result<(RegExpr, RankedAlphabet), Error> {
    let sigma = parse_alphabet(alphabet.unwrap_or(DEFAULT_ALPHABET))?;
    let e = parse_expr(expr.trim(), &sigma)?;
    Ok((e, sigma))
}

fn run_command(f: impl FnOnce() -> Result<Outcome, Error>) -> Outcome {
    f().unwrap_or_else(|e| Outcome::from_error(&e))
}

fn zero_warning(e: &RegExpr) -> &'static str {
    if e.is_zero() {
        "warning: the expression denotes the empty language; the automaton has no states\n"
    } else {
        ""
    }
}

/// `build`: the serialized automaton on stdout, a summary on stderr.
pub fn cmd_build(construction: Construction, expr: &str, alphabet: Option<&str>, format: Format) -> Outcome {
    run_command(|| {
        let (e, sigma) = parse_inputs(expr, alphabet)?;
        let a = construction.build(&e, &sigma)?;
        let stdout = match format {
            Format::Json => a.to_json() + "\n",
            Format::Dot => a.to_dot(),
        };
        Ok(Outcome {
            stdout,
            stderr: format!("{}{}: {}\n", zero_warning(&e), construction.name(), a.summary()),
            code: 0,
        })
    })
}

/// `run`: the states reached by `tree` and the verdict.
pub fn cmd_run(construction: Construction, expr: &str, alphabet: Option<&str>, tree: &str) -> Outcome {
    run_command(|| {
        let (e, sigma) = parse_inputs(expr, alphabet)?;
        let t = parse_tree(tree.trim(), &sigma)?;
        let a = construction.build(&e, &sigma)?;
        let states = a.run(&t)?;
        let accepted = states.iter().any(|q| a.is_final(*q));
        let mut labels: Vec<&str> = states.iter().map(|&q| a.label(q)).collect();
        labels.sort_unstable();
        let mut out = String::new();
        writeln!(out, "{}", if accepted { "accept" } else { "reject" }).unwrap();
        for l in labels {
            writeln!(out, "  {l}").unwrap();
        }
        Ok(Outcome::ok(out))
    })
}

/// `stats`: state and rule counts per construction and block counts per
/// relation; optionally the position functions.
pub fn cmd_stats(expr: &str, alphabet: Option<&str>, show_posfun: bool) -> Outcome {
    run_command(|| {
        let (e, sigma) = parse_inputs(expr, alphabet)?;
        let mut out = String::new();
        writeln!(out, "{:<10} {:>7} {:>12}", "automaton", "states", "transitions").unwrap();
        for c in Construction::ALL {
            let a = c.build(&e, &sigma)?;
            writeln!(out, "{:<10} {:>7} {:>12}", c.name(), a.num_states(), a.num_transitions()).unwrap();
        }
        let p = PositionAutomaton::build(&e, &sigma)?;
        let cc = ContinuationAutomaton::build(&e, &sigma)?;
        let v = VMerge::build(&e, &sigma, &VMergeOptions::default())?;
        writeln!(out).unwrap();
        writeln!(out, "{:<10} {:>7}", "relation", "blocks").unwrap();
        writeln!(out, "{:<10} {:>7}", "~F", rel_follow(&p.linear, &p.positions)?.len()).unwrap();
        writeln!(out, "{:<10} {:>7}", "~e", rel_e(&cc.states).len()).unwrap();
        writeln!(out, "{:<10} {:>7}", "==", rel_combined(&cc)?.len()).unwrap();
        writeln!(out, "{:<10} {:>7}", "==V", v.partition.len()).unwrap();
        if show_posfun && !p.linear.is_zero() {
            let pf = PositionFunctions::new(&p.linear)?;
            writeln!(out, "\nlinearized: {}", p.linear).unwrap();
            writeln!(out, "First = {}", pf.first()).unwrap();
            for pos in p.positions.iter().skip(1) {
                writeln!(out, "Follow({pos}) = {}", pf.follow_position(pos)).unwrap();
            }
            writeln!(out, "Last = {}", last(&p.linear)).unwrap();
        }
        Ok(Outcome {
            stdout: out,
            stderr: zero_warning(&e).to_string(),
            code: 0,
        })
    })
}

fn relation_table(e: &RegExpr, sigma: &RankedAlphabet) -> Result<String, Error> {
    let p = PositionAutomaton::build(e, sigma)?;
    let cc = ContinuationAutomaton::build(e, sigma)?;
    let v = VMerge::build(e, sigma, &VMergeOptions::default())?;
    let mut out = String::new();
    let rows = [
        ("~F on P", rel_follow(&p.linear, &p.positions)?, "quotient is isomorphic to F"),
        ("~e on C", rel_e(&cc.states), "quotient is isomorphic to A"),
        ("== on C", rel_combined(&cc)?, "quotient is isomorphic to F"),
        ("==V on C", v.partition.clone(), "quotient is no larger than F and A"),
    ];
    for (name, part, claim) in rows {
        let sizes: Vec<String> = part.blocks().iter().map(|b| b.len().to_string()).collect();
        writeln!(out, "{name}: {} blocks (sizes {}); {claim}", part.len(), sizes.join(",")).unwrap();
        for b in part.blocks().iter().filter(|b| b.len() > 1) {
            let names: Vec<String> = b.iter().map(|&q| p.positions[q].to_string()).collect();
            writeln!(out, "    {{{}}}", names.join(", ")).unwrap();
        }
    }
    Ok(out)
}

/// `compare` on one expression.
pub fn cmd_compare(expr: &str, alphabet: Option<&str>, depth: usize) -> Outcome {
    run_command(|| {
        let (e, sigma) = parse_inputs(expr, alphabet)?;
        let report = verify(&e, &sigma, depth)?;
        let mut out = relation_table(&e, &sigma)?;
        out.push('\n');
        for claim in &report.claims {
            writeln!(out, "{claim}").unwrap();
        }
        let code = if report.passed() { 0 } else { 1 };
        Ok(Outcome {
            stdout: out,
            stderr: zero_warning(&e).to_string(),
            code,
        })
    })
}

/// `compare` over `count` generated expressions; failures are shrunk.
pub fn cmd_compare_random(config: &GeneratorConfig, count: usize, depth: usize) -> Outcome {
    run_command(|| {
        let sigma = config.alphabet.clone();
        let mut out = String::new();
        let mut failures = 0;
        for (i, e) in Generator::new(config.clone())?.take(count).enumerate() {
            let fails = |x: &RegExpr| !matches!(verify(x, &sigma, depth), Ok(r) if r.passed());
            if !fails(&e) {
                continue;
            }
            failures += 1;
            let small = shrink(&e, &sigma, fails);
            writeln!(out, "FAIL #{i}: {e}").unwrap();
            writeln!(out, "  shrunk to: {small}").unwrap();
            match verify(&small, &sigma, depth) {
                Ok(r) => {
                    for c in r.claims.iter().filter(|c| !c.holds) {
                        writeln!(out, "  {c}").unwrap();
                    }
                }
                Err(err) => writeln!(out, "  error: {err}").unwrap(),
            }
        }
        writeln!(out, "{} expressions, {failures} failing (seed {})", count, config.seed).unwrap();
        Ok(Outcome {
            stdout: out,
            stderr: String::new(),
            code: if failures == 0 { 0 } else { 1 },
        })
    })
}

/// `gen`: one expression per line.
pub fn cmd_gen(config: &GeneratorConfig, count: usize) -> Outcome {
    run_command(|| {
        let mut out = String::new();
        for e in Generator::new(config.clone())?.take(count) {
            writeln!(out, "{e}").unwrap();
        }
        Ok(Outcome::ok(out))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str =
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]";

    #[test]
    fn build_reports_counts() {
        let o = cmd_build(Construction::Kpos, EXAMPLE, None, Format::Json);
        assert_eq!(o.code, 0);
        assert!(o.stderr.contains("kpos: 7 states, 23 transitions"));
        let a = TreeAutomaton::from_json(&o.stdout).unwrap();
        assert_eq!(a.num_transitions(), 23);
        let o = cmd_build(Construction::Vmerge, EXAMPLE, None, Format::Dot);
        assert!(o.stderr.contains("vmerge: 4 states"));
    }

    #[test]
    fn build_on_zero_warns() {
        let o = cmd_build(Construction::Follow, "0", None, Format::Json);
        assert_eq!(o.code, 0);
        assert!(o.stderr.starts_with("warning"));
        assert_eq!(TreeAutomaton::from_json(&o.stdout).unwrap().num_states(), 0);
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(cmd_build(Construction::Kpos, "f(a", None, Format::Json).code, 2);
        assert_eq!(cmd_build(Construction::Kpos, "a", Some("a:-1"), Format::Json).code, 2);
        assert_eq!(cmd_run(Construction::Kpos, "a", None, "z").code, 2);
        assert_eq!(cmd_run(Construction::Kpos, "a", None, "f(a,a)").code, 2);
    }

    #[test]
    fn run_verdicts() {
        let o = cmd_run(Construction::Kpos, EXAMPLE, None, "h(f(b))");
        assert!(o.stdout.starts_with("accept"));
        let o = cmd_run(Construction::Kpos, EXAMPLE, None, "a");
        assert!(o.stdout.starts_with("reject"));
        assert!(o.stdout.contains("g^2@3"));
        let o = cmd_run(Construction::Equation, EXAMPLE, None, "g(b,a)");
        assert!(o.stdout.starts_with("accept"));
    }

    #[test]
    fn stats_rows() {
        let o = cmd_stats(EXAMPLE, None, true);
        assert_eq!(o.code, 0);
        for row in [("kpos", 7, 23), ("follow", 5, 17), ("equation", 5, 15), ("kcc", 7, 23)] {
            let line = o.stdout.lines().find(|l| l.starts_with(row.0)).unwrap();
            let cols: Vec<&str> = line.split_whitespace().collect();
            assert_eq!(cols[1..], [row.1.to_string(), row.2.to_string()]);
        }
        assert!(o.stdout.contains("Follow(g^2@3) = {a}"));
    }

    #[test]
    fn compare_passes_on_running_example_and_constant() {
        let o = cmd_compare(EXAMPLE, None, 6);
        assert_eq!(o.code, 0, "{}", o.stdout);
        assert!(!o.stdout.contains("FAIL"));
        assert_eq!(cmd_compare("a", None, 4).code, 0);
    }

    #[test]
    fn gen_is_deterministic() {
        let cfg = GeneratorConfig::new(parse_alphabet(DEFAULT_ALPHABET).unwrap(), 3);
        let a = cmd_gen(&cfg, 5);
        assert_eq!(a, cmd_gen(&cfg, 5));
        assert_eq!(a.stdout.lines().count(), 5);
    }
}
