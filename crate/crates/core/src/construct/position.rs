use std::collections::BTreeMap;

use super::{marked_alphabet, slot_states, unmark_symbols};
use crate::automaton::{Transition, TreeAutomaton};
use crate::error::Result;
use crate::posfun::{Position, PositionFunctions};
use crate::terms::{RankedAlphabet, RegExpr};

/// The k-position automaton together with the data it was built from.
///
/// State `i` of both `marked` and `automaton` is `positions[i]`.
#[derive(Debug, Clone)]
pub struct PositionAutomaton {
    pub linear: RegExpr,
    pub positions: Vec<Position>,
    /// Rules over marked letters, before relabelling.
    pub marked: TreeAutomaton,
    pub automaton: TreeAutomaton,
}

impl PositionAutomaton {
    pub fn build(e: &RegExpr, sigma: &RankedAlphabet) -> Result<Self> {
        let linear = e.linearize();
        if linear.is_zero() {
            return Ok(PositionAutomaton {
                linear,
                positions: Vec::new(),
                marked: TreeAutomaton::empty(RankedAlphabet::new()),
                automaton: TreeAutomaton::empty(sigma.clone()),
            });
        }
        let pf = PositionFunctions::new(&linear)?;
        let positions = pf.positions();
        let index: BTreeMap<Position, usize> =
            positions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut transitions = Vec::new();
        for (x, p) in positions.iter().enumerate() {
            for g in pf.follow_position(p).iter() {
                let sources = match pf.arity(g) {
                    Some(m) => slot_states(&index, g, m),
                    None => Vec::new(),
                };
                transitions.push(Transition::new(x, g.to_string(), sources));
            }
        }
        let labels = positions.iter().map(Position::to_string).collect();
        let marked = TreeAutomaton::new(marked_alphabet(&pf, sigma), labels, [0], transitions)?;
        let automaton = unmark_symbols(&marked, sigma)?;
        Ok(PositionAutomaton {
            linear,
            positions,
            marked,
            automaton,
        })
    }
}

/// `P_E`.
pub fn k_position_automaton(e: &RegExpr, sigma: &RankedAlphabet) -> Result<TreeAutomaton> {
    Ok(PositionAutomaton::build(e, sigma)?.automaton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_alphabet, parse_expr, parse_tree};

    fn sigma() -> RankedAlphabet {
        parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap()
    }

    const EXAMPLE: &str =
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]";

    #[test]
    fn running_example_counts() {
        let s = sigma();
        let p = PositionAutomaton::build(&parse_expr(EXAMPLE, &s).unwrap(), &s).unwrap();
        assert_eq!(p.automaton.num_states(), 7);
        assert_eq!(p.automaton.num_transitions(), 23);
        assert_eq!(p.marked.num_transitions(), 23);
        assert_eq!(p.automaton.finals().len(), 1);
        assert!(p.automaton.is_final(p.automaton.state_by_label("eps^1").unwrap()));
    }

    #[test]
    fn running_example_runs() {
        let s = sigma();
        let a = k_position_automaton(&parse_expr(EXAMPLE, &s).unwrap(), &s).unwrap();
        let labels = |t: &str| -> Vec<String> {
            let run = a.run(&parse_tree(t, &s).unwrap()).unwrap();
            let mut v: Vec<String> = run.iter().map(|&q| a.label(q).to_string()).collect();
            v.sort();
            v
        };
        assert_eq!(
            labels("b"),
            vec!["eps^1", "f^1@1", "f^1@4", "g^1@3", "h^1@2", "h^1@5"]
        );
        assert_eq!(labels("a"), vec!["g^2@3"]);
        assert!(a.accepts(&parse_tree("h(f(b))", &s).unwrap()).unwrap());
        assert!(a.accepts(&parse_tree("g(g(b,a),a)", &s).unwrap()).unwrap());
        assert!(!a.accepts(&parse_tree("a", &s).unwrap()).unwrap());
        assert!(!a.accepts(&parse_tree("f(h(g(b,a)))", &s).unwrap()).unwrap());
    }

    #[test]
    fn single_constant() {
        let s = sigma();
        let a = k_position_automaton(&RegExpr::constant("a"), &s).unwrap();
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.num_transitions(), 1);
        assert!(a.accepts(&parse_tree("a", &s).unwrap()).unwrap());
        assert!(!a.accepts(&parse_tree("b", &s).unwrap()).unwrap());
    }

    #[test]
    fn zero_is_empty() {
        let a = k_position_automaton(&RegExpr::Zero, &sigma()).unwrap();
        assert_eq!(a.num_states(), 0);
    }
}
