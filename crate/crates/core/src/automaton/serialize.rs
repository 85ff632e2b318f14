//! JSON and Graphviz renderings. Both renumber states in label order so
//! that output is stable and diffable.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{AutomatonError, Transition, TreeAutomaton};
use crate::terms::RankedAlphabet;

#[derive(Serialize, Deserialize)]
struct Document {
    states: Vec<StateEntry>,
    transitions: Vec<TransitionEntry>,
}

#[derive(Serialize, Deserialize)]
struct StateEntry {
    id: usize,
    label: String,
    #[serde(rename = "final")]
    is_final: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
struct TransitionEntry {
    target: usize,
    symbol: String,
    sources: Vec<usize>,
}

/// `new_id[q]` for every state `q`.
fn renumbering(a: &TreeAutomaton) -> Vec<usize> {
    let mut new_id = vec![0; a.num_states()];
    for (i, q) in a.canonical_order().into_iter().enumerate() {
        new_id[q] = i;
    }
    new_id
}

pub(super) fn to_json(a: &TreeAutomaton) -> String {
    let new_id = renumbering(a);
    let mut states: Vec<StateEntry> = (0..a.num_states())
        .map(|q| StateEntry {
            id: new_id[q],
            label: a.label(q).to_string(),
            is_final: a.is_final(q),
        })
        .collect();
    states.sort_by_key(|s| s.id);
    let mut transitions: Vec<TransitionEntry> = a
        .transitions()
        .iter()
        .map(|t| TransitionEntry {
            target: new_id[t.target],
            symbol: t.symbol.clone(),
            sources: t.sources.iter().map(|&q| new_id[q]).collect(),
        })
        .collect();
    transitions.sort();
    serde_json::to_string_pretty(&Document {
        states,
        transitions,
    })
    .expect("automaton documents always serialize")
}

pub(super) fn from_json(text: &str) -> Result<TreeAutomaton, AutomatonError> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| AutomatonError::Document(e.to_string()))?;
    let n = doc.states.len();
    let mut labels = vec![None; n];
    let mut finals = Vec::new();
    for s in doc.states {
        let slot = labels
            .get_mut(s.id)
            .ok_or(AutomatonError::NoSuchState(s.id))?;
        if slot.replace(s.label).is_some() {
            return Err(AutomatonError::Document(format!("duplicate state id {}", s.id)));
        }
        if s.is_final {
            finals.push(s.id);
        }
    }
    let labels: Vec<String> = labels.into_iter().map(Option::unwrap).collect();
    let mut alphabet = RankedAlphabet::new();
    for t in &doc.transitions {
        match alphabet.arity(&t.symbol) {
            None => {
                alphabet.insert(t.symbol.clone(), t.sources.len());
            }
            Some(k) if k != t.sources.len() => {
                return Err(AutomatonError::ArityMismatch {
                    symbol: t.symbol.clone(),
                    expected: k,
                    found: t.sources.len(),
                })
            }
            Some(_) => {}
        }
    }
    let transitions = doc
        .transitions
        .into_iter()
        .map(|t| Transition::new(t.target, t.symbol, t.sources));
    TreeAutomaton::new(alphabet, labels, finals, transitions)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(super) fn to_dot(a: &TreeAutomaton) -> String {
    let new_id = renumbering(a);
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in a.canonical_order() {
        let shape = if a.is_final(q) { ", shape=doublecircle" } else { "" };
        writeln!(out, "  q{} [label={}{}];", new_id[q], quote(a.label(q)), shape).unwrap();
    }
    let mut rules: Vec<(usize, &str, Vec<usize>)> = a
        .transitions()
        .iter()
        .map(|t| {
            (
                new_id[t.target],
                t.symbol.as_str(),
                t.sources.iter().map(|&q| new_id[q]).collect(),
            )
        })
        .collect();
    rules.sort();
    for (i, (target, symbol, sources)) in rules.iter().enumerate() {
        match sources.as_slice() {
            [] => {
                writeln!(out, "  c{i} [shape=none, label=\"\", width=0, height=0];").unwrap();
                writeln!(out, "  c{i} -> q{target} [label={}];", quote(symbol)).unwrap();
            }
            [s] => {
                writeln!(out, "  q{s} -> q{target} [label={}];", quote(symbol)).unwrap();
            }
            _ => {
                writeln!(
                    out,
                    "  h{i} [shape=box, label={}, width=0.2, height=0.2];",
                    quote(symbol)
                )
                .unwrap();
                for (k, s) in sources.iter().enumerate() {
                    writeln!(out, "  q{s} -> h{i} [label=\"{}\", arrowhead=none];", k + 1).unwrap();
                }
                writeln!(out, "  h{i} -> q{target};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_alphabet;

    fn sample() -> TreeAutomaton {
        let sigma = parse_alphabet("a:0 f:1 g:2").unwrap();
        TreeAutomaton::new(
            sigma,
            vec!["z".into(), "y".into()],
            [0],
            [
                Transition::new(1, "a", vec![]),
                Transition::new(0, "f", vec![1]),
                Transition::new(0, "g", vec![1, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let a = sample();
        let text = a.to_json();
        let b = from_json(&text).unwrap();
        assert_eq!(b.to_json(), text);
        // "y" sorts first and takes id 0
        assert_eq!(b.label(0), "y");
        assert!(b.is_final(1));
        assert!(a.isomorphic(&b).is_some());
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(from_json("{").is_err());
        let dup = r#"{"states":[{"id":0,"label":"a","final":true},{"id":0,"label":"b","final":false}],"transitions":[]}"#;
        assert!(from_json(dup).is_err());
        let arity = r#"{"states":[{"id":0,"label":"a","final":true}],"transitions":[{"target":0,"symbol":"f","sources":[0]},{"target":0,"symbol":"f","sources":[]}]}"#;
        assert!(from_json(arity).is_err());
    }

    #[test]
    fn dot_shapes() {
        let dot = sample().to_dot();
        assert_eq!(dot.matches("shape=doublecircle").count(), 1);
        assert!(dot.contains("c0 -> q0 [label=\"a\"]"));
        assert!(dot.contains("q0 -> q1 [label=\"f\"]"));
        assert!(dot.contains("[shape=box, label=\"g\""));
        assert!(dot.contains("q0 -> h2 [label=\"1\", arrowhead=none]"));
    }
}
