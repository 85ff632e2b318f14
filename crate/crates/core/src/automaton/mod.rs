//! Bottom-up nondeterministic finite tree automata.

mod iso;
mod partition;
mod serialize;

pub use partition::Partition;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::terms::{RankedAlphabet, Tree, TreeTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("symbol `{0}` is not in the automaton's alphabet")]
    UnknownSymbol(String),
    #[error("symbol `{symbol}` has arity {expected} but was used with {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("state {0} does not exist")]
    NoSuchState(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid automaton document: {0}")]
    Document(String),
}

/// A rule `symbol(sources...) -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub target: usize,
    pub symbol: String,
    pub sources: Vec<usize>,
}

impl Transition {
    pub fn new(target: usize, symbol: impl Into<String>, sources: Vec<usize>) -> Self {
        Transition {
            target,
            symbol: symbol.into(),
            sources,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAutomaton {
    alphabet: RankedAlphabet,
    labels: Vec<String>,
    finals: BTreeSet<usize>,
    transitions: Vec<Transition>,
    by_symbol: BTreeMap<String, Vec<usize>>,
}

impl TreeAutomaton {
    /// Checks every invariant; duplicate transitions are collapsed.
    pub fn new(
        alphabet: RankedAlphabet,
        labels: Vec<String>,
        finals: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, AutomatonError> {
        let n = labels.len();
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if let Some(&q) = finals.iter().find(|&&q| q >= n) {
            return Err(AutomatonError::NoSuchState(q));
        }
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        for t in &transitions {
            let expected = alphabet
                .arity(&t.symbol)
                .ok_or_else(|| AutomatonError::UnknownSymbol(t.symbol.clone()))?;
            if expected != t.sources.len() {
                return Err(AutomatonError::ArityMismatch {
                    symbol: t.symbol.clone(),
                    expected,
                    found: t.sources.len(),
                });
            }
            if let Some(&q) = std::iter::once(&t.target)
                .chain(&t.sources)
                .find(|&&q| q >= n)
            {
                return Err(AutomatonError::NoSuchState(q));
            }
        }
        let transitions: Vec<Transition> = transitions.into_iter().collect();
        let mut by_symbol: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, t) in transitions.iter().enumerate() {
            by_symbol.entry(t.symbol.clone()).or_default().push(i);
        }
        Ok(TreeAutomaton {
            alphabet,
            labels,
            finals,
            transitions,
            by_symbol,
        })
    }

    /// The automaton with no states.
    pub fn empty(alphabet: RankedAlphabet) -> Self {
        TreeAutomaton {
            alphabet,
            labels: Vec::new(),
            finals: BTreeSet::new(),
            transitions: Vec::new(),
            by_symbol: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, q: usize) -> &str {
        &self.labels[q]
    }

    pub fn state_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    /// Sorted by `(target, symbol, sources)`.
    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn has_transition(&self, target: usize, symbol: &str, sources: &[usize]) -> bool {
        self.by_symbol.get(symbol).is_some_and(|ids| {
            ids.iter().any(|&i| {
                let t = &self.transitions[i];
                t.target == target && t.sources == sources
            })
        })
    }

    /// `Δ(Q₁, …, Q_n, f)`: every target reachable from some choice of
    /// source states, one from each set.
    pub fn delta(
        &self,
        symbol: &str,
        child_sets: &[BTreeSet<usize>],
    ) -> Result<BTreeSet<usize>, AutomatonError> {
        let arity = self
            .alphabet
            .arity(symbol)
            .ok_or_else(|| AutomatonError::UnknownSymbol(symbol.to_string()))?;
        if arity != child_sets.len() {
            return Err(AutomatonError::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: child_sets.len(),
            });
        }
        let mut out = BTreeSet::new();
        for &i in self.by_symbol.get(symbol).map(Vec::as_slice).unwrap_or(&[]) {
            let t = &self.transitions[i];
            if t.sources.iter().zip(child_sets).all(|(q, set)| set.contains(q)) {
                out.insert(t.target);
            }
        }
        Ok(out)
    }

    /// `Δ*(t)`.
    pub fn run(&self, t: &Tree) -> Result<BTreeSet<usize>, AutomatonError> {
        let children = t
            .children
            .iter()
            .map(|c| self.run(c))
            .collect::<Result<Vec<_>, _>>()?;
        self.delta(&t.label.to_string(), &children)
    }

    pub fn accepts(&self, t: &Tree) -> Result<bool, AutomatonError> {
        Ok(self.run(t)?.iter().any(|q| self.finals.contains(q)))
    }

    /// Acceptance of every tree of `table`, evaluated bottom-up over the
    /// shared table so each subtree is run once.
    pub fn accepts_table(&self, table: &TreeTable) -> Result<Vec<bool>, AutomatonError> {
        let words = self.num_states().div_ceil(64).max(1);
        let mut runs = vec![0u64; table.len() * words];
        let mut verdicts = Vec::with_capacity(table.len());
        let bit = |runs: &[u64], tree: usize, q: usize| runs[tree * words + q / 64] >> (q % 64) & 1 == 1;
        for (i, (label, children)) in table.entries.iter().enumerate() {
            let symbol = label.to_string();
            let arity = self
                .alphabet
                .arity(&symbol)
                .ok_or_else(|| AutomatonError::UnknownSymbol(symbol.clone()))?;
            if arity != children.len() {
                return Err(AutomatonError::ArityMismatch {
                    symbol,
                    expected: arity,
                    found: children.len(),
                });
            }
            for &ti in self.by_symbol.get(&symbol).map(Vec::as_slice).unwrap_or(&[]) {
                let t = &self.transitions[ti];
                if t.sources.iter().zip(children).all(|(&q, &c)| bit(&runs, c, q)) {
                    runs[i * words + t.target / 64] |= 1 << (t.target % 64);
                }
            }
            verdicts.push(self.finals.iter().any(|&q| bit(&runs, i, q)));
        }
        Ok(verdicts)
    }

    /// `A/∼`: one state per block; a block transition exists iff some
    /// member transition does.
    pub fn quotient(&self, p: &Partition) -> Result<TreeAutomaton, AutomatonError> {
        if p.num_states() != self.num_states() {
            return Err(AutomatonError::InvalidPartition(format!(
                "partition covers {} states, automaton has {}",
                p.num_states(),
                self.num_states()
            )));
        }
        let labels = p
            .blocks()
            .iter()
            .map(|b| match b.as_slice() {
                [q] => self.labels[*q].clone(),
                _ => {
                    let members: Vec<&str> = b.iter().map(|&q| self.labels[q].as_str()).collect();
                    format!("[{}]", members.join(" | "))
                }
            })
            .collect();
        let finals = self.finals.iter().map(|&q| p.block_of(q));
        let transitions = self.transitions.iter().map(|t| Transition {
            target: p.block_of(t.target),
            symbol: t.symbol.clone(),
            sources: t.sources.iter().map(|&q| p.block_of(q)).collect(),
        });
        TreeAutomaton::new(self.alphabet.clone(), labels, finals, transitions)
    }

    /// Whether all states of each block have exactly the same incoming
    /// rules `(f, q₁…q_n)`.
    pub fn is_similarity(&self, p: &Partition) -> bool {
        if p.num_states() != self.num_states() {
            return false;
        }
        let incoming = self.incoming();
        p.blocks()
            .iter()
            .all(|b| b.iter().all(|&q| incoming[q] == incoming[b[0]]))
    }

    fn incoming(&self) -> Vec<BTreeSet<(&str, &[usize])>> {
        let mut incoming = vec![BTreeSet::new(); self.num_states()];
        for t in &self.transitions {
            incoming[t.target].insert((t.symbol.as_str(), t.sources.as_slice()));
        }
        incoming
    }

    /// The automaton with the given states and every rule touching them
    /// removed; surviving states keep their relative order.
    pub fn without_states(&self, removed: &BTreeSet<usize>) -> TreeAutomaton {
        let mut renumber = vec![None; self.num_states()];
        let mut labels = Vec::new();
        for (q, slot) in renumber.iter_mut().enumerate() {
            if !removed.contains(&q) {
                *slot = Some(labels.len());
                labels.push(self.labels[q].clone());
            }
        }
        let finals = self.finals.iter().filter_map(|&q| renumber[q]);
        let transitions = self.transitions.iter().filter_map(|t| {
            Some(Transition {
                target: renumber[t.target]?,
                symbol: t.symbol.clone(),
                sources: t
                    .sources
                    .iter()
                    .map(|&q| renumber[q])
                    .collect::<Option<Vec<_>>>()?,
            })
        });
        TreeAutomaton::new(self.alphabet.clone(), labels, finals, transitions)
            .expect("removing states preserves validity")
    }

    /// Replaces every symbol through `rename`, which must preserve arity
    /// with respect to `alphabet`.
    pub fn relabel_symbols(
        &self,
        alphabet: RankedAlphabet,
        rename: impl Fn(&str) -> String,
    ) -> Result<TreeAutomaton, AutomatonError> {
        let transitions = self.transitions.iter().map(|t| Transition {
            target: t.target,
            symbol: rename(&t.symbol),
            sources: t.sources.clone(),
        });
        TreeAutomaton::new(alphabet, self.labels.clone(), self.finals.iter().copied(), transitions)
    }

    /// A state bijection `φ` (indexed by states of `self`) preserving
    /// finals and rules in both directions, if one exists.
    pub fn isomorphic(&self, other: &TreeAutomaton) -> Option<Vec<usize>> {
        iso::find(self, other)
    }

    /// Whether `phi` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &TreeAutomaton, phi: &[usize]) -> bool {
        if phi.len() != self.num_states()
            || self.num_states() != other.num_states()
            || self.num_transitions() != other.num_transitions()
        {
            return false;
        }
        let mut seen = vec![false; other.num_states()];
        for &q in phi {
            if q >= seen.len() || std::mem::replace(&mut seen[q], true) {
                return false;
            }
        }
        let finals_map: BTreeSet<usize> = self.finals.iter().map(|&q| phi[q]).collect();
        finals_map == other.finals
            && self.transitions.iter().all(|t| {
                let sources: Vec<usize> = t.sources.iter().map(|&q| phi[q]).collect();
                other.has_transition(phi[t.target], &t.symbol, &sources)
            })
    }

    pub fn to_json(&self) -> String {
        serialize::to_json(self)
    }

    pub fn to_dot(&self) -> String {
        serialize::to_dot(self)
    }

    /// Parses the JSON form; the alphabet is inferred from the rules.
    pub fn from_json(text: &str) -> Result<TreeAutomaton, AutomatonError> {
        serialize::from_json(text)
    }

    /// State indices ordered by label, ties broken by index.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.num_states()).collect();
        order.sort_by(|&p, &q| self.labels[p].cmp(&self.labels[q]).then(p.cmp(&q)));
        order
    }

    /// A one-line `|Q|` / `|Δ|` summary.
    pub fn summary(&self) -> String {
        format!(
            "{} states, {} transitions, {} final",
            self.num_states(),
            self.num_transitions(),
            self.finals.len()
        )
    }
}
