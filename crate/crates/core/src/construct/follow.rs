use std::collections::BTreeMap;

use crate::automaton::{Transition, TreeAutomaton};
use crate::error::Result;
use crate::posfun::{Position, PositionFunctions, SymbolSet};
use crate::terms::{RankedAlphabet, RegExpr};

/// The follow automaton; state `i` is labelled by `sets[i]`.
#[derive(Debug, Clone)]
pub struct FollowAutomaton {
    pub linear: RegExpr,
    pub sets: Vec<SymbolSet>,
    /// Index into `sets` for each position of the linear expression.
    pub state_of: BTreeMap<Position, usize>,
    pub automaton: TreeAutomaton,
}

impl FollowAutomaton {
    pub fn build(e: &RegExpr, sigma: &RankedAlphabet) -> Result<Self> {
        let linear = e.linearize();
        if linear.is_zero() {
            return Ok(FollowAutomaton {
                linear,
                sets: Vec::new(),
                state_of: BTreeMap::new(),
                automaton: TreeAutomaton::empty(sigma.clone()),
            });
        }
        let pf = PositionFunctions::new(&linear)?;
        let mut sets: Vec<SymbolSet> = Vec::new();
        let mut id: BTreeMap<SymbolSet, usize> = BTreeMap::new();
        let mut state_of = BTreeMap::new();
        for p in pf.positions() {
            let set = pf.follow_position(&p);
            let q = *id.entry(set.clone()).or_insert_with(|| {
                sets.push(set);
                sets.len() - 1
            });
            state_of.insert(p, q);
        }
        let mut transitions = Vec::new();
        for (q, set) in sets.iter().enumerate() {
            for f in set.iter() {
                let sources = match pf.arity(f) {
                    Some(m) => (1..=m)
                        .map(|k| state_of[&Position::slot(f.clone(), k)])
                        .collect(),
                    None => Vec::new(),
                };
                transitions.push(Transition::new(q, f.name.clone(), sources));
            }
        }
        let labels = sets.iter().map(SymbolSet::to_string).collect();
        let automaton = TreeAutomaton::new(sigma.clone(), labels, [0], transitions)?;
        Ok(FollowAutomaton {
            linear,
            sets,
            state_of,
            automaton,
        })
    }
}

/// `F_E`.
pub fn follow_automaton(e: &RegExpr, sigma: &RankedAlphabet) -> Result<TreeAutomaton> {
    Ok(FollowAutomaton::build(e, sigma)?.automaton)
}
