//! The four automaton constructions.
//!
//! The position-based constructions (k-position, follow, k-C-continuation)
//! work on the linearized expression and relabel every rule through the
//! unmarking map at the end. The equation automaton works on the expression
//! itself. Every construction applied to the expression `0` yields the
//! automaton with no states.

mod continuation;
mod equation;
mod follow;
mod position;

pub use continuation::{
    c_continuation, k_c_continuation_automaton, ContinuationAutomaton, ContinuationState,
};
pub use equation::{
    equation_automaton, f_inverse, inverses, partial_derivative, EquationAutomaton, ExprTuple,
    DEFAULT_STATE_LIMIT,
};
pub use follow::{follow_automaton, FollowAutomaton};
pub use position::{k_position_automaton, PositionAutomaton};

use std::collections::BTreeMap;

use crate::automaton::TreeAutomaton;
use crate::error::Result;
use crate::posfun::{Position, PositionFunctions};
use crate::terms::{Letter, RankedAlphabet};

/// The alphabet of a marked automaton: every constant of `sigma` plus each
/// marked letter of the expression.
fn marked_alphabet(pf: &PositionFunctions<'_>, sigma: &RankedAlphabet) -> RankedAlphabet {
    let mut out = RankedAlphabet::new();
    for c in sigma.constants() {
        out.insert(c, 0);
    }
    for (letter, arity) in pf.letters() {
        out.insert(letter.to_string(), arity);
    }
    out
}

/// Applies `h` to every rule; states keep their marked labels.
fn unmark_symbols(marked: &TreeAutomaton, sigma: &RankedAlphabet) -> Result<TreeAutomaton> {
    Ok(marked.relabel_symbols(sigma.clone(), |s| match s.split_once('@') {
        Some((name, _)) => name.to_string(),
        None => s.to_string(),
    })?)
}

/// Position-indexed sources `g^1 … g^m` for a marked letter `g` of arity `m`.
fn slot_states(index: &BTreeMap<Position, usize>, g: &Letter, arity: usize) -> Vec<usize> {
    (1..=arity).map(|k| index[&Position::slot(g.clone(), k)]).collect()
}
