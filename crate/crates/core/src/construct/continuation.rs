use std::collections::BTreeMap;

use super::equation::{f_inverse, ExprTuple};
use super::{marked_alphabet, slot_states, unmark_symbols};
use crate::automaton::{Transition, TreeAutomaton};
use crate::error::{Error, Result};
use crate::posfun::{last, Position, PositionFunctions};
use crate::terms::{Letter, RankedAlphabet, RegExpr};

/// `C_{f^k}(e)` for a linear `e`; `C_{ε¹}(e) = e`.
pub fn c_continuation(e: &RegExpr, pos: &Position) -> Result<RegExpr> {
    match pos {
        Position::Root => Ok(e.clone()),
        Position::Slot { symbol, slot } => {
            if !e.is_linear() {
                return Err(Error::NotLinear(e.to_string()));
            }
            let mut arity = None;
            e.visit_applies(&mut |g, args| {
                if g == symbol {
                    arity = Some(args.len());
                }
            });
            match arity {
                Some(m) if (1..=m).contains(slot) => Ok(continuation(e, symbol, *slot)),
                _ => Err(Error::PositionAbsent {
                    position: pos.to_string(),
                    expr: e.to_string(),
                }),
            }
        }
    }
}

fn continuation(e: &RegExpr, f: &Letter, k: usize) -> RegExpr {
    match e {
        RegExpr::Zero | RegExpr::Const(_) => RegExpr::Zero,
        RegExpr::Apply { symbol, args } => {
            if symbol == f {
                return args[k - 1].clone();
            }
            args.iter()
                .find(|a| a.mentions(f))
                .map_or(RegExpr::Zero, |a| continuation(a, f, k))
        }
        RegExpr::Sum(l, r) => {
            if l.mentions(f) {
                continuation(l, f, k)
            } else {
                continuation(r, f, k)
            }
        }
        RegExpr::Product(l, c, r) => {
            if l.mentions(f) {
                RegExpr::product(continuation(l, f, k), c.clone(), (**r).clone())
            } else if r.mentions(f) && last(l).contains_constant(c) {
                continuation(r, f, k)
            } else {
                RegExpr::Zero
            }
        }
        RegExpr::Closure(x, c) => RegExpr::product(continuation(x, f, k), c.clone(), e.clone()),
    }
}

/// A state `(x, C_x(ē))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuationState {
    pub position: Position,
    pub continuation: RegExpr,
}

impl std::fmt::Display for ContinuationState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.position, self.continuation)
    }
}

/// The k-C-continuation automaton; state `i` is `states[i]`, in the same
/// position order as [`super::PositionAutomaton`].
#[derive(Debug, Clone)]
pub struct ContinuationAutomaton {
    pub linear: RegExpr,
    pub states: Vec<ContinuationState>,
    pub marked: TreeAutomaton,
    pub automaton: TreeAutomaton,
}

impl ContinuationAutomaton {
    /// Rules come from tuple membership in `g⁻¹(C_x)`; each decision is
    /// checked against `g ∈ Follow(ē, x)` and a mismatch is an error.
    pub fn build(e: &RegExpr, sigma: &RankedAlphabet) -> Result<Self> {
        let linear = e.linearize();
        if linear.is_zero() {
            return Ok(ContinuationAutomaton {
                linear,
                states: Vec::new(),
                marked: TreeAutomaton::empty(RankedAlphabet::new()),
                automaton: TreeAutomaton::empty(sigma.clone()),
            });
        }
        let pf = PositionFunctions::new(&linear)?;
        let positions = pf.positions();
        let index: BTreeMap<Position, usize> =
            positions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let states = positions
            .iter()
            .map(|p| {
                Ok(ContinuationState {
                    position: p.clone(),
                    continuation: c_continuation(&linear, p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut transitions = Vec::new();
        for (x, state) in states.iter().enumerate() {
            let follow = pf.follow_position(&state.position);
            for (g, m) in pf.letters() {
                let tuple = ExprTuple(
                    (1..=m)
                        .map(|k| states[index[&Position::slot(g.clone(), k)]].continuation.clone())
                        .collect(),
                );
                let inverse = f_inverse(g, &state.continuation);
                let member = inverse.contains(&tuple);
                if member != follow.contains(g) {
                    return Err(Error::Inconsistent(format!(
                        "rule {g}{} into state {state}: tuple membership says {member}, follow set {follow} says {}",
                        tuple,
                        !member
                    )));
                }
                if member {
                    transitions.push(Transition::new(x, g.to_string(), slot_states(&index, g, m)));
                }
            }
            let constants = state.continuation.constants_in_language();
            for c in &constants {
                if !follow.contains_constant(c) {
                    return Err(Error::Inconsistent(format!(
                        "constant {c} is in the language of {state} but not in its follow set {follow}"
                    )));
                }
                transitions.push(Transition::new(x, c.clone(), Vec::new()));
            }
            let stray = follow
                .iter()
                .find(|l| l.mark.is_none() && !constants.contains(&l.name))
                .cloned();
            if let Some(c) = stray {
                return Err(Error::Inconsistent(format!(
                    "constant {c} is in the follow set of {state} but not in its language"
                )));
            }
        }
        let labels = states.iter().map(ContinuationState::to_string).collect();
        let marked = TreeAutomaton::new(marked_alphabet(&pf, sigma), labels, [0], transitions)?;
        let automaton = unmark_symbols(&marked, sigma)?;
        Ok(ContinuationAutomaton {
            linear,
            states,
            marked,
            automaton,
        })
    }
}

/// `C_E`.
pub fn k_c_continuation_automaton(e: &RegExpr, sigma: &RankedAlphabet) -> Result<TreeAutomaton> {
    Ok(ContinuationAutomaton::build(e, sigma)?.automaton)
}
