use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::automaton::{Transition, TreeAutomaton};
use crate::error::{Error, Result};
use crate::terms::{contains_constant, Letter, RankedAlphabet, RegExpr};

/// Derivation closure size beyond which [`equation_automaton`] gives up.
pub const DEFAULT_STATE_LIMIT: usize = 10_000;

/// One component per argument of the symbol it was derived by.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExprTuple(pub Vec<RegExpr>);

impl ExprTuple {
    /// Componentwise `· .[c] rhs`, reducing components that are `0`.
    fn product(&self, c: &str, rhs: &RegExpr) -> ExprTuple {
        ExprTuple(
            self.0
                .iter()
                .map(|x| RegExpr::product(x.clone(), c, rhs.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for ExprTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// `f⁻¹(e)`.
pub fn f_inverse(f: &Letter, e: &RegExpr) -> BTreeSet<ExprTuple> {
    match e {
        RegExpr::Zero | RegExpr::Const(_) => BTreeSet::new(),
        RegExpr::Apply { symbol, args } => {
            if symbol == f {
                BTreeSet::from([ExprTuple(args.clone())])
            } else {
                BTreeSet::new()
            }
        }
        RegExpr::Sum(l, r) => {
            let mut s = f_inverse(f, l);
            s.extend(f_inverse(f, r));
            s
        }
        RegExpr::Product(l, c, r) => {
            let mut s: BTreeSet<ExprTuple> =
                f_inverse(f, l).iter().map(|t| t.product(c, r)).collect();
            if contains_constant(l, c) {
                s.extend(f_inverse(f, r));
            }
            s
        }
        RegExpr::Closure(x, c) => f_inverse(f, x).iter().map(|t| t.product(c, e)).collect(),
    }
}

/// `f⁻¹(e)` for every symbol `f` at once, in one traversal of `e`.
pub fn inverses(e: &RegExpr) -> BTreeMap<Letter, BTreeSet<ExprTuple>> {
    // products are collected as references and applied once per tuple
    type Pending<'a> = Vec<(&'a str, &'a RegExpr)>;
    fn go<'a>(
        e: &'a RegExpr,
        pending: &mut Pending<'a>,
        out: &mut BTreeMap<Letter, BTreeSet<ExprTuple>>,
    ) {
        match e {
            RegExpr::Zero | RegExpr::Const(_) => {}
            RegExpr::Apply { symbol, args } => {
                let tuple = args
                    .iter()
                    .map(|x| {
                        pending
                            .iter()
                            .rev()
                            .fold(x.clone(), |acc, (c, rhs)| RegExpr::product(acc, *c, (*rhs).clone()))
                    })
                    .collect();
                out.entry(symbol.clone()).or_default().insert(ExprTuple(tuple));
            }
            RegExpr::Sum(l, r) => {
                go(l, pending, out);
                go(r, pending, out);
            }
            RegExpr::Product(l, c, r) => {
                pending.push((c, r));
                go(l, pending, out);
                pending.pop();
                if contains_constant(l, c) {
                    go(r, pending, out);
                }
            }
            RegExpr::Closure(x, c) => {
                pending.push((c, e));
                go(x, pending, out);
                pending.pop();
            }
        }
    }
    let mut out = BTreeMap::new();
    go(e, &mut Vec::new(), &mut out);
    out
}

/// `∂_w(e)` for a word `w` of non-constant symbols.
pub fn partial_derivative(e: &RegExpr, w: &[Letter]) -> BTreeSet<RegExpr> {
    let mut current = BTreeSet::from([e.clone()]);
    for f in w {
        let next: BTreeSet<RegExpr> = current
            .iter()
            .flat_map(|x| f_inverse(f, x))
            .flat_map(|t| t.0)
            .collect();
        current = if next.is_empty() {
            BTreeSet::from([RegExpr::Zero])
        } else {
            next
        };
    }
    current
}

/// The equation automaton; state `i` is the derived term `states[i]`.
#[derive(Debug, Clone)]
pub struct EquationAutomaton {
    pub states: Vec<RegExpr>,
    pub automaton: TreeAutomaton,
}

impl EquationAutomaton {
    pub fn build(e: &RegExpr, sigma: &RankedAlphabet) -> Result<Self> {
        Self::build_with_limit(e, sigma, DEFAULT_STATE_LIMIT)
    }

    pub fn build_with_limit(e: &RegExpr, sigma: &RankedAlphabet, limit: usize) -> Result<Self> {
        if e.is_zero() {
            return Ok(EquationAutomaton {
                states: Vec::new(),
                automaton: TreeAutomaton::empty(sigma.clone()),
            });
        }
        let mut states = vec![e.clone()];
        let mut id = BTreeMap::from([(e.clone(), 0)]);
        let mut queue = VecDeque::from([0]);
        let mut transitions = Vec::new();
        while let Some(q) = queue.pop_front() {
            let current = states[q].clone();
            for c in current.constants_in_language() {
                transitions.push(Transition::new(q, c, Vec::new()));
            }
            for (f, tuples) in inverses(&current) {
                for tuple in tuples {
                    let mut sources = Vec::with_capacity(tuple.0.len());
                    for g in tuple.0 {
                        let next = states.len();
                        let s = *id.entry(g.clone()).or_insert(next);
                        if s == next {
                            if next >= limit {
                                return Err(Error::Watchdog { limit });
                            }
                            states.push(g);
                            queue.push_back(s);
                        }
                        sources.push(s);
                    }
                    transitions.push(Transition::new(q, f.to_string(), sources));
                }
            }
        }
        let labels = states.iter().map(RegExpr::to_string).collect();
        let automaton = TreeAutomaton::new(sigma.clone(), labels, [0], transitions)?;
        Ok(EquationAutomaton { states, automaton })
    }
}

/// `A_E`.
pub fn equation_automaton(e: &RegExpr, sigma: &RankedAlphabet) -> Result<TreeAutomaton> {
    Ok(EquationAutomaton::build(e, sigma)?.automaton)
}
