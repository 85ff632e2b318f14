//! Equivalences between construction states and the quotients they induce.
//!
//! * `∼_F` groups positions with equal `Follow` sets; `P/∼_F` is the follow
//!   automaton.
//! * `∼_e` groups continuation states with equal unmarked continuations;
//!   `C/∼_e` is the equation automaton.
//! * `≡` is `∼_F` carried over to continuation states; `C/≡` is again the
//!   follow automaton.
//! * `≡_V` joins `≡` and `∼_e`, giving an automaton no larger than either.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::automaton::{Partition, TreeAutomaton};
use crate::construct::{ContinuationAutomaton, ContinuationState, PositionAutomaton};
use crate::error::{Error, Result};
use crate::posfun::{follow_all, Position, PositionFunctions, SymbolSet};
use crate::terms::{RankedAlphabet, RegExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    FollowEquality,
    HImageEquality,
    Combined,
    VJoin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateDomain {
    Position,
    Continuation,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::FollowEquality => "follow-equality",
            RelationKind::HImageEquality => "h-image-equality",
            RelationKind::Combined => "combined",
            RelationKind::VJoin => "v-join",
        })
    }
}

impl fmt::Display for StateDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateDomain::Position => "k-position",
            StateDomain::Continuation => "k-C-continuation",
        })
    }
}

/// A relation together with the construction whose states it partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationSpec {
    kind: RelationKind,
    domain: StateDomain,
}

impl RelationSpec {
    pub fn new(kind: RelationKind, domain: StateDomain) -> Result<Self> {
        let allowed = match kind {
            RelationKind::FollowEquality => true,
            _ => domain == StateDomain::Continuation,
        };
        if !allowed {
            return Err(Error::InvalidRelation {
                kind: kind.to_string(),
                domain: domain.to_string(),
            });
        }
        Ok(RelationSpec { kind, domain })
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn domain(&self) -> StateDomain {
        self.domain
    }

    /// Builds the domain automaton of `e` and partitions its states.
    pub fn apply(&self, e: &RegExpr, sigma: &RankedAlphabet) -> Result<(TreeAutomaton, Partition)> {
        if self.domain == StateDomain::Position {
            let p = PositionAutomaton::build(e, sigma)?;
            let part = rel_follow(&p.linear, &p.positions)?;
            return Ok((p.automaton, part));
        }
        let c = ContinuationAutomaton::build(e, sigma)?;
        let part = match self.kind {
            RelationKind::FollowEquality | RelationKind::Combined => rel_combined(&c)?,
            RelationKind::HImageEquality => rel_e(&c.states),
            RelationKind::VJoin => v_join(&c, &VMergeOptions::default())?.1,
        };
        Ok((c.automaton, part))
    }
}

/// `∼_F` over `positions` of the linear expression; `ε¹` uses `First`.
pub fn rel_follow(linear: &RegExpr, positions: &[Position]) -> Result<Partition> {
    if positions.is_empty() {
        return Ok(Partition::discrete(0));
    }
    let pf = PositionFunctions::new(linear)?;
    let sets: Vec<SymbolSet> = positions.iter().map(|p| pf.follow_position(p)).collect();
    Ok(Partition::from_key(sets.len(), |q| sets[q].clone()))
}

/// `∼_e`: equal continuations after unmarking.
pub fn rel_e(states: &[ContinuationState]) -> Partition {
    let images: Vec<RegExpr> = states.iter().map(|s| s.continuation.unmark()).collect();
    Partition::from_key(images.len(), |q| images[q].clone())
}

/// `≡`: `∼_F` transported to continuation states.
pub fn rel_combined(c: &ContinuationAutomaton) -> Result<Partition> {
    let positions: Vec<Position> = c.states.iter().map(|s| s.position.clone()).collect();
    rel_follow(&c.linear, &positions)
}

/// `P/∼_F`.
pub fn follow_quotient(p: &PositionAutomaton) -> Result<TreeAutomaton> {
    Ok(p.automaton.quotient(&rel_follow(&p.linear, &p.positions)?)?)
}

/// `C/≡`.
pub fn combined_quotient(c: &ContinuationAutomaton) -> Result<TreeAutomaton> {
    Ok(c.automaton.quotient(&rel_combined(c)?)?)
}

/// `C/∼_e` without the block of positions whose continuation is `0`.
///
/// Such positions sit in subexpressions that contribute no tree, their
/// states have no incoming rules, and the equation automaton has no
/// counterpart for them.
pub fn equation_quotient(c: &ContinuationAutomaton) -> Result<TreeAutomaton> {
    let part = rel_e(&c.states);
    let q = c.automaton.quotient(&part)?;
    Ok(q.without_states(&zero_blocks(c, &part)))
}

fn zero_blocks(c: &ContinuationAutomaton, part: &Partition) -> BTreeSet<usize> {
    part.blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().all(|&q| c.states[q].continuation.is_zero()))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct VMergeOptions {
    /// Group stage-one states by `Follow(C_{f^k}(ē), f, k)` instead of
    /// `Follow(ē, f, k)`.
    pub continuation_follow: bool,
}

/// The stage-one partition and the joined partition of `≡_V`.
pub fn v_join(c: &ContinuationAutomaton, options: &VMergeOptions) -> Result<(Partition, Partition)> {
    let n = c.states.len();
    let stage1 = if options.continuation_follow {
        let pf = PositionFunctions::new(&c.linear)?;
        let keys: Vec<SymbolSet> = c
            .states
            .iter()
            .map(|s| match &s.position {
                Position::Root => pf.first().clone(),
                Position::Slot { symbol, slot } => follow_all(&s.continuation, symbol, *slot),
            })
            .collect();
        Partition::from_key(n, |q| keys[q].clone())
    } else {
        rel_combined(c)?
    };

    // stage two: fuse stage-one blocks that retain a common unmarked continuation
    let mut parent: Vec<usize> = (0..stage1.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: BTreeMap<RegExpr, usize> = BTreeMap::new();
    for (b, block) in stage1.blocks().iter().enumerate() {
        for &q in block {
            let image = c.states[q].continuation.unmark();
            match owner.get(&image) {
                Some(&other) => {
                    let (x, y) = (root(&mut parent, b), root(&mut parent, other));
                    parent[x] = y;
                }
                None => {
                    owner.insert(image, b);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..stage1.len()).map(|b| root(&mut parent, b)).collect();
    let joined = Partition::from_key(n, |q| roots[stage1.block_of(q)]);
    Ok((stage1, joined))
}

/// The `≡_V` automaton with its intermediate stages.
#[derive(Debug, Clone)]
pub struct VMerge {
    pub continuation: ContinuationAutomaton,
    pub stage1: Partition,
    /// `C/stage1`.
    pub stage1_automaton: TreeAutomaton,
    pub partition: Partition,
    pub automaton: TreeAutomaton,
}

impl VMerge {
    pub fn build(e: &RegExpr, sigma: &RankedAlphabet, options: &VMergeOptions) -> Result<Self> {
        let continuation = ContinuationAutomaton::build(e, sigma)?;
        let (stage1, partition) = v_join(&continuation, options)?;
        let stage1_automaton = continuation.automaton.quotient(&stage1)?;
        let automaton = continuation
            .automaton
            .quotient(&partition)?
            .without_states(&zero_blocks(&continuation, &partition));
        Ok(VMerge {
            continuation,
            stage1,
            stage1_automaton,
            partition,
            automaton,
        })
    }
}

/// The `≡_V` automaton of `e`.
pub fn v_merge_automaton(e: &RegExpr, sigma: &RankedAlphabet) -> Result<TreeAutomaton> {
    Ok(VMerge::build(e, sigma, &VMergeOptions::default())?.automaton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{equation_automaton, follow_automaton};
    use crate::terms::{parse_alphabet, parse_expr};

    fn sigma() -> RankedAlphabet {
        parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap()
    }

    fn example() -> RegExpr {
        parse_expr(
            "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
            &sigma(),
        )
        .unwrap()
    }

    fn block_labels(p: &Partition, labels: &[String]) -> Vec<Vec<String>> {
        p.blocks()
            .iter()
            .map(|b| b.iter().map(|&q| labels[q].split(':').next().unwrap().to_string()).collect())
            .collect()
    }

    #[test]
    fn follow_relation_on_running_example() {
        let p = PositionAutomaton::build(&example(), &sigma()).unwrap();
        let part = rel_follow(&p.linear, &p.positions).unwrap();
        assert_eq!(
            block_labels(&part, p.automaton.labels()),
            vec![
                vec!["eps^1"],
                vec!["f^1@1", "h^1@2"],
                vec!["g^1@3"],
                vec!["g^2@3"],
                vec!["f^1@4", "h^1@5"],
            ]
        );
        assert!(p.automaton.is_similarity(&part));
        let q = follow_quotient(&p).unwrap();
        let f = follow_automaton(&example(), &sigma()).unwrap();
        assert!(q.isomorphic(&f).is_some());
    }

    #[test]
    fn h_image_relation_on_running_example() {
        let c = ContinuationAutomaton::build(&example(), &sigma()).unwrap();
        let part = rel_e(&c.states);
        assert_eq!(
            block_labels(&part, c.automaton.labels()),
            vec![
                vec!["eps^1"],
                vec!["f^1@1", "f^1@4"],
                vec!["h^1@2", "h^1@5"],
                vec!["g^1@3"],
                vec!["g^2@3"],
            ]
        );
        let q = equation_quotient(&c).unwrap();
        assert_eq!((q.num_states(), q.num_transitions()), (5, 15));
        let a = equation_automaton(&example(), &sigma()).unwrap();
        assert!(q.isomorphic(&a).is_some());
        assert!(combined_quotient(&c)
            .unwrap()
            .isomorphic(&follow_automaton(&example(), &sigma()).unwrap())
            .is_some());
    }

    #[test]
    fn v_merge_on_running_example() {
        let v = VMerge::build(&example(), &sigma(), &VMergeOptions::default()).unwrap();
        assert_eq!(v.stage1.len(), 5);
        assert_eq!(v.stage1_automaton.num_states(), 5);
        assert_eq!(v.partition.len(), 4);
        assert_eq!(v.automaton.num_states(), 4);
        assert_eq!(
            block_labels(&v.partition, v.continuation.automaton.labels()),
            vec![
                vec!["eps^1"],
                vec!["f^1@1", "h^1@2", "f^1@4", "h^1@5"],
                vec!["g^1@3"],
                vec!["g^2@3"],
            ]
        );
    }

    #[test]
    fn continuation_follow_reading_merges_argument_slots() {
        // Follow(a, g@1, 1) and Follow(b, g@1, 2) are both empty, so the two
        // slots of g fall into one block and g(b,a) becomes accepted
        let s = sigma();
        let e = parse_expr("g(a,b)", &s).unwrap();
        let alt = VMerge::build(&e, &s, &VMergeOptions { continuation_follow: true }).unwrap();
        let t = crate::terms::parse_tree("g(b,a)", &s).unwrap();
        assert!(alt.automaton.accepts(&t).unwrap());
        assert!(!v_merge_automaton(&e, &s).unwrap().accepts(&t).unwrap());
    }

    #[test]
    fn relation_domains_are_checked() {
        assert!(RelationSpec::new(RelationKind::FollowEquality, StateDomain::Position).is_ok());
        assert!(RelationSpec::new(RelationKind::HImageEquality, StateDomain::Position).is_err());
        assert!(RelationSpec::new(RelationKind::VJoin, StateDomain::Position).is_err());
        let spec = RelationSpec::new(RelationKind::VJoin, StateDomain::Continuation).unwrap();
        let (a, p) = spec.apply(&example(), &sigma()).unwrap();
        assert_eq!((a.num_states(), p.len()), (7, 4));
    }

    #[test]
    fn single_constant_relations() {
        let s = sigma();
        let e = RegExpr::constant("a");
        let p = PositionAutomaton::build(&e, &s).unwrap();
        assert_eq!(rel_follow(&p.linear, &p.positions).unwrap().len(), 1);
        assert_eq!(v_merge_automaton(&e, &s).unwrap().num_states(), 1);
    }
}
