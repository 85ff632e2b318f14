use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treeregex::automaton::{Partition, Transition, TreeAutomaton};
use treeregex::cli::{generate_expr, GeneratorConfig};
use treeregex::construct::{
    f_inverse, ContinuationAutomaton, EquationAutomaton, FollowAutomaton, PositionAutomaton,
};
use treeregex::posfun::{first, first_of_any, follow, follow_all, last, PositionFunctions};
use treeregex::relations::{rel_follow, VMerge, VMergeOptions};
use treeregex::terms::{
    enumerate_language, parse_alphabet, parse_expr, RankedAlphabet, RegExpr, Tree, TreeTable,
};

const BOUND: usize = 6;

fn sigma() -> RankedAlphabet {
    parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap()
}

fn expr(seed: u64, max_nodes: usize) -> RegExpr {
    let mut config = GeneratorConfig::new(sigma(), seed);
    config.max_ast_nodes = max_nodes;
    generate_expr(&config).unwrap()
}

fn language_on(a: &TreeAutomaton, table: &TreeTable) -> Vec<bool> {
    a.accepts_table(table).unwrap()
}

/// Every (parent, slot, child) label triple in `t`.
fn edges(t: &Tree, out: &mut Vec<(String, usize, String)>) {
    for (k, c) in t.children.iter().enumerate() {
        out.push((t.label.to_string(), k + 1, c.label.to_string()));
        edges(c, out);
    }
}

/// `a` with its states renumbered by `perm`.
fn permuted(a: &TreeAutomaton, perm: &[usize]) -> TreeAutomaton {
    let mut labels = vec![String::new(); a.num_states()];
    for (q, &p) in perm.iter().enumerate() {
        labels[p] = a.label(q).to_string();
    }
    let finals = a.finals().iter().map(|&q| perm[q]);
    let transitions = a.transitions().iter().map(|t| {
        Transition::new(
            perm[t.target],
            t.symbol.clone(),
            t.sources.iter().map(|&q| perm[q]).collect(),
        )
    });
    TreeAutomaton::new(a.alphabet().clone(), labels, finals, transitions).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trips(seed in any::<u64>()) {
        let e = expr(seed, 14);
        prop_assert_eq!(parse_expr(&e.to_string(), &sigma()).unwrap(), e);
    }

    #[test]
    fn linearization_is_linear_and_unmarks_back(seed in any::<u64>()) {
        let e = expr(seed, 14);
        let lin = e.linearize();
        prop_assert!(lin.is_linear());
        prop_assert_eq!(lin.unmark(), e.clone());
        prop_assert_eq!(lin.linearize(), lin);
    }

    #[test]
    fn position_functions_cover_the_bounded_language(seed in any::<u64>()) {
        let lin = expr(seed, 10).linearize();
        let first_set = first(&lin).unwrap();
        let last_set = last(&lin);
        let pf = PositionFunctions::new(&lin).unwrap();
        for t in enumerate_language(&lin, BOUND) {
            prop_assert!(first_set.contains(&t.label), "{} not in First", t.label);
            for leaf in t.leaves() {
                prop_assert!(last_set.contains(&leaf));
            }
            let mut es = Vec::new();
            edges(&t, &mut es);
            for (parent, k, child) in es {
                let f = pf.letters().find(|(l, _)| l.to_string() == parent).unwrap().0.clone();
                let set = pf.follow(&f, k);
                prop_assert!(set.iter().any(|l| l.to_string() == child), "{child} under {parent}^{k}");
            }
        }
    }

    #[test]
    fn general_follow_agrees_on_linear_input(seed in any::<u64>()) {
        let lin = expr(seed, 12).linearize();
        let pf = PositionFunctions::new(&lin).unwrap();
        for (f, arity) in pf.letters() {
            for k in 1..=arity {
                prop_assert_eq!(follow_all(&lin, f, k), follow(&lin, f, k).unwrap());
            }
        }
        prop_assert_eq!(first_of_any(&lin), first(&lin).unwrap());
    }

    #[test]
    fn inverse_is_nonempty_exactly_for_first_symbols(seed in any::<u64>()) {
        let e = expr(seed, 12);
        let roots = first_of_any(&e);
        for l in e.letters() {
            prop_assert_eq!(!f_inverse(&l, &e).is_empty(), roots.contains(&l), "{}", l);
        }
    }

    #[test]
    fn derived_terms_never_hold_an_inner_zero(seed in any::<u64>()) {
        let e = expr(seed, 12);
        let a = EquationAutomaton::build(&e, &sigma()).unwrap();
        prop_assert!(a.states.iter().all(|s| !s.has_inner_zero() && !s.is_zero()));
    }

    #[test]
    fn refinements_of_follow_equality_preserve_the_language(seed in any::<u64>()) {
        let e = expr(seed, 10);
        let p = PositionAutomaton::build(&e, &sigma()).unwrap();
        let coarse = rel_follow(&p.linear, &p.positions).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = p.automaton.num_states();
        // split each block at random; any refinement of a similarity is one
        let coin: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let part = Partition::from_key(n, |q| (coarse.block_of(q), coin[q]));
        prop_assert!(p.automaton.is_similarity(&part));
        let table = TreeTable::new(&sigma(), BOUND);
        let q = p.automaton.quotient(&part).unwrap();
        prop_assert_eq!(language_on(&q, &table), language_on(&p.automaton, &table));
    }

    #[test]
    fn isomorphism_survives_renumbering(seed in any::<u64>()) {
        let e = expr(seed, 12);
        let a = ContinuationAutomaton::build(&e, &sigma()).unwrap().automaton;
        let mut perm: Vec<usize> = (0..a.num_states()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let b = permuted(&a, &perm);
        let phi = a.isomorphic(&b);
        prop_assert!(phi.is_some());
        prop_assert!(a.is_isomorphism(&b, &phi.unwrap()));
        let back = b.isomorphic(&a);
        prop_assert!(back.is_some());
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let e = expr(seed, 12);
        for a in [
            PositionAutomaton::build(&e, &sigma()).unwrap().automaton,
            FollowAutomaton::build(&e, &sigma()).unwrap().automaton,
            EquationAutomaton::build(&e, &sigma()).unwrap().automaton,
        ] {
            let back = TreeAutomaton::from_json(&a.to_json()).unwrap();
            prop_assert_eq!(back.to_json(), a.to_json());
            prop_assert!(a.isomorphic(&back).is_some());
        }
    }

    #[test]
    fn merged_automaton_is_no_larger_than_follow_or_equation(seed in any::<u64>()) {
        let e = expr(seed, 14);
        let v = VMerge::build(&e, &sigma(), &VMergeOptions::default()).unwrap();
        let f = FollowAutomaton::build(&e, &sigma()).unwrap().automaton.num_states();
        let a = EquationAutomaton::build(&e, &sigma()).unwrap().automaton.num_states();
        prop_assert!(v.automaton.num_states() <= f.min(a));
        let table = TreeTable::new(&sigma(), BOUND);
        let expected: Vec<bool> = {
            let lang: BTreeSet<Tree> = enumerate_language(&e, BOUND);
            table.trees.iter().map(|t| lang.contains(t)).collect()
        };
        prop_assert_eq!(language_on(&v.automaton, &table), expected);
    }
}
