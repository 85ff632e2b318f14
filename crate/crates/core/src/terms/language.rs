//! Bounded enumeration of tree languages.
//!
//! `enumerate_language` transcribes the set semantics of expressions
//! directly (union, tree substitution, iterated c-product) and serves as the
//! oracle every automaton construction is checked against.

use std::collections::BTreeSet;

use super::{Letter, RankedAlphabet, RegExpr, Tree};

/// All trees of `⟦e⟧` with at most `max_nodes` nodes.
pub fn enumerate_language(e: &RegExpr, max_nodes: usize) -> BTreeSet<Tree> {
    if max_nodes == 0 {
        return BTreeSet::new();
    }
    lang(e, max_nodes)
}

fn lang(e: &RegExpr, n: usize) -> BTreeSet<Tree> {
    match e {
        RegExpr::Zero => BTreeSet::new(),
        RegExpr::Const(a) => BTreeSet::from([Tree::leaf(Letter::plain(a.clone()))]),
        RegExpr::Apply { symbol, args } => {
            let m = args.len();
            if n < 1 + m {
                return BTreeSet::new();
            }
            let per_child = n - m;
            let options: Vec<Vec<Tree>> = args
                .iter()
                .map(|a| lang(a, per_child).into_iter().collect())
                .collect();
            combine(&options, n - 1)
                .into_iter()
                .map(|children| Tree {
                    label: symbol.clone(),
                    children,
                })
                .collect()
        }
        RegExpr::Sum(l, r) => {
            let mut s = lang(l, n);
            s.extend(lang(r, n));
            s
        }
        RegExpr::Product(l, c, r) => {
            let left = lang(l, n);
            let right: Vec<Tree> = lang(r, n).into_iter().collect();
            c_product(&left, c, &right, n)
        }
        RegExpr::Closure(x, c) => {
            let base = lang(x, n);
            let mut acc = BTreeSet::from([Tree::leaf(Letter::plain(c.clone()))]);
            loop {
                let current: Vec<Tree> = acc.iter().cloned().collect();
                let mut next = acc.clone();
                next.extend(c_product(&base, c, &current, n));
                if next.len() == acc.len() {
                    return acc;
                }
                acc = next;
            }
        }
    }
}

/// `left .[c] right`, restricted to trees of at most `n` nodes.
fn c_product(left: &BTreeSet<Tree>, c: &str, right: &[Tree], n: usize) -> BTreeSet<Tree> {
    let mut out = BTreeSet::new();
    for t in left {
        out.extend(substitute(t, c, right, n));
    }
    out
}

/// `t{c <- lang}`: every `c` leaf is replaced independently.
fn substitute(t: &Tree, c: &str, lang: &[Tree], budget: usize) -> Vec<Tree> {
    if t.is_leaf() {
        if t.label.mark.is_none() && t.label.name == c {
            return lang.iter().filter(|u| u.size() <= budget).cloned().collect();
        }
        return if budget >= 1 { vec![t.clone()] } else { Vec::new() };
    }
    let m = t.children.len();
    if budget < 1 + m {
        return Vec::new();
    }
    let options: Vec<Vec<Tree>> = t
        .children
        .iter()
        .map(|child| substitute(child, c, lang, budget - m))
        .collect();
    combine(&options, budget - 1)
        .into_iter()
        .map(|children| Tree {
            label: t.label.clone(),
            children,
        })
        .collect()
}

/// All tuples picking one tree per slot with total size at most `budget`.
fn combine(options: &[Vec<Tree>], budget: usize) -> Vec<Vec<Tree>> {
    fn go(options: &[Vec<Tree>], budget: usize, prefix: &mut Vec<Tree>, out: &mut Vec<Vec<Tree>>) {
        let Some((first, rest)) = options.split_first() else {
            out.push(prefix.clone());
            return;
        };
        // every remaining slot needs at least one node
        let reserve = rest.len();
        for t in first {
            let s = t.size();
            if s + reserve <= budget {
                prefix.push(t.clone());
                go(rest, budget - s, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(options, budget, &mut Vec::new(), &mut out);
    out
}

/// Every tree over `sigma` with at most `max_nodes` nodes, grouped by
/// size and indexed so that children always precede their parents.
#[derive(Debug, Clone)]
pub struct TreeTable {
    /// `(label, child indices)` per entry.
    pub entries: Vec<(Letter, Vec<usize>)>,
    pub trees: Vec<Tree>,
}

impl TreeTable {
    pub fn new(sigma: &RankedAlphabet, max_nodes: usize) -> Self {
        let mut entries = Vec::new();
        let mut trees: Vec<Tree> = Vec::new();
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); max_nodes + 1];
        for size in 1..=max_nodes {
            for (name, arity) in sigma.symbols() {
                if arity == 0 {
                    if size == 1 {
                        by_size[1].push(trees.len());
                        entries.push((Letter::plain(name), Vec::new()));
                        trees.push(Tree::leaf(Letter::plain(name)));
                    }
                    continue;
                }
                if size < 1 + arity {
                    continue;
                }
                for sizes in compositions(size - 1, arity) {
                    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
                    for &s in &sizes {
                        tuples = tuples
                            .into_iter()
                            .flat_map(|prefix| {
                                by_size[s].iter().map(move |&i| {
                                    let mut p = prefix.clone();
                                    p.push(i);
                                    p
                                })
                            })
                            .collect();
                    }
                    for children in tuples {
                        let tree = Tree {
                            label: Letter::plain(name),
                            children: children.iter().map(|&i| trees[i].clone()).collect(),
                        };
                        by_size[size].push(trees.len());
                        entries.push((Letter::plain(name), children));
                        trees.push(tree);
                    }
                }
            }
        }
        TreeTable { entries, trees }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

/// Ordered ways to write `total` as `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every tree over `sigma` with at most `max_nodes` nodes.
pub fn all_trees(sigma: &RankedAlphabet, max_nodes: usize) -> Vec<Tree> {
    TreeTable::new(sigma, max_nodes).trees
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_alphabet, parse_expr, parse_tree};

    fn sigma() -> RankedAlphabet {
        parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap()
    }

    fn strings(set: &BTreeSet<Tree>) -> Vec<String> {
        set.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn constant_language() {
        let e = RegExpr::constant("a");
        assert_eq!(strings(&enumerate_language(&e, 5)), vec!["a"]);
        assert!(enumerate_language(&RegExpr::Zero, 5).is_empty());
    }

    #[test]
    fn closure_unrolls_under_the_bound() {
        let s = sigma();
        let e = parse_expr("g(c,a)*[c]", &s).unwrap();
        assert_eq!(strings(&enumerate_language(&e, 4)), vec!["c", "g(c,a)"]);
        let seven = enumerate_language(&e, 7);
        assert_eq!(seven.len(), 4);
        assert!(seven.contains(&parse_tree("g(g(c,a),a)", &s).unwrap()));
        assert!(seven.contains(&parse_tree("g(g(g(c,a),a),a)", &s).unwrap()));
    }

    #[test]
    fn substitution_is_independent_per_leaf() {
        let s = sigma();
        let e = parse_expr("g(a,a) .[a] (b + c)", &s).unwrap();
        assert_eq!(
            strings(&enumerate_language(&e, 3)),
            vec!["g(b,b)", "g(b,c)", "g(c,b)", "g(c,c)"]
        );
    }

    #[test]
    fn running_example_prefix() {
        let s = sigma();
        let e = parse_expr(
            "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
            &s,
        )
        .unwrap();
        let lin = e.linearize();
        let l = enumerate_language(&lin, 3);
        for t in ["b", "f@1(b)", "h@2(b)", "g@3(b,a)", "f@1(f@1(b))", "h@2(f@1(b))", "f@4(b)"] {
            assert!(l.contains(&parse_tree(t, &s).unwrap()), "{t}");
        }
        assert!(!l.contains(&parse_tree("g@3(a,b)", &s).unwrap()));
        assert!(!l.contains(&parse_tree("f@1(f@4(b))", &s).unwrap()));
        // trees never exceed the bound
        assert!(l.iter().all(|t| t.size() <= 3));
    }

    #[test]
    fn table_counts_trees_by_size() {
        // sizes 1..4 over {a,b,c}, {f,h}, {g}: 3, 6, 21, 78
        let s = sigma();
        assert_eq!(TreeTable::new(&s, 1).len(), 3);
        assert_eq!(TreeTable::new(&s, 2).len(), 9);
        assert_eq!(TreeTable::new(&s, 3).len(), 30);
        assert_eq!(TreeTable::new(&s, 4).len(), 108);
        let table = TreeTable::new(&s, 4);
        for (i, (label, children)) in table.entries.iter().enumerate() {
            assert!(children.iter().all(|&c| c < i));
            assert_eq!(&table.trees[i].label, label);
        }
    }

    #[test]
    fn compositions_enumerate_ordered_splits() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert!(compositions(1, 2).is_empty());
    }
}
