//! Position functions `First`, `Follow` and `Last` over linear expressions.
//!
//! [`PositionFunctions`] annotates every subexpression once with its
//! `First`, `Last`, letter set and the constants of its language; `Follow`
//! is then answered per `(letter, slot)` by a single descent.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::terms::{Letter, RegExpr};

/// A set of letters: constants and (marked) non-constant symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolSet(pub BTreeSet<Letter>);

impl SymbolSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, l: &Letter) -> bool {
        self.0.contains(l)
    }

    pub fn contains_constant(&self, c: &str) -> bool {
        self.0.contains(&Letter::plain(c))
    }

    pub fn insert(&mut self, l: Letter) -> bool {
        self.0.insert(l)
    }

    pub fn remove_constant(&mut self, c: &str) -> bool {
        self.0.remove(&Letter::plain(c))
    }

    pub fn extend(&mut self, other: &SymbolSet) {
        self.0.extend(other.0.iter().cloned());
    }

    pub fn iter(&self) -> impl Iterator<Item = &Letter> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'a> FromIterator<&'a str> for SymbolSet {
    fn from_iter<I: IntoIterator<Item = &'a str>>(iter: I) -> Self {
        SymbolSet(iter.into_iter().map(Letter::from).collect())
    }
}

impl FromIterator<Letter> for SymbolSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        SymbolSet(iter.into_iter().collect())
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A state of the position-based constructions: the slot `k` of a letter
/// `f`, or the root sentinel `ε¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Root,
    Slot { symbol: Letter, slot: usize },
}

impl Position {
    pub fn slot(symbol: impl Into<Letter>, slot: usize) -> Self {
        Position::Slot {
            symbol: symbol.into(),
            slot,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Root => f.write_str("eps^1"),
            Position::Slot { symbol, slot } => match symbol.mark {
                Some(m) => write!(f, "{}^{}@{}", symbol.name, slot, m),
                None => write!(f, "{}^{}", symbol.name, slot),
            },
        }
    }
}

#[derive(Debug)]
struct Node {
    first: SymbolSet,
    last: SymbolSet,
    letters: BTreeSet<Letter>,
    constants: BTreeSet<String>,
    children: Vec<Node>,
}

fn annotate(e: &RegExpr) -> Node {
    match e {
        RegExpr::Zero => Node {
            first: SymbolSet::new(),
            last: SymbolSet::new(),
            letters: BTreeSet::new(),
            constants: BTreeSet::new(),
            children: Vec::new(),
        },
        RegExpr::Const(a) => Node {
            first: SymbolSet::from_iter([Letter::plain(a.clone())]),
            last: SymbolSet::from_iter([Letter::plain(a.clone())]),
            letters: BTreeSet::new(),
            constants: BTreeSet::from([a.clone()]),
            children: Vec::new(),
        },
        RegExpr::Apply { symbol, args } => {
            let children: Vec<Node> = args.iter().map(annotate).collect();
            let mut last = SymbolSet::new();
            let mut letters = BTreeSet::from([symbol.clone()]);
            for c in &children {
                last.extend(&c.last);
                letters.extend(c.letters.iter().cloned());
            }
            Node {
                first: SymbolSet::from_iter([symbol.clone()]),
                last,
                letters,
                constants: BTreeSet::new(),
                children,
            }
        }
        RegExpr::Sum(l, r) => {
            let (l, r) = (annotate(l), annotate(r));
            let mut first = l.first.clone();
            first.extend(&r.first);
            let mut last = l.last.clone();
            last.extend(&r.last);
            let letters = l.letters.union(&r.letters).cloned().collect();
            let constants = l.constants.union(&r.constants).cloned().collect();
            Node {
                first,
                last,
                letters,
                constants,
                children: vec![l, r],
            }
        }
        RegExpr::Product(l, c, r) => {
            let (l, r) = (annotate(l), annotate(r));
            let mut first = l.first.clone();
            if l.constants.contains(c) {
                first.remove_constant(c);
                first.extend(&r.first);
            }
            let mut last = l.last.clone();
            if last.remove_constant(c) {
                last.extend(&r.last);
            }
            let mut constants = l.constants.clone();
            if constants.remove(c) {
                constants.extend(r.constants.iter().cloned());
            }
            let letters = l.letters.union(&r.letters).cloned().collect();
            Node {
                first,
                last,
                letters,
                constants,
                children: vec![l, r],
            }
        }
        RegExpr::Closure(x, c) => {
            let x = annotate(x);
            let mut first = x.first.clone();
            first.insert(Letter::plain(c.clone()));
            let mut last = x.last.clone();
            last.insert(Letter::plain(c.clone()));
            let mut constants = x.constants.clone();
            constants.insert(c.clone());
            Node {
                first,
                last,
                letters: x.letters.clone(),
                constants,
                children: vec![x],
            }
        }
    }
}

/// Position functions of one linear expression.
#[derive(Debug)]
pub struct PositionFunctions<'e> {
    expr: &'e RegExpr,
    root: Node,
    arities: BTreeMap<Letter, usize>,
}

impl<'e> PositionFunctions<'e> {
    pub fn new(expr: &'e RegExpr) -> Result<Self> {
        if !expr.is_linear() {
            return Err(Error::NotLinear(expr.to_string()));
        }
        let mut arities = BTreeMap::new();
        expr.visit_applies(&mut |symbol, args| {
            arities.insert(symbol.clone(), args.len());
        });
        Ok(PositionFunctions {
            expr,
            root: annotate(expr),
            arities,
        })
    }

    pub fn expr(&self) -> &'e RegExpr {
        self.expr
    }

    pub fn first(&self) -> &SymbolSet {
        &self.root.first
    }

    pub fn last(&self) -> &SymbolSet {
        &self.root.last
    }

    /// `ε¹` followed by every slot `f^k`, ordered by mark then slot.
    pub fn positions(&self) -> Vec<Position> {
        let mut letters: Vec<(&Letter, usize)> = self.letters().collect();
        letters.sort_by_key(|(l, _)| (l.mark, (*l).clone()));
        let mut out = vec![Position::Root];
        for (symbol, arity) in letters {
            for slot in 1..=arity {
                out.push(Position::slot(symbol.clone(), slot));
            }
        }
        out
    }

    pub fn arity(&self, letter: &Letter) -> Option<usize> {
        self.arities.get(letter).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = (&Letter, usize)> {
        self.arities.iter().map(|(l, &a)| (l, a))
    }

    /// `Follow(e, f, k)`; `Follow(e, ε¹, 1)` is `First(e)`.
    pub fn follow_position(&self, p: &Position) -> SymbolSet {
        match p {
            Position::Root => self.first().clone(),
            Position::Slot { symbol, slot } => self.follow(symbol, *slot),
        }
    }

    pub fn follow(&self, f: &Letter, k: usize) -> SymbolSet {
        match self.arity(f) {
            Some(arity) if (1..=arity).contains(&k) => follow_in(self.expr, &self.root, f, k),
            _ => SymbolSet::new(),
        }
    }
}

// The product and closure cases are read as ordered, mutually exclusive
// branches, top to bottom.
fn follow_in(e: &RegExpr, node: &Node, f: &Letter, k: usize) -> SymbolSet {
    match e {
        RegExpr::Zero | RegExpr::Const(_) => SymbolSet::new(),
        RegExpr::Apply { symbol, args } => {
            if symbol == f {
                return node.children[k - 1].first.clone();
            }
            for (arg, child) in args.iter().zip(&node.children) {
                if child.letters.contains(f) {
                    return follow_in(arg, child, f, k);
                }
            }
            SymbolSet::new()
        }
        RegExpr::Sum(l, r) => {
            let (ln, rn) = (&node.children[0], &node.children[1]);
            if ln.letters.contains(f) {
                follow_in(l, ln, f, k)
            } else if rn.letters.contains(f) {
                follow_in(r, rn, f, k)
            } else {
                SymbolSet::new()
            }
        }
        RegExpr::Product(l, c, r) => {
            let (ln, rn) = (&node.children[0], &node.children[1]);
            if ln.letters.contains(f) {
                let mut fol = follow_in(l, ln, f, k);
                if fol.remove_constant(c) {
                    fol.extend(&rn.first);
                }
                fol
            } else if rn.letters.contains(f) && ln.last.contains_constant(c) {
                follow_in(r, rn, f, k)
            } else {
                SymbolSet::new()
            }
        }
        RegExpr::Closure(x, c) => {
            let xn = &node.children[0];
            let mut fol = follow_in(x, xn, f, k);
            if fol.contains_constant(c) {
                fol.extend(&xn.first);
            }
            fol
        }
    }
}

/// `Follow` read over every occurrence of `f`, for expressions that need
/// not be linear: each case of the linear induction takes the union of the
/// branches that mention `f` instead of choosing one. Agrees with
/// [`PositionFunctions::follow`] on linear input.
pub fn follow_all(e: &RegExpr, f: &Letter, k: usize) -> SymbolSet {
    if k == 0 {
        return SymbolSet::new();
    }
    follow_all_in(e, &annotate(e), f, k)
}

fn follow_all_in(e: &RegExpr, node: &Node, f: &Letter, k: usize) -> SymbolSet {
    let mut out = SymbolSet::new();
    match e {
        RegExpr::Zero | RegExpr::Const(_) => {}
        RegExpr::Apply { symbol, args } => {
            if symbol == f {
                if let Some(child) = node.children.get(k - 1) {
                    out.extend(&child.first);
                }
            }
            for (arg, child) in args.iter().zip(&node.children) {
                if child.letters.contains(f) {
                    out.extend(&follow_all_in(arg, child, f, k));
                }
            }
        }
        RegExpr::Sum(l, r) => {
            for (x, n) in [(l, &node.children[0]), (r, &node.children[1])] {
                if n.letters.contains(f) {
                    out.extend(&follow_all_in(x, n, f, k));
                }
            }
        }
        RegExpr::Product(l, c, r) => {
            let (ln, rn) = (&node.children[0], &node.children[1]);
            if ln.letters.contains(f) {
                let mut fol = follow_all_in(l, ln, f, k);
                if fol.remove_constant(c) {
                    fol.extend(&rn.first);
                }
                out.extend(&fol);
            }
            if rn.letters.contains(f) && ln.last.contains_constant(c) {
                out.extend(&follow_all_in(r, rn, f, k));
            }
        }
        RegExpr::Closure(x, c) => {
            let xn = &node.children[0];
            out = follow_all_in(x, xn, f, k);
            if out.contains_constant(c) {
                out.extend(&xn.first);
            }
        }
    }
    out
}

/// `First(e)` of a linear expression.
pub fn first(e: &RegExpr) -> Result<SymbolSet> {
    Ok(PositionFunctions::new(e)?.first().clone())
}

/// `First(e)` by the same rules, without requiring `e` to be linear.
pub fn first_of_any(e: &RegExpr) -> SymbolSet {
    annotate(e).first
}

/// `Follow(e, f, k)` of a linear expression.
pub fn follow(e: &RegExpr, f: &Letter, k: usize) -> Result<SymbolSet> {
    Ok(PositionFunctions::new(e)?.follow(f, k))
}

/// `Last(e)`: the constants that label a leaf of some tree of `⟦e⟧`.
pub fn last(e: &RegExpr) -> SymbolSet {
    annotate(e).last
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_alphabet, parse_expr, RankedAlphabet};

    fn sigma() -> RankedAlphabet {
        parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap()
    }

    fn example() -> RegExpr {
        parse_expr(
            "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]",
            &sigma(),
        )
        .unwrap()
        .linearize()
    }

    fn set(items: &[&str]) -> SymbolSet {
        items.iter().copied().collect()
    }

    #[test]
    fn first_of_running_example() {
        let e = example();
        assert_eq!(first(&e).unwrap(), set(&["b", "f@1", "h@2", "g@3", "f@4", "h@5"]));
        assert!(first(&RegExpr::Zero).unwrap().is_empty());
    }

    #[test]
    fn follow_of_running_example() {
        let e = example();
        let pf = PositionFunctions::new(&e).unwrap();
        assert_eq!(pf.follow(&"g@3".into(), 2), set(&["a"]));
        assert_eq!(pf.follow(&"g@3".into(), 1), set(&["b", "g@3", "f@4", "h@5"]));
        assert_eq!(pf.follow(&"f@1".into(), 1), set(&["b", "f@1", "h@2"]));
        assert_eq!(pf.follow(&"h@2".into(), 1), set(&["b", "f@1", "h@2"]));
        assert_eq!(pf.follow(&"f@4".into(), 1), set(&["b", "f@4", "h@5"]));
        assert_eq!(pf.follow(&"h@5".into(), 1), set(&["b", "f@4", "h@5"]));
        assert_eq!(pf.follow_position(&Position::Root), *pf.first());
        // out-of-range slot and absent letter
        assert!(pf.follow(&"g@3".into(), 3).is_empty());
        assert!(pf.follow(&"f@9".into(), 1).is_empty());
    }

    #[test]
    fn follow_of_constant_is_empty() {
        let a = RegExpr::constant("a");
        assert!(follow(&a, &"f".into(), 1).unwrap().is_empty());
    }

    #[test]
    fn last_examples() {
        let s = sigma();
        let p = parse_expr("f(a)*[a] .[a] b", &s).unwrap();
        assert_eq!(last(&p), set(&["b"]));
        assert_eq!(last(&RegExpr::constant("c")), set(&["c"]));
        let g = parse_expr("g@3(c,a)*[c]", &s).unwrap();
        assert_eq!(last(&g), set(&["a", "c"]));
    }

    #[test]
    fn non_linear_is_rejected() {
        let s = sigma();
        let e = parse_expr("f(a) + f(b)", &s).unwrap();
        assert!(matches!(first(&e), Err(Error::NotLinear(_))));
    }

    #[test]
    fn positions_enumerate_slots() {
        let e = example();
        let pf = PositionFunctions::new(&e).unwrap();
        let names: Vec<String> = pf.positions().iter().map(|p| p.to_string()).collect();
        assert_eq!(
            names,
            vec!["eps^1", "f^1@1", "h^1@2", "g^1@3", "g^2@3", "f^1@4", "h^1@5"]
        );
    }

    #[test]
    fn parametric_family_first_and_follow() {
        // ((f1(a)*[a] .[a] f2(a)*[a]) ... .[a] fn(a)*[a])*[a]
        let n = 4;
        let mut sigma = RankedAlphabet::new().with("a", 0);
        let mut body = String::new();
        for i in 1..=n {
            sigma.insert(format!("f{i}"), 1);
            if i == 1 {
                body = format!("f{i}(a)*[a]");
            } else {
                body = format!("({body}) .[a] f{i}(a)*[a]");
            }
        }
        let e = parse_expr(&format!("({body})*[a]"), &sigma).unwrap().linearize();
        let pf = PositionFunctions::new(&e).unwrap();
        let expected = set(&["a", "f1@1", "f2@2", "f3@3", "f4@4"]);
        assert_eq!(*pf.first(), expected);
        for p in pf.positions() {
            assert_eq!(pf.follow_position(&p), expected);
        }
    }
}
