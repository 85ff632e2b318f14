//! Greedy counterexample shrinking.

use crate::terms::{RankedAlphabet, RegExpr};

/// The nodes of `e` in preorder.
fn preorder(e: &RegExpr) -> Vec<&RegExpr> {
    fn go<'a>(e: &'a RegExpr, out: &mut Vec<&'a RegExpr>) {
        out.push(e);
        match e {
            RegExpr::Zero | RegExpr::Const(_) => {}
            RegExpr::Apply { args, .. } => args.iter().for_each(|a| go(a, out)),
            RegExpr::Sum(l, r) | RegExpr::Product(l, _, r) => {
                go(l, out);
                go(r, out);
            }
            RegExpr::Closure(x, _) => go(x, out),
        }
    }
    let mut out = Vec::new();
    go(e, &mut out);
    out
}

fn children(e: &RegExpr) -> Vec<&RegExpr> {
    match e {
        RegExpr::Zero | RegExpr::Const(_) => Vec::new(),
        RegExpr::Apply { args, .. } => args.iter().collect(),
        RegExpr::Sum(l, r) | RegExpr::Product(l, _, r) => vec![&**l, &**r],
        RegExpr::Closure(x, _) => vec![&**x],
    }
}

/// `e` with its `index`-th node (preorder) replaced by `with`.
fn replace_at(e: &RegExpr, index: usize, with: &RegExpr) -> RegExpr {
    fn go(e: &RegExpr, index: &mut usize, with: &RegExpr) -> RegExpr {
        if *index == 0 {
            *index = usize::MAX;
            return with.clone();
        }
        if *index != usize::MAX {
            *index -= 1;
        }
        match e {
            RegExpr::Zero | RegExpr::Const(_) => e.clone(),
            RegExpr::Apply { symbol, args } => RegExpr::Apply {
                symbol: symbol.clone(),
                args: args.iter().map(|a| go(a, index, with)).collect(),
            },
            RegExpr::Sum(l, r) => {
                let l = go(l, index, with);
                RegExpr::sum(l, go(r, index, with))
            }
            RegExpr::Product(l, c, r) => {
                let l = go(l, index, with);
                RegExpr::Product(Box::new(l), c.clone(), Box::new(go(r, index, with)))
            }
            RegExpr::Closure(x, c) => RegExpr::closure(go(x, index, with), c.clone()),
        }
    }
    let mut i = index;
    go(e, &mut i, with)
}

/// Repeatedly replaces a subexpression by a constant, or by one of its own
/// operands, while `fails` still holds; stops when no single replacement
/// both shrinks the expression and keeps the failure.
pub fn shrink(e: &RegExpr, sigma: &RankedAlphabet, fails: impl Fn(&RegExpr) -> bool) -> RegExpr {
    let constants: Vec<RegExpr> = sigma.constants().map(RegExpr::constant).collect();
    let mut current = e.clone();
    'outer: loop {
        let nodes: Vec<RegExpr> = preorder(&current).into_iter().cloned().collect();
        for (index, node) in nodes.iter().enumerate() {
            let options = constants.iter().chain(children(node));
            for c in options {
                let candidate = replace_at(&current, index, c);
                if candidate.size() < current.size() && fails(&candidate) {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_alphabet, parse_expr};

    #[test]
    fn replaces_in_preorder() {
        let s = parse_alphabet("a:0 b:0 f:1 g:2").unwrap();
        let e = parse_expr("g(f(a), b) + a", &s).unwrap();
        let b = RegExpr::constant("b");
        assert_eq!(replace_at(&e, 0, &b), b);
        assert_eq!(replace_at(&e, 2, &b), parse_expr("g(b, b) + a", &s).unwrap());
        assert_eq!(replace_at(&e, 5, &b), parse_expr("g(f(a), b) + b", &s).unwrap());
    }

    #[test]
    fn shrinks_to_a_minimal_failing_core() {
        let s = parse_alphabet("a:0 b:0 f:1 g:2").unwrap();
        let e = parse_expr("g(f(a), b)*[b] + f(f(b))", &s).unwrap();
        // "fails" whenever a g occurs
        let fails = |x: &RegExpr| x.letters().iter().any(|l| l.name == "g");
        let small = shrink(&e, &s, fails);
        assert_eq!(small, parse_expr("g(a, b)", &s).unwrap());
    }
}
