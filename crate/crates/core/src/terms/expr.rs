use std::collections::BTreeSet;
use std::fmt;

use super::Letter;

/// A regular tree expression.
///
/// Equality is syntactic. `Zero` is only legal as a whole expression or as
/// the result of reducing `0 .[c] E` to `0`; see [`RegExpr::product`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegExpr {
    Zero,
    Const(String),
    Apply { symbol: Letter, args: Vec<RegExpr> },
    Sum(Box<RegExpr>, Box<RegExpr>),
    Product(Box<RegExpr>, String, Box<RegExpr>),
    Closure(Box<RegExpr>, String),
}

impl RegExpr {
    pub fn constant(c: impl Into<String>) -> Self {
        RegExpr::Const(c.into())
    }

    pub fn apply(symbol: impl Into<Letter>, args: Vec<RegExpr>) -> Self {
        RegExpr::Apply {
            symbol: symbol.into(),
            args,
        }
    }

    pub fn sum(lhs: RegExpr, rhs: RegExpr) -> Self {
        RegExpr::Sum(Box::new(lhs), Box::new(rhs))
    }

    /// Builds `lhs .[c] rhs`, reducing `0 .[c] rhs` to `0`.
    ///
    /// This is the only simplification ever applied to expressions.
    pub fn product(lhs: RegExpr, c: impl Into<String>, rhs: RegExpr) -> Self {
        if lhs.is_zero() {
            return RegExpr::Zero;
        }
        RegExpr::Product(Box::new(lhs), c.into(), Box::new(rhs))
    }

    pub fn closure(operand: RegExpr, c: impl Into<String>) -> Self {
        RegExpr::Closure(Box::new(operand), c.into())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RegExpr::Zero)
    }

    /// Number of nodes of the syntax tree (subscripts are not nodes).
    pub fn size(&self) -> usize {
        match self {
            RegExpr::Zero | RegExpr::Const(_) => 1,
            RegExpr::Apply { args, .. } => 1 + args.iter().map(RegExpr::size).sum::<usize>(),
            RegExpr::Sum(l, r) | RegExpr::Product(l, _, r) => 1 + l.size() + r.size(),
            RegExpr::Closure(x, _) => 1 + x.size(),
        }
    }

    /// Non-constant letters occurring in the expression.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        self.visit_applies(&mut |symbol, _| {
            out.insert(symbol.clone());
        });
        out
    }

    /// Whether `letter` occurs as an applied symbol.
    pub fn mentions(&self, letter: &Letter) -> bool {
        match self {
            RegExpr::Zero | RegExpr::Const(_) => false,
            RegExpr::Apply { symbol, args } => {
                symbol == letter || args.iter().any(|a| a.mentions(letter))
            }
            RegExpr::Sum(l, r) | RegExpr::Product(l, _, r) => l.mentions(letter) || r.mentions(letter),
            RegExpr::Closure(x, _) => x.mentions(letter),
        }
    }

    /// True iff no applied letter occurs twice.
    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut linear = true;
        self.visit_applies(&mut |symbol, _| {
            if !seen.insert(symbol.clone()) {
                linear = false;
            }
        });
        linear
    }

    pub fn is_marked(&self) -> bool {
        let mut marked = false;
        self.visit_applies(&mut |symbol, _| marked |= symbol.mark.is_some());
        marked
    }

    /// True iff `0` appears strictly inside the expression.
    pub fn has_inner_zero(&self) -> bool {
        fn inner(e: &RegExpr) -> bool {
            match e {
                RegExpr::Zero => true,
                RegExpr::Const(_) => false,
                RegExpr::Apply { args, .. } => args.iter().any(inner),
                RegExpr::Sum(l, r) | RegExpr::Product(l, _, r) => inner(l) || inner(r),
                RegExpr::Closure(x, _) => inner(x),
            }
        }
        !self.is_zero() && inner(self)
    }

    /// Preorder walk over `Apply` nodes.
    pub fn visit_applies<'a>(&'a self, visit: &mut impl FnMut(&'a Letter, &'a [RegExpr])) {
        match self {
            RegExpr::Zero | RegExpr::Const(_) => {}
            RegExpr::Apply { symbol, args } => {
                visit(symbol, args);
                for a in args {
                    a.visit_applies(visit);
                }
            }
            RegExpr::Sum(l, r) | RegExpr::Product(l, _, r) => {
                l.visit_applies(visit);
                r.visit_applies(visit);
            }
            RegExpr::Closure(x, _) => x.visit_applies(visit),
        }
    }

    /// Constants `c` such that the single-node tree `c` is in the language.
    pub fn constants_in_language(&self) -> BTreeSet<String> {
        match self {
            RegExpr::Zero | RegExpr::Apply { .. } => BTreeSet::new(),
            RegExpr::Const(a) => BTreeSet::from([a.clone()]),
            RegExpr::Sum(l, r) => {
                let mut s = l.constants_in_language();
                s.extend(r.constants_in_language());
                s
            }
            RegExpr::Product(l, d, r) => {
                let mut s = l.constants_in_language();
                if s.remove(d) {
                    s.extend(r.constants_in_language());
                }
                s
            }
            RegExpr::Closure(x, d) => {
                let mut s = x.constants_in_language();
                s.insert(d.clone());
                s
            }
        }
    }

    /// Erases every mark.
    pub fn unmark(&self) -> RegExpr {
        match self {
            RegExpr::Zero => RegExpr::Zero,
            RegExpr::Const(c) => RegExpr::Const(c.clone()),
            RegExpr::Apply { symbol, args } => RegExpr::Apply {
                symbol: symbol.unmarked(),
                args: args.iter().map(RegExpr::unmark).collect(),
            },
            RegExpr::Sum(l, r) => RegExpr::sum(l.unmark(), r.unmark()),
            RegExpr::Product(l, c, r) => {
                RegExpr::Product(Box::new(l.unmark()), c.clone(), Box::new(r.unmark()))
            }
            RegExpr::Closure(x, c) => RegExpr::closure(x.unmark(), c.clone()),
        }
    }

    /// Marks the `Apply` nodes `1..=n` in preorder, dropping any prior marks.
    pub fn linearize(&self) -> RegExpr {
        fn go(e: &RegExpr, next: &mut u32) -> RegExpr {
            match e {
                RegExpr::Zero => RegExpr::Zero,
                RegExpr::Const(c) => RegExpr::Const(c.clone()),
                RegExpr::Apply { symbol, args } => {
                    let mark = *next;
                    *next += 1;
                    RegExpr::Apply {
                        symbol: Letter::marked(symbol.name.clone(), mark),
                        args: args.iter().map(|a| go(a, next)).collect(),
                    }
                }
                RegExpr::Sum(l, r) => {
                    let l = go(l, next);
                    RegExpr::sum(l, go(r, next))
                }
                RegExpr::Product(l, c, r) => {
                    let l = go(l, next);
                    RegExpr::Product(Box::new(l), c.clone(), Box::new(go(r, next)))
                }
                RegExpr::Closure(x, c) => RegExpr::closure(go(x, next), c.clone()),
            }
        }
        go(self, &mut 1)
    }

    fn precedence(&self) -> u8 {
        match self {
            RegExpr::Sum(..) => 0,
            RegExpr::Product(..) => 1,
            RegExpr::Closure(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            RegExpr::Zero => f.write_str("0")?,
            RegExpr::Const(c) => f.write_str(c)?,
            RegExpr::Apply { symbol, args } => {
                write!(f, "{symbol}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    a.fmt_at(f, 0)?;
                }
                f.write_str(")")?;
            }
            RegExpr::Sum(l, r) => {
                l.fmt_at(f, 0)?;
                f.write_str(" + ")?;
                r.fmt_at(f, 1)?;
            }
            RegExpr::Product(l, c, r) => {
                l.fmt_at(f, 1)?;
                write!(f, " .[{c}] ")?;
                r.fmt_at(f, 2)?;
            }
            RegExpr::Closure(x, c) => {
                x.fmt_at(f, 2)?;
                write!(f, "*[{c}]")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for RegExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Linearizes `e`; see [`RegExpr::linearize`].
pub fn linearize(e: &RegExpr) -> RegExpr {
    e.linearize()
}

/// Erases marks; see [`RegExpr::unmark`].
pub fn unmark(e: &RegExpr) -> RegExpr {
    e.unmark()
}

/// Decides whether the single-node tree `c` belongs to the language of `e`.
pub fn contains_constant(e: &RegExpr, c: &str) -> bool {
    e.constants_in_language().contains(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_alphabet, parse_expr};

    fn sigma() -> crate::terms::RankedAlphabet {
        parse_alphabet("a:0 b:0 c:0 f:1 h:1 g:2").unwrap()
    }

    const EXAMPLE: &str =
        "(f(a)*[a] .[a] b + h(b))*[b] + g(c,a)*[c] .[c] (f(a)*[a] .[a] b + h(b))*[b]";

    #[test]
    fn linearize_marks_in_preorder() {
        let e = parse_expr(EXAMPLE, &sigma()).unwrap();
        let lin = e.linearize();
        assert_eq!(
            lin.to_string(),
            "(f@1(a)*[a] .[a] b + h@2(b))*[b] + g@3(c,a)*[c] .[c] (f@4(a)*[a] .[a] b + h@5(b))*[b]"
        );
        assert!(lin.is_linear());
        assert!(!e.is_linear());
        assert_eq!(lin.unmark(), e);
    }

    #[test]
    fn constants_are_left_alone() {
        let a = RegExpr::constant("a");
        assert_eq!(a.linearize(), a);
        assert_eq!(a.unmark(), a);
    }

    #[test]
    fn contains_constant_rules() {
        let s = sigma();
        let g = parse_expr("g(c,a)*[c]", &s).unwrap();
        assert!(contains_constant(&g, "c"));
        assert!(!contains_constant(&g, "a"));
        let p = parse_expr("f(a)*[a] .[a] b", &s).unwrap();
        assert!(contains_constant(&p, "b"));
        assert!(!contains_constant(&p, "a"));
        assert!(!contains_constant(&RegExpr::constant("b"), "a"));
        assert!(!contains_constant(&RegExpr::Zero, "a"));
        // a .[a] a keeps a; b .[a] c keeps b
        let q = parse_expr("a .[a] a", &s).unwrap();
        assert!(contains_constant(&q, "a"));
        let r = parse_expr("b .[a] c", &s).unwrap();
        assert!(contains_constant(&r, "b"));
        assert!(!contains_constant(&r, "c"));
    }

    #[test]
    fn constants_in_language_matches_predicate() {
        let s = sigma();
        for text in [EXAMPLE, "a .[a] (b + c)", "(a + b) .[a] c*[b]", "f(a) + c*[a]"] {
            let e = parse_expr(text, &s).unwrap();
            let set = e.constants_in_language();
            for c in s.constants() {
                assert_eq!(set.contains(c), contains_constant(&e, c), "{text} / {c}");
            }
        }
    }

    #[test]
    fn product_reduces_leading_zero_only() {
        let z = RegExpr::product(RegExpr::Zero, "a", RegExpr::constant("b"));
        assert!(z.is_zero());
        let kept = RegExpr::product(RegExpr::constant("b"), "a", RegExpr::constant("c"));
        assert_eq!(kept.to_string(), "b .[a] c");
    }

    #[test]
    fn display_parenthesizes_minimally() {
        let s = sigma();
        for text in [
            "a + b + c",
            "a + (b + c)",
            "a .[a] b .[b] c",
            "a .[a] (b .[b] c)",
            "(a + b)*[a]*[b]",
            "g(a + b,c .[c] a)",
            "(a .[a] b)*[c]",
        ] {
            let e = parse_expr(text, &s).unwrap();
            assert_eq!(e.to_string(), text);
        }
    }
}
