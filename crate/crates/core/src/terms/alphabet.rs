use std::collections::BTreeMap;
use std::fmt;

/// A finite set of symbols, each carrying a fixed arity.
///
/// Symbols of arity 0 are the constants; every other symbol is a
/// non-constant and may be marked during linearization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankedAlphabet {
    symbols: BTreeMap<String, usize>,
}

impl RankedAlphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a symbol; returns `false` (and leaves the alphabet untouched)
    /// when the name is already declared.
    pub fn insert(&mut self, name: impl Into<String>, arity: usize) -> bool {
        let name = name.into();
        if self.symbols.contains_key(&name) {
            return false;
        }
        self.symbols.insert(name, arity);
        true
    }

    pub fn with(mut self, name: &str, arity: usize) -> Self {
        self.insert(name, arity);
        self
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.arity(name) == Some(0)
    }

    /// Constants in name order.
    pub fn constants(&self) -> impl Iterator<Item = &str> + '_ {
        self.symbols
            .iter()
            .filter(|(_, &a)| a == 0)
            .map(|(n, _)| n.as_str())
    }

    /// Non-constant symbols with their arities, in name order.
    pub fn non_constants(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.symbols
            .iter()
            .filter(|(_, &a)| a > 0)
            .map(|(n, &a)| (n.as_str(), a))
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.symbols.iter().map(|(n, &a)| (n.as_str(), a))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for RankedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, arity)) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}:{arity}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_constants() {
        let sigma = RankedAlphabet::new()
            .with("a", 0)
            .with("b", 0)
            .with("f", 1)
            .with("g", 2);
        assert_eq!(sigma.constants().collect::<Vec<_>>(), vec!["a", "b"]);
        assert_eq!(
            sigma.non_constants().collect::<Vec<_>>(),
            vec![("f", 1), ("g", 2)]
        );
        assert!(sigma.is_constant("a"));
        assert!(!sigma.is_constant("g"));
        assert!(!sigma.is_constant("zz"));
    }

    #[test]
    fn duplicate_insert_is_rejected() {
        let mut sigma = RankedAlphabet::new();
        assert!(sigma.insert("a", 0));
        assert!(!sigma.insert("a", 1));
        assert_eq!(sigma.arity("a"), Some(0));
    }

    #[test]
    fn display_round_trips_through_parser() {
        let sigma = crate::terms::parse_alphabet("g:2 a:0 f:1").unwrap();
        assert_eq!(sigma.to_string(), "a:0 f:1 g:2");
    }
}
