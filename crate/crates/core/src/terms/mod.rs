//! Ranked alphabets, trees and regular tree expressions.
//!
//! Expressions are built over a [`RankedAlphabet`]. Non-constant symbol
//! occurrences may carry a positive mark; a linearized expression marks
//! every occurrence with a distinct integer (preorder, starting at 1), and
//! [`RegExpr::unmark`] erases them again.

mod alphabet;
mod expr;
mod language;
mod parse;
mod tree;

pub use alphabet::RankedAlphabet;
pub use expr::{contains_constant, linearize, unmark, RegExpr};
pub use language::{all_trees, enumerate_language, TreeTable};
pub use parse::{parse_alphabet, parse_expr, parse_tree, ParseError};
pub use tree::Tree;

use std::fmt;

/// A symbol occurrence: an alphabet name plus an optional mark.
///
/// Constants are never marked. Marked letters print as `name@mark`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub mark: Option<u32>,
}

impl Letter {
    pub fn plain(name: impl Into<String>) -> Self {
        Letter {
            name: name.into(),
            mark: None,
        }
    }

    pub fn marked(name: impl Into<String>, mark: u32) -> Self {
        Letter {
            name: name.into(),
            mark: Some(mark),
        }
    }

    /// The image under the unmarking map.
    pub fn unmarked(&self) -> Letter {
        Letter::plain(self.name.clone())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mark {
            Some(m) => write!(f, "{}@{}", self.name, m),
            None => f.write_str(&self.name),
        }
    }
}

impl From<&str> for Letter {
    /// Accepts `name` or `name@mark`.
    fn from(s: &str) -> Self {
        match s.split_once('@') {
            Some((name, mark)) => match mark.parse() {
                Ok(m) => Letter::marked(name, m),
                Err(_) => Letter::plain(s),
            },
            None => Letter::plain(s),
        }
    }
}
