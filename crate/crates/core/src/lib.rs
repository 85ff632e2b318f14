//! Regular tree expressions and the automata built from them.
//!
//! Four constructions turn an expression into a bottom-up tree automaton:
//! the k-position automaton, the follow automaton, the equation automaton
//! and the k-C-continuation automaton. The `relations` module relates them
//! through quotients and derives a fifth, smaller automaton.

pub mod automaton;
pub mod cli;
pub mod construct;
pub mod error;
pub mod posfun;
pub mod relations;
pub mod terms;

pub use error::{Error, Result};
