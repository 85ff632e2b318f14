use thiserror::Error;

use crate::automaton::AutomatonError;
use crate::terms::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("expression is not linear: {0}")]
    NotLinear(String),
    #[error("position {position} does not occur in {expr}")]
    PositionAbsent { position: String, expr: String },
    #[error("derivation closure exceeded {limit} states; aborting")]
    Watchdog { limit: usize },
    /// Two independent computations that must agree did not.
    #[error("internal invariant violated: {0}")]
    Inconsistent(String),
    #[error("relation {kind} is not defined on {domain} states")]
    InvalidRelation { kind: String, domain: String },
    #[error("invalid generator configuration: {0}")]
    Generator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
