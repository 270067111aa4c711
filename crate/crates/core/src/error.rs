use thiserror::Error;

use crate::syntax::Atom;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("program contains variables but no constants to ground them with")]
    NoConstants,

    #[error("program is not ground (atom `{0}` contains a variable)")]
    NotGround(Atom),

    #[error("expected an objective program, found a subjective literal in rule `{0}`")]
    NotObjective(String),

    #[error("expected a positive program, found default negation in rule `{0}`")]
    NotPositive(String),

    #[error("expected a non-disjunctive program, found disjunctive rule `{0}`")]
    Disjunctive(String),

    #[error("least model violates constraint `{0}`")]
    Inconsistent(String),

    #[error("{what} limit exceeded: {found} > {limit}")]
    CapExceeded {
        what: &'static str,
        found: usize,
        limit: usize,
    },

    #[error("{{{0}}} is not an epistemic splitting set of the program")]
    InvalidSplittingSet(String),

    #[error("world view is not homogeneous on the interface pair {0}/{1}")]
    NotHomogeneous(Atom, Atom),
}
