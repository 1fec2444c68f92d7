use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("clause is not ground: {0}")]
    NotGround(String),
    #[error("clauses must be pairwise variable-disjoint")]
    NotVariableDisjoint,
    #[error("Skolem constant namespace collides with input symbol `{0}`")]
    SkolemCollision(String),
    #[error("term set does not cover {0}")]
    TermSetCoverage(String),
    #[error("clause has variables but the term set is empty")]
    EmptyTermSet,
    #[error("{what} exceeded: {count} > {cap} (raise with {flag})")]
    ResourceLimit {
        what: &'static str,
        count: usize,
        cap: usize,
        flag: &'static str,
    },
    #[error("invalid script target {target} at step {step}: set has {size} clauses")]
    InvalidTarget {
        step: usize,
        target: usize,
        size: usize,
    },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("clause is a tautology: {0}")]
    Tautology(String),
    #[error("no T-complete expansion found with scripts up to length {0} (raise with --max-len)")]
    BudgetExhausted(usize),
    #[error("LGGT verification failed: {0}")]
    Verification(String),
    #[error("no least generalization among {0} enumerated candidates")]
    NoLeast(usize),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
