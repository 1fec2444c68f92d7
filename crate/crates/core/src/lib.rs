//! Generalization of clauses under implication.
//!
//! Clausal logic primitives, θ-subsumption and Plotkin's LGG, ground term
//! sets for deciding implication between clauses, bounded resolution, and
//! the expansion construction that yields least generalizations under
//! implication relative to a finite term set.

pub mod clause;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod grounding;
pub mod resolution;
pub mod subsumption;
pub mod syntax;

pub use clause::{Clause, Literal, Sign, Substitution, Term, Var};
pub use error::{Error, Result};
pub use subsumption::{
    is_variant, lgg, lgg_set, match_clauses, reduce, subsumes, theta_equivalent, theta_subsumes,
    SubsumptionWitness,
};
pub use syntax::{format_clause, parse_clause, parse_clause_file};
