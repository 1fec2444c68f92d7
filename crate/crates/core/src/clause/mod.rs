//! Terms, literals, clauses and substitutions, plus unification,
//! factoring and Skolemization.

mod skolem;
mod subst;
mod term;
mod unify;

pub use skolem::{complement, is_skolem_name, skolemize, SkolemMap, SKOLEM_PREFIX};
pub(crate) use subst::Bindings;
pub use subst::{match_literals, match_terms, Substitution};
pub use term::{sym, var_floor, Clause, Literal, Sign, Symbol, Term, Var};
pub use unify::{
    factors, rename_apart, unify_literals, unify_pairs, unify_terms, variable_disjoint, VariantSet,
};
