use std::collections::{BTreeMap, BTreeSet};

use super::subst::Substitution;
use super::term::{Clause, Term, Var};
use super::unify::variable_disjoint;
use crate::error::{Error, Result};

/// Functor prefix reserved for Skolem constants; rejected in parsed input.
pub const SKOLEM_PREFIX: &str = "sk_";

pub fn is_skolem_name(name: &str) -> bool {
    name.starts_with(SKOLEM_PREFIX)
}

/// Variables mapped to distinct fresh constants, with the inverse mapping.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkolemMap {
    forward: Substitution,
    inverse: BTreeMap<Term, Var>,
}

impl SkolemMap {
    pub fn substitution(&self) -> &Substitution {
        &self.forward
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn constants(&self) -> impl Iterator<Item = &Term> {
        self.inverse.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.forward.iter()
    }

    pub fn apply(&self, c: &Clause) -> Clause {
        self.forward.apply_clause(c)
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        self.forward.apply_term(t)
    }

    /// Replaces every Skolem constant by the variable it stands for.
    pub fn unskolemize(&self, c: &Clause) -> Clause {
        if self.inverse.is_empty() {
            return c.clone();
        }
        let map: BTreeMap<Term, Term> = self
            .inverse
            .iter()
            .map(|(k, v)| (k.clone(), Term::Var(v.clone())))
            .collect();
        c.map_literals(|l| crate::clause::Literal {
            sign: l.sign,
            pred: l.pred.clone(),
            args: l.args.iter().map(|a| a.replace_terms(&map)).collect(),
        })
    }

    pub fn unskolemize_term(&self, t: &Term) -> Term {
        let map: BTreeMap<Term, Term> = self
            .inverse
            .iter()
            .map(|(k, v)| (k.clone(), Term::Var(v.clone())))
            .collect();
        t.replace_terms(&map)
    }

    /// True iff some functor of `c` is one of this map's constants.
    pub fn collides_with(&self, c: &Clause) -> bool {
        c.functors()
            .iter()
            .any(|(f, n)| *n == 0 && self.inverse.contains_key(&Term::App(f.clone(), vec![])))
    }
}

/// Maps every variable of `clauses` to a distinct fresh constant that does
/// not occur among the functors of `clauses` or `context`.
///
/// The clauses must be pairwise variable-disjoint.
pub fn skolemize(clauses: &[Clause], context: &[Clause]) -> Result<(Vec<Clause>, SkolemMap)> {
    if !variable_disjoint(clauses) {
        return Err(Error::NotVariableDisjoint);
    }
    let mut functors = BTreeSet::new();
    for c in clauses.iter().chain(context) {
        functors.extend(c.functors());
    }
    if let Some((f, _)) = functors.iter().find(|(f, _)| is_skolem_name(f)) {
        return Err(Error::SkolemCollision(f.to_string()));
    }
    let mut map = SkolemMap::default();
    let mut counter = 0usize;
    for c in clauses {
        for v in c.vars() {
            let k = Term::constant(&format!("{SKOLEM_PREFIX}{counter}"));
            counter += 1;
            map.forward.bind(v.clone(), k.clone());
            map.inverse.insert(k, v);
        }
    }
    let ground = clauses.iter().map(|c| map.apply(c)).collect();
    Ok((ground, map))
}

/// The complement of `c` under `s`: one ground unit clause per literal,
/// with the literal's sign flipped.
pub fn complement(c: &Clause, s: &SkolemMap) -> Result<Vec<Clause>> {
    let g = s.apply(c);
    if !g.is_ground() {
        return Err(Error::NotGround(g.to_string()));
    }
    Ok(g.iter().map(|l| Clause::new([l.complement()])).collect())
}
