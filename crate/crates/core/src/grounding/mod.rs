//! Term sets, instance sets, ground entailment and T-implication.

mod sat;
mod termset;

use std::collections::BTreeSet;

pub use sat::{ground_entails, satisfiable, Cnf, GroundAtomAlphabet};
pub use termset::{term_set, TermSet};
pub(crate) use termset::for_each_tuple;

use crate::clause::{rename_apart, Clause, Substitution, Term};
use crate::error::{Error, Result};
use crate::subsumption::subsumes;

pub const DEFAULT_MAX_INSTANCES: usize = 1_000_000;

/// All ground instances of `source` with variables drawn from `universe`.
#[derive(Clone, Debug)]
pub struct InstanceSet {
    pub clauses: Vec<Clause>,
    pub source: Clause,
    pub universe: TermSet,
}

fn instance_count(vars: usize, terms: usize, cap: usize) -> Result<usize> {
    let mut n: usize = 1;
    for _ in 0..vars {
        n = n.saturating_mul(terms);
    }
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "instance set size",
            count: n,
            cap,
            flag: "--max-instances",
        });
    }
    Ok(n)
}

/// Instances of `c` over `terms`, deduplicated and sorted. Empty when `c`
/// has variables and `terms` is empty.
pub(crate) fn instances(c: &Clause, terms: &BTreeSet<Term>, cap: usize) -> Result<Vec<Clause>> {
    let vars = c.vars();
    instance_count(vars.len(), terms.len(), cap)?;
    let pool: Vec<Term> = terms.iter().cloned().collect();
    let mut out = BTreeSet::new();
    termset::for_each_tuple(&pool, vars.len(), &mut |ts| {
        let s = Substitution::from_pairs(vars.iter().cloned().zip(ts.iter().cloned()));
        out.insert(s.apply_clause(c));
    });
    Ok(out.into_iter().collect())
}

pub fn instance_set(c: &Clause, t: &TermSet) -> Result<InstanceSet> {
    instance_set_capped(c, t, DEFAULT_MAX_INSTANCES)
}

pub fn instance_set_capped(c: &Clause, t: &TermSet, cap: usize) -> Result<InstanceSet> {
    if !c.is_ground() && t.is_empty() {
        return Err(Error::EmptyTermSet);
    }
    Ok(InstanceSet {
        clauses: instances(c, t.terms(), cap)?,
        source: c.clone(),
        universe: t.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TImplyOptions {
    /// Answer from sign-separated subsumption and, for non-ambivalent
    /// targets, plain subsumption, before grounding.
    pub prefilters: bool,
    pub max_instances: usize,
}

impl Default for TImplyOptions {
    fn default() -> Self {
        TImplyOptions {
            prefilters: true,
            max_instances: DEFAULT_MAX_INSTANCES,
        }
    }
}

/// Does `c` T-imply `d`? Without `t`, the minimal term set of `d` is used,
/// with Skolem constants chosen apart from the symbols of `c`.
pub fn t_implies(c: &Clause, d: &Clause, t: Option<&TermSet>) -> Result<bool> {
    t_implies_with(c, d, t, &TImplyOptions::default())
}

pub fn t_implies_with(
    c: &Clause,
    d: &Clause,
    t: Option<&TermSet>,
    opts: &TImplyOptions,
) -> Result<bool> {
    let owned;
    let t = match t {
        Some(t) => t,
        None => {
            owned = term_set(std::slice::from_ref(d), std::slice::from_ref(c), 0)?;
            &owned
        }
    };
    let goal = t.ground_target(d)?;
    if opts.prefilters {
        if d.is_tautology() {
            return Ok(true);
        }
        if !subsumes(&c.positive(), &d.positive()) || !subsumes(&c.negative(), &d.negative()) {
            return Ok(false);
        }
        if !d.is_ambivalent() {
            return Ok(subsumes(c, d));
        }
    }
    let premises = instances(c, t.terms(), opts.max_instances)?;
    ground_entails(&premises, &goal)
}

/// T-implication in both directions over one joint term set of `c` and `d`
/// renamed apart.
pub fn t_equivalent(c: &Clause, d: &Clause) -> Result<bool> {
    t_equivalent_with(c, d, 0, &TImplyOptions::default())
}

pub fn t_equivalent_with(
    c: &Clause,
    d: &Clause,
    extra_depth: usize,
    opts: &TImplyOptions,
) -> Result<bool> {
    let pair = rename_apart(&[c.clone(), d.clone()]);
    let t = term_set(&pair, &[], extra_depth)?;
    Ok(t_implies_with(&pair[0], &pair[1], Some(&t), opts)?
        && t_implies_with(&pair[1], &pair[0], Some(&t), opts)?)
}

/// True iff `c` T-implies every member of `s` with respect to `t`.
pub fn is_generalization_t(c: &Clause, s: &[Clause], t: &TermSet) -> Result<bool> {
    is_generalization_t_with(c, s, t, &TImplyOptions::default())
}

pub fn is_generalization_t_with(
    c: &Clause,
    s: &[Clause],
    t: &TermSet,
    opts: &TImplyOptions,
) -> Result<bool> {
    for d in s {
        if !t_implies_with(c, d, Some(t), opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause, parse_term};

    fn cl(s: &str) -> Clause {
        parse_clause(s).unwrap()
    }

    const RAW: TImplyOptions = TImplyOptions {
        prefilters: false,
        max_instances: DEFAULT_MAX_INSTANCES,
    };

    #[test]
    fn instance_set_of_successor_clause() {
        let c = cl("p(f(X)) :- p(X).");
        let a = term_set(&[cl("p(a).")], &[], 0).unwrap();
        let t = a
            .with_terms([parse_term("f(f(a))").unwrap()])
            .unwrap();
        let i = instance_set(&c, &t).unwrap();
        let got: BTreeSet<Clause> = i.clauses.into_iter().collect();
        let want: BTreeSet<Clause> = [
            cl("p(f(a)) :- p(a)."),
            cl("p(f(f(a))) :- p(f(a))."),
            cl("p(f(f(f(a)))) :- p(f(f(a))).")
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn instance_bounds() {
        let t = term_set(&[cl("p(a,b,c).")], &[], 0).unwrap();
        assert_eq!(instance_set(&cl("q(a).") , &t).unwrap().clauses.len(), 1);
        assert!(instance_set(&cl("q(X,Y).") , &t).unwrap().clauses.len() <= 9);
        let empty = term_set(&[cl("q.")], &[], 0).unwrap();
        assert_eq!(instance_set(&cl("q(X)."), &empty).unwrap_err(), Error::EmptyTermSet);
        let err = instance_set_capped(&cl("q(X,Y)."), &t, 8).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { count: 9, cap: 8, .. }));
    }

    #[test]
    fn power_is_t_implied() {
        let c = cl("p(f(X)) :- p(X).");
        let d = cl("p(f(f(Y))) :- p(Y).");
        for o in [TImplyOptions::default(), RAW] {
            assert!(t_implies_with(&c, &d, None, &o).unwrap());
            assert!(!t_implies_with(&d, &c, None, &o).unwrap());
        }
    }

    #[test]
    fn depth_extension_changes_answer() {
        let c = cl("p(f(X),Y) :- p(Z,X).");
        let e = cl("p(f(a),a) :- p(a,f(a)).");
        let t0 = term_set(std::slice::from_ref(&e), std::slice::from_ref(&c), 0).unwrap();
        let t1 = term_set(std::slice::from_ref(&e), std::slice::from_ref(&c), 1).unwrap();
        assert_eq!(t1.len(), 3);
        for o in [TImplyOptions::default(), RAW] {
            assert!(!t_implies_with(&c, &e, Some(&t0), &o).unwrap());
            assert!(t_implies_with(&c, &e, Some(&t1), &o).unwrap());
        }
    }

    #[test]
    fn reflexive() {
        let c = cl("p(X) :- q(X,Y), q(Y,Z), q(Z,W), q(W,X).");
        assert!(t_implies(&c, &c, None).unwrap());
        assert!(t_implies_with(&c, &c, None, &RAW).unwrap());
    }

    #[test]
    fn rotation_clauses_are_equivalent() {
        let c = cl("p(X,Y,Z) :- p(Y,Z,X).");
        let d = cl("p(X,Y,Z) :- p(Z,X,Y).");
        assert!(t_equivalent(&c, &d).unwrap());
        assert!(t_equivalent_with(&c, &d, 0, &RAW).unwrap());
        assert!(t_equivalent(&c, &c).unwrap());
        assert!(!t_equivalent(&cl("p(f(X)) :- p(X)."), &cl("p(f(f(Y))) :- p(Y).")).unwrap());
    }

    #[test]
    fn generalizations_of_pair() {
        let s = [cl("p(f(a)) :- p(a)."), cl("p(f(f(b))) :- p(b).")];
        let t = term_set(&s, &[], 0).unwrap();
        assert!(is_generalization_t(&cl("p(f(Z)) :- p(Z)."), &s, &t).unwrap());
        assert!(is_generalization_t(&cl("p(f(X)) :- p(Y)."), &s, &t).unwrap());
        assert!(!is_generalization_t(&cl("q(a)."), &s, &t).unwrap());
    }

    #[test]
    fn uncovered_target_is_a_fault() {
        let t = term_set(&[cl("p(a).")], &[], 0).unwrap();
        assert!(matches!(
            t_implies(&cl("p(X)."), &cl("p(b)."), Some(&t)),
            Err(Error::TermSetCoverage(_))
        ));
    }
}
