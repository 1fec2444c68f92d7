use std::collections::HashMap;

use super::subst::Substitution;
use super::term::{var_floor, Clause, Literal, Term, Var};

/// Most general unifier of a list of term pairs, with occurs check.
pub fn unify_pairs(pairs: impl IntoIterator<Item = (Term, Term)>) -> Option<Substitution> {
    let mut work: Vec<(Term, Term)> = pairs.into_iter().collect();
    let mut s = Substitution::new();
    while let Some((a, b)) = work.pop() {
        let a = s.apply_term(&a);
        let b = s.apply_term(&b);
        if a == b {
            continue;
        }
        match (a, b) {
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if t.occurs(&x) {
                    return None;
                }
                s = s.compose(&Substitution::from_pairs([(x, t)]));
            }
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return None;
                }
                work.extend(fa.into_iter().zip(ga));
            }
        }
    }
    Some(s)
}

/// Most general unifier of a set of terms.
pub fn unify_terms(terms: &[Term]) -> Option<Substitution> {
    let Some(first) = terms.first() else {
        return Some(Substitution::new());
    };
    unify_pairs(terms[1..].iter().map(|t| (first.clone(), t.clone())))
}

/// Most general unifier of a set of literals. Literals must agree on sign,
/// predicate and arity; to resolve `A` against `B` complement `B` first.
pub fn unify_literals(lits: &[Literal]) -> Option<Substitution> {
    let Some(first) = lits.first() else {
        return Some(Substitution::new());
    };
    if lits.iter().any(|l| !l.compatible(first)) {
        return None;
    }
    unify_pairs(
        lits[1..]
            .iter()
            .flat_map(|l| first.args.iter().cloned().zip(l.args.iter().cloned())),
    )
}

/// Variants of `clauses` that share no variables with each other, using
/// indices above every index present in the input. Ground clauses are unchanged.
pub fn rename_apart(clauses: &[Clause]) -> Vec<Clause> {
    let mut next = var_floor(clauses);
    clauses
        .iter()
        .map(|c| {
            let n = c.vars().len() as u32;
            let r = c.rename_from(next);
            next += n;
            r
        })
        .collect()
}

pub fn variable_disjoint(clauses: &[Clause]) -> bool {
    let mut seen: Vec<Var> = Vec::new();
    for c in clauses {
        let vs = c.vars();
        if vs.iter().any(|v| seen.contains(v)) {
            return false;
        }
        seen.extend(vs);
    }
    true
}

/// All factors of `c`: instances `cγ` with γ an mgu of a subset of
/// literals, closed under repeated factoring. The first element is `c`.
/// Deduplicated up to variants.
pub fn factors(c: &Clause) -> Vec<Clause> {
    let mut out = VariantSet::default();
    out.insert(c.clone());
    let mut frontier = vec![c.clone()];
    while let Some(cur) = frontier.pop() {
        for f in single_step_factors(&cur) {
            if out.insert(f.clone()) {
                frontier.push(f);
            }
        }
    }
    out.into_vec()
}

fn single_step_factors(c: &Clause) -> Vec<Clause> {
    let lits = c.literals();
    let mut groups: HashMap<(super::term::Sign, &str, usize), Vec<usize>> = HashMap::new();
    for (i, l) in lits.iter().enumerate() {
        groups
            .entry((l.sign, &*l.pred, l.args.len()))
            .or_default()
            .push(i);
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort();
    let mut out = Vec::new();
    for k in keys {
        let idx = &groups[&k];
        if idx.len() < 2 || idx.len() > 16 {
            continue;
        }
        for mask in 1u32..(1 << idx.len()) {
            if mask.count_ones() < 2 {
                continue;
            }
            let subset: Vec<Literal> = idx
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| lits[i].clone())
                .collect();
            if let Some(g) = unify_literals(&subset) {
                out.push(g.apply_clause(c));
            }
        }
    }
    out
}

/// Key that agrees on variants: the literal multiset with every variable
/// replaced by one placeholder.
fn variant_key(c: &Clause) -> Vec<Literal> {
    let placeholder = Term::Var(Var::new("_", 0));
    let mut key: Vec<Literal> = c
        .iter()
        .map(|l| l.map_vars(&mut |_| placeholder.clone()))
        .collect();
    key.sort();
    key
}

/// Set of clauses deduplicated up to variable renaming, in insertion order.
#[derive(Default, Clone)]
pub struct VariantSet {
    buckets: HashMap<Vec<Literal>, Vec<usize>>,
    items: Vec<Clause>,
}

impl VariantSet {
    /// Returns false when a variant is already present.
    pub fn insert(&mut self, c: Clause) -> bool {
        let key = variant_key(&c);
        let bucket = self.buckets.entry(key).or_default();
        if bucket
            .iter()
            .any(|&i| crate::subsumption::is_variant(&self.items[i], &c))
        {
            return false;
        }
        bucket.push(self.items.len());
        self.items.push(c);
        true
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.buckets
            .get(&variant_key(c))
            .is_some_and(|b| b.iter().any(|&i| crate::subsumption::is_variant(&self.items[i], c)))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.items.iter()
    }

    pub fn into_vec(self) -> Vec<Clause> {
        self.items
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause, parse_term};

    fn lit(s: &str) -> Literal {
        parse_clause(&format!("{s}.")).unwrap().literals()[0].clone()
    }

    #[test]
    fn unify_one_binding() {
        let s = unify_literals(&[lit("p(X)"), lit("p(f(Y))")]).unwrap();
        assert_eq!(s.to_string(), "{X -> f(Y)}");
    }

    #[test]
    fn unify_predicate_clash() {
        assert!(unify_literals(&[lit("p(X)"), lit("q(X)")]).is_none());
    }

    #[test]
    fn unify_occurs_check() {
        assert!(unify_literals(&[lit("p(X,f(X))"), lit("p(Y,Y)")]).is_none());
    }

    #[test]
    fn unify_terms_arity_clash() {
        let a = parse_term("f(a)").unwrap();
        let b = parse_term("f(a,b)").unwrap();
        assert!(unify_terms(&[a, b]).is_none());
    }

    #[test]
    fn rename_apart_disjoint_variants() {
        let c = parse_clause("p(X) :- q(X).").unwrap();
        let d = parse_clause("p(X) :- r(X).").unwrap();
        let out = rename_apart(&[c.clone(), d.clone()]);
        assert!(variable_disjoint(&out));
        assert!(crate::subsumption::is_variant(&out[0], &c));
        assert!(crate::subsumption::is_variant(&out[1], &d));

        let twice = rename_apart(&[c.clone(), c.clone()]);
        assert!(variable_disjoint(&twice));
        assert!(crate::subsumption::is_variant(&twice[0], &twice[1]));

        let g = parse_clause("p(a) :- q(b).").unwrap();
        assert_eq!(rename_apart(std::slice::from_ref(&g)), vec![g]);
    }

    #[test]
    fn factor_merges_pair() {
        let c = parse_clause("p(X); p(f(Y)).").unwrap();
        let fs = factors(&c);
        let merged = parse_clause("p(f(Y)).").unwrap();
        assert!(fs.iter().any(|f| crate::subsumption::is_variant(f, &merged)));
        assert!(crate::subsumption::is_variant(&fs[0], &c));
    }

    #[test]
    fn factor_trivial_cases() {
        let g = parse_clause("p(a); p(b) :- q(a).").unwrap();
        assert_eq!(factors(&g), vec![g.clone()]);
        let h = parse_clause("p(X) :- q(X).").unwrap();
        assert_eq!(factors(&h), vec![h.clone()]);
        // mixed signs on one predicate never merge
        let r = parse_clause("p(X) :- p(Y).").unwrap();
        assert_eq!(factors(&r).len(), 1);
    }

    #[test]
    fn factor_closure_reaches_two_groups() {
        let c = parse_clause("p(X); p(a); q(Y); q(b).").unwrap();
        let both = parse_clause("p(a); q(b).").unwrap();
        assert!(factors(&c)
            .iter()
            .any(|f| crate::subsumption::is_variant(f, &both)));
    }
}
