use std::collections::BTreeSet;

use crate::clause::{rename_apart, skolemize, variable_disjoint, Clause, SkolemMap, Symbol, Term};
use crate::error::{Error, Result};
use crate::subsumption::is_variant;

/// A finite, subterm-closed set of ground terms together with the
/// Skolemization of the clauses it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSet {
    terms: BTreeSet<Term>,
    skolem: SkolemMap,
    origin: Vec<Clause>,
    skolemized: Vec<Clause>,
    functors: BTreeSet<(Symbol, usize)>,
}

impl TermSet {
    pub fn terms(&self) -> &BTreeSet<Term> {
        &self.terms
    }

    pub fn skolem(&self) -> &SkolemMap {
        &self.skolem
    }

    /// The clauses the set was computed from, after renaming apart.
    pub fn origin(&self) -> &[Clause] {
        &self.origin
    }

    pub fn skolemized(&self) -> &[Clause] {
        &self.skolemized
    }

    /// Functors available to [`TermSet::extend`].
    pub fn functors(&self) -> &BTreeSet<(Symbol, usize)> {
        &self.functors
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    pub fn is_subterm_closed(&self) -> bool {
        let mut all = BTreeSet::new();
        for t in &self.terms {
            t.collect_subterms(&mut all);
        }
        all.len() == self.terms.len()
    }

    /// True iff `g` is ground and all its terms and subterms are members.
    pub fn covers(&self, g: &Clause) -> bool {
        g.is_ground()
            && g.iter().all(|l| {
                let mut sub = BTreeSet::new();
                for a in &l.args {
                    a.collect_subterms(&mut sub);
                }
                sub.is_subset(&self.terms)
            })
    }

    /// Skolemized form of `d` under this set, trying `d` itself first and
    /// then a variant of it among the origin clauses.
    pub fn ground_target(&self, d: &Clause) -> Result<Clause> {
        let g = self.skolem.apply(d);
        if self.covers(&g) {
            return Ok(g);
        }
        self.origin
            .iter()
            .zip(&self.skolemized)
            .find(|(o, _)| is_variant(o, d))
            .map(|(_, s)| s.clone())
            .filter(|s| self.covers(s))
            .ok_or_else(|| Error::TermSetCoverage(d.to_string()))
    }

    /// Adds `rounds` rounds of applying every functor to existing terms.
    pub fn extend(&self, rounds: usize) -> TermSet {
        let mut out = self.clone();
        for _ in 0..rounds {
            let current: Vec<Term> = out.terms.iter().cloned().collect();
            let mut added = Vec::new();
            for (f, n) in &self.functors {
                for_each_tuple(&current, *n, &mut |args| {
                    added.push(Term::App(f.clone(), args.to_vec()));
                });
            }
            out.terms.extend(added);
        }
        out
    }

    /// Adds explicit ground terms and their subterms.
    pub fn with_terms(&self, extra: impl IntoIterator<Item = Term>) -> Result<TermSet> {
        let mut out = self.clone();
        for t in extra {
            if !t.is_ground() {
                return Err(Error::NotGround(t.to_string()));
            }
            t.collect_subterms(&mut out.terms);
        }
        Ok(out)
    }
}

pub(crate) fn for_each_tuple(pool: &[Term], n: usize, f: &mut dyn FnMut(&[Term])) {
    fn go(pool: &[Term], n: usize, buf: &mut Vec<Term>, f: &mut dyn FnMut(&[Term])) {
        if buf.len() == n {
            f(buf);
            return;
        }
        for t in pool {
            buf.push(t.clone());
            go(pool, n, buf, f);
            buf.pop();
        }
    }
    go(pool, n, &mut Vec::with_capacity(n), f)
}

/// The minimal term set of `s`, extended by `extra_depth` rounds of the
/// functors of `s` and `context`.
///
/// Clauses of `s` are renamed apart first unless they already are
/// variable-disjoint; Skolem constants avoid the functors of `context`.
pub fn term_set(s: &[Clause], context: &[Clause], extra_depth: usize) -> Result<TermSet> {
    let origin = if variable_disjoint(s) {
        s.to_vec()
    } else {
        rename_apart(s)
    };
    let (skolemized, skolem) = skolemize(&origin, context)?;
    let mut terms = BTreeSet::new();
    for c in &skolemized {
        for l in c {
            for a in &l.args {
                a.collect_subterms(&mut terms);
            }
        }
    }
    let mut functors = BTreeSet::new();
    for c in origin.iter().chain(context) {
        functors.extend(c.functors());
    }
    let t = TermSet {
        terms,
        skolem,
        origin,
        skolemized,
        functors,
    };
    Ok(if extra_depth > 0 { t.extend(extra_depth) } else { t })
}
