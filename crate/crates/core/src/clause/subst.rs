use std::collections::BTreeMap;
use std::fmt;

use super::term::{Clause, Literal, Term, Var};

/// A finite mapping from variables to terms, applied simultaneously.
///
/// Identity bindings (`X -> X`) are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Adds or overwrites a binding; identity bindings are dropped.
    pub fn bind(&mut self, v: Var, t: Term) {
        if t == Term::Var(v.clone()) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }


    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.map.get(v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        t.map_vars(&mut |v| self.map.get(v).cloned().unwrap_or_else(|| Term::Var(v.clone())))
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        Literal {
            sign: l.sign,
            pred: l.pred.clone(),
            args: l.args.iter().map(|a| self.apply_term(a)).collect(),
        }
    }

    pub fn apply_clause(&self, c: &Clause) -> Clause {
        c.map_literals(|l| self.apply_literal(l))
    }

    /// `self` then `other`: `t·compose(s1, s2) = (t·s1)·s2`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.map {
            out.bind(v.clone(), other.apply_term(t));
        }
        for (v, t) in &other.map {
            if !self.map.contains_key(v) {
                out.bind(v.clone(), t.clone());
            }
        }
        out
    }

    /// True iff every binding maps to a distinct variable.
    pub fn is_renaming(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.map
            .values()
            .all(|t| matches!(t, Term::Var(v) if seen.insert(v.clone())))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {t}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Binding store with an undo trail, used by the backtracking searches.
#[derive(Default, Clone)]
pub(crate) struct Bindings {
    map: BTreeMap<Var, Term>,
    trail: Vec<Var>,
}

impl Bindings {
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.map.remove(&v);
        }
    }


    fn bind(&mut self, v: Var, t: Term) {
        self.trail.push(v.clone());
        self.map.insert(v, t);
    }

    /// One-way matching of `pattern` onto `target`; variables of `target`
    /// are rigid. Leaves partial bindings on failure; callers undo to a mark.
    pub fn match_term(&mut self, pattern: &Term, target: &Term) -> bool {
        match pattern {
            Term::Var(v) => match self.map.get(v) {
                Some(bound) => bound == target,
                None => {
                    self.bind(v.clone(), target.clone());
                    true
                }
            },
            Term::App(f, args) => match target {
                Term::App(g, targs) if f == g && args.len() == targs.len() => args
                    .iter()
                    .zip(targs)
                    .all(|(a, b)| self.match_term(a, b)),
                _ => false,
            },
        }
    }

    pub fn match_literal(&mut self, pattern: &Literal, target: &Literal) -> bool {
        pattern.compatible(target)
            && pattern
                .args
                .iter()
                .zip(&target.args)
                .all(|(a, b)| self.match_term(a, b))
    }

    /// Checks whether `pattern` matches `target` without keeping any binding.
    pub fn probe_literal(&mut self, pattern: &Literal, target: &Literal) -> bool {
        let m = self.mark();
        let ok = self.match_literal(pattern, target);
        self.undo(m);
        ok
    }

    /// Like [`Self::probe_literal`], also scoring the new bindings: first by
    /// how many move a variable, then by how many merge two variables.
    pub fn probe_cost(&mut self, pattern: &Literal, target: &Literal) -> Option<(usize, usize)> {
        let m = self.mark();
        let ok = self.match_literal(pattern, target);
        let (mut moved, mut merged) = (0, 0);
        for v in &self.trail[m..] {
            let t = &self.map[v];
            if *t != Term::Var(v.clone()) {
                moved += 1;
                if self.map.iter().any(|(w, u)| w != v && u == t) {
                    merged += 1;
                }
            }
        }
        self.undo(m);
        ok.then_some((moved, merged))
    }

    /// True iff every bound variable maps to a variable and no two share an image.
    pub fn is_injective_renaming(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.map
            .values()
            .all(|t| matches!(t, Term::Var(v) if seen.insert(v.clone())))
    }

    pub fn to_substitution(&self) -> Substitution {
        Substitution::from_pairs(self.map.iter().map(|(v, t)| (v.clone(), t.clone())))
    }
}

/// One-way matching: a substitution `s` over the variables of `general`
/// with `general·s == specific`.
pub fn match_terms(general: &Term, specific: &Term) -> Option<Substitution> {
    let mut b = Bindings::default();
    b.match_term(general, specific).then(|| b.to_substitution())
}

pub fn match_literals(general: &Literal, specific: &Literal) -> Option<Substitution> {
    let mut b = Bindings::default();
    b.match_literal(general, specific).then(|| b.to_substitution())
}
