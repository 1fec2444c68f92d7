//! θ-subsumption, clause reduction and least general generalization
//! under θ-subsumption (Plotkin's anti-unification).

use std::collections::{BTreeSet, HashMap};

use crate::clause::{var_floor, Bindings, Clause, Literal, Substitution, Term, Var};
use crate::error::{Error, Result};

/// Evidence that `c·substitution ⊆ d`: the substitution plus the target
/// literal index in `d` for every literal of `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsumptionWitness {
    pub substitution: Substitution,
    pub mapping: Vec<(usize, usize)>,
}

impl SubsumptionWitness {
    /// Re-checks the witness literal by literal.
    pub fn verify(&self, c: &Clause, d: &Clause) -> bool {
        self.mapping.len() == c.len()
            && self.mapping.iter().all(|&(i, j)| {
                i < c.len()
                    && j < d.len()
                    && self.substitution.apply_literal(&c.literals()[i]) == d.literals()[j]
            })
    }
}

struct Search<'a> {
    c: &'a [Literal],
    d: &'a [Literal],
    cands: Vec<Vec<usize>>,
    assign: Vec<Option<usize>>,
    b: Bindings,
}

impl<'a> Search<'a> {
    /// `None` when some literal of `c` has no candidate at all.
    fn new(c: &'a Clause, d: &'a Clause) -> Option<Self> {
        let (c, d) = (c.literals(), d.literals());
        let mut b = Bindings::default();
        let mut cands = Vec::with_capacity(c.len());
        for l in c {
            let cs: Vec<usize> = (0..d.len())
                .filter(|&j| b.probe_literal(l, &d[j]))
                .collect();
            if cs.is_empty() {
                return None;
            }
            cands.push(cs);
        }
        Some(Search {
            c,
            d,
            cands,
            assign: vec![None; c.len()],
            b,
        })
    }

    /// Depth-first search picking, at each node, the unassigned literal with
    /// the fewest candidates consistent with the current bindings. Candidates
    /// that move fewer variables are tried first.
    fn run(&mut self, accept: &mut dyn FnMut(&Bindings, &[Option<usize>]) -> bool) -> bool {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for i in 0..self.c.len() {
            if self.assign[i].is_some() {
                continue;
            }
            let mut scored: Vec<((usize, usize), usize)> = Vec::new();
            for &j in &self.cands[i] {
                if let Some(cost) = self.b.probe_cost(&self.c[i], &self.d[j]) {
                    scored.push((cost, j));
                }
            }
            scored.sort();
            let live: Vec<usize> = scored.into_iter().map(|(_, j)| j).collect();
            if live.is_empty() {
                return false;
            }
            if best.as_ref().is_none_or(|(_, l)| live.len() < l.len()) {
                let single = live.len() == 1;
                best = Some((i, live));
                if single {
                    break;
                }
            }
        }
        let Some((i, live)) = best else {
            return accept(&self.b, &self.assign);
        };
        for j in live {
            let m = self.b.mark();
            if self.b.match_literal(&self.c[i], &self.d[j]) {
                self.assign[i] = Some(j);
                if self.run(accept) {
                    return true;
                }
                self.assign[i] = None;
            }
            self.b.undo(m);
        }
        false
    }

    fn witness(&self) -> SubsumptionWitness {
        SubsumptionWitness {
            substitution: self.b.to_substitution(),
            mapping: self
                .assign
                .iter()
                .enumerate()
                .map(|(i, j)| (i, j.expect("complete assignment")))
                .collect(),
        }
    }
}

fn search_with(
    c: &Clause,
    d: &Clause,
    mut accept: impl FnMut(&Bindings, &[Option<usize>]) -> bool,
) -> Option<SubsumptionWitness> {
    if c.is_empty() {
        return accept(&Bindings::default(), &[]).then(|| SubsumptionWitness {
            substitution: Substitution::new(),
            mapping: Vec::new(),
        });
    }
    let mut s = Search::new(c, d)?;
    s.run(&mut accept).then(|| s.witness())
}

/// Decides `c ⪯ d`: is there θ with `cθ ⊆ d`? Variables of `d` are rigid.
pub fn theta_subsumes(c: &Clause, d: &Clause) -> Option<SubsumptionWitness> {
    let w = search_with(c, d, |_, _| true)?;
    debug_assert!(w.verify(c, d));
    Some(w)
}

pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    theta_subsumes(c, d).is_some()
}

/// `c ⪯ d` and `d ⪯ c`.
pub fn theta_equivalent(c: &Clause, d: &Clause) -> bool {
    subsumes(c, d) && subsumes(d, c)
}

/// Equal up to a bijective renaming of variables.
pub fn is_variant(c: &Clause, d: &Clause) -> bool {
    if c.len() != d.len() || c.vars().len() != d.vars().len() {
        return false;
    }
    search_with(c, d, |b, assign| {
        b.is_injective_renaming() && {
            let hit: BTreeSet<usize> = assign.iter().flatten().copied().collect();
            hit.len() == assign.len()
        }
    })
    .is_some()
}

/// One-way matching of clauses as sets: θ over `general`'s variables with
/// `general·θ == specific`.
pub fn match_clauses(general: &Clause, specific: &Clause) -> Option<Substitution> {
    let n = specific.len();
    search_with(general, specific, |_, assign| {
        let hit: BTreeSet<usize> = assign.iter().flatten().copied().collect();
        hit.len() == n
    })
    .map(|w| w.substitution)
}

/// A minimal θ-equivalent subset of `c`.
///
/// Literals are tried in canonical order; whenever `r ⪯ r − {l}` holds with
/// witness θ, `r` is replaced by `rθ`, which is a θ-equivalent proper subset.
pub fn reduce(c: &Clause) -> Clause {
    let mut r = c.clone();
    let mut kept: BTreeSet<Literal> = BTreeSet::new();
    while let Some(l) = r.iter().find(|l| !kept.contains(*l)).cloned() {
        let without = r.without(&l);
        match theta_subsumes(&r, &without) {
            Some(w) => r = w.substitution.apply_clause(&r),
            None => {
                kept.insert(l);
            }
        }
    }
    r
}

/// Injective table from term pairs to generated variables, shared across
/// one LGG computation.
#[derive(Debug, Clone)]
pub struct PairTable {
    map: HashMap<(Term, Term), Var>,
    order: Vec<(Term, Term)>,
    floor: u32,
}

impl PairTable {
    /// Generated variables get indices from `floor` upwards in insertion order.
    pub fn new(floor: u32) -> Self {
        PairTable {
            map: HashMap::new(),
            order: Vec::new(),
            floor,
        }
    }

    pub fn var_for(&mut self, s: &Term, t: &Term) -> Var {
        if let Some(v) = self.map.get(&(s.clone(), t.clone())) {
            return v.clone();
        }
        let v = Var::new("X", self.floor + self.order.len() as u32);
        self.map.insert((s.clone(), t.clone()), v.clone());
        self.order.push((s.clone(), t.clone()));
        v
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Pairs in insertion order with their generated variable.
    pub fn entries(&self) -> impl Iterator<Item = (&Term, &Term, &Var)> {
        self.order.iter().map(|(s, t)| (s, t, &self.map[&(s.clone(), t.clone())]))
    }

    pub fn anti_unify(&mut self, s: &Term, t: &Term) -> Term {
        if s == t {
            return s.clone();
        }
        match (s, t) {
            (Term::App(f, a), Term::App(g, b)) if f == g && a.len() == b.len() => Term::App(
                f.clone(),
                a.iter().zip(b).map(|(x, y)| self.anti_unify(x, y)).collect(),
            ),
            _ => Term::Var(self.var_for(s, t)),
        }
    }
}

/// Least general generalization of two clauses under θ-subsumption.
///
/// Every pair of literals with the same sign and predicate is anti-unified
/// through one shared [`PairTable`]. The result is not reduced.
pub fn lgg(c: &Clause, d: &Clause) -> Clause {
    let mut table = PairTable::new(var_floor([c, d]));
    lgg_with(c, d, &mut table)
}

pub fn lgg_with(c: &Clause, d: &Clause, table: &mut PairTable) -> Clause {
    let mut out = Vec::new();
    for a in c {
        for b in d {
            if a.compatible(b) {
                out.push(Literal {
                    sign: a.sign,
                    pred: a.pred.clone(),
                    args: a
                        .args
                        .iter()
                        .zip(&b.args)
                        .map(|(x, y)| table.anti_unify(x, y))
                        .collect(),
                });
            }
        }
    }
    Clause::new(out)
}

/// Left fold of [`lgg`] over `s`, reduced.
pub fn lgg_set(s: &[Clause]) -> Result<Clause> {
    lgg_set_from(s, var_floor(s))
}

/// As [`lgg_set`], with generated variables indexed from at least `floor`.
///
/// Intermediate results are reduced as the fold proceeds; the LGG of
/// θ-equivalent inputs is θ-equivalent, and the reduced form is unique up
/// to variants.
pub fn lgg_set_from(s: &[Clause], floor: u32) -> Result<Clause> {
    let (first, rest) = s
        .split_first()
        .ok_or(Error::EmptyInput("lgg of an empty clause set"))?;
    let floor = floor.max(var_floor(s));
    let mut acc = reduce(first);
    for d in rest {
        let mut table = PairTable::new(floor.max(var_floor([&acc, d])));
        acc = reduce(&lgg_with(&acc, d, &mut table));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_clause;

    fn cl(s: &str) -> Clause {
        parse_clause(s).unwrap()
    }

    fn c21() -> Clause {
        cl("p(X) :- q(X,Y), q(Y,Z), q(Z,W), q(W,X).")
    }
    fn d21() -> Clause {
        cl("p(X) :- q(X,Y), q(Y,X), q(X,X).")
    }
    fn e21() -> Clause {
        cl("p(X) :- q(X,X).")
    }

    #[test]
    fn cycle_subsumes_with_paper_witness() {
        let w = theta_subsumes(&c21(), &d21()).unwrap();
        assert!(w.verify(&c21(), &d21()));
        assert_eq!(w.substitution.to_string(), "{W -> Y, Z -> X}");
    }

    #[test]
    fn d_subsumes_e() {
        let w = theta_subsumes(&d21(), &e21()).unwrap();
        assert_eq!(w.substitution.to_string(), "{Y -> X}");
        assert!(subsumes(&e21(), &d21()));
    }

    #[test]
    fn reflexive_with_empty_substitution() {
        let w = theta_subsumes(&c21(), &c21()).unwrap();
        assert!(w.verify(&c21(), &c21()));
        // the first witness found maps every literal to itself
        assert!(w.substitution.is_empty());
    }

    #[test]
    fn equivalence_examples() {
        assert!(theta_equivalent(&d21(), &e21()));
        assert!(!is_variant(&d21(), &e21()));
        assert!(theta_equivalent(&c21(), &c21()));
        assert!(!theta_equivalent(&cl("p(a)."), &cl("q(a).")));
    }

    #[test]
    fn variant_detection() {
        assert!(is_variant(&cl("p(X,Y) :- q(Y)."), &cl("p(A,B) :- q(B).")));
        assert!(!is_variant(&cl("p(X,Y) :- q(Y)."), &cl("p(A,A) :- q(A).")));
        assert!(!is_variant(&cl("p(X,Y)."), &cl("p(X,a).")));
        // swapped variable names
        assert!(is_variant(&cl("p(X,Y) :- q(X)."), &cl("p(Y,X) :- q(Y).")));
    }

    #[test]
    fn exact_match() {
        let g = cl("p(X); p(Y).");
        assert!(match_clauses(&g, &cl("p(a); p(b).")).is_some());
        assert!(match_clauses(&g, &cl("p(a).")).is_some());
        assert!(match_clauses(&cl("p(X)."), &cl("p(a); p(b).")).is_none());
    }

    #[test]
    fn reduce_examples() {
        let f = cl("p(Y) :- q(Y), q(b), q(Z), q(W).");
        assert_eq!(reduce(&f), cl("p(Y) :- q(Y), q(b)."));
        let r = reduce(&d21());
        assert!(is_variant(&r, &e21()));
        assert_eq!(reduce(&e21()), e21());
    }

    #[test]
    fn lgg_of_paper_pairs() {
        let e = lgg(&cl("p(f(a)) :- p(a)."), &cl("p(f(f(b))) :- p(b)."));
        assert!(theta_equivalent(&e, &cl("p(f(X)) :- p(Y).")));

        let e = lgg(&cl("p(a) :- q(a), q(b)."), &cl("p(b) :- q(b), q(X)."));
        assert!(theta_equivalent(&e, &cl("p(Y) :- q(Y), q(b).")));
        assert!(theta_equivalent(&e, &cl("p(Y) :- q(Y), q(b), q(Z), q(W).")));
    }

    #[test]
    fn lgg_idempotent_up_to_equivalence() {
        let c = c21();
        assert!(theta_equivalent(&lgg(&c, &c), &c));
    }

    #[test]
    fn lgg_of_incompatible_is_empty() {
        assert!(lgg(&cl("p(a)."), &cl(":- p(a).")).is_empty());
    }

    #[test]
    fn lgg_set_expansion_example() {
        let s = [
            cl("p(f(f(f(a)))) :- p(f(f(a))), p(a)."),
            cl("p(f(f(f(a)))); p(f(f(a))); p(f(a)) :- p(a)."),
            cl("p(f(f(f(a)))); p(f(f(a))) :- p(f(a)), p(a)."),
        ];
        let e = lgg_set(&s).unwrap();
        assert!(theta_equivalent(&e, &cl("p(f(X)); p(f(f(f(a)))) :- p(a), p(X).")));
        assert_eq!(e.len(), 4);
        assert!(lgg_set(&[]).is_err());
        assert_eq!(lgg_set(&[e21()]).unwrap(), e21());
    }

    #[test]
    fn generated_variables_follow_insertion_order() {
        let e = lgg(&cl("p(a,b)."), &cl("p(b,a)."));
        assert_eq!(e.to_string(), "p(X_1,X_2).");
    }
}
