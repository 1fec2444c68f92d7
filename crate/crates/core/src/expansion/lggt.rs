use std::collections::BTreeSet;

use crate::clause::{Clause, Literal, Sign, Symbol, Term, Var, VariantSet};
use crate::error::{Error, Result};
use crate::grounding::{is_generalization_t_with, t_implies_with, term_set, TermSet};
use crate::subsumption::{lgg_set, reduce, subsumes};

use super::{t_complete_expansion, AuditOptions, Expansion, DEFAULT_MAX_SCRIPT_LEN};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LggtOptions {
    pub max_len: usize,
    pub audit: AuditOptions,
}

impl Default for LggtOptions {
    fn default() -> Self {
        LggtOptions {
            max_len: DEFAULT_MAX_SCRIPT_LEN,
            audit: AuditOptions::default(),
        }
    }
}

/// A least general generalization under T-implication with the
/// expansions it was built from.
#[derive(Clone, Debug)]
pub struct Lggt {
    pub clause: Clause,
    pub expansions: Vec<Expansion>,
    pub term_set: TermSet,
}

/// `p(X1,…,Xn) ∨ ¬p(X1,…,Xn)` for the first predicate of `s`.
fn canonical_tautology(s: &[Clause]) -> Clause {
    let (p, n) = s
        .iter()
        .flat_map(|c| c.predicates())
        .next()
        .unwrap_or((crate::clause::sym("true"), 0));
    let args: Vec<Term> = (0..n as u32).map(|i| Term::Var(Var::new("X", i))).collect();
    Clause::new([
        Literal {
            sign: Sign::Pos,
            pred: p.clone(),
            args: args.clone(),
        },
        Literal {
            sign: Sign::Neg,
            pred: p,
            args,
        },
    ])
}

/// LGGT of `s` with respect to `t` (default: the minimal term set of `s`).
///
/// Tautologies are dropped. Each remaining clause is replaced by a
/// T-complete expansion, their LGG is reduced, and the result is checked
/// to T-imply every non-tautological member of `s`.
pub fn lggt(s: &[Clause], t: Option<&TermSet>, opts: &LggtOptions) -> Result<Lggt> {
    if s.is_empty() {
        return Err(Error::EmptyInput("lggt of an empty clause set"));
    }
    let owned;
    let t = match t {
        Some(t) => t,
        None => {
            owned = term_set(s, &[], 0)?;
            &owned
        }
    };
    let live: Vec<Clause> = s.iter().filter(|c| !c.is_tautology()).cloned().collect();
    if live.is_empty() {
        return Ok(Lggt {
            clause: canonical_tautology(s),
            expansions: Vec::new(),
            term_set: t.clone(),
        });
    }
    let expansions = live
        .iter()
        .map(|d| t_complete_expansion(d, t, opts.max_len, &opts.audit))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<Clause> = expansions.iter().map(|e| e.result.clone()).collect();
    let clause = reduce(&lgg_set(&results)?).tidy();
    if !is_generalization_t_with(&clause, &live, t, &opts.audit.t_opts)? {
        return Err(Error::Verification(format!(
            "{clause} does not T-imply every input clause"
        )));
    }
    Ok(Lggt {
        clause,
        expansions,
        term_set: t.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteBounds {
    pub size: usize,
    pub depth: usize,
    pub max_candidates: usize,
}

impl Default for BruteBounds {
    fn default() -> Self {
        BruteBounds {
            size: 2,
            depth: 2,
            max_candidates: 500_000,
        }
    }
}

fn hole() -> Term {
    Term::Var(Var::new("_", 0))
}

/// Term shapes of depth at most `depth`, holes standing for variables.
fn shapes(functors: &[(Symbol, usize)], depth: usize) -> Vec<Term> {
    let mut level = vec![hole()];
    level.extend(
        functors
            .iter()
            .filter(|(_, n)| *n == 0)
            .map(|(f, _)| Term::App(f.clone(), vec![])),
    );
    for _ in 1..depth {
        let mut next = level.clone();
        for (f, n) in functors.iter().filter(|(_, n)| *n > 0) {
            crate::grounding::for_each_tuple(&level, *n, &mut |args| {
                next.push(Term::App(f.clone(), args.to_vec()));
            });
        }
        next.sort();
        next.dedup();
        level = next;
    }
    level
}

fn count_holes(l: &Literal) -> usize {
    let mut n = 0;
    l.map_vars(&mut |_| {
        n += 1;
        hole()
    });
    n
}

/// Every clause with at most `bounds.size` literals and term depth at most
/// `bounds.depth` over the predicates and functors of `s`, up to variants.
fn enumerate_clauses(s: &[Clause], bounds: &BruteBounds) -> Result<Vec<Clause>> {
    let preds: BTreeSet<(Symbol, usize)> = s.iter().flat_map(Clause::predicates).collect();
    let functors: Vec<(Symbol, usize)> = s
        .iter()
        .flat_map(Clause::functors)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let terms = shapes(&functors, bounds.depth);
    let mut lits: Vec<Literal> = Vec::new();
    for (p, n) in &preds {
        crate::grounding::for_each_tuple(&terms, *n, &mut |args| {
            for sign in [Sign::Pos, Sign::Neg] {
                lits.push(Literal {
                    sign,
                    pred: p.clone(),
                    args: args.to_vec(),
                });
            }
        });
    }
    let mut out = VariantSet::default();
    out.insert(Clause::empty());
    let mut overflow = false;
    let mut pick = Vec::new();
    multisets(lits.len(), bounds.size, 0, &mut pick, &mut |idx| {
        if overflow {
            return;
        }
        let holes: usize = idx.iter().map(|&i| count_holes(&lits[i])).sum();
        restricted_growth(holes, &mut |vars| {
            let mut it = vars.iter().copied();
            let c = Clause::new(idx.iter().map(|&i| {
                lits[i].map_vars(&mut |_| Term::Var(Var::new("X", it.next().unwrap())))
            }));
            if c.len() == idx.len() {
                out.insert(c);
            }
        });
        overflow = out.len() > bounds.max_candidates;
    });
    if overflow {
        return Err(Error::ResourceLimit {
            what: "enumerated clauses",
            count: out.len(),
            cap: bounds.max_candidates,
            flag: "--max-candidates",
        });
    }
    Ok(out.into_vec())
}

fn multisets(n: usize, max: usize, start: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if !buf.is_empty() {
        f(buf);
    }
    if buf.len() == max {
        return;
    }
    for i in start..n {
        buf.push(i);
        multisets(n, max, i, buf, f);
        buf.pop();
    }
}

fn restricted_growth(n: usize, f: &mut dyn FnMut(&[u32])) {
    fn go(n: usize, buf: &mut Vec<u32>, next: u32, f: &mut dyn FnMut(&[u32])) {
        if buf.len() == n {
            f(buf);
            return;
        }
        for v in 0..=next {
            buf.push(v);
            go(n, buf, next.max(v + 1), f);
            buf.pop();
        }
    }
    go(n, &mut Vec::with_capacity(n), 0, f)
}

/// Reference LGGT by exhaustive enumeration of bounded clauses over the
/// symbols of `s`.
///
/// Keeps every enumerated clause that T-implies each non-tautological
/// member of `s` with respect to `t`, and returns one that every kept
/// clause T-implies with respect to its own minimal term set.
pub fn lggt_bruteforce(s: &[Clause], t: Option<&TermSet>, bounds: &BruteBounds) -> Result<Clause> {
    if s.is_empty() {
        return Err(Error::EmptyInput("lggt of an empty clause set"));
    }
    let owned;
    let t = match t {
        Some(t) => t,
        None => {
            owned = term_set(s, &[], 0)?;
            &owned
        }
    };
    let live: Vec<Clause> = s.iter().filter(|c| !c.is_tautology()).cloned().collect();
    let opts = crate::grounding::TImplyOptions::default();
    let mut kept = Vec::new();
    for c in enumerate_clauses(s, bounds)? {
        if is_generalization_t_with(&c, &live, t, &opts)? {
            kept.push(c);
        }
    }
    // most specific candidates first
    let mut order: Vec<(usize, usize)> = kept
        .iter()
        .enumerate()
        .map(|(i, b)| (kept.iter().filter(|c| subsumes(c, b)).count(), i))
        .collect();
    order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    'candidate: for (_, i) in order {
        let b = &kept[i];
        for c in &kept {
            if !subsumes(c, b) && !t_implies_with(c, b, None, &opts)? {
                continue 'candidate;
            }
        }
        return Ok(reduce(b));
    }
    Err(Error::NoLeast(kept.len()))
}
