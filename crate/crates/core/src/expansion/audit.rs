use std::collections::BTreeSet;

use crate::clause::{Clause, Literal, Sign, Term, Var, VariantSet};
use crate::error::{Error, Result};
use crate::grounding::{t_implies_with, TImplyOptions, TermSet};
use crate::subsumption::subsumes;

use super::DEFAULT_MAX_STATES;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    /// Family members have at most `|d| + extra_literals` literals.
    pub extra_literals: usize,
    /// Cap on enumerated family candidates before the T-implication filter.
    pub max_candidates: usize,
    /// Cap on or-sets visited by the script search.
    pub max_states: usize,
    pub t_opts: TImplyOptions,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            extra_literals: 1,
            max_candidates: 200_000,
            max_states: DEFAULT_MAX_STATES,
            t_opts: TImplyOptions::default(),
        }
    }
}

fn hole() -> Term {
    Term::Var(Var::new("_", 0))
}

/// Ways of replacing an antichain of subterm occurrences of `t` by holes,
/// each with the replaced subterms in left-to-right order. Subterms for
/// which `must_cut` holds never survive uncut.
fn term_patterns(t: &Term, must_cut: &dyn Fn(&Term) -> bool) -> Vec<(Term, Vec<Term>)> {
    let mut out = vec![(hole(), vec![t.clone()])];
    if must_cut(t) {
        return out;
    }
    if let Term::App(f, args) = t {
        for (args, holes) in product(args, must_cut) {
            out.push((Term::App(f.clone(), args), holes));
        }
    }
    out
}

fn product(args: &[Term], must_cut: &dyn Fn(&Term) -> bool) -> Vec<(Vec<Term>, Vec<Term>)> {
    let mut acc: Vec<(Vec<Term>, Vec<Term>)> = vec![(Vec::new(), Vec::new())];
    for a in args {
        let pats = term_patterns(a, must_cut);
        let mut next = Vec::with_capacity(acc.len() * pats.len());
        for (done, holes) in &acc {
            for (p, h) in &pats {
                let mut d = done.clone();
                d.push(p.clone());
                let mut hs = holes.clone();
                hs.extend(h.iter().cloned());
                next.push((d, hs));
            }
        }
        acc = next;
    }
    acc
}

/// Generalizations of a ground literal obtained by cutting antichains of
/// subterm occurrences, as literals with holes plus the cut subterms.
pub fn generalizations_of_literal(
    l: &Literal,
    must_cut: &dyn Fn(&Term) -> bool,
) -> Vec<(Literal, Vec<Term>)> {
    product(&l.args, must_cut)
        .into_iter()
        .map(|(args, holes)| {
            (
                Literal {
                    sign: l.sign,
                    pred: l.pred.clone(),
                    args,
                },
                holes,
            )
        })
        .collect()
}

/// Restricted-growth assignments of holes to variables where two holes of
/// the same sign share a variable only if they cut the same subterm.
fn assignments(holes: &[(Sign, Term)], f: &mut dyn FnMut(&[u32])) {
    fn go(holes: &[(Sign, Term)], buf: &mut Vec<u32>, next: u32, f: &mut dyn FnMut(&[u32])) {
        let i = buf.len();
        if i == holes.len() {
            f(buf);
            return;
        }
        for v in 0..=next {
            let ok = (0..i).all(|j| {
                buf[j] != v || holes[j].0 != holes[i].0 || holes[j].1 == holes[i].1
            });
            if ok {
                buf.push(v);
                go(holes, buf, next.max(v + 1), f);
                buf.pop();
            }
        }
    }
    go(holes, &mut Vec::with_capacity(holes.len()), 0, f)
}

fn fill(l: &Literal, vars: &mut impl Iterator<Item = u32>) -> Literal {
    l.map_vars(&mut |_| Term::Var(Var::new("V", vars.next().expect("one variable per hole"))))
}

/// Clauses over the symbols of `d` that T-imply `d` with respect to `t`
/// but do not θ-subsume it, pruned to the most specific members.
///
/// Candidates satisfy the sign-separated subsumption condition by
/// construction: every literal generalizes a literal of the Skolemized `d`
/// of the same sign, consistently within each sign, and no Skolem constant
/// survives. Candidates have at most `|d| + extra_literals` literals.
pub fn audit_family(d: &Clause, t: &TermSet, opts: &AuditOptions) -> Result<Vec<Clause>> {
    let ground = t.ground_target(d)?;
    if !ground.is_ambivalent() && opts.t_opts.prefilters {
        return Ok(Vec::new());
    }
    let skolems: BTreeSet<Term> = t.skolem().constants().cloned().collect();
    let must_cut = |x: &Term| skolems.contains(x);
    let mut pool: Vec<(Literal, Vec<Term>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for l in &ground {
        for g in generalizations_of_literal(l, &must_cut) {
            if seen.insert(g.clone()) {
                pool.push(g);
            }
        }
    }

    let max_size = d.len() + opts.extra_literals;
    let mut candidates = VariantSet::default();
    let mut overflow = false;
    let mut pick: Vec<usize> = Vec::new();
    enumerate_multisets(pool.len(), max_size, &mut pick, 0, &mut |idx| {
        if overflow {
            return;
        }
        let holes: Vec<(Sign, Term)> = idx
            .iter()
            .flat_map(|&i| {
                let (l, hs) = &pool[i];
                hs.iter().map(move |h| (l.sign, h.clone()))
            })
            .collect();
        assignments(&holes, &mut |vars| {
            let mut it = vars.iter().copied();
            let c = Clause::new(idx.iter().map(|&i| fill(&pool[i].0, &mut it)));
            if c.len() == idx.len() {
                candidates.insert(c);
            }
        });
        overflow = candidates.len() > opts.max_candidates;
    });
    if overflow {
        return Err(Error::ResourceLimit {
            what: "audit family candidates",
            count: candidates.len(),
            cap: opts.max_candidates,
            flag: "--max-candidates",
        });
    }

    let mut family = Vec::new();
    for c in candidates.into_vec() {
        if !subsumes(&c, d) && t_implies_with(&c, d, Some(t), &opts.t_opts)? {
            family.push(c);
        }
    }
    Ok(most_specific(family))
}

fn enumerate_multisets(
    n: usize,
    max: usize,
    buf: &mut Vec<usize>,
    start: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if !buf.is_empty() {
        f(buf);
    }
    if buf.len() == max {
        return;
    }
    for i in start..n {
        buf.push(i);
        enumerate_multisets(n, max, buf, i, f);
        buf.pop();
    }
}

/// Drops every clause that θ-subsumes another member strictly, and all but
/// the first of each θ-equivalence class.
fn most_specific(family: Vec<Clause>) -> Vec<Clause> {
    let mut keep: Vec<Clause> = Vec::new();
    'next: for (i, c) in family.iter().enumerate() {
        for (j, o) in family.iter().enumerate() {
            if i != j && subsumes(c, o) && (!subsumes(o, c) || j < i) {
                continue 'next;
            }
        }
        keep.push(c.clone());
    }
    keep
}
