//! Or-introduction, expansions, T-complete expansions and least general
//! generalizations under T-implication.

mod audit;
mod lggt;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

pub use audit::{audit_family, generalizations_of_literal, AuditOptions};
pub use lggt::{lggt, lggt_bruteforce, BruteBounds, Lggt, LggtOptions};

use crate::clause::{skolemize, var_floor, Clause, Literal, SkolemMap, Sign};
use crate::error::{Error, Result};
use crate::grounding::TermSet;
use crate::resolution::{resolvents, ResolutionStep};
use crate::subsumption::{lgg_set_from, reduce, subsumes, theta_equivalent};
use crate::syntax::{format_script, parse_script};

pub const DEFAULT_MAX_SCRIPT_LEN: usize = 3;
pub const DEFAULT_MAX_STATES: usize = 200_000;

/// A sequence of or-introduction steps. Each step names a member of the
/// evolving clause list by its 0-based position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpansionScript {
    pub steps: Vec<(usize, Literal)>,
}

impl ExpansionScript {
    pub fn new(steps: Vec<(usize, Literal)>) -> Self {
        ExpansionScript { steps }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(ExpansionScript::new(parse_script(text)?))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn pushed(&self, target: usize, l: Literal) -> Self {
        let mut steps = self.steps.clone();
        steps.push((target, l));
        ExpansionScript { steps }
    }

    fn map_literals(&self, f: impl Fn(&Literal) -> Literal) -> Self {
        ExpansionScript::new(self.steps.iter().map(|(t, l)| (*t, f(l))).collect())
    }
}

impl fmt::Display for ExpansionScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_script(&self.steps))
    }
}

/// The LGG of a clause set or-introduced from `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub source: Clause,
    pub script: ExpansionScript,
    pub or_set: Vec<Clause>,
    pub result: Clause,
}

/// Applies `script` to `[c]`: each step removes its target `D` and appends
/// `D ∪ {L}` and then `D ∪ {L̄}`.
pub fn or_introduce(c: &Clause, script: &ExpansionScript) -> Result<Vec<Clause>> {
    let mut set = vec![c.clone()];
    for (step, (target, l)) in script.steps.iter().enumerate() {
        if *target >= set.len() {
            return Err(Error::InvalidTarget {
                step,
                target: *target,
                size: set.len(),
            });
        }
        let d = set.remove(*target);
        set.push(d.with(l.clone()));
        set.push(d.with(l.complement()));
    }
    Ok(set)
}

/// Replays an or-introduction backwards: for every step, in reverse order,
/// finds a resolvent of the two introduced clauses that is θ-equivalent
/// to the clause they replaced. Exactly one step per script entry.
pub fn rederive(c: &Clause, script: &ExpansionScript) -> Result<Vec<ResolutionStep>> {
    let mut set = vec![c.clone()];
    let mut history = Vec::with_capacity(script.len());
    for (step, (target, l)) in script.steps.iter().enumerate() {
        if *target >= set.len() {
            return Err(Error::InvalidTarget {
                step,
                target: *target,
                size: set.len(),
            });
        }
        let d = set.remove(*target);
        let (plus, minus) = (d.with(l.clone()), d.with(l.complement()));
        set.push(plus.clone());
        set.push(minus.clone());
        history.push((d, plus, minus));
    }
    let mut out = Vec::with_capacity(history.len());
    for (d, plus, minus) in history.into_iter().rev() {
        let exact = resolvents(&plus, &minus)
            .into_iter()
            .find(|s| s.resolvent == d || theta_equivalent(&s.resolvent, &d))
            .ok_or_else(|| Error::Verification(format!("{d} is not re-derived")))?;
        out.push(exact);
    }
    Ok(out)
}

/// Expansion of a ground clause, mapped back through `skolem`.
fn expand_ground(
    source: &Clause,
    ground: &Clause,
    script: &ExpansionScript,
    skolem: &SkolemMap,
    floor: u32,
) -> Result<Expansion> {
    let set = or_introduce(ground, script)?;
    let lgg = lgg_set_from(&set, floor)?;
    Ok(Expansion {
        source: source.clone(),
        script: script.map_literals(|l| unskolemize_literal(skolem, l)),
        or_set: set.iter().map(|c| skolem.unskolemize(c)).collect(),
        result: reduce(&skolem.unskolemize(&lgg)),
    })
}

fn unskolemize_literal(skolem: &SkolemMap, l: &Literal) -> Literal {
    Literal {
        sign: l.sign,
        pred: l.pred.clone(),
        args: l.args.iter().map(|a| skolem.unskolemize_term(a)).collect(),
    }
}

/// The expansion of `d` by `script`: `d` is Skolemized, or-introduced,
/// generalized by LGG, and the Skolem constants are turned back into the
/// variables of `d`.
pub fn expand(d: &Clause, script: &ExpansionScript) -> Result<Expansion> {
    let (ground, skolem) = skolemize(std::slice::from_ref(d), &[])?;
    let ground_script = script.map_literals(|l| skolem.substitution().apply_literal(l));
    expand_ground(d, &ground[0], &ground_script, &skolem, var_floor([d]))
}

/// Ground literals of both signs over the predicates of `d` with arguments
/// from `t`, in canonical order.
pub fn candidate_literals(d: &Clause, t: &TermSet) -> Vec<Literal> {
    let terms: Vec<_> = t.terms().iter().cloned().collect();
    let mut out = BTreeSet::new();
    for (p, n) in d.predicates() {
        crate::grounding::for_each_tuple(&terms, n, &mut |args| {
            for sign in [Sign::Pos, Sign::Neg] {
                out.insert(Literal {
                    sign,
                    pred: p.clone(),
                    args: args.to_vec(),
                });
            }
        });
    }
    out.into_iter().collect()
}

/// Breadth-first search over scripts of length `0..=max_len` built from the
/// positive candidate literals of `d`, returning the first expansion that
/// `accept` takes. Or-sets already seen are skipped; so are atoms already
/// present in the clause being split.
pub fn search_expansion(
    d: &Clause,
    t: &TermSet,
    max_len: usize,
    max_states: usize,
    accept: &mut dyn FnMut(&Expansion) -> bool,
) -> Result<Option<Expansion>> {
    let ground = t.ground_target(d)?;
    let atoms: Vec<Literal> = candidate_literals(d, t)
        .into_iter()
        .filter(Literal::is_positive)
        .collect();
    let floor = var_floor(t.origin().iter().chain([d]));
    let mut seen: HashSet<Vec<Clause>> = HashSet::new();
    let mut queue: VecDeque<(ExpansionScript, Vec<Clause>)> = VecDeque::new();
    seen.insert(vec![ground.clone()]);
    queue.push_back((ExpansionScript::default(), vec![ground.clone()]));
    while let Some((script, set)) = queue.pop_front() {
        let e = expand_ground(d, &ground, &script, t.skolem(), floor)?;
        if accept(&e) {
            return Ok(Some(e));
        }
        if script.len() == max_len {
            continue;
        }
        for (target, member) in set.iter().enumerate() {
            for a in &atoms {
                if member.contains(a) || member.contains(&a.complement()) {
                    continue;
                }
                let mut next = set.clone();
                next.remove(target);
                next.push(member.with(a.clone()));
                next.push(member.with(a.complement()));
                let mut key = next.clone();
                key.sort();
                if !seen.insert(key) {
                    continue;
                }
                if seen.len() > max_states {
                    return Err(Error::ResourceLimit {
                        what: "expansion search states",
                        count: seen.len(),
                        cap: max_states,
                        flag: "--max-states",
                    });
                }
                queue.push_back((script.pushed(target, a.clone()), next));
            }
        }
    }
    Ok(None)
}

/// Searches for an expansion of `d` that every member of the audit family
/// θ-subsumes. The family holds the clauses over the symbols of `d` that
/// T-imply `d` without θ-subsuming it, up to the audit bounds.
pub fn t_complete_expansion(
    d: &Clause,
    t: &TermSet,
    max_len: usize,
    opts: &AuditOptions,
) -> Result<Expansion> {
    if d.is_tautology() {
        return Err(Error::Tautology(d.to_string()));
    }
    let family = audit_family(d, t, opts)?;
    search_expansion(d, t, max_len, opts.max_states, &mut |e| {
        family.iter().all(|c| subsumes(c, &e.result))
    })?
    .ok_or(Error::BudgetExhausted(max_len))
}
