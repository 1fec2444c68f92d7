//! Binary resolution with factoring, resolution layers, and bounded
//! implication by self-resolution plus θ-subsumption.

use crate::clause::{factors, unify_pairs, var_floor, Clause, Literal, Substitution, VariantSet};
use crate::error::{Error, Result};
use crate::subsumption::{subsumes, theta_subsumes, SubsumptionWitness};

pub const DEFAULT_MAX_DEPTH: usize = 4;
pub const DEFAULT_MAX_LAYER: usize = 20_000;

/// One binary resolution step. The right parent is renamed apart from the
/// left before factoring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStep {
    pub left: Clause,
    pub right: Clause,
    pub left_factor: Clause,
    pub right_factor: Clause,
    /// Resolved-upon literal of the left factor.
    pub a: Literal,
    /// Resolved-upon literal of the right factor.
    pub b: Literal,
    pub mgu: Substitution,
    pub resolvent: Clause,
}

impl ResolutionStep {
    /// Re-checks the step: complementary literals unified by the mgu and
    /// the resolvent built from the factors.
    pub fn verify(&self) -> bool {
        self.left_factor.contains(&self.a)
            && self.right_factor.contains(&self.b)
            && self.a.sign != self.b.sign
            && self.mgu.apply_literal(&self.a) == self.mgu.apply_literal(&self.b.complement())
            && self.resolvent
                == self
                    .mgu
                    .apply_clause(&self.left_factor.without(&self.a).union(&self.right_factor.without(&self.b)))
    }

    /// A literal `L` with `left ⪯ R ∪ {L}` and `right ⪯ R ∪ {L̄}`.
    pub fn inversion_literal(&self) -> Literal {
        self.mgu.apply_literal(&self.a)
    }
}

/// All resolvents of `c` and `d` over all factors and clashing literal
/// pairs, one step per resolvent up to variants.
pub fn resolvents(c: &Clause, d: &Clause) -> Vec<ResolutionStep> {
    let d_apart = d.rename_from(var_floor([c, d]));
    let lfs = factors(c);
    let rfs = factors(&d_apart);
    let mut seen = VariantSet::default();
    let mut out = Vec::new();
    for lf in &lfs {
        for rf in &rfs {
            for a in lf {
                for b in rf {
                    if a.sign == b.sign || a.pred != b.pred || a.args.len() != b.args.len() {
                        continue;
                    }
                    let Some(mgu) = unify_pairs(a.args.iter().cloned().zip(b.args.iter().cloned()))
                    else {
                        continue;
                    };
                    let resolvent = mgu.apply_clause(&lf.without(a).union(&rf.without(b)));
                    if seen.insert(resolvent.clone()) {
                        out.push(ResolutionStep {
                            left: c.clone(),
                            right: d.clone(),
                            left_factor: lf.clone(),
                            right_factor: rf.clone(),
                            a: a.clone(),
                            b: b.clone(),
                            mgu,
                            resolvent,
                        });
                    }
                }
            }
        }
    }
    out
}

/// A clause of a resolution layer. Parents are `(layer, index)` pairs with
/// 1-based layer numbers.
#[derive(Clone, Debug)]
pub struct LayerEntry {
    pub clause: Clause,
    pub parents: Option<((usize, usize), (usize, usize))>,
    pub step: Option<Box<ResolutionStep>>,
}

/// Layers `1..=n` of a clause set. Layer `n` holds the clauses obtained by
/// exactly `n − 1` resolutions, so its parents come from layers `m` and `p`
/// with `m + p = n`.
#[derive(Clone, Debug, Default)]
pub struct LayerIndex {
    layers: Vec<Vec<LayerEntry>>,
}

impl LayerIndex {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Entries of layer `n`, 1-based.
    pub fn layer(&self, n: usize) -> &[LayerEntry] {
        &self.layers[n - 1]
    }

    pub fn clauses(&self, n: usize) -> impl Iterator<Item = &Clause> {
        self.layer(n).iter().map(|e| &e.clause)
    }

    pub fn entry(&self, n: usize, i: usize) -> &LayerEntry {
        &self.layers[n - 1][i]
    }

    pub fn total(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    fn input(t: &[Clause]) -> LayerIndex {
        let mut seen = VariantSet::default();
        let first = t
            .iter()
            .filter(|c| seen.insert((*c).clone()))
            .map(|c| LayerEntry {
                clause: c.clone(),
                parents: None,
                step: None,
            })
            .collect();
        LayerIndex {
            layers: vec![first],
        }
    }

    /// Computes the next layer, calling `visit` on every new clause; stops
    /// early when it returns true.
    fn grow(
        &mut self,
        max_layer: usize,
        visit: &mut dyn FnMut(&Clause) -> bool,
    ) -> Result<Option<usize>> {
        let n = self.layers.len() + 1;
        let mut seen = VariantSet::default();
        let mut next: Vec<LayerEntry> = Vec::new();
        let mut hit = None;
        'outer: for m in 1..=n / 2 {
            let p = n - m;
            for i in 0..self.layers[m - 1].len() {
                let start = if m == p { i } else { 0 };
                for j in start..self.layers[p - 1].len() {
                    let left = &self.layers[m - 1][i].clause;
                    let right = &self.layers[p - 1][j].clause;
                    for step in resolvents(left, right) {
                        if step.resolvent.is_tautology() || !seen.insert(step.resolvent.clone()) {
                            continue;
                        }
                        if next.len() == max_layer {
                            return Err(Error::ResourceLimit {
                                what: "resolution layer size",
                                count: max_layer + 1,
                                cap: max_layer,
                                flag: "--max-layer",
                            });
                        }
                        let clause = step.resolvent.tidy();
                        let found = visit(&clause);
                        next.push(LayerEntry {
                            clause,
                            parents: Some(((m, i), (p, j))),
                            step: Some(Box::new(step)),
                        });
                        if found {
                            hit = Some(next.len() - 1);
                            break 'outer;
                        }
                    }
                }
            }
        }
        self.layers.push(next);
        Ok(hit)
    }
}

/// Resolution layers `1..=n` of `t`, each deduplicated up to variants;
/// tautologies are dropped from layer 2 on.
pub fn resolution_layers(t: &[Clause], n: usize) -> Result<LayerIndex> {
    resolution_layers_capped(t, n, DEFAULT_MAX_LAYER)
}

pub fn resolution_layers_capped(t: &[Clause], n: usize, max_layer: usize) -> Result<LayerIndex> {
    if n == 0 {
        return Err(Error::Usage("layer count must be at least 1".into()));
    }
    let mut idx = LayerIndex::input(t);
    while idx.depth() < n {
        idx.grow(max_layer, &mut |_| false)?;
    }
    Ok(idx)
}

/// The `n`th resolution: `n` rounds of adding every resolvent of every
/// pair of clauses collected so far. Deduplicated up to variants.
pub fn nth_resolution(t: &[Clause], n: usize, max_clauses: usize) -> Result<Vec<Clause>> {
    let mut all = VariantSet::default();
    for c in t {
        all.insert(c.clone());
    }
    for _ in 0..n {
        let cur: Vec<Clause> = all.iter().cloned().collect();
        for i in 0..cur.len() {
            for j in i..cur.len() {
                for step in resolvents(&cur[i], &cur[j]) {
                    all.insert(step.resolvent.tidy());
                    if all.len() > max_clauses {
                        return Err(Error::ResourceLimit {
                            what: "resolution closure size",
                            count: all.len(),
                            cap: max_clauses,
                            flag: "--max-layer",
                        });
                    }
                }
            }
        }
    }
    Ok(all.into_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Implication {
    /// `d` is a tautology and is implied by every clause.
    Tautology,
    /// `clause`, entry `index` of layer `layer`, θ-subsumes `d`.
    Yes {
        layer: usize,
        index: usize,
        clause: Clause,
        witness: SubsumptionWitness,
    },
    /// No proof within the explored layers. Never a refutation.
    Unknown { depth: usize },
}

impl Implication {
    pub fn is_yes(&self) -> bool {
        !matches!(self, Implication::Unknown { .. })
    }
}

/// Semi-decides `c ⇒ d` by searching layers `1..=n` of `{c}` for a clause
/// that θ-subsumes `d`, stopping at the first one found.
pub fn implies_bounded(c: &Clause, d: &Clause, n: usize) -> Result<Implication> {
    implies_bounded_capped(c, d, n, DEFAULT_MAX_LAYER)
}

pub fn implies_bounded_capped(
    c: &Clause,
    d: &Clause,
    n: usize,
    max_layer: usize,
) -> Result<Implication> {
    implies_bounded_with_index(c, d, n, max_layer).map(|(a, _)| a)
}

/// As [`implies_bounded_capped`], also returning the explored layers.
pub fn implies_bounded_with_index(
    c: &Clause,
    d: &Clause,
    n: usize,
    max_layer: usize,
) -> Result<(Implication, LayerIndex)> {
    if n == 0 {
        return Err(Error::Usage("depth must be at least 1".into()));
    }
    let mut idx = LayerIndex::input(std::slice::from_ref(c));
    if d.is_tautology() {
        return Ok((Implication::Tautology, idx));
    }
    let yes = |idx: &LayerIndex, layer: usize, index: usize| {
        let clause = idx.entry(layer, index).clause.clone();
        let witness = theta_subsumes(&clause, d).expect("checked during search");
        Implication::Yes {
            layer,
            index,
            clause,
            witness,
        }
    };
    if subsumes(c, d) {
        return Ok((yes(&idx, 1, 0), idx));
    }
    while idx.depth() < n {
        if let Some(i) = idx.grow(max_layer, &mut |r| subsumes(r, d))? {
            let layer = idx.depth();
            return Ok((yes(&idx, layer, i), idx));
        }
    }
    Ok((Implication::Unknown { depth: n }, idx))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootAnswer {
    No,
    Indirect,
    Proper,
}

/// Whether some clause of layer `n` of `{c}` θ-subsumes `d`, and if so
/// whether `c` fails to θ-subsume `d` directly.
pub fn is_indirect_root(c: &Clause, d: &Clause, n: usize) -> Result<RootAnswer> {
    is_indirect_root_capped(c, d, n, DEFAULT_MAX_LAYER)
}

pub fn is_indirect_root_capped(
    c: &Clause,
    d: &Clause,
    n: usize,
    max_layer: usize,
) -> Result<RootAnswer> {
    let idx = resolution_layers_capped(std::slice::from_ref(c), n, max_layer)?;
    if !idx.clauses(n).any(|e| subsumes(e, d)) {
        return Ok(RootAnswer::No);
    }
    Ok(if subsumes(c, d) {
        RootAnswer::Indirect
    } else {
        RootAnswer::Proper
    })
}
