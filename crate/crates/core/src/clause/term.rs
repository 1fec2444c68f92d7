use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Interned-by-value symbol name. Cloning is a reference-count bump.
pub type Symbol = Arc<str>;

pub fn sym(name: &str) -> Symbol {
    Arc::from(name)
}

/// A variable is identified by its display name plus an index.
///
/// Parsed variables always carry index 0; generated variables use indices
/// above every index present in their inputs so they can never capture a
/// user variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: Symbol,
    pub index: u32,
}

impl Var {
    pub fn new(name: &str, index: u32) -> Self {
        Var {
            name: sym(name),
            index,
        }
    }

    pub fn display_name(&self) -> String {
        if self.index == 0 {
            self.name.to_string()
        } else {
            format!("{}_{}", self.name, self.index)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    /// Functor application; constants have no arguments.
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::new(name, 0))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(sym(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(sym(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Depth of the term tree; variables and constants have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn occurs(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Adds this term and every subterm to `out`.
    pub fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.collect_subterms(out));
        }
        out.insert(self.clone());
    }

    pub fn collect_functors(&self, out: &mut BTreeSet<(Symbol, usize)>) {
        if let Term::App(f, args) = self {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| a.collect_functors(out));
        }
    }

    pub fn max_var_index(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(v.index),
            Term::App(_, args) => args.iter().filter_map(Term::max_var_index).max(),
        }
    }

    /// Replaces variables through `f`; terms returned by `f` are not revisited.
    pub fn map_vars(&self, f: &mut impl FnMut(&Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    /// Replaces every occurrence of the ground subterms in `map` (outermost first).
    pub fn replace_terms(&self, map: &BTreeMap<Term, Term>) -> Term {
        if let Some(t) = map.get(self) {
            return t.clone();
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(g, args) => {
                Term::App(g.clone(), args.iter().map(|a| a.replace_terms(map)).collect())
            }
        }
    }
}

/// Canonical order: deeper terms first, then variables before applications,
/// then by name, arity and arguments.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        other.depth().cmp(&self.depth()).then_with(|| match (self, other) {
            (Term::Var(a), Term::Var(b)) => a.cmp(b),
            (Term::Var(_), Term::App(..)) => Ordering::Less,
            (Term::App(..), Term::Var(_)) => Ordering::Greater,
            (Term::App(f, a), Term::App(g, b)) => f
                .cmp(g)
                .then(a.len().cmp(&b.len()))
                .then_with(|| a.cmp(b)),
        })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(g, args) => {
                f.write_str(g)?;
                write_args(f, args)
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// Positive literals sort before negative ones, so heads print first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub sign: Sign,
    pub pred: Symbol,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(sign: Sign, pred: &str, args: Vec<Term>) -> Self {
        Literal {
            sign,
            pred: sym(pred),
            args,
        }
    }

    pub fn pos(pred: &str, args: Vec<Term>) -> Self {
        Literal::new(Sign::Pos, pred, args)
    }

    pub fn neg(pred: &str, args: Vec<Term>) -> Self {
        Literal::new(Sign::Neg, pred, args)
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn complement(&self) -> Literal {
        Literal {
            sign: self.sign.flip(),
            pred: self.pred.clone(),
            args: self.args.clone(),
        }
    }

    /// The same atom with positive sign.
    pub fn atom(&self) -> Literal {
        Literal {
            sign: Sign::Pos,
            pred: self.pred.clone(),
            args: self.args.clone(),
        }
    }

    /// Same sign, predicate and arity.
    pub fn compatible(&self, other: &Literal) -> bool {
        self.sign == other.sign && self.pred == other.pred && self.args.len() == other.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }

    pub fn map_vars(&self, f: &mut impl FnMut(&Var) -> Term) -> Literal {
        Literal {
            sign: self.sign,
            pred: self.pred.clone(),
            args: self.args.iter().map(|a| a.map_vars(f)).collect(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Neg {
            f.write_str("~")?;
        }
        f.write_str(&self.pred)?;
        write_args(f, &self.args)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite set of literals, stored sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new() }
    }

    /// Builds `heads <- body`.
    pub fn horn(heads: Vec<Literal>, body: Vec<Literal>) -> Self {
        Clause::new(
            heads
                .into_iter()
                .map(|l| Literal { sign: Sign::Pos, ..l })
                .chain(body.into_iter().map(|l| Literal { sign: Sign::Neg, ..l })),
        )
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.lits.binary_search(lit).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.lits.iter()
    }

    pub fn with(&self, lit: Literal) -> Clause {
        Clause::new(self.lits.iter().cloned().chain(std::iter::once(lit)))
    }

    pub fn without(&self, lit: &Literal) -> Clause {
        Clause {
            lits: self.lits.iter().filter(|l| *l != lit).cloned().collect(),
        }
    }

    pub fn union(&self, other: &Clause) -> Clause {
        Clause::new(self.lits.iter().chain(other.lits.iter()).cloned())
    }

    pub fn is_subset(&self, other: &Clause) -> bool {
        self.lits.iter().all(|l| other.contains(l))
    }

    /// The positive part C⁺.
    pub fn positive(&self) -> Clause {
        Clause {
            lits: self.lits.iter().filter(|l| l.is_positive()).cloned().collect(),
        }
    }

    /// The negative part C⁻.
    pub fn negative(&self) -> Clause {
        Clause {
            lits: self.lits.iter().filter(|l| !l.is_positive()).cloned().collect(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.lits.iter().all(Literal::is_ground)
    }

    pub fn depth(&self) -> usize {
        self.lits.iter().map(Literal::depth).max().unwrap_or(0)
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.lits.iter().for_each(|l| l.collect_vars(&mut out));
        out
    }

    pub fn max_var_index(&self) -> Option<u32> {
        self.lits
            .iter()
            .flat_map(|l| l.args.iter())
            .filter_map(Term::max_var_index)
            .max()
    }

    pub fn functors(&self) -> BTreeSet<(Symbol, usize)> {
        let mut out = BTreeSet::new();
        for l in &self.lits {
            l.args.iter().for_each(|a| a.collect_functors(&mut out));
        }
        out
    }

    pub fn predicates(&self) -> BTreeSet<(Symbol, usize)> {
        self.lits
            .iter()
            .map(|l| (l.pred.clone(), l.args.len()))
            .collect()
    }

    pub fn map_vars(&self, f: &mut impl FnMut(&Var) -> Term) -> Clause {
        Clause::new(self.lits.iter().map(|l| l.map_vars(f)))
    }

    pub fn map_literals(&self, f: impl FnMut(&Literal) -> Literal) -> Clause {
        Clause::new(self.lits.iter().map(f))
    }

    /// True iff some atom occurs both positively and negatively.
    pub fn is_tautology(&self) -> bool {
        self.lits
            .iter()
            .filter(|l| l.is_positive())
            .any(|l| self.contains(&l.complement()))
    }

    /// True iff a positive and a negative literal share a predicate symbol.
    pub fn is_ambivalent(&self) -> bool {
        let pos: BTreeSet<(&str, usize)> = self
            .lits
            .iter()
            .filter(|l| l.is_positive())
            .map(|l| (&*l.pred, l.args.len()))
            .collect();
        self.lits
            .iter()
            .filter(|l| !l.is_positive())
            .any(|l| pos.contains(&(&*l.pred, l.args.len())))
    }

    /// Renames variables so that each keeps its name with the smallest index
    /// not already taken, in order of first occurrence. The result is a variant.
    pub fn tidy(&self) -> Clause {
        let mut taken: BTreeMap<Symbol, u32> = BTreeMap::new();
        let mut map: BTreeMap<Var, Term> = BTreeMap::new();
        for v in self.vars() {
            let next = taken.entry(v.name.clone()).or_insert(0);
            map.insert(
                v.clone(),
                Term::Var(Var {
                    name: v.name.clone(),
                    index: *next,
                }),
            );
            *next += 1;
        }
        self.map_vars(&mut |v| map[v].clone())
    }

    /// Renames every variable to a fresh index starting at `floor`.
    pub fn rename_from(&self, floor: u32) -> Clause {
        let map: BTreeMap<Var, Term> = (floor..)
            .zip(self.vars())
            .map(|(index, v)| {
                let name = v.name.clone();
                (v, Term::Var(Var { name, index }))
            })
            .collect();
        self.map_vars(&mut |v| map[v].clone())
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Literal;
    type IntoIter = std::slice::Iter<'a, Literal>;
    fn into_iter(self) -> Self::IntoIter {
        self.lits.iter()
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Clause::new(iter)
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::format_clause(self))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::format_clause(self))
    }
}

/// Largest variable index across clauses, plus one.
pub fn var_floor<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> u32 {
    clauses
        .into_iter()
        .filter_map(Clause::max_var_index)
        .max()
        .map_or(1, |m| m + 1)
}
