#![allow(dead_code)]

pub mod witness;

use impgen::clause::{Clause, Literal, Sign, Substitution, Term, Var};
use impgen::parse_clause;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub fn cl(s: &str) -> Clause {
    parse_clause(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub const VARS: [&str; 3] = ["X", "Y", "Z"];

fn leaf(vars: bool) -> BoxedStrategy<Term> {
    let consts = prop_oneof![Just(Term::constant("a")), Just(Term::constant("b"))];
    if vars {
        prop_oneof![consts, prop::sample::select(&VARS[..]).prop_map(Term::var)].boxed()
    } else {
        consts.boxed()
    }
}

/// Terms over a, b, f/1, g/1 of depth at most `depth`.
pub fn term(depth: usize, vars: bool) -> BoxedStrategy<Term> {
    if depth <= 1 {
        return leaf(vars);
    }
    let sub = term(depth - 1, vars);
    prop_oneof![
        2 => leaf(vars),
        1 => sub.clone().prop_map(|t| Term::app("f", vec![t])),
        1 => sub.prop_map(|t| Term::app("g", vec![t])),
    ]
    .boxed()
}

/// Literals over p/1 and q/2.
pub fn literal(depth: usize, vars: bool) -> BoxedStrategy<Literal> {
    let t = term(depth, vars);
    let sign = prop_oneof![Just(Sign::Pos), Just(Sign::Neg)];
    prop_oneof![
        (sign.clone(), t.clone()).prop_map(|(s, a)| Literal::new(s, "p", vec![a])),
        (sign, t.clone(), t).prop_map(|(s, a, b)| Literal::new(s, "q", vec![a, b])),
    ]
    .boxed()
}

pub fn clause(max_lits: usize, depth: usize, vars: bool) -> BoxedStrategy<Clause> {
    prop::collection::vec(literal(depth, vars), 1..=max_lits)
        .prop_map(Clause::new)
        .boxed()
}

/// Literals over p/1 with f/1 only, for the exhaustive oracles.
pub fn small_clause(max_lits: usize, depth: usize) -> BoxedStrategy<Clause> {
    fn t(depth: usize) -> BoxedStrategy<Term> {
        let l = prop_oneof![
            Just(Term::constant("a")),
            Just(Term::constant("b")),
            Just(Term::var("X"))
        ];
        if depth <= 1 {
            return l.boxed();
        }
        prop_oneof![l, t(depth - 1).prop_map(|x| Term::app("f", vec![x]))].boxed()
    }
    let lit = (any::<bool>(), t(depth)).prop_map(|(pos, a)| {
        Literal::new(if pos { Sign::Pos } else { Sign::Neg }, "p", vec![a])
    });
    prop::collection::vec(lit, 1..=max_lits)
        .prop_map(Clause::new)
        .boxed()
}

/// A substitution for X, Y, Z.
pub fn substitution(depth: usize) -> BoxedStrategy<Substitution> {
    prop::collection::vec(term(depth, true), 3)
        .prop_map(|ts| {
            Substitution::from_pairs(VARS.iter().map(|v| Var::new(v, 0)).zip(ts))
        })
        .boxed()
}

/// Deterministic draws from a strategy.
pub struct Sampler {
    runner: TestRunner,
}

impl Sampler {
    pub fn new() -> Self {
        Sampler {
            runner: TestRunner::deterministic(),
        }
    }

    pub fn draw<S: Strategy>(&mut self, s: &S) -> S::Value {
        s.new_tree(&mut self.runner).expect("strategy").current()
    }
}

/// Every assignment to the atoms of `premises` and `goal` that satisfies the
/// premises satisfies the goal.
pub fn truth_table_entails(premises: &[Clause], goal: &Clause) -> bool {
    let mut atoms: Vec<Literal> = premises
        .iter()
        .chain(std::iter::once(goal))
        .flat_map(|c| c.iter().map(Literal::atom))
        .collect();
    atoms.sort();
    atoms.dedup();
    assert!(atoms.len() <= 20);
    let holds = |c: &Clause, m: u32| {
        c.iter().any(|l| {
            let i = atoms.binary_search(&l.atom()).unwrap();
            let v = m >> i & 1 == 1;
            v == l.is_positive()
        })
    };
    (0..1u32 << atoms.len()).all(|m| !premises.iter().all(|c| holds(c, m)) || holds(goal, m))
}
