mod common;

use common::{clause, cl, literal, small_clause, substitution, term};
use impgen::clause::{
    factors, match_terms, rename_apart, skolemize, unify_terms, Clause, Sign, Substitution, Term,
    Var,
};
use impgen::expansion::{
    or_introduce, search_expansion, ExpansionScript, DEFAULT_MAX_STATES,
};
use impgen::grounding::{
    ground_entails, instance_set, t_implies_with, term_set, TImplyOptions,
};
use impgen::resolution::{implies_bounded, nth_resolution, resolution_layers, resolvents};
use impgen::subsumption::{
    is_variant, lgg, reduce, subsumes, theta_equivalent, theta_subsumes,
};
use impgen::syntax::format_clause;
use impgen::parse_clause;
use proptest::prelude::*;

const RAW: TImplyOptions = TImplyOptions {
    prefilters: false,
    max_instances: 1_000_000,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Replaces a random selection of subterm positions by fresh variables.
fn abstract_clause(c: &Clause, mask: &[bool]) -> Clause {
    fn go(t: &Term, mask: &[bool], k: &mut usize) -> Term {
        let cut = mask[*k % mask.len()];
        *k += 1;
        if cut {
            return Term::Var(Var::new("G", *k as u32));
        }
        match t {
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| go(a, mask, k)).collect()),
            v => v.clone(),
        }
    }
    let mut k = 0;
    c.map_literals(|l| {
        let mut l = l.clone();
        l.args = l.args.iter().map(|a| go(a, mask, &mut k)).collect();
        l
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn composition_law(t in term(3, true), s1 in substitution(2), s2 in substitution(2)) {
        prop_assert_eq!(s2.apply_term(&s1.apply_term(&t)), s1.compose(&s2).apply_term(&t));
    }

    #[test]
    fn unifiers_are_most_general(a in term(3, true), b in term(3, true), v in substitution(2)) {
        if let Some(u) = unify_terms(&[a.clone(), b.clone()]) {
            prop_assert_eq!(u.apply_term(&a), u.apply_term(&b));
            // v applied after u is again a unifier, and factors through u
            let w = u.compose(&v);
            prop_assert_eq!(w.apply_term(&a), w.apply_term(&b));
        }
        let (va, vb) = (v.apply_term(&a), v.apply_term(&b));
        if va == vb {
            let u = unify_terms(&[a.clone(), b.clone()]);
            prop_assert!(u.is_some());
            let u = u.unwrap();
            let w = match_terms(&u.apply_term(&a), &va);
            prop_assert!(w.is_some());
            let w = w.unwrap();
            prop_assert_eq!(w.apply_term(&u.apply_term(&a)), va.clone());
            prop_assert_eq!(w.apply_term(&u.apply_term(&b)), vb);
        }
    }

    #[test]
    fn matching_is_exact(g in term(3, true), s in substitution(2)) {
        let target = s.apply_term(&g);
        let m = match_terms(&g, &target).expect("instance matches");
        prop_assert_eq!(m.apply_term(&g), target);
    }

    #[test]
    fn factors_are_instances(c in clause(3, 2, true)) {
        let fs = factors(&c);
        prop_assert!(fs.iter().any(|f| is_variant(f, &c)));
        for f in &fs {
            prop_assert!(subsumes(&c, f));
        }
    }

    #[test]
    fn skolemization_inverts(c in clause(4, 3, true)) {
        let (sk, map) = skolemize(std::slice::from_ref(&c), &[]).unwrap();
        prop_assert!(sk[0].is_ground());
        prop_assert!(is_variant(&map.unskolemize(&sk[0]), &c));
    }

    #[test]
    fn tautology_instances_are_valid(c in clause(4, 2, true), s in substitution(1)) {
        let c = c.with(c.literals()[0].complement());
        prop_assert!(c.is_tautology());
        let g = s.apply_clause(&c);
        let g = Substitution::from_pairs(g.vars().into_iter().map(|v| (v, Term::constant("a")))).apply_clause(&g);
        prop_assert!(ground_entails(&[], &g).unwrap());
    }

    #[test]
    fn witnesses_are_sound(c in clause(3, 2, true), d in clause(5, 3, true)) {
        if let Some(w) = theta_subsumes(&c, &d) {
            prop_assert!(w.verify(&c, &d));
            prop_assert!(w.substitution.apply_clause(&c).is_subset(&d));
        }
    }

    #[test]
    fn subsumption_of_instances(c in clause(4, 2, true), s in substitution(2), extra in literal(2, true)) {
        let d = s.apply_clause(&c).with(extra);
        prop_assert!(subsumes(&c, &d));
    }

    #[test]
    fn transitivity(a in clause(2, 2, true), s1 in substitution(1), s2 in substitution(1),
                    x in literal(2, true), y in literal(2, true)) {
        let b = s1.apply_clause(&a).with(x);
        let c = s2.apply_clause(&b).with(y);
        prop_assert!(subsumes(&a, &b) && subsumes(&b, &c));
        prop_assert!(subsumes(&a, &c));
    }

    #[test]
    fn random_transitivity(a in clause(2, 2, true), b in clause(3, 2, true), c in clause(4, 2, true)) {
        if subsumes(&a, &b) && subsumes(&b, &c) {
            prop_assert!(subsumes(&a, &c));
        }
    }

    #[test]
    fn lgg_is_least(c in clause(3, 3, false), d in clause(3, 3, false),
                    mask in prop::collection::vec(any::<bool>(), 1..8)) {
        let l = lgg(&c, &d);
        prop_assert!(subsumes(&l, &c));
        prop_assert!(subsumes(&l, &d));
        let g = abstract_clause(&c, &mask);
        if subsumes(&g, &d) {
            prop_assert!(subsumes(&g, &l));
        }
    }

    #[test]
    fn reduction_is_minimal(c in clause(5, 2, true)) {
        let r = reduce(&c);
        prop_assert!(r.is_subset(&c));
        prop_assert!(theta_equivalent(&r, &c));
        for l in r.iter() {
            prop_assert!(!subsumes(&r, &r.without(l)));
        }
    }

    #[test]
    fn round_trip(c in clause(4, 3, true)) {
        let text = format_clause(&c);
        let back = parse_clause(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(format_clause(&back), text);
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn subsumption_gives_t_implication(c in clause(3, 2, true), s in substitution(2), x in literal(2, false)) {
        let d = s.apply_clause(&c).with(x);
        let t = term_set(std::slice::from_ref(&d), std::slice::from_ref(&c), 0).unwrap();
        prop_assert!(t_implies_with(&c, &d, Some(&t), &RAW).unwrap());
        prop_assert!(t_implies_with(&c, &d, Some(&t.extend(1)), &RAW).unwrap());
    }

    #[test]
    fn monotone_in_the_term_set(c in small_clause(2, 2), d in small_clause(3, 3), k in 1usize..3) {
        let t = term_set(std::slice::from_ref(&d), std::slice::from_ref(&c), 0).unwrap();
        if t_implies_with(&c, &d, Some(&t), &RAW).unwrap() {
            prop_assert!(t_implies_with(&c, &d, Some(&t.extend(k)), &RAW).unwrap());
        }
    }

    #[test]
    fn union_of_t_generalizations(c in small_clause(2, 2), d in small_clause(2, 2), e in small_clause(3, 3)) {
        let pair = rename_apart(&[c, d]);
        let t = term_set(std::slice::from_ref(&e), &pair, 0).unwrap();
        let ci = t_implies_with(&pair[0], &e, Some(&t), &RAW).unwrap();
        let di = t_implies_with(&pair[1], &e, Some(&t), &RAW).unwrap();
        if ci && di {
            let u = pair[0].union(&pair[1]);
            prop_assert!(t_implies_with(&u, &e, Some(&t), &RAW).unwrap());
        }
    }

    #[test]
    fn sign_separated_subsumption_is_necessary(c in small_clause(3, 2), d in small_clause(3, 3)) {
        if !d.is_tautology() && t_implies_with(&c, &d, None, &RAW).unwrap() {
            prop_assert!(subsumes(&c.positive(), &d.positive()));
            prop_assert!(subsumes(&c.negative(), &d.negative()));
        }
    }

    #[test]
    fn resolvents_are_entailed(c in clause(2, 2, true), d in clause(2, 2, true)) {
        let pair = rename_apart(&[c, d]);
        for step in resolvents(&pair[0], &pair[1]) {
            prop_assert!(step.verify());
            let r = step.resolvent.tidy();
            let joint = rename_apart(&[r.clone(), pair[0].clone(), pair[1].clone()]);
            let t = term_set(&joint, &[], 0).unwrap();
            let goal = t.ground_target(&joint[0]).unwrap();
            let mut premises = instance_set(&joint[1], &t).unwrap().clauses;
            premises.extend(instance_set(&joint[2], &t).unwrap().clauses);
            prop_assert!(ground_entails(&premises, &goal).unwrap(), "{} from {} and {}", r, pair[0], pair[1]);
        }
    }

    #[test]
    fn subsumption_found_in_first_layer(c in clause(3, 2, true), s in substitution(2)) {
        let d = s.apply_clause(&c);
        prop_assert!(implies_bounded(&c, &d, 1).unwrap().is_yes());
    }

    #[test]
    fn resolution_is_inverted_by_or_introduction(c in clause(3, 2, true), d in clause(3, 2, true)) {
        for step in resolvents(&c, &d) {
            let l = step.inversion_literal();
            let r = &step.resolvent;
            prop_assert!(subsumes(&step.left, &r.with(l.clone())));
            prop_assert!(subsumes(&step.right, &r.with(l.complement())));
        }
    }

    #[test]
    fn layers_lie_in_nth_resolution(c in clause(2, 2, true)) {
        if let (Ok(idx), Ok(rn)) = (resolution_layers(std::slice::from_ref(&c), 3),
                                   nth_resolution(std::slice::from_ref(&c), 3, 2_000)) {
            for k in 1..=idx.depth() {
                for x in idx.clauses(k) {
                    prop_assert!(rn.iter().any(|y| is_variant(x, y)), "{} missing", x);
                }
            }
        }
    }

    #[test]
    fn or_introduction_steps_are_resolutions(c in clause(3, 2, true),
                                             raw in prop::collection::vec((0usize..4, literal(2, false)), 1..=3)) {
        let steps: Vec<_> = raw.into_iter().enumerate().map(|(k, (t, l))| (t % (k + 1), l)).collect();
        // replay step by step: the target must be a resolvent of its replacements
        let mut set = vec![c.clone()];
        for (t, l) in &steps {
            let target = set[*t].clone();
            let (a, b) = (target.with(l.clone()), target.with(l.complement()));
            if !target.contains(l) && !target.contains(&l.complement()) {
                let rs = resolvents(&a, &b);
                prop_assert!(rs.iter().any(|s| theta_equivalent(&s.resolvent, &target)));
            }
            set.remove(*t);
            set.push(a);
            set.push(b);
        }
        prop_assert_eq!(set, or_introduce(&c, &ExpansionScript::new(steps)).unwrap());
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn powers_have_subsuming_expansions(root in 0usize..4, layer in 2usize..4, s in 0usize..3) {
        let roots = ["p(f(X)) :- p(X).", "p(f(X)) :- p(X), p(a).", "p(f(X)); p(X) :- p(g(X)).",
                     "p(f(X),Y) :- p(X,f(Y))."];
        let c = cl(roots[root]);
        let idx = resolution_layers(std::slice::from_ref(&c), layer).unwrap();
        let cands: Vec<&Clause> = idx.clauses(layer).filter(|x| !x.is_tautology()).collect();
        prop_assume!(!cands.is_empty());
        let power = cands[s % cands.len()];
        let ground = Substitution::from_pairs(power.vars().into_iter().map(|v| (v, Term::constant("a"))));
        let d = ground.apply_clause(power);
        prop_assume!(!subsumes(&c, &d));
        let t = term_set(std::slice::from_ref(&d), &[], 0).unwrap();
        let hit = search_expansion(&d, &t, layer, DEFAULT_MAX_STATES, &mut |e| subsumes(&c, &e.result)).unwrap();
        prop_assert!(hit.is_some(), "no expansion of {} is subsumed by {}", d, c);
    }
}

#[test]
fn sign_helpers_are_consistent() {
    let c = cl("p(a); q(b) :- r(c).");
    assert!(c.positive().iter().all(|l| l.sign == Sign::Pos));
    assert!(c.negative().iter().all(|l| l.sign == Sign::Neg));
    assert_eq!(c.positive().len() + c.negative().len(), c.len());
}
