//! Re-validation of `--json` witnesses with the library.

use impgen::clause::{Clause, Substitution, Term, Var};
use impgen::expansion::{audit_family, or_introduce, rederive, AuditOptions, ExpansionScript};
use impgen::grounding::{is_generalization_t_with, t_equivalent_with, t_implies_with, term_set, TImplyOptions};
use impgen::resolution::{resolution_layers, resolvents};
use impgen::subsumption::{is_variant, lgg_set, match_clauses, subsumes, theta_equivalent};
use impgen::syntax::parse_term;
use impgen::parse_clause;
use serde_json::Value;

const RAW: TImplyOptions = TImplyOptions {
    prefilters: false,
    max_instances: 1_000_000,
};

pub enum Check<'a> {
    Subsumes(&'a Clause, &'a Clause),
    Equiv(&'a Clause, &'a Clause),
    Reduce(&'a Clause),
    Lgg(&'a [Clause]),
    Termset(&'a [Clause], usize),
    Instances(&'a Clause),
    Timplies(&'a Clause, &'a Clause, usize),
    Tequiv(&'a Clause, &'a Clause, usize),
    Resolve(&'a Clause, &'a Clause),
    Layers(&'a [Clause], usize),
    Implies(&'a Clause, &'a Clause),
    Orintro(&'a Clause),
    Expand(&'a Clause),
    Tcomplete(&'a Clause, usize),
    Lggt(&'a [Clause], usize),
}

type R = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> R {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn text(v: &Value) -> Result<&str, String> {
    v.as_str().ok_or_else(|| format!("expected string, got {v}"))
}

fn clause(v: &Value) -> Result<Clause, String> {
    parse_clause(text(v)?).map_err(|e| e.to_string())
}

fn clauses(v: &Value) -> Result<Vec<Clause>, String> {
    v.as_array()
        .ok_or("expected array")?
        .iter()
        .map(clause)
        .collect()
}

fn subst(v: &Value) -> Result<Substitution, String> {
    let m = v.as_object().ok_or("expected substitution object")?;
    let mut s = Substitution::new();
    for (k, t) in m {
        let t: Term = parse_term(text(t)?).map_err(|e| e.to_string())?;
        s.bind(Var::new(k, 0), t);
    }
    Ok(s)
}

/// `θ` maps `c` into `d` and the literal mapping, if given, agrees.
fn maps_into(c: &Clause, w: &Value, d: &Clause) -> R {
    let s = subst(&w["substitution"])?;
    ensure(s.apply_clause(c).is_subset(d), || format!("{c} under {s} not within {d}"))?;
    if let Some(m) = w["mapping"].as_array() {
        ensure(m.len() == c.len(), || "mapping does not cover every literal".into())?;
        for p in m {
            let (i, j) = (p[0].as_u64().unwrap() as usize, p[1].as_u64().unwrap() as usize);
            ensure(s.apply_literal(&c.literals()[i]) == d.literals()[j], || {
                format!("literal {i} does not map onto {j}")
            })?;
        }
    }
    Ok(())
}

fn expansion(src: &Clause, w: &Value) -> R {
    let script = ExpansionScript::parse(text(&w["script"])?).map_err(|e| e.to_string())?;
    let or_set = clauses(&w["or_set"])?;
    let result = clause(&w["result"])?;
    let want = or_introduce(src, &script).map_err(|e| e.to_string())?;
    ensure(
        want.len() == or_set.len() && want.iter().zip(&or_set).all(|(a, b)| a == b),
        || "or-set differs from or_introduce".into(),
    )?;
    ensure(subsumes(src, &result), || format!("source does not subsume {result}"))?;
    for f in &or_set {
        ensure(subsumes(&result, f), || format!("{result} does not subsume {f}"))?;
    }
    let l = lgg_set(&or_set).map_err(|e| e.to_string())?;
    ensure(theta_equivalent(&l, &result), || format!("{result} is not an LGG of the or-set"))
}

fn derivation(a: &Clause, w: &Value) -> R {
    let steps = w["derivation"].as_array().ok_or("missing derivation")?;
    let mut known: Vec<(String, Clause)> = Vec::new();
    for s in steps {
        let id = text(&s["id"])?.to_string();
        let c = clause(&s["clause"])?;
        let parents = s["parents"].as_array().ok_or("missing parents")?;
        if parents.is_empty() {
            ensure(is_variant(&c, a), || format!("{id} is not the input"))?;
        } else {
            let find = |p: &Value| -> Result<Clause, String> {
                let p = text(p)?;
                known
                    .iter()
                    .find(|(i, _)| i == p)
                    .map(|(_, c)| c.clone())
                    .ok_or_else(|| format!("{p} used before it is derived"))
            };
            let (l, r) = (find(&parents[0])?, find(&parents[1])?);
            ensure(
                resolvents(&l, &r).iter().any(|st| is_variant(&st.resolvent, &c)),
                || format!("{id} is not a resolvent of its parents"),
            )?;
        }
        known.push((id, c));
    }
    Ok(())
}

/// Re-validates the JSON document of an exit-0 answer.
pub fn validate(check: &Check, doc: &Value) -> R {
    let w = &doc["witness"];
    ensure(doc["stats"]["elapsed_ms"].is_number(), || "missing timing".into())?;
    match *check {
        Check::Subsumes(a, b) => maps_into(a, w, b),
        Check::Equiv(a, b) => {
            maps_into(a, &w["forward"], b)?;
            maps_into(b, &w["backward"], a)?;
            ensure(w["variant"].as_bool() == Some(is_variant(a, b)), || "variant flag".into())
        }
        Check::Reduce(a) => {
            let r = clause(&w["clause"])?;
            ensure(r.is_subset(a), || format!("{r} is not a subset"))?;
            maps_into(a, &w["from"], &r)
        }
        Check::Lgg(s) => {
            let l = clause(&w["clause"])?;
            let subs = w["substitutions"].as_array().ok_or("missing substitutions")?;
            ensure(subs.len() == s.len(), || "one substitution per input".into())?;
            for (d, sw) in s.iter().zip(subs) {
                maps_into(&l, sw, d)?;
            }
            let want = lgg_set(s).map_err(|e| e.to_string())?;
            ensure(theta_equivalent(&want, &l), || "not least".into())
        }
        Check::Termset(s, depth) => {
            // Skolem constants are reserved in the input syntax, so compare text.
            let listed: Vec<&str> = w["terms"]
                .as_array()
                .ok_or("missing terms")?
                .iter()
                .map(|t| t.as_str().unwrap_or(""))
                .collect();
            let lib = term_set(s, &[], depth).map_err(|e| e.to_string())?;
            ensure(lib.is_subterm_closed(), || "term set not subterm-closed".into())?;
            for c in lib.skolemized() {
                ensure(lib.covers(c), || format!("{c} not covered"))?;
            }
            let want: Vec<String> = lib.terms().iter().map(|t| t.to_string()).collect();
            ensure(listed == want, || "term set differs".into())
        }
        Check::Instances(a) => {
            for c in clauses(&w["instances"])? {
                ensure(c.is_ground(), || format!("{c} is not ground"))?;
                ensure(match_clauses(a, &c).is_some(), || format!("{c} is not an instance"))?;
            }
            Ok(())
        }
        Check::Timplies(a, b, depth) => {
            let t = term_set(std::slice::from_ref(b), std::slice::from_ref(a), depth)
                .map_err(|e| e.to_string())?;
            let listed: Vec<String> = w["terms"]
                .as_array()
                .ok_or("missing terms")?
                .iter()
                .map(|t| t.as_str().unwrap().to_string())
                .collect();
            let want: Vec<String> = t.terms().iter().map(|t| t.to_string()).collect();
            ensure(listed == want, || "term set differs".into())?;
            ensure(
                t_implies_with(a, b, Some(&t), &RAW).map_err(|e| e.to_string())?,
                || "grounding without prefilters disagrees".into(),
            )
        }
        Check::Tequiv(a, b, depth) => ensure(
            t_equivalent_with(a, b, depth, &RAW).map_err(|e| e.to_string())?,
            || "grounding without prefilters disagrees".into(),
        ),
        Check::Resolve(a, b) => {
            let lib = resolvents(a, b);
            let steps = w["steps"].as_array().ok_or("missing steps")?;
            ensure(steps.len() == lib.len(), || "resolvent count".into())?;
            for s in steps {
                let r = clause(&s["resolvent"])?;
                ensure(lib.iter().any(|st| is_variant(&st.resolvent, &r)), || {
                    format!("{r} is not a resolvent")
                })?;
            }
            Ok(())
        }
        Check::Layers(s, n) => {
            let idx = resolution_layers(s, n).map_err(|e| e.to_string())?;
            let layers = w["layers"].as_array().ok_or("missing layers")?;
            for (k, l) in layers.iter().enumerate() {
                let got = clauses(l)?;
                let want: Vec<&Clause> = idx.clauses(k + 1).collect();
                ensure(got.len() == want.len(), || format!("layer {} size", k + 1))?;
                for c in &got {
                    ensure(want.iter().any(|x| is_variant(x, c)), || format!("{c} not in layer"))?;
                }
            }
            Ok(())
        }
        Check::Implies(a, b) => {
            if w["tautology"].as_bool() == Some(true) {
                return ensure(b.is_tautology(), || "not a tautology".into());
            }
            derivation(a, w)?;
            let c = clause(&w["clause"])?;
            maps_into(&c, &w["subsumption"], b)
        }
        Check::Orintro(a) => {
            let script = ExpansionScript::parse(text(&w["script"])?).map_err(|e| e.to_string())?;
            for f in clauses(&w["or_set"])? {
                ensure(a.is_subset(&f), || format!("{f} does not contain the source"))?;
            }
            let steps = rederive(a, &script).map_err(|e| e.to_string())?;
            ensure(steps.len() == script.len(), || "re-derivation length".into())
        }
        Check::Expand(a) => expansion(a, w),
        Check::Tcomplete(a, depth) => {
            expansion(a, w)?;
            let e = clause(&w["result"])?;
            let t = term_set(std::slice::from_ref(a), &[], depth).map_err(|e| e.to_string())?;
            for c in audit_family(a, &t, &AuditOptions::default()).map_err(|e| e.to_string())? {
                ensure(subsumes(&c, &e), || format!("{c} T-implies the source but not ⪯ {e}"))?;
            }
            Ok(())
        }
        Check::Lggt(s, depth) => {
            let c = clause(&w["clause"])?;
            let t = term_set(s, &[], depth).map_err(|e| e.to_string())?;
            let live: Vec<Clause> = s.iter().filter(|c| !c.is_tautology()).cloned().collect();
            ensure(
                is_generalization_t_with(&c, &live, &t, &RAW).map_err(|e| e.to_string())?,
                || format!("{c} is not a T-generalization"),
            )?;
            for (e, d) in w["expansions"].as_array().ok_or("missing expansions")?.iter().zip(&live) {
                expansion(d, e)?;
                ensure(subsumes(&c, &clause(&e["result"])?), || "clause above an expansion".into())?;
            }
            if let Some(o) = w.get("oracle") {
                let b = clause(&o["clause"])?;
                ensure(
                    t_equivalent_with(&c, &b, 0, &RAW).map_err(|e| e.to_string())?,
                    || format!("oracle {b} disagrees"),
                )?;
            }
            Ok(())
        }
    }
}
