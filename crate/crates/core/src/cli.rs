//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven in-process.
//!
//! Exit status: 0 affirmative answer or successful construction, 1 negative
//! or unknown answer, 2 usage, parse or resource fault.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::clause::{Clause, Substitution};
use crate::error::{Error, Result};
use crate::expansion::{
    self, expand, lggt, lggt_bruteforce, or_introduce, AuditOptions, BruteBounds, Expansion,
    ExpansionScript, LggtOptions,
};
use crate::grounding::{
    instance_set_capped, t_equivalent_with, t_implies_with, term_set, TImplyOptions, TermSet,
};
use crate::resolution::{self, implies_bounded_with_index, resolution_layers_capped, Implication};
use crate::subsumption::{is_variant, lgg_set, reduce, theta_subsumes, SubsumptionWitness};
use crate::syntax::{parse_clause, parse_clause_file, parse_terms, ClauseDocument};

#[derive(Parser, Debug)]
#[command(
    name = "impgen",
    version,
    about = "Generalization of clauses under θ-subsumption, T-implication and implication"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit {answer, witness, stats} as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Clause file whose labels can be used as clause references.
    #[arg(long, global = true, value_name = "FILE")]
    file: Option<String>,
    /// Cap on ground instances materialized for one T-implication test.
    #[arg(long, global = true, default_value_t = crate::grounding::DEFAULT_MAX_INSTANCES)]
    max_instances: usize,
    /// Cap on clauses per resolution layer.
    #[arg(long, global = true, default_value_t = resolution::DEFAULT_MAX_LAYER)]
    max_layer: usize,
    /// Cap on enumerated candidate clauses (audit family, brute-force LGGT).
    #[arg(long, global = true, default_value_t = 200_000)]
    max_candidates: usize,
    /// Cap on or-sets visited by the expansion search.
    #[arg(long, global = true, default_value_t = expansion::DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Does A θ-subsume B?
    Subsumes { a: String, b: String },
    /// Are A and B θ-equivalent?
    Equiv { a: String, b: String },
    /// Minimal θ-equivalent subset of A.
    Reduce { a: String },
    /// LGG under θ-subsumption of the clauses in FILE.
    Lgg {
        #[arg(value_name = "FILE")]
        set: String,
    },
    /// Term set of the clauses in FILE.
    Termset {
        #[arg(value_name = "FILE")]
        set: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Ground instances of A over the given terms and their subterms.
    Instances {
        a: String,
        #[arg(long)]
        terms: String,
    },
    /// Does A T-imply B, over the term set of B extended DEPTH rounds?
    Timplies {
        a: String,
        b: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// T-implication in both directions over a joint term set.
    Tequiv {
        a: String,
        b: String,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// All resolvents of A and B.
    Resolve { a: String, b: String },
    /// Resolution layers 1..=N of the clauses in FILE.
    Layers {
        #[arg(value_name = "FILE")]
        set: String,
        #[arg(long)]
        n: usize,
    },
    /// Bounded search for A ⇒ B through self-resolution layers of A.
    Implies {
        a: String,
        b: String,
        #[arg(long, default_value_t = resolution::DEFAULT_MAX_DEPTH)]
        depth: usize,
    },
    /// Or-introduce literals into A.
    Orintro {
        a: String,
        #[arg(long)]
        script: String,
    },
    /// Expansion of A by a script.
    Expand {
        a: String,
        #[arg(long)]
        script: String,
    },
    /// Search for a T-complete expansion of A.
    Tcomplete {
        a: String,
        #[arg(long, default_value_t = expansion::DEFAULT_MAX_SCRIPT_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// LGG under T-implication of the clauses in FILE.
    Lggt {
        #[arg(value_name = "FILE")]
        set: String,
        /// Cross-check against exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = expansion::DEFAULT_MAX_SCRIPT_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// Literal bound for the oracle.
        #[arg(long, default_value_t = 2)]
        size_bound: usize,
        /// Term depth bound for the oracle.
        #[arg(long, default_value_t = 2)]
        depth_bound: usize,
    },
}

/// Exit status plus the text meant for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    answer: Value,
    text: Vec<String>,
    witness: Value,
    stats: Map<String, Value>,
}

impl Report {
    fn new(code: i32, answer: impl Into<Value>) -> Self {
        Report {
            code,
            answer: answer.into(),
            text: Vec::new(),
            witness: Value::Null,
            stats: Map::new(),
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.text.push(s.into());
        self
    }

    fn witness(mut self, w: Value) -> Self {
        self.witness = w;
        self
    }

    fn stat(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.stats.insert(k.to_string(), v.into());
        self
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut r) => {
            r.stats.insert(
                "elapsed_ms".into(),
                json!(start.elapsed().as_secs_f64() * 1e3),
            );
            let stdout = if cli.global.json {
                let v = json!({"answer": r.answer, "witness": r.witness, "stats": r.stats});
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                let mut s = match &r.answer {
                    Value::String(a) => format!("{a}\n"),
                    _ => String::new(),
                };
                for l in &r.text {
                    s.push_str(l);
                    s.push('\n');
                }
                s
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))
}

struct Refs {
    doc: Option<ClauseDocument>,
}

impl Refs {
    /// A label of `--file`, then a file holding one clause, then clause text.
    fn clause(&self, r: &str) -> Result<Clause> {
        if let Some(c) = self.doc.as_ref().and_then(|d| d.get(r)) {
            return Ok(c.clone());
        }
        if Path::new(r).is_file() {
            let doc = parse_clause_file(&read(r)?)?;
            return match doc.len() {
                1 => Ok(doc.entries[0].clause.clone()),
                n => Err(Error::Usage(format!(
                    "{r} holds {n} clauses; refer to one by label with --file"
                ))),
            };
        }
        parse_clause(r)
    }

    /// A clause file, then a label of `--file`, then clause text.
    fn clauses(&self, r: &str) -> Result<Vec<Clause>> {
        if Path::new(r).is_file() {
            return Ok(parse_clause_file(&read(r)?)?.clauses());
        }
        if let Some(c) = self.doc.as_ref().and_then(|d| d.get(r)) {
            return Ok(vec![c.clone()]);
        }
        let cs = parse_clause_file(r)?.clauses();
        if cs.is_empty() {
            return Err(Error::EmptyInput("no clauses given"));
        }
        Ok(cs)
    }
}

fn subst_json(s: &Substitution) -> Value {
    let m: BTreeMap<String, String> = s
        .iter()
        .map(|(v, t)| (v.display_name(), t.to_string()))
        .collect();
    json!(m)
}

fn witness_json(w: &SubsumptionWitness) -> Value {
    json!({"substitution": subst_json(&w.substitution), "mapping": w.mapping})
}

fn strings<'a>(cs: impl IntoIterator<Item = &'a Clause>) -> Vec<String> {
    cs.into_iter().map(|c| c.to_string()).collect()
}

fn term_set_json(t: &TermSet) -> Value {
    json!({
        "terms": t.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "skolem": subst_json(t.skolem().substitution()),
    })
}

fn term_set_line(t: &TermSet) -> String {
    let ts: Vec<String> = t.terms().iter().map(|t| t.to_string()).collect();
    format!("terms: {{{}}}", ts.join(", "))
}

fn expansion_json(e: &Expansion) -> Value {
    json!({
        "source": e.source.to_string(),
        "script": e.script.to_string(),
        "or_set": strings(&e.or_set),
        "result": e.result.tidy().to_string(),
    })
}

fn execute(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let refs = Refs {
        doc: match &g.file {
            Some(f) => Some(parse_clause_file(&read(f)?)?),
            None => None,
        },
    };
    let t_opts = TImplyOptions {
        prefilters: true,
        max_instances: g.max_instances,
    };
    let audit = AuditOptions {
        max_candidates: g.max_candidates,
        max_states: g.max_states,
        t_opts,
        ..AuditOptions::default()
    };
    Ok(match &cli.command {
        Command::Subsumes { a, b } => {
            let (a, b) = (refs.clause(a)?, refs.clause(b)?);
            match theta_subsumes(&a, &b) {
                Some(w) => Report::new(0, "yes")
                    .line(format!("substitution: {}", w.substitution))
                    .line(format!("mapping: {}", mapping_text(&w)))
                    .witness(witness_json(&w)),
                None => Report::new(1, "no"),
            }
        }
        Command::Equiv { a, b } => {
            let (a, b) = (refs.clause(a)?, refs.clause(b)?);
            let variant = is_variant(&a, &b);
            match (theta_subsumes(&a, &b), theta_subsumes(&b, &a)) {
                (Some(f), Some(r)) => Report::new(0, "yes")
                    .line(format!("forward: {}", f.substitution))
                    .line(format!("backward: {}", r.substitution))
                    .line(format!("variant: {}", if variant { "yes" } else { "no" }))
                    .witness(json!({
                        "forward": witness_json(&f),
                        "backward": witness_json(&r),
                        "variant": variant,
                    })),
                (f, _) => Report::new(1, "no").line(if f.is_none() {
                    "first clause does not subsume second"
                } else {
                    "second clause does not subsume first"
                }),
            }
        }
        Command::Reduce { a } => {
            let a = refs.clause(a)?;
            let r = reduce(&a);
            let w = theta_subsumes(&a, &r).expect("a clause subsumes its reduction");
            Report::new(0, r.to_string())
                .line(format!("substitution: {}", w.substitution))
                .witness(json!({"clause": r.to_string(), "from": witness_json(&w)}))
                .stat("removed", a.len() - r.len())
        }
        Command::Lgg { set } => {
            let cs = refs.clauses(set)?;
            let l = lgg_set(&cs)?.tidy();
            let ws: Vec<SubsumptionWitness> = cs
                .iter()
                .map(|c| theta_subsumes(&l, c).expect("lgg subsumes its inputs"))
                .collect();
            let mut r = Report::new(0, l.to_string());
            for (c, w) in cs.iter().zip(&ws) {
                r = r.line(format!("{} -> {}", w.substitution, c));
            }
            r.witness(json!({
                "clause": l.to_string(),
                "inputs": strings(&cs),
                "substitutions": ws.iter().map(witness_json).collect::<Vec<_>>(),
            }))
        }
        Command::Termset { set, depth } => {
            let cs = refs.clauses(set)?;
            let t = term_set(&cs, &[], *depth)?;
            Report::new(0, term_set_line(&t))
                .line(format!("skolem: {}", t.skolem().substitution()))
                .witness(term_set_json(&t))
                .stat("terms", t.len())
        }
        Command::Instances { a, terms } => {
            let a = refs.clause(a)?;
            let base = term_set(&[], &[], 0)?.with_terms(parse_terms(terms)?)?;
            let i = instance_set_capped(&a, &base, g.max_instances)?;
            let mut r = Report::new(0, format!("{} instances", i.clauses.len()));
            for c in &i.clauses {
                r = r.line(c.to_string());
            }
            r.witness(json!({"instances": strings(&i.clauses), "terms": term_set_json(&base)}))
                .stat("instances", i.clauses.len())
        }
        Command::Timplies { a, b, depth } => {
            let (a, b) = (refs.clause(a)?, refs.clause(b)?);
            let t = term_set(std::slice::from_ref(&b), std::slice::from_ref(&a), *depth)?;
            let yes = t_implies_with(&a, &b, Some(&t), &t_opts)?;
            Report::new(if yes { 0 } else { 1 }, if yes { "yes" } else { "no" })
                .line(term_set_line(&t))
                .witness(term_set_json(&t))
                .stat("terms", t.len())
        }
        Command::Tequiv { a, b, depth } => {
            let (a, b) = (refs.clause(a)?, refs.clause(b)?);
            let yes = t_equivalent_with(&a, &b, *depth, &t_opts)?;
            Report::new(if yes { 0 } else { 1 }, if yes { "yes" } else { "no" })
                .witness(json!({"depth": depth}))
        }
        Command::Resolve { a, b } => {
            let (a, b) = (refs.clause(a)?, refs.clause(b)?);
            let steps = crate::resolution::resolvents(&a, &b);
            let mut r = Report::new(
                if steps.is_empty() { 1 } else { 0 },
                format!("{} resolvents", steps.len()),
            );
            let mut ws = Vec::new();
            for s in &steps {
                r = r.line(format!(
                    "{}    upon {} / {} with {}",
                    s.resolvent.tidy(),
                    s.a,
                    s.b,
                    s.mgu
                ));
                ws.push(json!({
                    "resolvent": s.resolvent.to_string(),
                    "left_factor": s.left_factor.to_string(),
                    "right_factor": s.right_factor.to_string(),
                    "a": s.a.to_string(),
                    "b": s.b.to_string(),
                    "mgu": subst_json(&s.mgu),
                }));
            }
            r.witness(json!({"steps": ws})).stat("resolvents", steps.len())
        }
        Command::Layers { set, n } => {
            let cs = refs.clauses(set)?;
            let idx = resolution_layers_capped(&cs, *n, g.max_layer)?;
            let mut r = Report::new(0, format!("{} layers", idx.depth()));
            let mut layers = Vec::new();
            for k in 1..=idx.depth() {
                r = r.line(format!("layer {k}:"));
                let cls: Vec<String> = idx.clauses(k).map(|c| c.to_string()).collect();
                for c in &cls {
                    r = r.line(format!("  {c}"));
                }
                layers.push(cls);
            }
            r.witness(json!({"layers": layers}))
                .stat("clauses", idx.total())
        }
        Command::Implies { a, b, depth } => {
            let (a, b) = (refs.clause(a)?, refs.clause(b)?);
            let (ans, idx) = implies_bounded_with_index(&a, &b, *depth, g.max_layer)?;
            let explored = idx.total();
            match ans {
                Implication::Tautology => Report::new(0, "yes")
                    .line("second clause is a tautology")
                    .witness(json!({"tautology": true})),
                Implication::Yes {
                    layer,
                    index,
                    clause,
                    witness,
                } => {
                    let derivation = derivation(&idx, layer, index);
                    let mut r = Report::new(0, "yes")
                        .line(format!("layer {layer}: {clause}"))
                        .line(format!("substitution: {}", witness.substitution));
                    for d in &derivation {
                        r = r.line(format!(
                            "  {} = {}{}",
                            d["id"].as_str().unwrap(),
                            d["clause"].as_str().unwrap(),
                            match d["parents"].as_array() {
                                Some(p) if !p.is_empty() => format!(
                                    "    from {} and {}",
                                    p[0].as_str().unwrap(),
                                    p[1].as_str().unwrap()
                                ),
                                _ => "    input".into(),
                            }
                        ));
                    }
                    r.witness(json!({
                        "layer": layer,
                        "clause": clause.to_string(),
                        "subsumption": witness_json(&witness),
                        "derivation": derivation,
                    }))
                }
                Implication::Unknown { depth } => {
                    Report::new(1, format!("unknown (depth {depth} exhausted)"))
                }
            }
            .stat("clauses_explored", explored)
        }
        Command::Orintro { a, script } => {
            let a = refs.clause(a)?;
            let s = ExpansionScript::parse(script)?;
            let set = or_introduce(&a, &s)?;
            let mut r = Report::new(0, format!("{} clauses", set.len()));
            for (i, c) in set.iter().enumerate() {
                r = r.line(format!("{i}: {c}"));
            }
            r.witness(json!({"script": s.to_string(), "or_set": strings(&set)}))
        }
        Command::Expand { a, script } => {
            let a = refs.clause(a)?;
            let e = expand(&a, &ExpansionScript::parse(script)?)?;
            expansion_report(&e)
        }
        Command::Tcomplete { a, max_len, depth } => {
            let a = refs.clause(a)?;
            let t = term_set(std::slice::from_ref(&a), &[], *depth)?;
            match expansion::t_complete_expansion(&a, &t, *max_len, &audit) {
                Ok(e) => expansion_report(&e).line(term_set_line(&t)),
                Err(Error::BudgetExhausted(n)) => Report::new(
                    1,
                    format!("unknown (no T-complete expansion with scripts up to length {n})"),
                ),
                Err(e) => return Err(e),
            }
        }
        Command::Lggt {
            set,
            oracle,
            max_len,
            depth,
            size_bound,
            depth_bound,
        } => {
            let cs = refs.clauses(set)?;
            let t = term_set(&cs, &[], *depth)?;
            let opts = LggtOptions {
                max_len: *max_len,
                audit,
            };
            let res = lggt(&cs, Some(&t), &opts)?;
            let mut r = Report::new(0, res.clause.to_string()).line(term_set_line(&t));
            for e in &res.expansions {
                r = r.line(format!("expansion of {} by [{}]: {}", e.source, e.script, e.result.tidy()));
            }
            let mut w = json!({
                "clause": res.clause.to_string(),
                "inputs": strings(&cs),
                "term_set": term_set_json(&t),
                "expansions": res.expansions.iter().map(expansion_json).collect::<Vec<_>>(),
            });
            if *oracle {
                let bounds = BruteBounds {
                    size: *size_bound,
                    depth: *depth_bound,
                    max_candidates: g.max_candidates,
                };
                let b = lggt_bruteforce(&cs, Some(&t), &bounds)?;
                let agrees = t_equivalent_with(&res.clause, &b, 0, &t_opts)?;
                r = r.line(format!(
                    "oracle: {b} ({})",
                    if agrees { "agrees" } else { "disagrees" }
                ));
                if !agrees {
                    r.code = 1;
                }
                w["oracle"] = json!({"clause": b.to_string(), "agrees": agrees});
            }
            r.witness(w)
        }
    })
}

fn mapping_text(w: &SubsumptionWitness) -> String {
    w.mapping
        .iter()
        .map(|(i, j)| format!("{i}->{j}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn expansion_report(e: &Expansion) -> Report {
    let mut r = Report::new(0, e.result.tidy().to_string()).line(format!("script: [{}]", e.script));
    for (i, c) in e.or_set.iter().enumerate() {
        r = r.line(format!("  {i}: {c}"));
    }
    r.witness(expansion_json(e))
}

/// Every clause the layer entry depends on, inputs first.
fn derivation(idx: &resolution::LayerIndex, layer: usize, index: usize) -> Vec<Value> {
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut stack = vec![(layer, index)];
    while let Some(id) = stack.pop() {
        if order.contains(&id) {
            continue;
        }
        order.push(id);
        if let Some((l, r)) = idx.entry(id.0, id.1).parents {
            stack.push(l);
            stack.push(r);
        }
    }
    order.sort();
    order
        .into_iter()
        .map(|(l, i)| {
            let e = idx.entry(l, i);
            let parents: Vec<String> = e
                .parents
                .iter()
                .flat_map(|(a, b)| [format!("L{}.{}", a.0, a.1), format!("L{}.{}", b.0, b.1)])
                .collect();
            json!({"id": format!("L{l}.{i}"), "clause": e.clause.to_string(), "parents": parents})
        })
        .collect()
}
