//! JSON renderings of verdicts, traces and reports.

use redux::io::{polynomial_to_json, rational_to_string};
use redux::marked::{PairReport, PairStatus, ReductionTrace};
use redux::structure::ClassificationReport;
use redux::verdict::{Origin, StableViolation};
use redux::{Polynomial, Rational, Term, Vars, Verdict, Witness};
use serde_json::{json, Map, Value};

pub fn term(vars: &Vars, t: &Term) -> Value {
    Value::String(vars.format_term(t))
}

pub fn poly_text(vars: &Vars, p: &Polynomial) -> Value {
    Value::String(p.format(vars, &[]))
}

fn origin(vars: &Vars, o: &Origin) -> Value {
    match o {
        Origin::SPair { i, j } => json!({"s_pair": [i, j]}),
        Origin::Multiple { entry, multiplier } => json!({"entry": entry, "multiplier": term(vars, multiplier)}),
    }
}

fn stable(vars: &Vars, v: &StableViolation) -> Value {
    let mut out = json!({"axiom": v.axiom()});
    let m = out.as_object_mut().unwrap();
    let mut put = |k: &str, t: &Term| {
        m.insert(k.into(), term(vars, t));
    };
    match v {
        StableViolation::Positivity { eta } => put("eta", eta),
        StableViolation::Translation { eta, other, var } => {
            put("eta", eta);
            put("other", other);
            m.insert("variable".into(), json!(vars.names()[*var]));
        }
        StableViolation::ConeOverlap { head, other_head, eta } => {
            put("head", head);
            put("other_head", other_head);
            put("eta", eta);
        }
        StableViolation::TailDescent { head, tail, other_head, eta } => {
            put("head", head);
            put("tail", tail);
            put("other_head", other_head);
            put("eta", eta);
        }
    }
    out
}

pub fn witness(vars: &Vars, w: &Witness) -> Value {
    match w {
        Witness::DuplicateHead { entry, head } => json!({"kind": "duplicate-head", "entry": entry, "head": term(vars, head)}),
        Witness::TailInCone { entry, tail } => json!({"kind": "tail-in-cone", "entry": entry, "tail": term(vars, tail)}),
        Witness::Uncovered { term: t } => json!({"kind": "uncovered", "term": term(vars, t)}),
        Witness::Order { head, tail, multiplier } => json!({
            "kind": "order",
            "head": term(vars, head),
            "tail": term(vars, tail),
            "multiplier": term(vars, multiplier),
        }),
        Witness::Stable(v) => json!({"kind": "stable", "violation": stable(vars, v)}),
        Witness::Remainder { origin: o, remainder } => json!({
            "kind": "remainder",
            "origin": origin(vars, o),
            "remainder": poly_text(vars, remainder),
        }),
        Witness::Intersection { poly } => json!({"kind": "intersection", "poly": poly_text(vars, poly)}),
        Witness::Budget { origin: o, steps } => json!({"kind": "budget", "origin": origin(vars, o), "steps": steps}),
    }
}

pub fn verdict(vars: &Vars, v: &Verdict) -> Value {
    let mut out = Map::new();
    out.insert("status".into(), json!(v.status.as_str()));
    out.insert("method".into(), json!(v.method));
    if let Some(w) = &v.witness {
        out.insert("witness".into(), witness(vars, w));
    }
    if !v.notes.is_empty() {
        out.insert("notes".into(), json!(v.notes));
    }
    Value::Object(out)
}

pub fn trace(vars: &Vars, t: &ReductionTrace<Rational>) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "entry": s.entry,
                "multiplier": term(vars, &s.multiplier),
                "coefficient": rational_to_string(&s.coefficient),
                "term": term(vars, &s.term),
            })
        })
        .collect();
    Value::Array(steps)
}

pub fn remainder(vars: &Vars, p: &Polynomial) -> Value {
    json!({"text": poly_text(vars, p), "terms": polynomial_to_json(p, vars)})
}

pub fn pairs(vars: &Vars, heads: &[Term], r: &PairReport) -> Value {
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|((i, j), s)| {
            let mut o = json!({
                "pair": [i, j],
                "heads": [term(vars, &heads[*i]), term(vars, &heads[*j])],
                "lcm": term(vars, &heads[*i].lcm(&heads[*j])),
            });
            let m = o.as_object_mut().unwrap();
            match s {
                PairStatus::Kept => m.insert("status".into(), json!("kept")),
                PairStatus::Pruned(reason) => {
                    m.insert("status".into(), json!("pruned"));
                    m.insert("reason".into(), json!(reason.label()))
                }
            };
            o
        })
        .collect();
    json!({"criteria_applied": r.criteria_applied, "pairs": pairs, "kept": r.kept()})
}

pub fn classification(vars: &Vars, heads: &[Term], c: &ClassificationReport) -> Value {
    let mult: Vec<Value> = heads
        .iter()
        .zip(&c.multiplicative)
        .map(|(h, m)| {
            let names: Option<Vec<&str>> = m.as_ref().map(|s| s.iter().map(|i| vars.names()[i].as_str()).collect());
            json!({"head": term(vars, h), "multiplicative": names})
        })
        .collect();
    let mut out = json!({
        "homogeneous": c.homogeneous,
        "reduced_tails": c.reduced_tails,
        "maximal_cones": c.maximal_cones,
        "disjoint_cones": c.disjoint_cones,
        "multiplicative_variables": c.multiplicative_variables,
        "entries": mult,
    });
    if let Some(b) = c.consistent_with {
        out.as_object_mut().unwrap().insert("consistent_with_order".into(), json!(b));
    }
    out
}
