//! JSON documents for reduction structures and marked sets.
//!
//! Writing is canonical: keys in a fixed order, term lists in structure
//! order, tails in decreasing degrevlex, so that reading and writing a
//! written document reproduces it byte for byte.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::coeff::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::marked::{MarkedPolynomial, MarkedSet};
use crate::monomial::{Term, Vars};
use crate::ordering::{CustomFormula, CustomTable, OrderingFunction, TermOrder};
use crate::poly::Polynomial;
use crate::structure::{Certificate, CertificateKind, Entry, MultiplierSet, ReductionStructure};
use crate::verdict::Mode;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| malformed(format!("{what} lacks \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| malformed(format!("{what} must be an object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| malformed(format!("{what} must be a string")))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| malformed(format!("{what} must be a non-negative integer")))
}

fn term_list(vars: &Vars, v: &Value, what: &str) -> Result<Vec<Term>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array of terms")))?
        .iter()
        .map(|t| vars.parse_term(as_str(t, what)?))
        .collect()
}

fn terms_json(vars: &Vars, ts: &[Term]) -> Value {
    Value::Array(ts.iter().map(|t| Value::String(vars.format_term(t))).collect())
}

pub fn rational_to_string(c: &Rational) -> String {
    c.to_string()
}

fn parse_coefficient(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| malformed(format!("bad coefficient {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(malformed(format!("coefficient {v} must be an integer or a \"p/q\" string"))),
    }
}

fn function_json(f: &OrderingFunction, vars: &Vars, out: &mut Map<String, Value>) {
    match f {
        OrderingFunction::Identity(o) => {
            out.insert("order".into(), json!(o.to_string()));
        }
        OrderingFunction::AffineWeight { weight, tiebreak } => {
            out.insert("weight".into(), Value::Array(weight.iter().map(|w| json!(rational_to_string(w))).collect()));
            out.insert("tiebreak".into(), json!(tiebreak.to_string()));
        }
        OrderingFunction::Custom(t) => {
            out.insert("formula".into(), json!(t.formula.name()));
            let values: Map<String, Value> = t.values.iter().map(|(k, v)| (vars.format_term(k), json!(v))).collect();
            out.insert("values".into(), Value::Object(values));
        }
    }
}

fn function_from_json(obj: &Map<String, Value>, vars: &Vars) -> Result<OrderingFunction> {
    if let Some(o) = obj.get("order") {
        return Ok(OrderingFunction::Identity(TermOrder::parse(as_str(o, "order")?)?));
    }
    if let Some(w) = obj.get("weight") {
        let weight = w
            .as_array()
            .ok_or_else(|| malformed("weight must be an array"))?
            .iter()
            .map(parse_coefficient)
            .collect::<Result<Vec<_>>>()?;
        let tiebreak = match obj.get("tiebreak") {
            Some(t) => TermOrder::parse(as_str(t, "tiebreak")?)?,
            None => TermOrder::DegRevLex,
        };
        return OrderingFunction::weight(weight, tiebreak);
    }
    if let Some(f) = obj.get("formula") {
        let mut table = CustomTable::new(CustomFormula::parse(as_str(f, "formula")?)?);
        if let Some(vals) = obj.get("values") {
            for (k, v) in as_object(vals, "values")? {
                let n = v.as_u64().ok_or_else(|| malformed(format!("value of {k} must be a natural number")))?;
                table.values.insert(vars.parse_term(k)?, n);
            }
        }
        return Ok(OrderingFunction::Custom(table));
    }
    Err(malformed("certificate needs \"order\", \"weight\" or \"formula\""))
}

fn certificate_json(c: &Certificate, vars: &Vars) -> Value {
    let mut out = Map::new();
    out.insert("kind".into(), json!(c.kind.as_str()));
    function_json(&c.function, vars, &mut out);
    if let Mode::Bounded(d) = c.mode {
        out.insert("bound".into(), json!(d));
    }
    out.insert("verified".into(), json!(c.verified));
    Value::Object(out)
}

pub fn structure_to_json(rs: &ReductionStructure) -> Value {
    let vars = rs.vars();
    let mut out = Map::new();
    out.insert("vars".into(), json!(vars.names()));
    let entries: Vec<Value> = rs
        .entries()
        .iter()
        .map(|e| {
            json!({
                "head": vars.format_term(&e.head),
                "nonmult": terms_json(vars, e.multipliers.nonmult()),
                "tail_support": terms_json(vars, &e.tail_support),
            })
        })
        .collect();
    out.insert("entries".into(), Value::Array(entries));
    if let Some(cap) = rs.tail_cap() {
        out.insert("tail_cap".into(), json!(cap));
    }
    if !rs.certificates().is_empty() {
        let certs = rs.certificates().iter().map(|c| certificate_json(c, vars)).collect();
        out.insert("certificates".into(), Value::Array(certs));
    }
    Value::Object(out)
}

/// Certificates are re-verified; one claiming `"verified": true` that no
/// longer verifies is rejected.
pub fn structure_from_json(v: &Value) -> Result<ReductionStructure> {
    let obj = as_object(v, "a reduction structure")?;
    let names = field(obj, "vars", "a reduction structure")?
        .as_array()
        .ok_or_else(|| malformed("vars must be an array of names"))?
        .iter()
        .map(|n| as_str(n, "a variable name").map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let vars = Vars::new(names)?;
    let entries = field(obj, "entries", "a reduction structure")?
        .as_array()
        .ok_or_else(|| malformed("entries must be an array"))?
        .iter()
        .map(|e| {
            let e = as_object(e, "an entry")?;
            let head = vars.parse_term(as_str(field(e, "head", "an entry")?, "head")?)?;
            let nonmult = match e.get("nonmult") {
                Some(n) => term_list(&vars, n, "nonmult")?,
                None => Vec::new(),
            };
            let tail = match e.get("tail_support") {
                Some(t) => term_list(&vars, t, "tail_support")?,
                None => Vec::new(),
            };
            Ok(Entry::new(head, tail, MultiplierSet::from_nonmult(&nonmult)))
        })
        .collect::<Result<Vec<_>>>()?;
    let cap = obj.get("tail_cap").map(|c| as_u32(c, "tail_cap")).transpose()?;
    let mut rs = ReductionStructure::new(vars.clone(), entries)?.with_tail_cap(cap);
    let certs: Vec<&Value> = match obj.get("certificates") {
        None => Vec::new(),
        Some(Value::Array(a)) => a.iter().collect(),
        Some(c) => vec![c],
    };
    for c in certs {
        let c = as_object(c, "a certificate")?;
        let kind = match as_str(field(c, "kind", "a certificate")?, "kind")? {
            "ordered" => CertificateKind::Ordered,
            "stably-ordered" => CertificateKind::StablyOrdered,
            k => return Err(malformed(format!("unknown certificate kind {k:?}"))),
        };
        let function = function_from_json(c, &vars)?;
        let mode = match c.get("bound") {
            Some(b) => Mode::Bounded(as_u32(b, "bound")?),
            None => Mode::Exact,
        };
        let verdict = rs.attach_certificate(kind.clone(), function, mode)?;
        let claimed = c.get("verified").and_then(Value::as_bool).unwrap_or(false);
        if claimed && !verdict.is_pass() {
            return Err(Error::OrderingViolation(format!(
                "the {} certificate does not verify: {:?}",
                kind.as_str(),
                verdict.witness
            )));
        }
    }
    Ok(rs)
}

/// Canonical text: pretty-printed JSON with a trailing newline.
pub fn write_structure(rs: &ReductionStructure) -> String {
    canonical(&structure_to_json(rs))
}

pub fn read_structure(text: &str) -> Result<ReductionStructure> {
    structure_from_json(&parse_json(text)?)
}

pub fn read_structure_file(path: &Path) -> Result<ReductionStructure> {
    read_structure(&read_file(path)?)
}

pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// `{term: coefficient}` in decreasing degrevlex.
pub fn polynomial_to_json(p: &Polynomial, vars: &Vars) -> Value {
    Value::Object(
        p.sorted_terms()
            .into_iter()
            .map(|(t, c)| (vars.format_term(t), json!(rational_to_string(c))))
            .collect(),
    )
}

pub fn polynomial_from_json(v: &Value, vars: &Vars) -> Result<Polynomial> {
    match v {
        Value::String(s) => Polynomial::parse(vars, s),
        Value::Object(m) => {
            let mut p = Polynomial::zero(vars.len());
            for (t, c) in m {
                p.add_term(vars.parse_term(t)?, parse_coefficient(c)?);
            }
            Ok(p)
        }
        _ => Err(malformed("a polynomial must be a {term: coefficient} object or an expression string")),
    }
}

pub fn marked_set_to_json(ms: &MarkedSet) -> Value {
    let vars = ms.structure().vars();
    let polys: Vec<Value> = ms
        .polys()
        .iter()
        .map(|p| json!({"head": vars.format_term(&p.head), "tail": polynomial_to_json(&p.tail, vars)}))
        .collect();
    json!({"structure": structure_to_json(ms.structure()), "polys": polys})
}

/// `structure` is an embedded document or a path, resolved against `base`.
/// Without `polys` every tail is zero.
pub fn marked_set_from_json(v: &Value, base: Option<&Path>) -> Result<MarkedSet> {
    let obj = as_object(v, "a marked set")?;
    let rs = match field(obj, "structure", "a marked set")? {
        Value::String(p) => {
            let path = match base {
                Some(b) => b.join(p),
                None => Path::new(p).to_path_buf(),
            };
            read_structure_file(&path)?
        }
        doc => structure_from_json(doc)?,
    };
    let Some(polys) = obj.get("polys") else {
        return Ok(MarkedSet::monomial(rs));
    };
    let vars = rs.vars().clone();
    let polys = polys
        .as_array()
        .ok_or_else(|| malformed("polys must be an array"))?
        .iter()
        .map(|p| {
            let p = as_object(p, "a marked polynomial")?;
            let head = vars.parse_term(as_str(field(p, "head", "a marked polynomial")?, "head")?)?;
            let tail = match p.get("tail") {
                Some(t) => polynomial_from_json(t, &vars)?,
                None => Polynomial::zero(vars.len()),
            };
            MarkedPolynomial::new(head, tail)
        })
        .collect::<Result<Vec<_>>>()?;
    MarkedSet::new(rs, polys)
}

pub fn write_marked_set(ms: &MarkedSet) -> String {
    canonical(&marked_set_to_json(ms))
}

pub fn read_marked_set_file(path: &Path) -> Result<MarkedSet> {
    let text = read_file(path)?;
    marked_set_from_json(&parse_json(&text)?, path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build, BuilderKind, BuilderSpec};

    #[test]
    fn structure_round_trip() {
        let v = Vars::default_for(2);
        let gens = v.parse_terms("x^3,x*y,y^2").unwrap();
        for kind in BuilderKind::ALL {
            let spec = BuilderSpec::new(kind, v.clone(), gens.clone()).with_order(TermOrder::DegLex);
            let rs = build(&spec).unwrap();
            let text = write_structure(&rs);
            let back = read_structure(&text).unwrap();
            assert_eq!(back, rs, "{}", kind.name());
            assert_eq!(write_structure(&back), text);
        }
    }

    #[test]
    fn marked_set_document() {
        let doc = r#"{"structure": {"vars": ["x", "y"], "entries": [
            {"head": "x^2", "nonmult": [], "tail_support": ["x*y", "1"]},
            {"head": "y", "nonmult": ["x^2"], "tail_support": []}]},
            "polys": [{"head": "x^2", "tail": {"x*y": "-1", "1": "2/3"}}, {"head": "y", "tail": {}}]}"#;
        let ms = marked_set_from_json(&parse_json(doc).unwrap(), None).unwrap();
        let text = write_marked_set(&ms);
        assert!(text.contains("\"2/3\""));
        let again = marked_set_from_json(&parse_json(&text).unwrap(), None).unwrap();
        assert_eq!(again, ms);
        assert_eq!(write_marked_set(&again), text);
    }

    #[test]
    fn rejects_false_certificate() {
        let doc = r#"{"vars": ["x"], "entries": [{"head": "x", "nonmult": [], "tail_support": ["x^2"]}],
            "certificates": [{"kind": "ordered", "order": "lex", "verified": true}]}"#;
        assert!(read_structure(doc).is_err());
        let doc = doc.replace("\"verified\": true", "\"verified\": false");
        let rs = read_structure(&doc).unwrap();
        assert!(rs.noetherian_certificate().is_none());
    }
}
