//! JSON encodings.
//!
//! A field element is an array of terms `{"monomial", "num", "den"}`, sorted by
//! monomial with zero terms omitted; `num` and `den` are decimal strings in
//! lowest terms with a positive denominator. Decoding also accepts a rational
//! string (`"-3/4"`) or a JSON integer. A vector is a two-element array, a
//! lattice is `{"basis": [v, v]}`. Documents carry their field as an optional
//! top-level `"field": [radicands]`; without it every element must be rational.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::criteria::{BolleReport, Branch, Decision, LpResult, LpSource};
use crate::error::{Error, Result};
use crate::oracle::{Mode, Polygon, StripEntry, TranslateSet, VerifyReport, Window};
use crate::plane::{PlaneLattice, PlaneVector};
use crate::qfield::{FieldDescriptor, FieldElement, Rational};
use crate::zonotope::Zonotope;

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0x6d75_6c74;

fn err(msg: impl Into<String>) -> Error {
    Error::Decode(msg.into())
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| err("expected an object"))
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| err("expected an array"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| err(format!("missing key \"{key}\"")))
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

// ---- fields and elements ----

pub fn encode_field(f: &FieldDescriptor) -> Value {
    Value::from(f.radicands().to_vec())
}

pub fn decode_field(v: &Value) -> Result<FieldDescriptor> {
    let radicands = array(v)?
        .iter()
        .map(|r| {
            r.as_u64()
                .ok_or_else(|| err("radicands must be positive integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    FieldDescriptor::new(&radicands)
}

/// The field declared by a document, or `Q` when absent.
pub fn document_field(doc: &Value) -> Result<FieldDescriptor> {
    match doc.get("field") {
        None | Some(Value::Null) => Ok(FieldDescriptor::rational()),
        Some(f) => decode_field(f),
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => {
            let t = s.strip_prefix('+').unwrap_or(s);
            if t.is_empty() || t.len() > 4096 {
                return Err(err("bad integer string"));
            }
            BigInt::from_str(t).map_err(|_| err(format!("bad integer \"{s}\"")))
        }
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| err("integers must be whole numbers")),
        _ => Err(err("expected an integer")),
    }
}

fn parse_rational_str(s: &str) -> Result<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = parse_bigint(&Value::String(n.to_string()))?;
    let d = parse_bigint(&Value::String(d.to_string()))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn encode_rational(q: &Rational) -> (String, String) {
    (q.numer().to_string(), q.denom().to_string())
}

pub fn encode_element(e: &FieldElement) -> Value {
    let f = e.field();
    let terms: Vec<Value> = e
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| {
            let (num, den) = encode_rational(c);
            json!({"monomial": f.monomial_key(s), "num": num, "den": den})
        })
        .collect();
    Value::Array(terms)
}

pub fn decode_element(v: &Value, f: &FieldDescriptor) -> Result<FieldElement> {
    match v {
        Value::String(s) => Ok(f.rational_element(parse_rational_str(s)?)),
        Value::Number(_) => Ok(f.rational_element(Rational::from_integer(parse_bigint(v)?))),
        Value::Array(terms) => {
            let mut coeffs = vec![Rational::zero(); f.degree()];
            for t in terms {
                let t = object(t)?;
                let key = get(t, "monomial")?
                    .as_str()
                    .ok_or_else(|| err("monomial must be a string"))?;
                let s = f
                    .monomial_from_key(key)
                    .ok_or_else(|| err(format!("monomial \"{key}\" is not in the field")))?;
                let num = parse_bigint(get(t, "num")?)?;
                let den = match t.get("den") {
                    None => BigInt::from(1),
                    Some(d) => parse_bigint(d)?,
                };
                if den.is_zero() {
                    return Err(err("zero denominator"));
                }
                coeffs[s] += Rational::new(num, den);
            }
            f.from_coeffs(coeffs)
        }
        _ => Err(err(
            "field element must be an array of terms, a string or an integer",
        )),
    }
}

pub fn encode_vector(v: &PlaneVector) -> Value {
    json!([encode_element(&v.x), encode_element(&v.y)])
}

pub fn decode_vector(v: &Value, f: &FieldDescriptor) -> Result<PlaneVector> {
    match array(v)?.as_slice() {
        [x, y] => Ok(PlaneVector::new(
            decode_element(x, f)?,
            decode_element(y, f)?,
        )),
        _ => Err(err("a vector has exactly two coordinates")),
    }
}

fn decode_vectors(v: &Value, f: &FieldDescriptor) -> Result<Vec<PlaneVector>> {
    array(v)?.iter().map(|x| decode_vector(x, f)).collect()
}

fn with_field(f: &FieldDescriptor, mut body: Map<String, Value>) -> Value {
    if !f.is_rational_field() {
        body.insert("field".into(), encode_field(f));
    }
    Value::Object(body)
}

fn body(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("encoders build objects"),
    }
}

/// `{"field"?, "element": e}`
pub fn element_document(e: &FieldElement) -> Value {
    with_field(e.field(), body(json!({"element": encode_element(e)})))
}

pub fn element_from_str(text: &str) -> Result<FieldElement> {
    let doc = parse_value(text)?;
    let f = document_field(&doc)?;
    decode_element(get(object(&doc)?, "element")?, &f)
}

pub fn field_from_str(text: &str) -> Result<FieldDescriptor> {
    let doc = parse_value(text)?;
    match &doc {
        Value::Object(o) => decode_field(get(o, "field")?),
        other => decode_field(other),
    }
}

// ---- lattices and zonotopes ----

fn lattice_body(l: &PlaneLattice) -> Value {
    json!({"basis": [encode_vector(&l.basis()[0]), encode_vector(&l.basis()[1])]})
}

pub fn encode_lattice(l: &PlaneLattice) -> Value {
    with_field(l.field(), body(lattice_body(l)))
}

pub fn decode_lattice(v: &Value, f: &FieldDescriptor) -> Result<PlaneLattice> {
    let basis = decode_vectors(get(object(v)?, "basis")?, f)?;
    match <[PlaneVector; 2]>::try_from(basis) {
        Ok([b1, b2]) => PlaneLattice::new(b1, b2),
        Err(_) => Err(err("a lattice basis has exactly two vectors")),
    }
}

pub fn lattice_from_str(text: &str) -> Result<PlaneLattice> {
    let doc = parse_value(text)?;
    let f = document_field(&doc)?;
    decode_lattice(&doc, &f)
}

pub fn encode_zonotope(z: &Zonotope) -> Value {
    let gens: Vec<Value> = z.generators().iter().map(encode_vector).collect();
    with_field(z.field(), body(json!({"generators": gens})))
}

pub fn decode_zonotope(v: &Value, f: &FieldDescriptor) -> Result<Zonotope> {
    let o = object(v)?;
    match (o.get("generators"), o.get("vertices")) {
        (Some(g), None) => Zonotope::from_unordered(decode_vectors(g, f)?),
        (None, Some(vs)) => Zonotope::from_vertices(&decode_vectors(vs, f)?),
        _ => Err(err(
            "zonotope needs exactly one of \"generators\" or \"vertices\"",
        )),
    }
}

pub fn zonotope_from_str(text: &str) -> Result<Zonotope> {
    let doc = parse_value(text)?;
    let f = document_field(&doc)?;
    decode_zonotope(&doc, &f)
}

// ---- scenes ----

/// A polygon with its translation set, as consumed by `verify` and `render`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    pub polygon: Polygon,
    pub lambda: TranslateSet,
    pub mode: Mode,
    /// Display window for rendering.
    pub window: Option<Window>,
}

pub fn encode_window(w: &Window) -> Value {
    json!([
        encode_element(&w.x0),
        encode_element(&w.y0),
        encode_element(&w.x1),
        encode_element(&w.y1)
    ])
}

pub fn decode_window(v: &Value, f: &FieldDescriptor) -> Result<Window> {
    match array(v)?.as_slice() {
        [x0, y0, x1, y1] => Window::new(
            decode_element(x0, f)?,
            decode_element(y0, f)?,
            decode_element(x1, f)?,
            decode_element(y1, f)?,
        ),
        _ => Err(err("a window is [x0, y0, x1, y1]")),
    }
}

fn decode_polygon(v: &Value, f: &FieldDescriptor) -> Result<Polygon> {
    let o = object(v)?;
    match (o.get("generators"), o.get("vertices")) {
        (Some(g), None) => Ok(Polygon::from_zonotope(&Zonotope::from_unordered(
            decode_vectors(g, f)?,
        )?)),
        (None, Some(vs)) => Polygon::new(decode_vectors(vs, f)?),
        _ => Err(err(
            "polygon needs exactly one of \"generators\" or \"vertices\"",
        )),
    }
}

/// A polygon document: `{"field"?, "vertices"}`, or `{"field"?, "generators"}` for a
/// zonotope centered at the origin.
pub fn polygon_from_str(text: &str) -> Result<Polygon> {
    let doc = parse_value(text)?;
    let f = document_field(&doc)?;
    decode_polygon(&doc, &f)
}

fn encode_polygon(p: &Polygon) -> Value {
    let vs: Vec<Value> = p.vertices().iter().map(encode_vector).collect();
    json!({"vertices": vs})
}

fn encode_mode(m: Mode) -> Vec<(String, Value)> {
    match m {
        Mode::Exact => vec![("mode".into(), json!("exact"))],
        Mode::Sampled { samples, seed } => vec![
            ("mode".into(), json!("sampled")),
            ("samples".into(), json!(samples)),
            ("seed".into(), json!(seed)),
        ],
    }
}

fn decode_mode(o: &Map<String, Value>) -> Result<Mode> {
    let as_count = |key: &str, default: u64| -> Result<u64> {
        o.get(key).map_or(Ok(default), |v| {
            v.as_u64()
                .ok_or_else(|| err(format!("\"{key}\" must be a non-negative integer")))
        })
    };
    match o.get("mode").map(|m| m.as_str()) {
        None | Some(Some("exact")) => Ok(Mode::Exact),
        Some(Some("sampled")) => {
            let samples = as_count("samples", DEFAULT_SAMPLES as u64)?;
            if samples == 0 || samples > 10_000_000 {
                return Err(err("\"samples\" must be between 1 and 10^7"));
            }
            Ok(Mode::Sampled {
                samples: samples as usize,
                seed: as_count("seed", DEFAULT_SEED)?,
            })
        }
        _ => Err(err("mode must be \"exact\" or \"sampled\"")),
    }
}

pub fn encode_scene(s: &Scene) -> Value {
    let f = s.polygon.field().clone();
    let lambda = match &s.lambda {
        TranslateSet::Periodic(cosets) => {
            let items: Vec<Value> = cosets
                .iter()
                .map(|(l, z)| json!({"lattice": lattice_body(l), "offset": encode_vector(z)}))
                .collect();
            json!({"periodic": items})
        }
        TranslateSet::Explicit { pattern, window } => {
            json!({"builtin": pattern.name(), "window": encode_window(window)})
        }
    };
    let mut m = Map::new();
    m.insert("polygon".into(), encode_polygon(&s.polygon));
    m.insert("lambda".into(), lambda);
    for (k, v) in encode_mode(s.mode) {
        m.insert(k, v);
    }
    if let Some(w) = &s.window {
        m.insert("window".into(), encode_window(w));
    }
    with_field(&f, m)
}

pub fn decode_scene(doc: &Value) -> Result<Scene> {
    let f = document_field(doc)?;
    let o = object(doc)?;
    let lam = object(get(o, "lambda")?)?;
    let polygon = o
        .get("polygon")
        .map(|p| decode_polygon(p, &f))
        .transpose()?;
    let (polygon, lambda) = match (lam.get("periodic"), lam.get("builtin")) {
        (Some(items), None) => {
            let mut cosets = Vec::new();
            for item in array(items)? {
                let item = object(item)?;
                let l = decode_lattice(get(item, "lattice")?, &f)?;
                let z = match item.get("offset") {
                    None => PlaneVector::zero(&f),
                    Some(z) => decode_vector(z, &f)?,
                };
                cosets.push((l, z));
            }
            if cosets.is_empty() {
                return Err(err("\"periodic\" needs at least one coset"));
            }
            let polygon = polygon.ok_or_else(|| err("periodic scenes need a polygon"))?;
            (polygon, TranslateSet::Periodic(cosets))
        }
        (None, Some(name)) => {
            let name = name
                .as_str()
                .ok_or_else(|| err("builtin name must be a string"))?;
            let window = lam
                .get("window")
                .map(|w| decode_window(w, &f))
                .transpose()?;
            let beta = match lam.get("beta") {
                Some(b) => decode_element(b, &f)?,
                None => f.zero(),
            };
            let (p, set) = crate::oracle::builtin_pattern(name, Some(&beta), window.as_ref())?;
            (polygon.unwrap_or(p), set)
        }
        _ => {
            return Err(err(
                "lambda needs exactly one of \"periodic\" or \"builtin\"",
            ))
        }
    };
    let window = o.get("window").map(|w| decode_window(w, &f)).transpose()?;
    Ok(Scene {
        polygon,
        lambda,
        mode: decode_mode(o)?,
        window,
    })
}

pub fn scene_from_str(text: &str) -> Result<Scene> {
    decode_scene(&parse_value(text)?)
}

// ---- reports ----

fn int_string(k: &BigInt) -> Value {
    Value::String(k.to_string())
}

pub fn encode_decision(d: &Decision) -> Value {
    let (branch, j0) = match d.branch {
        Branch::Parallelogram => ("parallelogram", None),
        Branch::Odd => ("odd", None),
        Branch::Even { j0 } => ("even", j0),
    };
    let mut m = Map::new();
    m.insert("multi_tiles".into(), json!(d.multi_tiles));
    m.insert("branch".into(), json!(branch));
    m.insert("j0".into(), json!(j0));
    m.insert("accepted_j0".into(), json!(d.accepted_j0));
    m.insert(
        "witness_lattice".into(),
        d.witness_lattice.as_ref().map_or(Value::Null, lattice_body),
    );
    m.insert(
        "witness_multiplicity".into(),
        d.witness_multiplicity
            .as_ref()
            .map_or(Value::Null, int_string),
    );
    m.insert(
        "failure_reason".into(),
        d.failure_reason.map_or(Value::Null, |r| json!(r.as_str())),
    );
    let f = d
        .witness_lattice
        .as_ref()
        .map_or_else(FieldDescriptor::rational, |l| l.field().clone());
    with_field(&f, m)
}

pub fn encode_bolle(r: &BolleReport, l: &PlaneLattice) -> Value {
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|p| json!({"j": p.j, "cond1": p.cond1, "cond2": p.cond2}))
        .collect();
    with_field(
        l.field(),
        body(json!({
            "lattice": lattice_body(l),
            "pairs": pairs,
            "verdict": r.verdict,
            "multiplicity": r.multiplicity.as_ref().map_or(Value::Null, int_string),
        })),
    )
}

pub fn encode_lp(r: &LpResult) -> Value {
    let contributing = match &r.source {
        LpSource::TauSpan => Value::Null,
        LpSource::Lambdas(js) => json!(js),
    };
    with_field(
        r.lattice.field(),
        body(json!({
            "lattice": lattice_body(&r.lattice),
            "source": match r.source { LpSource::TauSpan => "tau-span", LpSource::Lambdas(_) => "lambda-intersection" },
            "contributing_j": contributing,
        })),
    )
}

pub fn encode_verify(r: &VerifyReport, f: &FieldDescriptor) -> Value {
    let ce = r.counterexample.as_ref().map_or(Value::Null, |c| {
        json!([
            {"point": encode_vector(&c.first), "count": c.first_count},
            {"point": encode_vector(&c.second), "count": c.second_count},
        ])
    });
    with_field(
        f,
        body(json!({
            "constant": r.constant,
            "multiplicity": r.multiplicity,
            "counterexample": ce,
            "cells_checked": r.cells_checked,
            "window_relative": r.window_relative,
        })),
    )
}

pub fn encode_strips(entries: &[StripEntry]) -> Value {
    let f = entries
        .first()
        .map_or_else(FieldDescriptor::rational, |e| e.mean.field().clone());
    let items: Vec<Value> = entries
        .iter()
        .map(|e| json!({"n": e.n, "count": e.constant, "mean": encode_element(&e.mean)}))
        .collect();
    with_field(&f, body(json!({"strips": items})))
}

/// Lowest-terms check used by tests on emitted documents.
pub fn is_canonical_element(v: &Value) -> bool {
    let Some(terms) = v.as_array() else {
        return false;
    };
    let mut last = None;
    for t in terms {
        let (Some(n), Some(d)) = (
            t.get("num").and_then(Value::as_str),
            t.get("den").and_then(Value::as_str),
        ) else {
            return false;
        };
        let (Ok(n), Ok(d)) = (BigInt::from_str(n), BigInt::from_str(d)) else {
            return false;
        };
        if n.is_zero() || !d.is_positive() || num_integer::Integer::gcd(&n, &d) != BigInt::from(1) {
            return false;
        }
        let key = t
            .get("monomial")
            .and_then(Value::as_str)
            .unwrap_or("")
            .to_string();
        let rank = if key == "1" {
            BigInt::zero()
        } else {
            key[1..].parse().unwrap_or_default()
        };
        if last.as_ref().is_some_and(|l| *l >= rank) {
            return false;
        }
        last = Some(rank);
    }
    true
}
