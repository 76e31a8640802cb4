//! JSON instance files.
//!
//! Quantale: `{"kind":"finite","elements":[..],"leq":[[bool]],"tensor":[[label]],"unit":label}`
//! or `{"kind":"catalog","name":..,"params":{..}}`.
//! Q-order: `{"quantale": <ref>, "elements": [..], "hom": [[value]]}`, or
//! `{"quantale": <ref>, "construction": "d_left" | "d_right" | "discrete", "n": ..}`.
//! Map: `{"source": <ref>, "target": <ref>, "mapping": {src: tgt}}`.
//! Fuzzy set: `{"base": <ref>, "values": {label: value}}`.
//! Sequence: `{"base": <ref>, "prefix": [labels], "cycle": [labels]}`.
//!
//! A `<ref>` is an inline object or a path relative to the referring file.
//! Values are element labels, `"p/q"` strings, or floats (numeric chains).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySet;
use crate::ideal::{EventuallyPeriodicSequence, Failure};
use crate::qorder::QOrderedSet;
use crate::quantale::{standard_quantale, AnyQuantale, Elem, FiniteQuantale, FiniteSpec, DEFAULT_TOLERANCE};

pub type FiniteOrder = QOrderedSet<FiniteQuantale>;

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| fmt_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fmt_err(format!("{}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| fmt_err(format!("{}: {e}", dir.display())))?;
    }
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    fs::write(path, text + "\n").map_err(|e| fmt_err(format!("{}: {e}", path.display())))
}

/// Follows a file reference; inline objects are returned as they are.
fn resolve(v: &Value, dir: &Path) -> Result<(Value, PathBuf)> {
    match v {
        Value::String(p) => {
            let path = dir.join(p);
            let next = path.parent().map(Path::to_path_buf).unwrap_or_default();
            Ok((read_json(&path)?, next))
        }
        Value::Object(_) => Ok((v.clone(), dir.to_path_buf())),
        _ => Err(fmt_err("expected an object or a file path")),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| fmt_err(format!("missing field `{key}`")))
}

pub fn quantale_from_json(v: &Value, dir: &Path) -> Result<AnyQuantale> {
    let (v, _) = resolve(v, dir)?;
    match field(&v, "kind")?.as_str() {
        Some("finite") => {
            let spec: FiniteSpec = serde_json::from_value(v.clone()).map_err(|e| fmt_err(e.to_string()))?;
            Ok(AnyQuantale::Finite(FiniteQuantale::build(&spec)?))
        }
        Some("catalog") => {
            let name = field(&v, "name")?
                .as_str()
                .ok_or_else(|| fmt_err("catalog name must be a string"))?;
            let empty = Map::new();
            let params = v.get("params").and_then(Value::as_object).unwrap_or(&empty);
            Ok(standard_quantale(name, params)?)
        }
        _ => Err(fmt_err("quantale kind must be `finite` or `catalog`")),
    }
}

pub fn finite_quantale_from_json(v: &Value, dir: &Path) -> Result<FiniteQuantale> {
    quantale_from_json(v, dir)?
        .into_finite()
        .ok_or_else(|| fmt_err("this operation needs a finite quantale"))
}

/// Reads an element from a label, a `"p/q"` string, or a float.
pub fn parse_value(q: &FiniteQuantale, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => q.parse(s).ok_or_else(|| fmt_err(format!("`{s}` is not an element"))),
        Value::Number(n) => n
            .as_f64()
            .and_then(|f| q.by_float(f, DEFAULT_TOLERANCE))
            .ok_or_else(|| fmt_err(format!("{n} is not an element"))),
        _ => Err(fmt_err(format!("bad element {v}"))),
    }
}

fn labels(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| fmt_err("expected a list of labels"))?
        .iter()
        .map(|l| match l {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(fmt_err("labels must be strings")),
        })
        .collect()
}

pub fn qorder_from_json(v: &Value, dir: &Path) -> Result<FiniteOrder> {
    let (v, dir) = resolve(v, dir)?;
    let q = Arc::new(finite_quantale_from_json(field(&v, "quantale")?, &dir)?);
    if let Some(c) = v.get("construction") {
        return match c.as_str() {
            Some("d_left") => Ok(QOrderedSet::d_left(q)),
            Some("d_right") => Ok(QOrderedSet::d_right(q)),
            Some("discrete") => {
                let n = field(&v, "n")?.as_u64().ok_or_else(|| fmt_err("n must be a number"))?;
                QOrderedSet::discrete(q, n as usize)
            }
            _ => Err(fmt_err("construction must be d_left, d_right or discrete")),
        };
    }
    let elements = labels(field(&v, "elements")?)?;
    let rows = field(&v, "hom")?
        .as_array()
        .ok_or_else(|| fmt_err("hom must be a matrix"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| fmt_err("hom rows must be lists"))?
                .iter()
                .map(|x| parse_value(&q, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    QOrderedSet::new(q, elements, rows)
}

pub fn qorder_to_json(a: &FiniteOrder) -> Value {
    let q = a.quantale();
    let hom: Vec<Vec<&str>> = a
        .hom_rows()
        .iter()
        .map(|r| r.iter().map(|&v| q.label(v)).collect())
        .collect();
    json!({
        "quantale": quantale_to_json(q),
        "elements": a.labels(),
        "hom": hom,
    })
}

pub fn quantale_to_json(q: &FiniteQuantale) -> Value {
    let mut v = serde_json::to_value(q.to_spec()).expect("spec serializes");
    v["kind"] = json!("finite");
    v
}

/// Reads `{label: value}` (or a list in carrier order) against `base`.
pub fn fuzzy_values(base: &FiniteOrder, v: &Value) -> Result<FuzzySet<Elem>> {
    let q = base.quantale();
    let values = match v {
        Value::Object(m) => {
            if let Some(k) = m.keys().find(|k| base.index_of(k).is_none()) {
                return Err(fmt_err(format!("`{k}` is not a point of the base")));
            }
            base.labels()
                .iter()
                .map(|l| parse_value(q, m.get(l).ok_or_else(|| fmt_err(format!("no value for `{l}`")))?))
                .collect::<Result<Vec<_>>>()?
        }
        Value::Array(a) => {
            if a.len() != base.len() {
                return Err(Error::BaseMismatch {
                    expected: base.len(),
                    found: a.len(),
                });
            }
            a.iter().map(|x| parse_value(q, x)).collect::<Result<Vec<_>>>()?
        }
        _ => return Err(fmt_err("values must be an object or a list")),
    };
    Ok(FuzzySet::new(values))
}

pub fn fuzzy_set_from_json(v: &Value, dir: &Path) -> Result<(FiniteOrder, FuzzySet<Elem>)> {
    let (v, dir) = resolve(v, dir)?;
    let base = qorder_from_json(field(&v, "base")?, &dir)?;
    let phi = fuzzy_values(&base, field(&v, "values")?)?;
    Ok((base, phi))
}

/// A fuzzy-set file for `phi`; `base` is written as given (inline or a path).
pub fn fuzzy_set_to_json(a: &FiniteOrder, phi: &FuzzySet<Elem>, base: Value) -> Value {
    let q = a.quantale();
    let values: Map<String, Value> = a
        .labels()
        .iter()
        .zip(&phi.values)
        .map(|(l, &v)| (l.clone(), json!(q.label(v))))
        .collect();
    json!({ "base": base, "values": values })
}

pub fn sequence_from_json(v: &Value, dir: &Path) -> Result<(FiniteOrder, EventuallyPeriodicSequence)> {
    let (v, dir) = resolve(v, dir)?;
    let base = qorder_from_json(field(&v, "base")?, &dir)?;
    let points = |key: &str| -> Result<Vec<usize>> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(l) => labels(l)?
                .iter()
                .map(|s| base.index_of(s).ok_or_else(|| fmt_err(format!("`{s}` is not a point"))))
                .collect(),
        }
    };
    let seq = EventuallyPeriodicSequence::new(points("prefix")?, points("cycle")?)?;
    Ok((base, seq))
}

pub fn map_from_json(v: &Value, dir: &Path) -> Result<(FiniteOrder, FiniteOrder, Vec<usize>)> {
    let (v, dir) = resolve(v, dir)?;
    let source = qorder_from_json(field(&v, "source")?, &dir)?;
    let target = qorder_from_json(field(&v, "target")?, &dir)?;
    let m = field(&v, "mapping")?
        .as_object()
        .ok_or_else(|| fmt_err("mapping must be an object"))?;
    let mapping = source
        .labels()
        .iter()
        .map(|l| {
            let t = m
                .get(l)
                .and_then(Value::as_str)
                .ok_or_else(|| fmt_err(format!("no image for `{l}`")))?;
            target.index_of(t).ok_or_else(|| fmt_err(format!("`{t}` is not a target point")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((source, target, mapping))
}

/// A decider failure with sets and points written out by label.
pub fn failure_json(a: &FiniteOrder, f: &Failure<Elem>) -> Value {
    let q = a.quantale();
    let fmt = |s: &FuzzySet<Elem>| crate::fuzzy::format(q, s);
    match f {
        Failure::NotLower { x, y } => json!({"reason": "not_lower", "x": a.label(*x), "y": a.label(*y)}),
        Failure::NotInhabited => json!({"reason": "not_inhabited"}),
        Failure::UpperPair { psi1, psi2 } => json!({"reason": "upper_pair", "psi1": fmt(psi1), "psi2": fmt(psi2)}),
        Failure::LowerPair { phi1, phi2 } => json!({"reason": "lower_pair", "phi1": fmt(phi1), "phi2": fmt(phi2)}),
        Failure::NoCommonBound { x, y } => {
            json!({"reason": "no_common_bound", "x": a.label(*x), "y": a.label(*y)})
        }
    }
}

/// Which kind of instance a file holds, judged by its keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Quantale,
    QOrder,
    Map,
    FuzzySet,
    Sequence,
}

pub fn detect_kind(v: &Value) -> Result<FileKind> {
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("kind") {
        FileKind::Quantale
    } else if has("mapping") {
        FileKind::Map
    } else if has("values") {
        FileKind::FuzzySet
    } else if has("cycle") || has("prefix") {
        FileKind::Sequence
    } else if has("quantale") {
        FileKind::QOrder
    } else {
        return Err(fmt_err("cannot tell what this file describes"));
    })
}
