//! JSON documents: `chu3`, `state_space` and `dictionary`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::IoError;
use crate::chu_core::{ChuSpace, TruthValue};
use crate::order_core::Poset;
use crate::ortho_hilbert::{scheme_from_star, Scheme, StateSpace};

/// Dictionary file contents before the referenced spaces are loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionarySpec {
    pub source: String,
    pub target: String,
    pub f_states: Vec<(String, String)>,
    pub f_tests: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Chu(ChuSpace),
    Space(StateSpace),
    Dictionary(DictionarySpec),
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema { pointer: pointer.into(), message: message.into() }
}

struct Object<'a> {
    pointer: String,
    map: &'a Map<String, Value>,
}

impl<'a> Object<'a> {
    fn new(value: &'a Value, pointer: &str, allowed: &[&str]) -> Result<Object<'a>, IoError> {
        let map = value.as_object().ok_or_else(|| schema(pointer, "expected an object"))?;
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(schema(format!("{pointer}/{}", escape(k)), "unknown key"));
        }
        Ok(Object { pointer: pointer.to_string(), map })
    }

    fn at(&self, key: &str) -> String {
        format!("{}/{}", self.pointer, escape(key))
    }

    fn required(&self, key: &str) -> Result<&'a Value, IoError> {
        self.map.get(key).ok_or_else(|| schema(self.at(key), "missing key"))
    }

    fn optional(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }
}

fn string(value: &Value, pointer: &str) -> Result<String, IoError> {
    value.as_str().map(str::to_string).ok_or_else(|| schema(pointer, "expected a string"))
}

fn array<'a>(value: &'a Value, pointer: &str) -> Result<&'a Vec<Value>, IoError> {
    value.as_array().ok_or_else(|| schema(pointer, "expected an array"))
}

fn strings(value: &Value, pointer: &str) -> Result<Vec<String>, IoError> {
    array(value, pointer)?.iter().enumerate().map(|(i, v)| string(v, &format!("{pointer}/{i}"))).collect()
}

fn pairs(value: &Value, pointer: &str) -> Result<Vec<(String, String)>, IoError> {
    array(value, pointer)?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let here = format!("{pointer}/{i}");
            let items = strings(v, &here)?;
            match items.as_slice() {
                [a, b] => Ok((a.clone(), b.clone())),
                _ => Err(schema(here, "expected a pair of strings")),
            }
        })
        .collect()
}

fn string_map(value: &Value, pointer: &str) -> Result<Vec<(String, String)>, IoError> {
    let map = value.as_object().ok_or_else(|| schema(pointer, "expected an object"))?;
    map.iter().map(|(k, v)| Ok((k.clone(), string(v, &format!("{pointer}/{}", escape(k)))?))).collect()
}

fn root(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json { line: e.line(), column: e.column(), message: e.to_string() })
}

fn kind_of(value: &Value) -> Result<String, IoError> {
    let map = value.as_object().ok_or_else(|| schema("", "expected an object"))?;
    string(map.get("kind").ok_or_else(|| schema("/kind", "missing key"))?, "/kind")
}

pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let value = root(text)?;
    match kind_of(&value)?.as_str() {
        "chu3" => chu_from_value(&value).map(Document::Chu),
        "state_space" => space_from_value(&value).map(Document::Space),
        "dictionary" => dictionary_from_value(&value).map(Document::Dictionary),
        other => Err(schema("/kind", format!("unknown kind `{other}`"))),
    }
}

fn expect_kind(value: &Value, kind: &str) -> Result<(), IoError> {
    let found = kind_of(value)?;
    if found != kind {
        return Err(schema("/kind", format!("expected `{kind}`, found `{found}`")));
    }
    Ok(())
}

pub fn parse_chu3(text: &str) -> Result<ChuSpace, IoError> {
    let value = root(text)?;
    expect_kind(&value, "chu3")?;
    chu_from_value(&value)
}

pub fn parse_state_space(text: &str) -> Result<StateSpace, IoError> {
    let value = root(text)?;
    expect_kind(&value, "state_space")?;
    space_from_value(&value)
}

pub fn parse_dictionary(text: &str) -> Result<DictionarySpec, IoError> {
    let value = root(text)?;
    expect_kind(&value, "dictionary")?;
    dictionary_from_value(&value)
}

fn chu_from_value(value: &Value) -> Result<ChuSpace, IoError> {
    let obj = Object::new(value, "", &["kind", "preparations", "tests", "evaluation"])?;
    let preparations = strings(obj.required("preparations")?, "/preparations")?;
    let tests = strings(obj.required("tests")?, "/tests")?;
    let rows = array(obj.required("evaluation")?, "/evaluation")?;
    if rows.len() != preparations.len() {
        return Err(schema("/evaluation", format!("{} rows for {} preparations", rows.len(), preparations.len())));
    }
    let mut eval = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let cells = array(row, &format!("/evaluation/{r}"))?;
        if cells.len() != tests.len() {
            return Err(schema(format!("/evaluation/{r}"), format!("{} cells for {} tests", cells.len(), tests.len())));
        }
        let parsed = cells
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                let here = format!("/evaluation/{r}/{c}");
                cell.as_str()
                    .and_then(TruthValue::from_symbol)
                    .ok_or_else(|| schema(here, "expected \"Y\", \"N\" or \"_\""))
            })
            .collect::<Result<Vec<_>, _>>()?;
        eval.push(parsed);
    }
    Ok(ChuSpace::new(preparations, tests, eval)?)
}

fn lookup(p: &Poset, name: &str, pointer: String) -> Result<usize, IoError> {
    p.index_of(name).ok_or_else(|| schema(pointer, format!("unknown element `{name}`")))
}

fn space_from_value(value: &Value) -> Result<StateSpace, IoError> {
    let obj = Object::new(value, "", &["kind", "elements", "leq", "star", "scheme"])?;
    let elements = strings(obj.required("elements")?, "/elements")?;
    let leq = pairs(obj.required("leq")?, "/leq")?;
    for (i, (a, b)) in leq.iter().enumerate() {
        for (j, name) in [a, b].into_iter().enumerate() {
            if !elements.contains(name) {
                return Err(schema(format!("/leq/{i}/{j}"), format!("unknown element `{name}`")));
            }
        }
    }
    let poset = Poset::new(elements, &leq)?;
    let scheme = if let Some(v) = obj.optional("scheme") {
        let listed = pairs(v, "/scheme")?;
        let mut idx = Vec::with_capacity(listed.len());
        for (i, (a, b)) in listed.iter().enumerate() {
            idx.push((lookup(&poset, a, format!("/scheme/{i}/0"))?, lookup(&poset, b, format!("/scheme/{i}/1"))?));
        }
        Some(Scheme::new(&poset, idx)?)
    } else if let Some(v) = obj.optional("star") {
        let mut star = vec![None; poset.len()];
        for (k, target) in string_map(v, "/star")? {
            let from = lookup(&poset, &k, format!("/star/{}", escape(&k)))?;
            star[from] = Some(lookup(&poset, &target, format!("/star/{}", escape(&k)))?);
        }
        Some(scheme_from_star(&poset, &star)?)
    } else {
        None
    };
    Ok(StateSpace::new(poset, scheme))
}

fn dictionary_from_value(value: &Value) -> Result<DictionarySpec, IoError> {
    let obj = Object::new(value, "", &["kind", "source", "target", "f_states", "f_tests"])?;
    Ok(DictionarySpec {
        source: string(obj.required("source")?, "/source")?,
        target: string(obj.required("target")?, "/target")?,
        f_states: string_map(obj.required("f_states")?, "/f_states")?,
        f_tests: string_map(obj.required("f_tests")?, "/f_tests")?,
    })
}

fn render(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("values serialize");
    out.push('\n');
    out
}

/// Rows and columns in their given order.
pub fn save_chu3(c: &ChuSpace) -> String {
    let evaluation: Vec<Vec<String>> =
        c.rows().iter().map(|r| r.iter().map(|v| v.symbol().to_string()).collect()).collect();
    render(&json!({
        "kind": "chu3",
        "preparations": c.preparations(),
        "tests": c.tests(),
        "evaluation": evaluation,
    }))
}

/// Sorted elements, sorted cover pairs and sorted scheme pairs.
pub fn save_state_space(s: &StateSpace) -> String {
    let p = &s.poset;
    let mut elements: Vec<&str> = p.names().iter().map(String::as_str).collect();
    elements.sort_unstable();
    let mut leq: Vec<[&str; 2]> = p.cover_relation().iter().map(|&(a, b)| [p.name(a), p.name(b)]).collect();
    leq.sort_unstable();
    let mut doc = json!({ "kind": "state_space", "elements": elements, "leq": leq });
    if let Some(u) = &s.scheme {
        let mut scheme: Vec<[&str; 2]> = u.pairs().iter().map(|t| [p.name(t.sigma), p.name(t.sigma_prime)]).collect();
        scheme.sort_unstable();
        doc["scheme"] = json!(scheme);
    }
    render(&doc)
}

pub fn save_dictionary(d: &DictionarySpec) -> String {
    let states: BTreeMap<&str, &str> = d.f_states.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let tests: BTreeMap<&str, &str> = d.f_tests.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    render(&json!({
        "kind": "dictionary",
        "source": d.source,
        "target": d.target,
        "f_states": states,
        "f_tests": tests,
    }))
}
