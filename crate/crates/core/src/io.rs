//! JSON documents for instances and patterns.
//!
//! Every document is an envelope `{"kind": "instance" | "pattern", "formatVersion": 1, "payload": …}`.
//! Unknown fields are rejected at every level.

use std::collections::BTreeSet;

use serde::de::IgnoredAny;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CspInstance, CspPattern, Scope, TruthValue, Value};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Validation(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn invalid(msg: impl Into<String>) -> IoError {
    IoError::Validation(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Instance(CspInstance),
    Pattern(CspPattern),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct Envelope<P> {
    kind: String,
    format_version: u32,
    payload: P,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    variables: usize,
    domains: Vec<Vec<Value>>,
    constraints: Vec<InstanceConstraint>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceConstraint {
    scope: [usize; 2],
    disallowed: Vec<[Value; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternDoc {
    variables: usize,
    values: Vec<usize>,
    entries: Vec<PatternConstraint>,
    context: ContextDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternConstraint {
    scope: [usize; 2],
    pairs: Vec<PairDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    a: Value,
    b: Value,
    tv: Tv,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum Tv {
    T,
    F,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ContextDoc {
    /// Groups of pairwise distinct variables; written as pairs.
    #[serde(default)]
    neq_vars: Vec<Vec<usize>>,
    #[serde(default)]
    var_order: Option<Vec<usize>>,
    /// Pairs of `[variable, value]` points.
    #[serde(default)]
    neq_values: Vec<[[usize; 2]; 2]>,
    #[serde(default)]
    value_order: bool,
}

/// Parses an instance or pattern document.
pub fn parse(text: &str) -> Result<Document, IoError> {
    let head: Envelope<IgnoredAny> = serde_json::from_str(text)?;
    if head.format_version != FORMAT_VERSION {
        return Err(invalid(format!("unsupported formatVersion {}", head.format_version)));
    }
    match head.kind.as_str() {
        "instance" => {
            let env: Envelope<InstanceDoc> = serde_json::from_str(text)?;
            instance_from_doc(env.payload).map(Document::Instance)
        }
        "pattern" => {
            let env: Envelope<PatternDoc> = serde_json::from_str(text)?;
            pattern_from_doc(env.payload).map(Document::Pattern)
        }
        k => Err(invalid(format!("unknown kind {k:?}"))),
    }
}

pub fn parse_instance(text: &str) -> Result<CspInstance, IoError> {
    match parse(text)? {
        Document::Instance(p) => Ok(p),
        Document::Pattern(_) => Err(invalid("expected an instance, found a pattern")),
    }
}

pub fn parse_pattern(text: &str) -> Result<CspPattern, IoError> {
    match parse(text)? {
        Document::Pattern(p) => Ok(p),
        Document::Instance(_) => Err(invalid("expected a pattern, found an instance")),
    }
}

pub fn serialise(doc: &Document) -> String {
    match doc {
        Document::Instance(p) => serialise_instance(p),
        Document::Pattern(p) => serialise_pattern(p),
    }
}

pub fn serialise_instance(p: &CspInstance) -> String {
    let payload = InstanceDoc {
        variables: p.num_vars(),
        domains: p.domains().to_vec(),
        constraints: p
            .constraints()
            .map(|(s, pairs)| InstanceConstraint {
                scope: [s.lo(), s.hi()],
                disallowed: pairs.iter().map(|&(a, b)| [a, b]).collect(),
            })
            .collect(),
    };
    to_text(Envelope { kind: "instance".into(), format_version: FORMAT_VERSION, payload })
}

pub fn serialise_pattern(chi: &CspPattern) -> String {
    let entries = chi
        .constraints()
        .map(|c| PatternConstraint {
            scope: [c.scope().lo(), c.scope().hi()],
            pairs: c
                .entries()
                .map(|((a, b), tv)| PairDoc { a, b, tv: if tv == TruthValue::True { Tv::T } else { Tv::F } })
                .collect(),
        })
        .collect();
    let ctx = chi.context();
    let context = ContextDoc {
        neq_vars: ctx.neq_vars().map(|(u, v)| vec![u, v]).collect(),
        var_order: ctx.var_order().map(<[usize]>::to_vec),
        neq_values: ctx
            .neq_values()
            .map(|(p, q)| [[p.var, p.value as usize], [q.var, q.value as usize]])
            .collect(),
        value_order: ctx.value_order(),
    };
    let payload =
        PatternDoc { variables: chi.num_vars(), values: chi.value_counts().to_vec(), entries, context };
    to_text(Envelope { kind: "pattern".into(), format_version: FORMAT_VERSION, payload })
}

fn to_text<P: Serialize>(env: Envelope<P>) -> String {
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialise");
    s.push('\n');
    s
}

fn scope_of(pair: [usize; 2], n: usize, seen: &mut BTreeSet<Scope>) -> Result<Scope, IoError> {
    let [u, v] = pair;
    if u >= n || v >= n {
        return Err(invalid(format!("scope [{u}, {v}] outside {n} variables")));
    }
    let s = Scope::new(u, v).map_err(|e| invalid(e.to_string()))?;
    if !seen.insert(s) {
        return Err(invalid(format!("two constraints on scope [{}, {}]", s.lo(), s.hi())));
    }
    Ok(s)
}

fn instance_from_doc(doc: InstanceDoc) -> Result<CspInstance, IoError> {
    if doc.domains.len() != doc.variables {
        return Err(invalid(format!("{} domains for {} variables", doc.domains.len(), doc.variables)));
    }
    for (v, d) in doc.domains.iter().enumerate() {
        if d.iter().collect::<BTreeSet<_>>().len() != d.len() {
            return Err(invalid(format!("domain of variable {v} repeats a value")));
        }
    }
    let mut seen = BTreeSet::new();
    let mut b = CspInstance::builder(doc.domains);
    for c in doc.constraints {
        let [u, v] = c.scope;
        scope_of(c.scope, doc.variables, &mut seen)?;
        for [a, x] in c.disallowed {
            b.disallow((u, a), (v, x));
        }
    }
    b.build().map_err(|e| invalid(e.to_string()))
}

fn pattern_from_doc(doc: PatternDoc) -> Result<CspPattern, IoError> {
    let n = doc.variables;
    if doc.values.len() != n {
        return Err(invalid(format!("{} value counts for {n} variables", doc.values.len())));
    }
    let mut seen = BTreeSet::new();
    let mut b = CspPattern::builder(doc.values);
    for c in doc.entries {
        let [u, v] = c.scope;
        scope_of(c.scope, n, &mut seen)?;
        for p in c.pairs {
            let tv = match p.tv {
                Tv::T => TruthValue::True,
                Tv::F => TruthValue::False,
            };
            b = b.entry((u, p.a), (v, p.b), tv);
        }
    }
    for group in &doc.context.neq_vars {
        if group.iter().any(|&v| v >= n) {
            return Err(invalid(format!("neqVars group {group:?} outside {n} variables")));
        }
        b = b.distinct(group);
    }
    for [[u, a], [v, c]] in doc.context.neq_values {
        if u != v {
            return Err(invalid(format!("neqValues pair spans variables {u} and {v}")));
        }
        b = b.distinct_values(u, a as Value, c as Value);
    }
    if let Some(order) = doc.context.var_order {
        b = b.var_order(order);
    }
    if doc.context.value_order {
        b = b.value_order();
    }
    b.build().map_err(|e| invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn instance_round_trip() {
        let mut b = CspInstance::builder(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]]);
        b.disallow((0, 2), (1, 1)).disallow((0, 3), (2, 1)).disallow((1, 3), (2, 2));
        let p = b.build().unwrap();
        let text = serialise_instance(&p);
        assert_eq!(parse(&text).unwrap(), Document::Instance(p));
    }

    #[test]
    fn catalog_round_trips() {
        for chi in [catalog::btp(), catalog::simple(), catalog::max2(), catalog::valency(), catalog::cycle(2).unwrap()] {
            assert_eq!(parse_pattern(&serialise_pattern(&chi)).unwrap(), chi);
        }
    }

    #[test]
    fn duplicate_scope_is_invalid() {
        let text = r#"{"kind":"instance","formatVersion":1,"payload":{"variables":2,"domains":[[0],[0]],
            "constraints":[{"scope":[0,1],"disallowed":[[0,0]]},{"scope":[1,0],"disallowed":[]}]}}"#;
        assert!(matches!(parse(text), Err(IoError::Validation(_))));
    }

    #[test]
    fn bad_truth_value_is_a_parse_error() {
        let text = "{\"kind\":\"pattern\",\"formatVersion\":1,\"payload\":{\"variables\":2,\"values\":[1,1],\n\
            \"entries\":[{\"scope\":[0,1],\"pairs\":[{\"a\":0,\"b\":0,\"tv\":\"X\"}]}],\"context\":{}}}";
        match parse(text) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_and_versions() {
        let extra = r#"{"kind":"instance","formatVersion":1,"payload":{"variables":0,"domains":[],"constraints":[]},"x":1}"#;
        assert!(matches!(parse(extra), Err(IoError::Parse { .. })));
        let v2 = r#"{"kind":"instance","formatVersion":2,"payload":{"variables":0,"domains":[],"constraints":[]}}"#;
        assert!(matches!(parse(v2), Err(IoError::Validation(_))));
        let out_of_range = r#"{"kind":"instance","formatVersion":1,"payload":{"variables":1,"domains":[[0]],
            "constraints":[{"scope":[0,1],"disallowed":[]}]}}"#;
        assert!(matches!(parse(out_of_range), Err(IoError::Validation(_))));
    }

    #[test]
    fn neq_groups_are_accepted() {
        let text = r#"{"kind":"pattern","formatVersion":1,"payload":{"variables":3,"values":[1,1,1],
            "entries":[],"context":{"neqVars":[[0,1,2]],"varOrder":null,"neqValues":[],"valueOrder":false}}}"#;
        let chi = parse_pattern(text).unwrap();
        assert_eq!(chi.context().neq_vars().count(), 3);
    }
}
