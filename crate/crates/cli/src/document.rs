//! JSON documents: parsing with name resolution, and canonical serialization.
//!
//! A document is a single-key object naming its kind:
//!
//! ```text
//! {"finset": {"name": "X", "elements": ["a", "b"]}}
//! {"finrel": {"target": …, "source": …, "pairs": [["a", "1"], …]}}
//! {"space":  {"blocks": [[1, 1], [2, -1]]}}
//! {"canrel": {"target": …, "source": …, "basis": [["1", "0", "1/2", "0"], …]}}
//! {"path":   {"engine": "symplin", "word": [ {"canrel": …}, "f", … ]}}
//! {"factorization": {"A": …, "B": …, "Q": …, "trace": [ … ]}}
//! ```
//!
//! Objects inside a document (targets, sources, word entries) are given
//! either inline or as the name of an earlier document. Every document
//! except `finset` may carry an optional `"name"`; a finset is always named.
//! One input may hold several documents, either as a JSON array or as a
//! whitespace-separated sequence.

use serde_json::{json, Map, Value};

use wwcat_core::factor::{Factorization, Move, TraceStep};
use wwcat_core::linalg::{format_rational, parse_rational, Rational};
use wwcat_core::ww::make_path;
use wwcat_core::{CanRel, FinEngine, FinRelation, FinSet, LinEngine, SymplecticSpace};

use crate::error::{CliError, Result};

/// Which relation engine a morphism or path belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    FinRel,
    SympLin,
}

impl EngineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::FinRel => "finrel",
            EngineKind::SympLin => "symplin",
        }
    }

    pub fn parse(s: &str) -> Option<EngineKind> {
        match s {
            "finrel" => Some(EngineKind::FinRel),
            "symplin" => Some(EngineKind::SympLin),
            _ => None,
        }
    }
}

/// A morphism of either engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Morphism {
    Fin(FinRelation),
    Lin(CanRel),
}

impl Morphism {
    pub fn engine(&self) -> EngineKind {
        match self {
            Morphism::Fin(_) => EngineKind::FinRel,
            Morphism::Lin(_) => EngineKind::SympLin,
        }
    }
}

/// A path document. The word is kept as written, identities included;
/// minimal form is produced on demand.
#[derive(Debug, Clone, PartialEq)]
pub enum PathDoc {
    Fin {
        word: Vec<FinRelation>,
        object: Option<FinSet>,
    },
    Lin {
        word: Vec<CanRel>,
        object: Option<SymplecticSpace>,
    },
}

impl PathDoc {
    pub fn engine(&self) -> EngineKind {
        match self {
            PathDoc::Fin { .. } => EngineKind::FinRel,
            PathDoc::Lin { .. } => EngineKind::SympLin,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PathDoc::Fin { word, .. } => word.len(),
            PathDoc::Lin { word, .. } => word.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    FinSet(FinSet),
    FinRel(FinRelation),
    Space(SymplecticSpace),
    CanRel(CanRel),
    Path(PathDoc),
    Factorization(Factorization),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::FinSet(_) => "finset",
            Document::FinRel(_) => "finrel",
            Document::Space(_) => "space",
            Document::CanRel(_) => "canrel",
            Document::Path(_) => "path",
            Document::Factorization(_) => "factorization",
        }
    }

    pub fn as_morphism(&self) -> Option<Morphism> {
        match self {
            Document::FinRel(f) => Some(Morphism::Fin(f.clone())),
            Document::CanRel(f) => Some(Morphism::Lin(f.clone())),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub name: Option<String>,
    pub doc: Document,
}

/// Documents loaded so far; later definitions shadow earlier ones.
#[derive(Debug, Default, Clone)]
pub struct Library {
    entries: Vec<Entry>,
}

impl Library {
    pub fn new() -> Library {
        Library::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Document> {
        self.entries
            .iter()
            .rev()
            .find(|e| e.name.as_deref() == Some(name))
            .map(|e| &e.doc)
    }

    /// Parses every document in `text`, adding each to the library as soon
    /// as it is parsed so later documents can refer to it. Returns the
    /// number of documents added.
    pub fn load(&mut self, text: &str) -> Result<usize> {
        let values = split_documents(text)?;
        for (i, v) in values.iter().enumerate() {
            let at = if values.len() == 1 {
                "$".to_string()
            } else {
                format!("$[{i}]")
            };
            let entry = self.parse_entry(v, &at)?;
            self.entries.push(entry);
        }
        Ok(values.len())
    }

    fn parse_entry(&self, v: &Value, at: &str) -> Result<Entry> {
        let (kind, body) = single_key(v, at)?;
        let at = format!("{at}.{kind}");
        let doc = match kind {
            "finset" => Document::FinSet(parse_finset_body(body, &at)?),
            "finrel" => Document::FinRel(self.parse_finrel_body(body, &at)?),
            "space" => Document::Space(parse_space_body(body, &at)?),
            "canrel" => Document::CanRel(self.parse_canrel_body(body, &at)?),
            "path" => Document::Path(self.parse_path_body(body, &at)?),
            "factorization" => Document::Factorization(self.parse_factorization_body(body, &at)?),
            other => {
                return Err(CliError::schema(
                    at,
                    format!("unknown document kind `{other}`"),
                ));
            }
        };
        let name = match &doc {
            Document::FinSet(s) => Some(s.name().to_string()),
            _ => optional_name(body, &at)?,
        };
        Ok(Entry { name, doc })
    }

    fn finset_ref(&self, v: &Value, at: &str) -> Result<FinSet> {
        match v {
            Value::String(name) => match self.get(name) {
                Some(Document::FinSet(s)) => Ok(s.clone()),
                Some(d) => Err(CliError::schema(
                    at,
                    format!("`{name}` is a {}, not a finset", d.kind()),
                )),
                None => Err(CliError::schema(at, format!("unresolved name `{name}`"))),
            },
            Value::Object(m) if m.contains_key("finset") => {
                let (_, body) = single_key(v, at)?;
                parse_finset_body(body, &format!("{at}.finset"))
            }
            _ => parse_finset_body(v, at),
        }
    }

    fn space_ref(&self, v: &Value, at: &str) -> Result<SymplecticSpace> {
        match v {
            Value::String(name) => match self.get(name) {
                Some(Document::Space(s)) => Ok(s.clone()),
                Some(d) => Err(CliError::schema(
                    at,
                    format!("`{name}` is a {}, not a space", d.kind()),
                )),
                None => Err(CliError::schema(at, format!("unresolved name `{name}`"))),
            },
            Value::Object(m) if m.contains_key("space") => {
                let (_, body) = single_key(v, at)?;
                parse_space_body(body, &format!("{at}.space"))
            }
            _ => parse_space_body(v, at),
        }
    }

    fn morphism_ref(&self, v: &Value, at: &str) -> Result<Morphism> {
        match v {
            Value::String(name) => match self.get(name) {
                Some(d) => d.as_morphism().ok_or_else(|| {
                    CliError::schema(at, format!("`{name}` is a {}, not a morphism", d.kind()))
                }),
                None => Err(CliError::schema(at, format!("unresolved name `{name}`"))),
            },
            _ => {
                let (kind, body) = single_key(v, at)?;
                let at = format!("{at}.{kind}");
                match kind {
                    "finrel" => Ok(Morphism::Fin(self.parse_finrel_body(body, &at)?)),
                    "canrel" => Ok(Morphism::Lin(self.parse_canrel_body(body, &at)?)),
                    other => Err(CliError::schema(
                        at,
                        format!("expected a morphism, found `{other}`"),
                    )),
                }
            }
        }
    }

    fn canrel_ref(&self, v: &Value, at: &str) -> Result<CanRel> {
        match self.morphism_ref(v, at)? {
            Morphism::Lin(f) => Ok(f),
            Morphism::Fin(_) => Err(CliError::schema(at, "expected a canrel, found a finrel")),
        }
    }

    fn parse_finrel_body(&self, v: &Value, at: &str) -> Result<FinRelation> {
        let m = object(v, at)?;
        check_keys(m, at, &["target", "source", "pairs"], &["name"])?;
        let target = self.finset_ref(&m["target"], &format!("{at}.target"))?;
        let source = self.finset_ref(&m["source"], &format!("{at}.source"))?;
        let pairs_at = format!("{at}.pairs");
        let mut pairs = Vec::new();
        for (i, p) in array(&m["pairs"], &pairs_at)?.iter().enumerate() {
            let p_at = format!("{pairs_at}[{i}]");
            match array(p, &p_at)?.as_slice() {
                [x, y] => pairs.push((
                    string(x, &format!("{p_at}[0]"))?.to_string(),
                    string(y, &format!("{p_at}[1]"))?.to_string(),
                )),
                _ => return Err(CliError::schema(p_at, "a pair has exactly two labels")),
            }
        }
        FinRelation::new(target, source, pairs).map_err(|e| CliError::domain(at, e))
    }

    fn parse_canrel_body(&self, v: &Value, at: &str) -> Result<CanRel> {
        let m = object(v, at)?;
        check_keys(m, at, &["target", "source", "basis"], &["name"])?;
        let target = self.space_ref(&m["target"], &format!("{at}.target"))?;
        let source = self.space_ref(&m["source"], &format!("{at}.source"))?;
        let width = target.dim() + source.dim();
        let rows = parse_matrix(&m["basis"], &format!("{at}.basis"), width)?;
        CanRel::from_rows(target, source, rows).map_err(|e| CliError::domain(at, e))
    }

    fn parse_path_body(&self, v: &Value, at: &str) -> Result<PathDoc> {
        let m = object(v, at)?;
        check_keys(m, at, &["engine", "word"], &["name", "object"])?;
        let engine_at = format!("{at}.engine");
        let engine = string(&m["engine"], &engine_at)?;
        let engine = EngineKind::parse(engine).ok_or_else(|| {
            CliError::schema(
                &engine_at,
                format!("unknown engine `{engine}`, expected finrel or symplin"),
            )
        })?;
        let word_at = format!("{at}.word");
        let items = array(&m["word"], &word_at)?;
        let object_at = format!("{at}.object");
        let doc = match engine {
            EngineKind::FinRel => {
                let mut word = Vec::with_capacity(items.len());
                for (i, item) in items.iter().enumerate() {
                    match self.morphism_ref(item, &format!("{word_at}[{i}]"))? {
                        Morphism::Fin(f) => word.push(f),
                        Morphism::Lin(_) => {
                            return Err(CliError::schema(
                                format!("{word_at}[{i}]"),
                                "canrel in a finrel path",
                            ));
                        }
                    }
                }
                let object = m
                    .get("object")
                    .map(|o| self.finset_ref(o, &object_at))
                    .transpose()?;
                make_path(&FinEngine, word.clone(), object.clone())
                    .map_err(|e| CliError::domain(&word_at, e))?;
                PathDoc::Fin { word, object }
            }
            EngineKind::SympLin => {
                let mut word = Vec::with_capacity(items.len());
                for (i, item) in items.iter().enumerate() {
                    word.push(self.canrel_ref(item, &format!("{word_at}[{i}]"))?);
                }
                let object = m
                    .get("object")
                    .map(|o| self.space_ref(o, &object_at))
                    .transpose()?;
                make_path(&LinEngine, word.clone(), object.clone())
                    .map_err(|e| CliError::domain(&word_at, e))?;
                PathDoc::Lin { word, object }
            }
        };
        Ok(doc)
    }

    fn parse_factorization_body(&self, v: &Value, at: &str) -> Result<Factorization> {
        let m = object(v, at)?;
        check_keys(m, at, &["A", "B", "Q", "trace"], &["name"])?;
        let a = self.canrel_ref(&m["A"], &format!("{at}.A"))?;
        let b = self.canrel_ref(&m["B"], &format!("{at}.B"))?;
        let q = self.space_ref(&m["Q"], &format!("{at}.Q"))?;
        let trace_at = format!("{at}.trace");
        let mut trace = Vec::new();
        for (i, s) in array(&m["trace"], &trace_at)?.iter().enumerate() {
            let s_at = format!("{trace_at}[{i}]");
            let sm = object(s, &s_at)?;
            check_keys(sm, &s_at, &["move", "index", "defects"], &[])?;
            let mv = string(&sm["move"], &format!("{s_at}.move"))?;
            let movement = Move::parse(mv).ok_or_else(|| {
                CliError::schema(format!("{s_at}.move"), format!("unknown move `{mv}`"))
            })?;
            let index = count(&sm["index"], &format!("{s_at}.index"))?;
            let d_at = format!("{s_at}.defects");
            let (t, mo) = match array(&sm["defects"], &d_at)?.as_slice() {
                [t, mo] => (count(t, &d_at)?, count(mo, &d_at)?),
                _ => {
                    return Err(CliError::schema(
                        d_at,
                        "defects are [transversality, monicity]",
                    ))
                }
            };
            trace.push(TraceStep {
                movement,
                index,
                transversality_defect: t,
                monicity_defect: mo,
            });
        }
        Ok(Factorization {
            reduction_part: a,
            coreduction_part: b,
            middle: q,
            trace,
        })
    }
}

/// Parses `text` and returns its last document.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lib = Library::new();
    lib.load(text)?;
    Ok(lib
        .entries
        .pop()
        .expect("load yields at least one document")
        .doc)
}

fn split_documents(text: &str) -> Result<Vec<Value>> {
    let mut values = Vec::new();
    for v in serde_json::Deserializer::from_str(text).into_iter::<Value>() {
        let v = v.map_err(|e| CliError::Json(e.to_string()))?;
        values.push(v);
    }
    if let [Value::Array(items)] = values.as_slice() {
        values = items.clone();
    }
    if values.is_empty() {
        return Err(CliError::Json("no documents in input".into()));
    }
    Ok(values)
}

fn single_key<'a>(v: &'a Value, at: &str) -> Result<(&'a str, &'a Value)> {
    let m = object(v, at)?;
    let mut it = m.iter();
    match (it.next(), it.next()) {
        (Some((k, body)), None) => Ok((k.as_str(), body)),
        _ => Err(CliError::schema(
            at,
            "a document is an object with exactly one key naming its kind",
        )),
    }
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| CliError::schema(at, "expected an object"))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| CliError::schema(at, "expected an array"))
}

fn string<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| CliError::schema(at, "expected a string"))
}

fn count(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::schema(at, "expected a non-negative integer"))
}

fn check_keys(
    m: &Map<String, Value>,
    at: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<()> {
    for k in required {
        if !m.contains_key(*k) {
            return Err(CliError::schema(at, format!("missing field `{k}`")));
        }
    }
    for k in m.keys() {
        if !required.contains(&k.as_str()) && !optional.contains(&k.as_str()) {
            return Err(CliError::schema(at, format!("unknown field `{k}`")));
        }
    }
    Ok(())
}

fn optional_name(body: &Value, at: &str) -> Result<Option<String>> {
    match body.get("name") {
        None => Ok(None),
        Some(v) => Ok(Some(string(v, &format!("{at}.name"))?.to_string())),
    }
}

fn parse_finset_body(v: &Value, at: &str) -> Result<FinSet> {
    let m = object(v, at)?;
    check_keys(m, at, &["name", "elements"], &[])?;
    let name = string(&m["name"], &format!("{at}.name"))?;
    let el_at = format!("{at}.elements");
    let elements = array(&m["elements"], &el_at)?
        .iter()
        .enumerate()
        .map(|(i, e)| string(e, &format!("{el_at}[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    FinSet::new(name, elements).map_err(|e| CliError::domain(at, e))
}

fn parse_space_body(v: &Value, at: &str) -> Result<SymplecticSpace> {
    let m = object(v, at)?;
    check_keys(m, at, &["blocks"], &["name"])?;
    let b_at = format!("{at}.blocks");
    let mut pairs = Vec::new();
    for (i, b) in array(&m["blocks"], &b_at)?.iter().enumerate() {
        let bi = format!("{b_at}[{i}]");
        match array(b, &bi)?.as_slice() {
            [h, s] => {
                let h = count(h, &format!("{bi}[0]"))?;
                let s = s.as_i64().ok_or_else(|| {
                    CliError::schema(format!("{bi}[1]"), "expected an integer sign")
                })?;
                pairs.push((h, s));
            }
            _ => return Err(CliError::schema(bi, "a block is [half_dim, sign]")),
        }
    }
    SymplecticSpace::from_pairs(&pairs).map_err(|e| CliError::domain(at, e))
}

/// Accepts `"p/q"` strings and plain JSON integers.
fn parse_entry_rational(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| CliError::schema(at, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(CliError::schema(
            at,
            "expected a rational string \"p/q\" or an integer",
        )),
    }
}

fn parse_matrix(v: &Value, at: &str, width: usize) -> Result<Vec<Vec<Rational>>> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let r_at = format!("{at}[{i}]");
            let entries = array(row, &r_at)?;
            if entries.len() != width {
                return Err(CliError::schema(
                    &r_at,
                    format!("row has {} entries, expected {width}", entries.len()),
                ));
            }
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| parse_entry_rational(x, &format!("{r_at}[{j}]")))
                .collect()
        })
        .collect()
}

// --- serialization -------------------------------------------------------

pub fn finset_body(s: &FinSet) -> Value {
    json!({"name": s.name(), "elements": s.elements()})
}

pub fn space_body(s: &SymplecticSpace) -> Value {
    let blocks: Vec<Value> = s
        .blocks()
        .iter()
        .map(|b| json!([b.half_dim, b.sign.as_i64()]))
        .collect();
    json!({ "blocks": blocks })
}

pub fn matrix_json(rows: &wwcat_core::Matrix) -> Value {
    Value::Array(
        rows.row_iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|x| Value::String(format_rational(x)))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn finrel_body(f: &FinRelation) -> Value {
    let pairs: Vec<Value> = f.pairs().iter().map(|(x, y)| json!([x, y])).collect();
    json!({
        "target": finset_body(f.target()),
        "source": finset_body(f.source()),
        "pairs": pairs,
    })
}

pub fn canrel_body(f: &CanRel) -> Value {
    json!({
        "target": space_body(f.target()),
        "source": space_body(f.source()),
        "basis": matrix_json(f.graph().basis()),
    })
}

pub fn morphism_json(m: &Morphism) -> Value {
    match m {
        Morphism::Fin(f) => json!({ "finrel": finrel_body(f) }),
        Morphism::Lin(f) => json!({ "canrel": canrel_body(f) }),
    }
}

pub fn finrel_json(f: &FinRelation) -> Value {
    json!({ "finrel": finrel_body(f) })
}

pub fn canrel_json(f: &CanRel) -> Value {
    json!({ "canrel": canrel_body(f) })
}

pub fn space_json(s: &SymplecticSpace) -> Value {
    json!({ "space": space_body(s) })
}

pub fn path_json(p: &PathDoc) -> Value {
    let (engine, word, object) = match p {
        PathDoc::Fin { word, object } => (
            "finrel",
            word.iter().map(finrel_json).collect::<Vec<_>>(),
            object.as_ref().map(finset_body),
        ),
        PathDoc::Lin { word, object } => (
            "symplin",
            word.iter().map(canrel_json).collect::<Vec<_>>(),
            object.as_ref().map(space_body),
        ),
    };
    let mut body = json!({ "engine": engine, "word": word });
    if let Some(o) = object {
        body["object"] = o;
    }
    json!({ "path": body })
}

pub fn trace_json(trace: &[TraceStep]) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|s| {
                json!({
                    "move": s.movement.as_str(),
                    "index": s.index,
                    "defects": [s.transversality_defect, s.monicity_defect],
                })
            })
            .collect(),
    )
}

pub fn factorization_json(f: &Factorization) -> Value {
    json!({
        "factorization": {
            "A": canrel_json(&f.reduction_part),
            "B": canrel_json(&f.coreduction_part),
            "Q": space_json(&f.middle),
            "trace": trace_json(&f.trace),
        }
    })
}

/// Canonical JSON of a document, including its name when it has one.
pub fn entry_json(entry: &Entry) -> Value {
    let mut v = match &entry.doc {
        Document::FinSet(s) => return json!({ "finset": finset_body(s) }),
        Document::FinRel(f) => finrel_json(f),
        Document::Space(s) => space_json(s),
        Document::CanRel(f) => canrel_json(f),
        Document::Path(p) => path_json(p),
        Document::Factorization(f) => factorization_json(f),
    };
    if let Some(name) = &entry.name {
        let kind = entry.doc.kind();
        v[kind]["name"] = Value::String(name.clone());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_document() {
        match parse_document(r#"{"space":{"blocks":[[1,1]]}}"#).unwrap() {
            Document::Space(s) => assert_eq!(s.dim(), 2),
            d => panic!("unexpected {d:?}"),
        }
    }

    #[test]
    fn rational_round_trip() {
        let text = r#"{"canrel":{"target":{"blocks":[[1,1]]},"source":{"blocks":[]},"basis":[["1","1/3"]]}}"#;
        let doc = parse_document(text).unwrap();
        let Document::CanRel(f) = &doc else { panic!() };
        let out = canrel_json(f);
        assert_eq!(out["canrel"]["basis"][0][1], "1/3");
        assert_eq!(out, serde_json::from_str::<Value>(text).unwrap());
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_document("{\"space\":\n  {\"blocks\": [[1,1]}").unwrap_err();
        assert!(
            matches!(err, CliError::Json(ref m) if m.contains("line 2")),
            "{err}"
        );
        assert_eq!(err.exit().code(), 2);
    }

    #[test]
    fn schema_errors() {
        for text in [
            r#"{"space":{"blocks":[[1,1]]},"extra":1}"#,
            r#"{"spaces":{"blocks":[]}}"#,
            r#"{"space":{"blocks":[[1]]}}"#,
            r#"{"space":{"blocks":[[1,1]],"colour":"red"}}"#,
            r#"{"canrel":{"target":{"blocks":[[1,1]]},"source":{"blocks":[]},"basis":[["1"]]}}"#,
            r#"{"canrel":{"target":{"blocks":[[1,1]]},"source":{"blocks":[]},"basis":[["1","x"]]}}"#,
            r#"{"finrel":{"target":"X","source":"X","pairs":[]}}"#,
            r#"[]"#,
        ] {
            let err = parse_document(text).unwrap_err();
            assert_eq!(err.exit().code(), 2, "{text}: {err}");
        }
    }

    #[test]
    fn invariant_errors() {
        for text in [
            r#"{"canrel":{"target":{"blocks":[[2,1]]},"source":{"blocks":[]},"basis":[["1","0","0","0"],["0","0","1","0"]]}}"#,
            r#"{"canrel":{"target":{"blocks":[[1,1]]},"source":{"blocks":[]},"basis":[]}}"#,
            r#"{"space":{"blocks":[[1,2]]}}"#,
            r#"{"finset":{"name":"X","elements":["a","a"]}}"#,
        ] {
            let err = parse_document(text).unwrap_err();
            assert_eq!(err.exit().code(), 3, "{text}: {err}");
        }
        let err = parse_document(
            r#"{"canrel":{"target":{"blocks":[[2,1]]},"source":{"blocks":[]},"basis":[["1","0","0","0"],["0","0","1","0"]]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("isotropic"), "{err}");
    }

    #[test]
    fn names_resolve_within_input() {
        let text = r#"
            {"finset": {"name": "X", "elements": ["a", "b"]}}
            {"finset": {"name": "Y", "elements": ["1"]}}
            {"finrel": {"name": "f", "target": "X", "source": "Y", "pairs": [["a", "1"]]}}
            {"path": {"engine": "finrel", "word": ["f", {"finrel": {"target": "Y", "source": "Y", "pairs": [["1","1"]]}}]}}
        "#;
        let mut lib = Library::new();
        assert_eq!(lib.load(text).unwrap(), 4);
        assert!(matches!(lib.get("f"), Some(Document::FinRel(_))));
        let Document::Path(p) = &lib.entries().last().unwrap().doc else {
            panic!()
        };
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn path_composability_is_checked() {
        let text = r#"
            {"finset": {"name": "X", "elements": ["a"]}}
            {"finset": {"name": "Y", "elements": ["1", "2"]}}
            {"finrel": {"name": "f", "target": "X", "source": "Y", "pairs": [["a", "1"]]}}
            {"path": {"engine": "finrel", "word": ["f", "f"]}}
        "#;
        let err = parse_document(text).unwrap_err();
        assert_eq!(err.exit().code(), 3);
        assert!(err.to_string().contains("index 1"), "{err}");
    }
}
