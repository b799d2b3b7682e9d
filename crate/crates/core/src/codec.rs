//! `.model.json` documents.
//!
//! ```text
//! {
//!   "metamodel": "<name>",
//!   "roots": ["<id>", ...],
//!   "objects": [
//!     {"id": "<id>", "class": "<class>", "attrs": {"<attr>": "<value>"}, "refs": {"<ref>": ["<id>", ...]}}
//!   ]
//! }
//! ```
//!
//! Output is canonical: top-level keys in the order `metamodel`, `roots`,
//! `objects`; object keys in the order `id`, `class`, `attrs`, `refs`;
//! attribute and reference names sorted; `attrs`/`refs` omitted when empty;
//! two-space indentation and a trailing newline. On input, unknown keys are
//! rejected and an empty reference list means the same as an absent one.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::kernel::{Model, ObjectId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    NotUtf8,
    Syntax,
    UnknownKey,
    MissingKey,
    WrongType,
    DuplicateId,
    DuplicateRoot,
    DanglingId,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::NotUtf8 => "not UTF-8",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownKey => "unknown key",
            ParseErrorKind::MissingKey => "missing key",
            ParseErrorKind::WrongType => "wrong type",
            ParseErrorKind::DuplicateId => "duplicate id",
            ParseErrorKind::DuplicateRoot => "duplicate root",
            ParseErrorKind::DanglingId => "dangling id",
        };
        f.write_str(s)
    }
}

/// A rejected document. `location` is a JSON path such as
/// `$.objects[2].refs.src[0]`, or `line L column C` / `byte N` for errors
/// found before the document structure is known.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at {location}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, location: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            kind,
            location: location.into(),
            message: message.into(),
        }
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn expect_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object().ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::WrongType,
            path,
            format!("expected object, found {}", type_name(v)),
        )
    })
}

fn expect_array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], ParseError> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::WrongType,
            path,
            format!("expected array, found {}", type_name(v)),
        )
    })
}

fn expect_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, ParseError> {
    v.as_str().ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::WrongType,
            path,
            format!("expected string, found {}", type_name(v)),
        )
    })
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), ParseError> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(key) => Err(ParseError::new(
            ParseErrorKind::UnknownKey,
            format!("{path}.{key}"),
            format!("unexpected key {key:?}; allowed keys are {}", allowed.join(", ")),
        )),
        None => Ok(()),
    }
}

fn required<'a>(map: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, ParseError> {
    map.get(key).ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::MissingKey,
            path,
            format!("required key {key:?} is absent"),
        )
    })
}

fn id_list(v: &Value, path: &str) -> Result<Vec<(String, String)>, ParseError> {
    expect_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let p = format!("{path}[{i}]");
            expect_str(item, &p).map(|s| (s.to_owned(), p))
        })
        .collect()
}

struct RawObject {
    id: String,
    class: String,
    attrs: Vec<(String, String)>,
    refs: Vec<(String, Vec<(String, String)>)>,
}

/// Parses a document, checking syntax and id integrity only. Conformance
/// to the metamodel is a separate [`crate::kernel::validate`] step.
pub fn parse_model(bytes: &[u8]) -> Result<Model, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        ParseError::new(
            ParseErrorKind::NotUtf8,
            format!("byte {}", e.valid_up_to()),
            "document is not valid UTF-8",
        )
    })?;
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        ParseError::new(
            ParseErrorKind::Syntax,
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;

    let top = expect_object(&doc, "$")?;
    check_keys(top, &["metamodel", "roots", "objects"], "$")?;
    let metamodel = expect_str(required(top, "metamodel", "$")?, "$.metamodel")?;
    let roots = id_list(required(top, "roots", "$")?, "$.roots")?;
    let objects = expect_array(required(top, "objects", "$")?, "$.objects")?;

    let mut raw = Vec::with_capacity(objects.len());
    let mut ids = HashSet::new();
    for (i, value) in objects.iter().enumerate() {
        let path = format!("$.objects[{i}]");
        let obj = expect_object(value, &path)?;
        check_keys(obj, &["id", "class", "attrs", "refs"], &path)?;
        let id = expect_str(required(obj, "id", &path)?, &format!("{path}.id"))?;
        let class = expect_str(required(obj, "class", &path)?, &format!("{path}.class"))?;
        if !ids.insert(id) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateId,
                format!("{path}.id"),
                format!("object id {id:?} is used more than once"),
            ));
        }
        let mut attrs = Vec::new();
        if let Some(a) = obj.get("attrs") {
            let apath = format!("{path}.attrs");
            for (k, v) in expect_object(a, &apath)? {
                attrs.push((k.clone(), expect_str(v, &format!("{apath}.{k}"))?.to_owned()));
            }
        }
        let mut refs = Vec::new();
        if let Some(r) = obj.get("refs") {
            let rpath = format!("{path}.refs");
            for (k, v) in expect_object(r, &rpath)? {
                let targets = id_list(v, &format!("{rpath}.{k}"))?;
                if !targets.is_empty() {
                    refs.push((k.clone(), targets));
                }
            }
        }
        raw.push(RawObject {
            id: id.to_owned(),
            class: class.to_owned(),
            attrs,
            refs,
        });
    }

    let dangling = |id: &str, path: &str| {
        ParseError::new(
            ParseErrorKind::DanglingId,
            path,
            format!("id {id:?} does not name an object of this document"),
        )
    };
    let mut seen_roots = HashSet::new();
    for (id, path) in &roots {
        if !ids.contains(id.as_str()) {
            return Err(dangling(id, path));
        }
        if !seen_roots.insert(id.as_str()) {
            return Err(ParseError::new(
                ParseErrorKind::DuplicateRoot,
                path.as_str(),
                format!("root {id:?} is listed more than once"),
            ));
        }
    }
    for obj in &raw {
        for (_, targets) in &obj.refs {
            if let Some((id, path)) = targets.iter().find(|(id, _)| !ids.contains(id.as_str())) {
                return Err(dangling(id, path));
            }
        }
    }

    let mut model = Model::new(metamodel);
    for obj in &raw {
        model
            .create_object(obj.id.as_str(), &obj.class)
            .expect("ids were checked for duplicates");
        for (k, v) in &obj.attrs {
            model.set_attr(&obj.id, k, v).expect("object exists");
        }
        for (k, targets) in &obj.refs {
            model
                .set_refs(&obj.id, k, targets.iter().map(|(t, _)| ObjectId::new(t.as_str())))
                .expect("object exists");
        }
    }
    for (id, _) in &roots {
        model.add_root(id).expect("roots were checked");
    }
    Ok(model)
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    metamodel: &'a str,
    roots: &'a [ObjectId],
    objects: Vec<ObjectOut<'a>>,
}

#[derive(Serialize)]
struct ObjectOut<'a> {
    id: &'a ObjectId,
    class: &'a str,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    attrs: &'a BTreeMap<String, String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    refs: &'a BTreeMap<String, Vec<ObjectId>>,
}

/// Canonical document bytes. Equal models always produce equal bytes.
pub fn serialize_model(model: &Model) -> Vec<u8> {
    let doc = DocumentOut {
        metamodel: model.metamodel_name(),
        roots: model.roots(),
        objects: model
            .objects()
            .map(|o| ObjectOut {
                id: o.id(),
                class: o.class_name(),
                attrs: o.attrs(),
                refs: o.all_refs(),
            })
            .collect(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("string-keyed document always serializes");
    out.push(b'\n');
    out
}
