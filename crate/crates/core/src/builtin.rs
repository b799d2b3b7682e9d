//! The six metamodels used by the transformation tasks and the two constant
//! greeting instances.

use std::collections::BTreeMap;

use crate::kernel::{AttributeDef, ClassDef, Metamodel, Model, ReferenceDef, Upper};

pub const HELLO: &str = "hello";
pub const HELLOEXT: &str = "helloext";
pub const GRAPH1: &str = "graph1";
pub const GRAPH2: &str = "graph2";
pub const GRAPH3: &str = "graph3";
pub const RESULT: &str = "result";

/// Immutable lookup table of the builtin metamodels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetamodelRegistry {
    entries: BTreeMap<String, Metamodel>,
}

impl MetamodelRegistry {
    pub fn get(&self, name: &str) -> Option<&Metamodel> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Metamodel> + '_ {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn many(name: &str, target: &str) -> ReferenceDef {
    ReferenceDef::containment(name, target, 0, Upper::Unbounded)
}

fn optional(name: &str, target: &str) -> ReferenceDef {
    ReferenceDef::cross(name, target, 0, Upper::Bounded(1))
}

fn hello() -> Metamodel {
    Metamodel::new(
        HELLO,
        vec![ClassDef::new("Greeting").with_attr(AttributeDef::string("text"))],
    )
}

fn helloext() -> Metamodel {
    Metamodel::new(
        HELLOEXT,
        vec![
            ClassDef::new("Greeting")
                .with_ref(ReferenceDef::containment(
                    "greetingMessage",
                    "GreetingMessage",
                    1,
                    Upper::Bounded(1),
                ))
                .with_ref(ReferenceDef::containment("person", "Person", 1, Upper::Bounded(1))),
            ClassDef::new("GreetingMessage").with_attr(AttributeDef::string("text")),
            ClassDef::new("Person").with_attr(AttributeDef::string("name")),
        ],
    )
}

fn graph1() -> Metamodel {
    Metamodel::new(
        GRAPH1,
        vec![
            ClassDef::new("Graph")
                .with_ref(many("nodes", "Node"))
                .with_ref(many("edges", "Edge")),
            ClassDef::new("Node").with_attr(AttributeDef::string("name")),
            ClassDef::new("Edge")
                .with_ref(optional("src", "Node"))
                .with_ref(optional("trg", "Node")),
        ],
    )
}

fn graph2() -> Metamodel {
    Metamodel::new(
        GRAPH2,
        vec![
            ClassDef::new("Graph")
                .with_ref(many("nodes", "Node"))
                .with_ref(many("edges", "Edge")),
            ClassDef::new("Node").with_attr(AttributeDef::string("text")),
            ClassDef::new("Edge")
                .with_attr(AttributeDef::string("text"))
                .with_ref(optional("src", "Node"))
                .with_ref(optional("trg", "Node")),
        ],
    )
}

fn graph3() -> Metamodel {
    Metamodel::new(
        GRAPH3,
        vec![
            ClassDef::new("Graph").with_ref(many("nodes", "Node")),
            ClassDef::new("Node")
                .with_attr(AttributeDef::string("text"))
                .with_ref(ReferenceDef::cross("linksTo", "Node", 0, Upper::Unbounded).unique()),
        ],
    )
}

/// Integers are stored as decimal strings in `IntResult.result`.
fn result() -> Metamodel {
    Metamodel::new(
        RESULT,
        vec![
            ClassDef::new("StringResult").with_attr(AttributeDef::string("result")),
            ClassDef::new("IntResult").with_attr(AttributeDef::string("result")),
        ],
    )
}

pub fn registry() -> MetamodelRegistry {
    MetamodelRegistry {
        entries: [hello(), helloext(), graph1(), graph2(), graph3(), result()]
            .into_iter()
            .map(|mm| (mm.name.clone(), mm))
            .collect(),
    }
}

/// A single `Greeting` whose text is "Hello World".
pub fn hello_instance() -> Model {
    let mut m = Model::new(HELLO);
    m.create_object("greeting", "Greeting")
        .and_then(|m| m.set_attr("greeting", "text", "Hello World"))
        .and_then(|m| m.add_root("greeting"))
        .expect("constant instance is well formed");
    m
}

/// A `Greeting` containing the message "Hello" and the person "TTC Participants".
pub fn helloext_instance() -> Model {
    let mut m = Model::new(HELLOEXT);
    m.create_object("greeting", "Greeting")
        .and_then(|m| m.add_root("greeting"))
        .and_then(|m| m.create_object("message", "GreetingMessage"))
        .and_then(|m| m.set_attr("message", "text", "Hello"))
        .and_then(|m| m.create_object("person", "Person"))
        .and_then(|m| m.set_attr("person", "name", "TTC Participants"))
        .and_then(|m| m.set_refs("greeting", "greetingMessage", ["message"]))
        .and_then(|m| m.set_refs("greeting", "person", ["person"]))
        .expect("constant instance is well formed");
    m
}
