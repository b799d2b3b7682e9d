//! Create, update, delete and migrate tasks over the builtin metamodels.
//!
//! Every transform takes its input by reference and returns a new model.
//! Object ids are carried over unchanged wherever an object survives.

use std::collections::HashSet;

use thiserror::Error;

use crate::builtin::{self, GRAPH2, GRAPH3};
use crate::kernel::{KernelError, Model, ObjectId};
use crate::queries::ResultValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("edge {0} is dangling: src and trg must both be set")]
    DanglingEdge(ObjectId),
    #[error("missing {feature} on {object}")]
    MissingFeature { object: String, feature: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub fn task_hello_constant() -> Model {
    builtin::hello_instance()
}

pub fn task_helloext_constant() -> Model {
    builtin::helloext_instance()
}

/// Renders `"<message> <person>!"` for the first root `Greeting`.
pub fn task_greeting_text(m: &Model) -> Result<ResultValue, TransformError> {
    let missing = |object: &str, feature: &str| TransformError::MissingFeature {
        object: object.to_owned(),
        feature: feature.to_owned(),
    };
    let greeting = m
        .roots()
        .iter()
        .filter_map(|id| m.object(id.as_str()))
        .find(|o| o.class_name() == "Greeting")
        .ok_or_else(|| missing("model", "root Greeting"))?;
    let gid = greeting.id().as_str();
    let message = greeting
        .single_ref("greetingMessage")
        .and_then(|id| m.object(id.as_str()))
        .ok_or_else(|| missing(gid, "greetingMessage"))?;
    let person = greeting
        .single_ref("person")
        .and_then(|id| m.object(id.as_str()))
        .ok_or_else(|| missing(gid, "person"))?;
    let text = message
        .attr("text")
        .ok_or_else(|| missing(message.id().as_str(), "text"))?;
    let name = person
        .attr("name")
        .ok_or_else(|| missing(person.id().as_str(), "name"))?;
    Ok(ResultValue::Str(format!("{text} {name}!")))
}

struct Arc {
    edge: ObjectId,
    src: ObjectId,
    trg: ObjectId,
}

/// Endpoints of every `Edge`, in object order, or the first dangling edge.
fn arcs(m: &Model) -> Result<Vec<Arc>, TransformError> {
    m.objects_of_class("Edge")
        .map(|e| match (e.single_ref("src"), e.single_ref("trg")) {
            (Some(s), Some(t)) => Ok(Arc {
                edge: e.id().clone(),
                src: s.clone(),
                trg: t.clone(),
            }),
            _ => Err(TransformError::DanglingEdge(e.id().clone())),
        })
        .collect()
}

pub fn task_reverse_edges(m: &Model) -> Result<Model, TransformError> {
    let mut out = m.clone();
    for arc in arcs(m)? {
        out.set_refs(arc.edge.as_str(), "src", [arc.trg])?
            .set_refs(arc.edge.as_str(), "trg", [arc.src])?;
    }
    Ok(out)
}

/// graph1 to graph2: node `name` becomes `text`, edges gain an empty `text`.
pub fn task_migrate_to_graph2(m: &Model) -> Result<Model, TransformError> {
    arcs(m)?;
    let mut out = Model::new(GRAPH2);
    for obj in m.objects() {
        let id = obj.id().as_str();
        out.create_object(id, obj.class_name())?;
        match obj.class_name() {
            "Node" => {
                if let Some(name) = obj.attr("name") {
                    out.set_attr(id, "text", name)?;
                }
            }
            "Edge" => {
                out.set_attr(id, "text", "")?;
            }
            _ => {}
        }
        for (name, targets) in obj.all_refs() {
            out.set_refs(id, name, targets.iter().cloned())?;
        }
    }
    for root in m.roots() {
        out.add_root(root.as_str())?;
    }
    Ok(out)
}

/// graph1 to graph3: edge objects become `linksTo` references on their
/// source node. Parallel edges collapse to one link.
pub fn task_migrate_to_graph3(m: &Model) -> Result<Model, TransformError> {
    let arcs = arcs(m)?;
    let mut out = Model::new(GRAPH3);
    for obj in m.objects() {
        let id = obj.id().as_str();
        match obj.class_name() {
            "Edge" => continue,
            "Graph" => {
                out.create_object(id, "Graph")?;
                out.set_refs(id, "nodes", obj.refs("nodes").iter().cloned())?;
            }
            "Node" => {
                out.create_object(id, "Node")?;
                if let Some(name) = obj.attr("name") {
                    out.set_attr(id, "text", name)?;
                }
            }
            other => {
                out.create_object(id, other)?;
            }
        }
    }
    let mut linked = HashSet::new();
    for arc in &arcs {
        if linked.insert((&arc.src, &arc.trg)) {
            out.push_ref(arc.src.as_str(), "linksTo", arc.trg.clone())?;
        }
    }
    for root in m.roots() {
        if out.contains(root.as_str()) {
            out.add_root(root.as_str())?;
        }
    }
    Ok(out)
}

fn nodes_named<'a>(m: &'a Model, name: &'a str) -> Vec<ObjectId> {
    m.objects_of_class("Node")
        .filter(|o| o.attr("name") == Some(name))
        .map(|o| o.id().clone())
        .collect()
}

/// Removes the node named `n1`. Its incident edges stay, with that end unset.
pub fn task_delete_n1(m: &Model) -> Model {
    let mut out = m.clone();
    for id in nodes_named(m, "n1") {
        out.delete_object(id.as_str()).expect("id was just looked up");
    }
    out
}

/// Removes the node named `n1` together with every edge incident to it.
pub fn task_delete_n1_incident(m: &Model) -> Model {
    let mut out = m.clone();
    let doomed: HashSet<ObjectId> = nodes_named(m, "n1").into_iter().collect();
    if doomed.is_empty() {
        return out;
    }
    let incident: Vec<ObjectId> = m
        .objects_of_class("Edge")
        .filter(|e| {
            e.refs("src")
                .iter()
                .chain(e.refs("trg"))
                .any(|end| doomed.contains(end))
        })
        .map(|e| e.id().clone())
        .collect();
    for id in incident.iter().chain(&doomed) {
        out.delete_object(id.as_str()).expect("id was just looked up");
    }
    out
}

/// Adds one edge `a -> c` for every pair in `R∘R` that is not already in
/// `R`, where `R` is the edge relation of the input. Only input edges act
/// as witnesses. New edges are named `trans<k>` in first-witness order and
/// appended to the `edges` slot of the graph that contains the first edge
/// of their witness.
pub fn task_insert_transitive(m: &Model) -> Result<Model, TransformError> {
    let arcs = arcs(m)?;
    let existing: HashSet<(&ObjectId, &ObjectId)> = arcs.iter().map(|a| (&a.src, &a.trg)).collect();

    let mut added: HashSet<(&ObjectId, &ObjectId)> = HashSet::new();
    let mut new_edges: Vec<(&Arc, &ObjectId)> = Vec::new();
    for first in &arcs {
        for second in arcs.iter().filter(|a| a.src == first.trg) {
            let pair = (&first.src, &second.trg);
            if !existing.contains(&pair) && added.insert(pair) {
                new_edges.push((first, &second.trg));
            }
        }
    }

    let mut out = m.clone();
    let mut counter = 0usize;
    for (witness, target) in new_edges {
        let id = loop {
            counter += 1;
            let candidate = format!("trans{counter}");
            if !out.contains(&candidate) {
                break candidate;
            }
        };
        out.create_object(id.as_str(), "Edge")?
            .set_refs(&id, "src", [witness.src.clone()])?
            .set_refs(&id, "trg", [target.clone()])?;
        let container = m
            .objects_of_class("Graph")
            .find(|g| g.refs("edges").contains(&witness.edge))
            .map(|g| g.id().clone());
        match container {
            Some(graph) => {
                out.push_ref(graph.as_str(), "edges", id.as_str())?;
            }
            None => {
                out.add_root(&id)?;
            }
        }
    }
    Ok(out)
}
