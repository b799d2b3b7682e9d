//! Counting queries over simple graphs (`graph1` models).

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::builtin::RESULT;
use crate::kernel::{Model, ObjectId};

/// A primitive task result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResultValue {
    Int(i64),
    Str(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultModelError {
    #[error("expected a {RESULT:?} model, found {0:?}")]
    WrongMetamodel(String),
    #[error("expected exactly one root result object, found {0}")]
    RootCount(usize),
    #[error("result object of class {0} is not a StringResult or IntResult")]
    UnknownClass(String),
    #[error("result slot is unset")]
    Unset,
    #[error("IntResult holds {0:?}, which is not a decimal integer")]
    NotAnInteger(String),
}

impl ResultValue {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            ResultValue::Int(n) => Some(*n),
            ResultValue::Str(_) => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            ResultValue::Str(s) => Some(s),
            ResultValue::Int(_) => None,
        }
    }

    /// Wraps the value as a `result` model with one root object `result`.
    pub fn to_model(&self) -> Model {
        let mut m = Model::new(RESULT);
        let (class, text) = match self {
            ResultValue::Int(n) => ("IntResult", n.to_string()),
            ResultValue::Str(s) => ("StringResult", s.clone()),
        };
        m.create_object("result", class)
            .and_then(|m| m.set_attr("result", "result", &text))
            .and_then(|m| m.add_root("result"))
            .expect("fresh model accepts one object");
        m
    }

    pub fn from_model(model: &Model) -> Result<Self, ResultModelError> {
        if model.metamodel_name() != RESULT {
            return Err(ResultModelError::WrongMetamodel(model.metamodel_name().to_owned()));
        }
        let [root] = model.roots() else {
            return Err(ResultModelError::RootCount(model.roots().len()));
        };
        let obj = model.object(root.as_str()).ok_or(ResultModelError::RootCount(0))?;
        let text = obj.attr("result").ok_or(ResultModelError::Unset)?;
        match obj.class_name() {
            "StringResult" => Ok(ResultValue::Str(text.to_owned())),
            "IntResult" => text
                .parse()
                .map(ResultValue::Int)
                .map_err(|_| ResultModelError::NotAnInteger(text.to_owned())),
            other => Err(ResultModelError::UnknownClass(other.to_owned())),
        }
    }
}

impl fmt::Display for ResultValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResultValue::Int(n) => write!(f, "{n}"),
            ResultValue::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeView {
    pub id: ObjectId,
    pub src: Option<ObjectId>,
    pub trg: Option<ObjectId>,
}

impl EdgeView {
    pub fn is_dangling(&self) -> bool {
        self.src.is_none() || self.trg.is_none()
    }

    pub fn endpoints(&self) -> Option<(&ObjectId, &ObjectId)> {
        Some((self.src.as_ref()?, self.trg.as_ref()?))
    }
}

/// Nodes and edges of a graph model, in object order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphView {
    pub nodes: Vec<ObjectId>,
    pub edges: Vec<EdgeView>,
}

impl GraphView {
    pub fn from_model(model: &Model) -> Self {
        GraphView {
            nodes: model.objects_of_class("Node").map(|o| o.id().clone()).collect(),
            edges: model
                .objects_of_class("Edge")
                .map(|o| EdgeView {
                    id: o.id().clone(),
                    src: o.single_ref("src").cloned(),
                    trg: o.single_ref("trg").cloned(),
                })
                .collect(),
        }
    }
}

pub fn count_nodes(g: &GraphView) -> usize {
    g.nodes.len()
}

pub fn count_looping_edges(g: &GraphView) -> usize {
    g.edges
        .iter()
        .filter(|e| matches!(e.endpoints(), Some((s, t)) if s == t))
        .count()
}

/// Nodes that appear in no edge's `src` or `trg` slot, dangling edges included.
pub fn count_isolated_nodes(g: &GraphView) -> usize {
    let touched: HashSet<&ObjectId> = g.edges.iter().flat_map(|e| e.src.iter().chain(e.trg.iter())).collect();
    g.nodes.iter().filter(|n| !touched.contains(n)).count()
}

/// Matches of the directed three-node circle `n1 -> n2 -> n3 -> n1` with
/// pairwise distinct nodes. Edge objects are part of the match, so every
/// circle is found once per rotation and parallel edges multiply matches.
pub fn count_circles(g: &GraphView) -> usize {
    let mut outgoing: HashMap<&ObjectId, Vec<&ObjectId>> = HashMap::new();
    for (s, t) in g.edges.iter().filter_map(EdgeView::endpoints) {
        outgoing.entry(s).or_default().push(t);
    }
    // parallel edge multiplicity per ordered pair
    let mut multiplicity: HashMap<(&ObjectId, &ObjectId), usize> = HashMap::new();
    for pair in g.edges.iter().filter_map(EdgeView::endpoints) {
        *multiplicity.entry(pair).or_default() += 1;
    }

    let mut matches = 0;
    for (n1, n2) in g.edges.iter().filter_map(EdgeView::endpoints) {
        if n1 == n2 {
            continue;
        }
        for &n3 in outgoing.get(n2).into_iter().flatten() {
            if n3 == n1 || n3 == n2 {
                continue;
            }
            matches += multiplicity.get(&(n3, n1)).copied().unwrap_or(0);
        }
    }
    matches
}

/// Edges with an unset `src` or `trg`, counted once each.
pub fn count_dangling_edges(g: &GraphView) -> usize {
    g.edges.iter().filter(|e| e.is_dangling()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn view(nodes: &[&str], edges: &[(Option<&str>, Option<&str>)]) -> GraphView {
        GraphView {
            nodes: nodes.iter().map(|&n| ObjectId::from(n)).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(i, (s, t))| EdgeView {
                    id: ObjectId::new(format!("e{i}")),
                    src: s.map(ObjectId::from),
                    trg: t.map(ObjectId::from),
                })
                .collect(),
        }
    }

    fn arcs<'a>(pairs: &[(&'a str, &'a str)]) -> Vec<(Option<&'a str>, Option<&'a str>)> {
        pairs.iter().map(|&(s, t)| (Some(s), Some(t))).collect()
    }

    #[test]
    fn nodes() {
        assert_eq!(count_nodes(&GraphView::default()), 0);
        assert_eq!(count_nodes(&view(&["a", "b", "c"], &arcs(&[("a", "b")]))), 3);
    }

    #[test]
    fn loops() {
        assert_eq!(count_looping_edges(&view(&["a"], &arcs(&[("a", "a")]))), 1);
        assert_eq!(
            count_looping_edges(&view(&["a", "b"], &arcs(&[("a", "b"), ("b", "a")]))),
            0
        );
        assert_eq!(count_looping_edges(&view(&["a"], &[(Some("a"), None)])), 0);
    }

    #[test]
    fn isolated() {
        assert_eq!(count_isolated_nodes(&view(&["a", "b", "c"], &arcs(&[("a", "b")]))), 1);
        assert_eq!(count_isolated_nodes(&view(&["a", "b", "c", "d"], &[])), 4);
        assert_eq!(count_isolated_nodes(&view(&["a"], &[(Some("a"), None)])), 0);
    }

    #[test]
    fn circles() {
        let tri = arcs(&[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(count_circles(&view(&["a", "b", "c"], &tri)), 3);
        assert_eq!(count_circles(&GraphView::default()), 0);
        // 6 from brute-force enumeration of ordered triples with edge bindings
        let all = arcs(&[("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("c", "a"), ("a", "c")]);
        assert_eq!(count_circles(&view(&["a", "b", "c"], &all)), 6);
        // a parallel a->b edge doubles the rotations that bind it
        let mut doubled = tri.clone();
        doubled.push((Some("a"), Some("b")));
        assert_eq!(count_circles(&view(&["a", "b", "c"], &doubled)), 6);
    }

    #[test]
    fn dangling() {
        assert_eq!(count_dangling_edges(&view(&["a"], &[(Some("a"), None)])), 1);
        let full = arcs(&[("a", "b"), ("b", "c"), ("c", "a"), ("b", "a"), ("c", "b"), ("a", "c")]);
        assert_eq!(count_dangling_edges(&view(&["a", "b", "c"], &full)), 0);
        let mixed = [(Some("a"), None), (None, None), (Some("a"), Some("b"))];
        assert_eq!(count_dangling_edges(&view(&["a", "b"], &mixed)), 2);
    }

    #[test]
    fn result_models_round_trip() {
        for v in [
            ResultValue::Int(42),
            ResultValue::Int(-3),
            ResultValue::Str("Hi World!".into()),
        ] {
            assert_eq!(ResultValue::from_model(&v.to_model()).unwrap(), v);
        }
        assert_eq!(ResultValue::Int(7).to_string(), "7");
        assert_eq!(ResultValue::Int(7).as_int(), Some(7));
        assert_eq!(ResultValue::Str("x".into()).as_str(), Some("x"));
    }

    #[test]
    fn result_model_rejects_garbage() {
        let mut m = ResultValue::Int(1).to_model();
        m.set_attr("result", "result", "one").unwrap();
        assert!(matches!(
            ResultValue::from_model(&m),
            Err(ResultModelError::NotAnInteger(_))
        ));
        assert!(matches!(
            ResultValue::from_model(&Model::new("graph1")),
            Err(ResultModelError::WrongMetamodel(_))
        ));
    }
}
