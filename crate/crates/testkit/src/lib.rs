//! Random model generators and brute-force oracles shared by the test suites
//! and benchmarks.
//!
//! Oracles here read models through raw slot access only. They never call
//! the query or transform code they are used to check.

use std::collections::BTreeSet;

use itertools::Itertools;
use modelkit::{MObject, Model, ObjectId};
use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub struct GraphShape {
    pub max_nodes: usize,
    pub max_edges: usize,
    /// Probability that each edge end is left unset.
    pub dangling: f64,
    /// Allow several edges between the same ordered pair of nodes.
    pub parallel: bool,
    /// Probability that one node is named `n1`.
    pub with_n1: f64,
}

impl GraphShape {
    pub const fn small() -> Self {
        GraphShape {
            max_nodes: 8,
            max_edges: 16,
            dangling: 0.0,
            parallel: true,
            with_n1: 0.5,
        }
    }

    pub const fn with_dangling(mut self, p: f64) -> Self {
        self.dangling = p;
        self
    }

    pub const fn simple(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub const fn sized(mut self, nodes: usize, edges: usize) -> Self {
        self.max_nodes = nodes;
        self.max_edges = edges;
        self
    }
}

/// A `graph1` model with one root `Graph` named `graph`. Node ids are
/// `v<i>` and names are `node<i>`, except that with probability
/// `shape.with_n1` one random node is named `n1`. Edge ids are `e<j>`.
pub fn random_graph1(rng: &mut impl Rng, shape: GraphShape) -> Model {
    let mut m = Model::new("graph1");
    m.create_object("graph", "Graph").unwrap();
    m.add_root("graph").unwrap();

    let n = rng.random_range(0..=shape.max_nodes);
    let n1 = (n > 0 && rng.random_bool(shape.with_n1)).then(|| rng.random_range(0..n));
    for i in 0..n {
        let id = format!("v{i}");
        let name = if Some(i) == n1 {
            "n1".to_owned()
        } else {
            format!("node{i}")
        };
        m.create_object(id.as_str(), "Node").unwrap();
        m.set_attr(&id, "name", &name).unwrap();
        m.push_ref("graph", "nodes", id.as_str()).unwrap();
    }
    if n == 0 && shape.dangling == 0.0 {
        return m;
    }

    let target_edges = rng.random_range(0..=shape.max_edges);
    let mut used = BTreeSet::new();
    let mut made = 0;
    for _ in 0..target_edges * 4 {
        if made == target_edges {
            break;
        }
        let s = random_end(rng, n, shape.dangling);
        let t = random_end(rng, n, shape.dangling);
        if !shape.parallel && s.is_some() && t.is_some() && !used.insert((s, t)) {
            continue;
        }
        let id = format!("e{made}");
        m.create_object(id.as_str(), "Edge").unwrap();
        if let Some(s) = s {
            m.set_refs(&id, "src", [format!("v{s}")]).unwrap();
        }
        if let Some(t) = t {
            m.set_refs(&id, "trg", [format!("v{t}")]).unwrap();
        }
        m.push_ref("graph", "edges", id.as_str()).unwrap();
        made += 1;
    }
    m
}

fn random_end(rng: &mut impl Rng, nodes: usize, dangling: f64) -> Option<usize> {
    if nodes == 0 || rng.random_bool(dangling) {
        None
    } else {
        Some(rng.random_range(0..nodes))
    }
}

/// A random bijective renaming of the model's object ids to `obj<k>`.
pub fn shuffled_renaming(rng: &mut impl Rng, m: &Model) -> impl Fn(&ObjectId) -> ObjectId {
    let mut ids: Vec<ObjectId> = m.objects().map(|o| o.id().clone()).collect();
    let mut perm: Vec<usize> = (0..ids.len()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let table: Vec<(ObjectId, ObjectId)> = ids
        .drain(..)
        .zip(perm)
        .map(|(id, p)| (id, ObjectId::new(format!("obj{p}"))))
        .collect();
    move |id| {
        table
            .iter()
            .find(|(from, _)| from == id)
            .map(|(_, to)| to.clone())
            .unwrap_or_else(|| id.clone())
    }
}

fn edges(m: &Model) -> Vec<&MObject> {
    m.objects().filter(|o| o.class_name() == "Edge").collect()
}

fn nodes(m: &Model) -> Vec<&MObject> {
    m.objects().filter(|o| o.class_name() == "Node").collect()
}

fn slot<'a>(o: &'a MObject, name: &str) -> Option<&'a ObjectId> {
    match o.refs(name) {
        [] => None,
        [t] => Some(t),
        more => panic!("{} holds {} targets in single-valued slot {name}", o.id(), more.len()),
    }
}

pub mod oracle {
    use super::*;

    pub fn count_nodes(m: &Model) -> usize {
        nodes(m).len()
    }

    pub fn count_loops(m: &Model) -> usize {
        edges(m)
            .into_iter()
            .filter(|e| match (slot(e, "src"), slot(e, "trg")) {
                (Some(s), Some(t)) => s == t,
                _ => false,
            })
            .count()
    }

    pub fn count_isolated(m: &Model) -> usize {
        let edges = edges(m);
        nodes(m)
            .into_iter()
            .filter(|n| {
                !edges
                    .iter()
                    .any(|e| slot(e, "src") == Some(n.id()) || slot(e, "trg") == Some(n.id()))
            })
            .count()
    }

    pub fn count_dangling(m: &Model) -> usize {
        edges(m)
            .into_iter()
            .filter(|e| slot(e, "src").is_none() || slot(e, "trg").is_none())
            .count()
    }

    /// Enumerates every ordered triple of pairwise distinct nodes and, for
    /// each, every binding of edge objects `e1: n1->n2`, `e2: n2->n3`,
    /// `e3: n3->n1`.
    pub fn count_circles(m: &Model) -> usize {
        let edges = edges(m);
        let ids: Vec<&ObjectId> = nodes(m).into_iter().map(|n| n.id()).collect();
        let joins = |e: &MObject, a: &ObjectId, b: &ObjectId| slot(e, "src") == Some(a) && slot(e, "trg") == Some(b);
        let mut count = 0;
        for triple in (0..ids.len()).permutations(3) {
            let (n1, n2, n3) = (ids[triple[0]], ids[triple[1]], ids[triple[2]]);
            for _e1 in edges.iter().filter(|e| joins(e, n1, n2)) {
                for _e2 in edges.iter().filter(|e| joins(e, n2, n3)) {
                    count += edges.iter().filter(|e| joins(e, n3, n1)).count();
                }
            }
        }
        count
    }

    /// Directed 3-cycles as node sequences up to rotation.
    pub fn distinct_directed_triangles(m: &Model) -> usize {
        let rel = edge_pairs(m);
        let ids: Vec<&ObjectId> = nodes(m).into_iter().map(|n| n.id()).collect();
        let has = |a: &ObjectId, b: &ObjectId| rel.contains(&(a.clone(), b.clone()));
        let mut count = 0;
        for combo in (0..ids.len()).combinations(3) {
            let (a, b, c) = (ids[combo[0]], ids[combo[1]], ids[combo[2]]);
            if has(a, b) && has(b, c) && has(c, a) {
                count += 1;
            }
            if has(a, c) && has(c, b) && has(b, a) {
                count += 1;
            }
        }
        count
    }

    /// Set of `(src, trg)` pairs over edges with both ends set.
    pub fn edge_pairs(m: &Model) -> BTreeSet<(ObjectId, ObjectId)> {
        edges(m)
            .into_iter()
            .filter_map(|e| Some((slot(e, "src")?.clone(), slot(e, "trg")?.clone())))
            .collect()
    }

    /// `linksTo` pairs of a graph3 model.
    pub fn link_pairs(m: &Model) -> BTreeSet<(ObjectId, ObjectId)> {
        nodes(m)
            .into_iter()
            .flat_map(|n| n.refs("linksTo").iter().map(move |t| (n.id().clone(), t.clone())))
            .collect()
    }

    /// `R ∪ R·R` over the node set, computed with a boolean adjacency matrix.
    pub fn relation_with_square(m: &Model) -> BTreeSet<(ObjectId, ObjectId)> {
        let ids: Vec<ObjectId> = nodes(m).into_iter().map(|n| n.id().clone()).collect();
        let k = ids.len();
        let index = |id: &ObjectId| ids.iter().position(|x| x == id).expect("edge end is a node");
        let mut r = vec![vec![false; k]; k];
        for (s, t) in edge_pairs(m) {
            r[index(&s)][index(&t)] = true;
        }
        let mut out = BTreeSet::new();
        for i in 0..k {
            for j in 0..k {
                let square = (0..k).any(|l| r[i][l] && r[l][j]);
                if r[i][j] || square {
                    out.insert((ids[i].clone(), ids[j].clone()));
                }
            }
        }
        out
    }

    /// Size of `R·R \ R` by the same matrix construction.
    pub fn new_pair_count(m: &Model) -> usize {
        relation_with_square(m).len() - edge_pairs(m).len()
    }

    /// Equivalence by trying every bijection of object ids. Only usable for
    /// very small models.
    pub fn equivalent_by_enumeration(a: &Model, b: &Model) -> bool {
        if a.metamodel_name() != b.metamodel_name() || a.len() != b.len() {
            return false;
        }
        let left: Vec<&MObject> = a.objects().collect();
        let right: Vec<&MObject> = b.objects().collect();
        (0..right.len()).permutations(right.len()).any(|perm| {
            let map = |id: &ObjectId| -> Option<ObjectId> {
                left.iter()
                    .position(|o| o.id() == id)
                    .map(|i| right[perm[i]].id().clone())
            };
            let translate = |id: &ObjectId| map(id).unwrap_or_else(|| id.clone());
            left.iter().enumerate().all(|(i, x)| {
                let y = right[perm[i]];
                x.class_name() == y.class_name()
                    && x.attrs() == y.attrs()
                    && a.is_root(x.id().as_str()) == b.is_root(y.id().as_str())
                    && x.all_refs().len() == y.all_refs().len()
                    && x.all_refs().iter().all(|(name, targets)| {
                        let mapped: Vec<ObjectId> = targets.iter().map(translate).collect();
                        y.refs(name) == mapped.as_slice()
                    })
            })
        })
    }
}
