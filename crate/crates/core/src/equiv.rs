//! Model equivalence up to renaming of object ids.
//!
//! Two models are equivalent when some bijection between their objects
//! preserves class names, attribute slots, root status and every reference
//! slot position by position. The search assigns objects of the left model
//! one at a time to signature-compatible candidates of the right model and
//! backtracks on the first inconsistent reference.

use std::collections::{BTreeMap, HashMap};

use crate::kernel::{MObject, Model, ObjectId};

/// Everything about an object that a bijection must preserve verbatim.
#[derive(PartialEq, Eq, Hash)]
struct Signature<'a> {
    class: &'a str,
    root: bool,
    attrs: &'a BTreeMap<String, String>,
    ref_shape: Vec<(&'a str, usize)>,
}

fn signature<'a>(model: &'a Model, obj: &'a MObject) -> Signature<'a> {
    Signature {
        class: obj.class_name(),
        root: model.is_root(obj.id().as_str()),
        attrs: obj.attrs(),
        ref_shape: obj.all_refs().iter().map(|(k, v)| (k.as_str(), v.len())).collect(),
    }
}

struct Search<'a> {
    left: Vec<&'a MObject>,
    right: Vec<&'a MObject>,
    right_index: HashMap<&'a str, usize>,
    left_index: HashMap<&'a str, usize>,
    candidates: Vec<Vec<usize>>,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    /// Checks every slot of left object `i` against its image. Targets that
    /// are not objects must match literally on both sides.
    fn consistent(&self, i: usize) -> bool {
        let Some(j) = self.forward[i] else {
            return true;
        };
        let (a, b) = (self.left[i], self.right[j]);
        for (name, targets) in a.all_refs() {
            let image = b.refs(name);
            for (t, u) in targets.iter().zip(image) {
                match (self.left_index.get(t.as_str()), self.right_index.get(u.as_str())) {
                    (None, None) => {
                        if t != u {
                            return false;
                        }
                    }
                    (Some(&ti), Some(&ui)) => match (self.forward[ti], self.backward[ui]) {
                        (Some(mapped), _) if mapped != ui => return false,
                        (None, Some(_)) => return false,
                        _ => {}
                    },
                    _ => return false,
                }
            }
        }
        true
    }

    /// Re-checks every assigned object, since any of them may cite the
    /// newly assigned one.
    fn all_assigned_consistent(&self) -> bool {
        (0..self.left.len())
            .filter(|&k| self.forward[k].is_some())
            .all(|k| self.consistent(k))
    }

    fn solve(&mut self, depth: usize) -> bool {
        if depth == self.left.len() {
            return true;
        }
        for c in 0..self.candidates[depth].len() {
            let j = self.candidates[depth][c];
            if self.backward[j].is_some() {
                continue;
            }
            self.forward[depth] = Some(j);
            self.backward[j] = Some(depth);
            if self.all_assigned_consistent() && self.solve(depth + 1) {
                return true;
            }
            self.forward[depth] = None;
            self.backward[j] = None;
        }
        false
    }
}

/// Finds a bijection witnessing equivalence, as pairs of (left id, right id).
pub fn find_isomorphism(a: &Model, b: &Model) -> Option<Vec<(ObjectId, ObjectId)>> {
    if a.metamodel_name() != b.metamodel_name() || a.len() != b.len() || a.roots().len() != b.roots().len() {
        return None;
    }
    let left: Vec<&MObject> = a.objects().collect();
    let right: Vec<&MObject> = b.objects().collect();
    let right_sigs: Vec<Signature<'_>> = right.iter().map(|o| signature(b, o)).collect();
    let candidates: Vec<Vec<usize>> = left
        .iter()
        .map(|o| {
            let sig = signature(a, o);
            (0..right.len()).filter(|&j| right_sigs[j] == sig).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut search = Search {
        left_index: left.iter().enumerate().map(|(i, o)| (o.id().as_str(), i)).collect(),
        right_index: right.iter().enumerate().map(|(j, o)| (o.id().as_str(), j)).collect(),
        forward: vec![None; left.len()],
        backward: vec![None; right.len()],
        left,
        right,
        candidates,
    };
    if !search.solve(0) {
        return None;
    }
    Some(
        search
            .forward
            .iter()
            .enumerate()
            .map(|(i, j)| {
                let j = j.expect("complete assignment");
                (search.left[i].id().clone(), search.right[j].id().clone())
            })
            .collect(),
    )
}

/// True iff `a` and `b` are equal up to a renaming of object ids.
pub fn model_equivalent(a: &Model, b: &Model) -> bool {
    find_isomorphism(a, b).is_some()
}
