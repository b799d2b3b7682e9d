//! Typed attributed graph kernel.
//!
//! A [`Metamodel`] is a set of classes with string attributes and typed
//! references. A [`Model`] is an ordered collection of identified objects
//! tagged with the name of the metamodel it claims to conform to. The model
//! itself performs no schema checks; [`validate`] reports every violation.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifier of an object inside one model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(String);

impl ObjectId {
    pub fn new(id: impl Into<String>) -> Self {
        ObjectId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for ObjectId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ObjectId {
    fn from(s: &str) -> Self {
        ObjectId(s.to_owned())
    }
}

impl From<String> for ObjectId {
    fn from(s: String) -> Self {
        ObjectId(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttributeType {
    String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeDef {
    pub name: String,
    pub ty: AttributeType,
}

impl AttributeDef {
    pub fn string(name: &str) -> Self {
        AttributeDef {
            name: name.to_owned(),
            ty: AttributeType::String,
        }
    }
}

/// Upper multiplicity bound of a reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Upper {
    Bounded(usize),
    Unbounded,
}

impl Upper {
    pub fn admits(self, n: usize) -> bool {
        match self {
            Upper::Bounded(max) => n <= max,
            Upper::Unbounded => true,
        }
    }
}

impl fmt::Display for Upper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Upper::Bounded(n) => write!(f, "{n}"),
            Upper::Unbounded => f.write_str("*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceDef {
    pub name: String,
    pub target_class: String,
    pub containment: bool,
    pub lower: usize,
    pub upper: Upper,
    pub unique: bool,
}

impl ReferenceDef {
    /// Non-containment reference with the given bounds.
    pub fn cross(name: &str, target: &str, lower: usize, upper: Upper) -> Self {
        ReferenceDef {
            name: name.to_owned(),
            target_class: target.to_owned(),
            containment: false,
            lower,
            upper,
            unique: false,
        }
    }

    pub fn containment(name: &str, target: &str, lower: usize, upper: Upper) -> Self {
        ReferenceDef {
            containment: true,
            ..ReferenceDef::cross(name, target, lower, upper)
        }
    }

    pub fn unique(mut self) -> Self {
        self.unique = true;
        self
    }

    pub fn is_single_valued(&self) -> bool {
        self.upper == Upper::Bounded(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDef {
    pub name: String,
    pub attributes: Vec<AttributeDef>,
    pub references: Vec<ReferenceDef>,
}

impl ClassDef {
    pub fn new(name: &str) -> Self {
        ClassDef {
            name: name.to_owned(),
            attributes: Vec::new(),
            references: Vec::new(),
        }
    }

    pub fn with_attr(mut self, attr: AttributeDef) -> Self {
        self.attributes.push(attr);
        self
    }

    pub fn with_ref(mut self, reference: ReferenceDef) -> Self {
        self.references.push(reference);
        self
    }

    pub fn attribute(&self, name: &str) -> Option<&AttributeDef> {
        self.attributes.iter().find(|a| a.name == name)
    }

    pub fn reference(&self, name: &str) -> Option<&ReferenceDef> {
        self.references.iter().find(|r| r.name == name)
    }
}

/// Structural defect of a metamodel definition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetamodelError {
    #[error("metamodel {metamodel}: class {class} is declared more than once")]
    DuplicateClass { metamodel: String, class: String },
    #[error("metamodel {metamodel}: class {class} declares feature {feature} more than once")]
    DuplicateFeature {
        metamodel: String,
        class: String,
        feature: String,
    },
    #[error("metamodel {metamodel}: reference {class}.{reference} targets unknown class {target}")]
    UnresolvedTarget {
        metamodel: String,
        class: String,
        reference: String,
        target: String,
    },
    #[error("metamodel {metamodel}: reference {class}.{reference} has lower bound above upper bound")]
    InvertedBounds {
        metamodel: String,
        class: String,
        reference: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metamodel {
    pub name: String,
    pub classes: Vec<ClassDef>,
}

impl Metamodel {
    pub fn new(name: &str, classes: Vec<ClassDef>) -> Self {
        Metamodel {
            name: name.to_owned(),
            classes,
        }
    }

    pub fn class(&self, name: &str) -> Option<&ClassDef> {
        self.classes.iter().find(|c| c.name == name)
    }

    /// Checks name uniqueness, target resolution and bound ordering.
    pub fn check(&self) -> Result<(), MetamodelError> {
        let mut seen = HashSet::new();
        for class in &self.classes {
            if !seen.insert(class.name.as_str()) {
                return Err(MetamodelError::DuplicateClass {
                    metamodel: self.name.clone(),
                    class: class.name.clone(),
                });
            }
        }
        for class in &self.classes {
            let mut features = HashSet::new();
            let names = class
                .attributes
                .iter()
                .map(|a| a.name.as_str())
                .chain(class.references.iter().map(|r| r.name.as_str()));
            for feature in names {
                if !features.insert(feature) {
                    return Err(MetamodelError::DuplicateFeature {
                        metamodel: self.name.clone(),
                        class: class.name.clone(),
                        feature: feature.to_owned(),
                    });
                }
            }
            for r in &class.references {
                if self.class(&r.target_class).is_none() {
                    return Err(MetamodelError::UnresolvedTarget {
                        metamodel: self.name.clone(),
                        class: class.name.clone(),
                        reference: r.name.clone(),
                        target: r.target_class.clone(),
                    });
                }
                if !r.upper.admits(r.lower) {
                    return Err(MetamodelError::InvertedBounds {
                        metamodel: self.name.clone(),
                        class: class.name.clone(),
                        reference: r.name.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// One object of a model.
///
/// Reference slots never hold empty lists: clearing a slot removes its key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MObject {
    id: ObjectId,
    class_name: String,
    attrs: BTreeMap<String, String>,
    refs: BTreeMap<String, Vec<ObjectId>>,
}

impl MObject {
    fn new(id: ObjectId, class_name: String) -> Self {
        MObject {
            id,
            class_name,
            attrs: BTreeMap::new(),
            refs: BTreeMap::new(),
        }
    }

    pub fn id(&self) -> &ObjectId {
        &self.id
    }

    pub fn class_name(&self) -> &str {
        &self.class_name
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.get(name).map(String::as_str)
    }

    pub fn attrs(&self) -> &BTreeMap<String, String> {
        &self.attrs
    }

    /// Targets of a reference slot, empty when unset.
    pub fn refs(&self, name: &str) -> &[ObjectId] {
        self.refs.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    /// First target of a reference slot, for single-valued references.
    pub fn single_ref(&self, name: &str) -> Option<&ObjectId> {
        self.refs(name).first()
    }

    pub fn all_refs(&self) -> &BTreeMap<String, Vec<ObjectId>> {
        &self.refs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("object id {0} already exists")]
    DuplicateId(ObjectId),
    #[error("no object with id {0}")]
    UnknownObject(ObjectId),
    #[error("model claims metamodel {model:?} but was checked against {metamodel:?}")]
    MetamodelMismatch { model: String, metamodel: String },
}

/// An instance model: objects in insertion order plus an ordered root list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    metamodel_name: String,
    objects: IndexMap<ObjectId, MObject>,
    roots: Vec<ObjectId>,
}

impl Model {
    pub fn new(metamodel_name: &str) -> Self {
        Model {
            metamodel_name: metamodel_name.to_owned(),
            objects: IndexMap::new(),
            roots: Vec::new(),
        }
    }

    pub fn metamodel_name(&self) -> &str {
        &self.metamodel_name
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = &MObject> + '_ {
        self.objects.values()
    }

    pub fn objects_of_class<'a>(&'a self, class: &'a str) -> impl Iterator<Item = &'a MObject> + 'a {
        self.objects.values().filter(move |o| o.class_name == class)
    }

    pub fn object(&self, id: &str) -> Option<&MObject> {
        self.objects.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.objects.contains_key(id)
    }

    pub fn roots(&self) -> &[ObjectId] {
        &self.roots
    }

    pub fn is_root(&self, id: &str) -> bool {
        self.roots.iter().any(|r| r.as_str() == id)
    }

    pub fn create_object(&mut self, id: impl Into<ObjectId>, class_name: &str) -> Result<&mut Self, KernelError> {
        let id = id.into();
        if self.objects.contains_key(&id) {
            return Err(KernelError::DuplicateId(id));
        }
        self.objects.insert(id.clone(), MObject::new(id, class_name.to_owned()));
        Ok(self)
    }

    /// Appends `id` to the root list. Roots already present are left alone.
    pub fn add_root(&mut self, id: &str) -> Result<&mut Self, KernelError> {
        let id = self.existing(id)?.id.clone();
        if !self.roots.contains(&id) {
            self.roots.push(id);
        }
        Ok(self)
    }

    pub fn set_attr(&mut self, id: &str, attr: &str, value: &str) -> Result<&mut Self, KernelError> {
        self.existing_mut(id)?.attrs.insert(attr.to_owned(), value.to_owned());
        Ok(self)
    }

    pub fn unset_attr(&mut self, id: &str, attr: &str) -> Result<&mut Self, KernelError> {
        self.existing_mut(id)?.attrs.remove(attr);
        Ok(self)
    }

    /// Replaces a reference slot. An empty target list clears it.
    pub fn set_refs<I, T>(&mut self, id: &str, reference: &str, targets: I) -> Result<&mut Self, KernelError>
    where
        I: IntoIterator<Item = T>,
        T: Into<ObjectId>,
    {
        let targets: Vec<ObjectId> = targets.into_iter().map(Into::into).collect();
        let obj = self.existing_mut(id)?;
        if targets.is_empty() {
            obj.refs.remove(reference);
        } else {
            obj.refs.insert(reference.to_owned(), targets);
        }
        Ok(self)
    }

    pub fn push_ref(
        &mut self,
        id: &str,
        reference: &str,
        target: impl Into<ObjectId>,
    ) -> Result<&mut Self, KernelError> {
        self.existing_mut(id)?
            .refs
            .entry(reference.to_owned())
            .or_default()
            .push(target.into());
        Ok(self)
    }

    /// Removes one object and filters its id out of every reference slot
    /// and the root list. Contained objects are not removed.
    pub fn delete_object(&mut self, id: &str) -> Result<MObject, KernelError> {
        let removed = self
            .objects
            .shift_remove(id)
            .ok_or_else(|| KernelError::UnknownObject(ObjectId::from(id)))?;
        self.roots.retain(|r| r.as_str() != id);
        for obj in self.objects.values_mut() {
            obj.refs.retain(|_, targets| {
                targets.retain(|t| t.as_str() != id);
                !targets.is_empty()
            });
        }
        Ok(removed)
    }

    /// Copy of the model with every object id passed through `rename`.
    /// Ids that do not name an object are kept verbatim.
    pub fn renamed(&self, rename: impl Fn(&ObjectId) -> ObjectId) -> Model {
        let map = |id: &ObjectId| {
            if self.objects.contains_key(id) {
                rename(id)
            } else {
                id.clone()
            }
        };
        Model {
            metamodel_name: self.metamodel_name.clone(),
            objects: self
                .objects
                .values()
                .map(|o| {
                    let id = map(&o.id);
                    let obj = MObject {
                        id: id.clone(),
                        class_name: o.class_name.clone(),
                        attrs: o.attrs.clone(),
                        refs: o
                            .refs
                            .iter()
                            .map(|(k, v)| (k.clone(), v.iter().map(map).collect()))
                            .collect(),
                    };
                    (id, obj)
                })
                .collect(),
            roots: self.roots.iter().map(map).collect(),
        }
    }

    fn existing(&self, id: &str) -> Result<&MObject, KernelError> {
        self.objects
            .get(id)
            .ok_or_else(|| KernelError::UnknownObject(ObjectId::from(id)))
    }

    fn existing_mut(&mut self, id: &str) -> Result<&mut MObject, KernelError> {
        self.objects
            .get_mut(id)
            .ok_or_else(|| KernelError::UnknownObject(ObjectId::from(id)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    UnknownClass,
    UnknownFeature,
    MultiplicityLower,
    MultiplicityUpper,
    DanglingId,
    TargetClass,
    ContainmentCycle,
    ContainmentShared,
    Uncontained,
    NonUniqueRef,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::UnknownClass => "UnknownClass",
            ViolationKind::UnknownFeature => "UnknownFeature",
            ViolationKind::MultiplicityLower => "MultiplicityLower",
            ViolationKind::MultiplicityUpper => "MultiplicityUpper",
            ViolationKind::DanglingId => "DanglingId",
            ViolationKind::TargetClass => "TargetClass",
            ViolationKind::ContainmentCycle => "ContainmentCycle",
            ViolationKind::ContainmentShared => "ContainmentShared",
            ViolationKind::Uncontained => "Uncontained",
            ViolationKind::NonUniqueRef => "NonUniqueRef",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub object_id: Option<ObjectId>,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.object_id {
            Some(id) => write!(f, "{} {}: {}", self.kind, id, self.detail),
            None => write!(f, "{} -: {}", self.kind, self.detail),
        }
    }
}

/// Checks `model` against `metamodel` and returns every violation found,
/// in object order. An empty list means the model conforms.
pub fn validate(model: &Model, metamodel: &Metamodel) -> Result<Vec<Violation>, KernelError> {
    if model.metamodel_name != metamodel.name {
        return Err(KernelError::MetamodelMismatch {
            model: model.metamodel_name.clone(),
            metamodel: metamodel.name.clone(),
        });
    }

    let mut out = Vec::new();
    let mut push = |id: Option<&ObjectId>, kind, detail: String| {
        out.push(Violation {
            object_id: id.cloned(),
            kind,
            detail,
        })
    };

    for root in &model.roots {
        if !model.objects.contains_key(root) {
            push(
                Some(root),
                ViolationKind::DanglingId,
                format!("root {root} is not an object of the model"),
            );
        }
    }

    // child id -> containers citing it
    let mut containers: HashMap<&ObjectId, Vec<&ObjectId>> = HashMap::new();

    for obj in model.objects.values() {
        let Some(class) = metamodel.class(&obj.class_name) else {
            push(
                Some(&obj.id),
                ViolationKind::UnknownClass,
                format!("class {} is not declared in {}", obj.class_name, metamodel.name),
            );
            continue;
        };

        for attr in obj.attrs.keys() {
            if class.attribute(attr).is_none() {
                push(
                    Some(&obj.id),
                    ViolationKind::UnknownFeature,
                    format!("attribute {attr} is not declared on {}", class.name),
                );
            }
        }
        for name in obj.refs.keys() {
            if class.reference(name).is_none() {
                push(
                    Some(&obj.id),
                    ViolationKind::UnknownFeature,
                    format!("reference {name} is not declared on {}", class.name),
                );
            }
        }

        for def in &class.references {
            let targets = obj.refs(&def.name);
            if targets.len() < def.lower {
                push(
                    Some(&obj.id),
                    ViolationKind::MultiplicityLower,
                    format!(
                        "reference {} holds {} targets, lower bound is {}",
                        def.name,
                        targets.len(),
                        def.lower
                    ),
                );
            }
            if !def.upper.admits(targets.len()) {
                push(
                    Some(&obj.id),
                    ViolationKind::MultiplicityUpper,
                    format!(
                        "reference {} holds {} targets, upper bound is {}",
                        def.name,
                        targets.len(),
                        def.upper
                    ),
                );
            }
            if def.unique {
                let mut seen = HashSet::new();
                for t in targets {
                    if !seen.insert(t) {
                        push(
                            Some(&obj.id),
                            ViolationKind::NonUniqueRef,
                            format!("unique reference {} lists {t} more than once", def.name),
                        );
                    }
                }
            }
            for t in targets {
                match model.objects.get(t) {
                    None => push(
                        Some(&obj.id),
                        ViolationKind::DanglingId,
                        format!("reference {} cites missing object {t}", def.name),
                    ),
                    Some(target) if target.class_name != def.target_class => push(
                        Some(&obj.id),
                        ViolationKind::TargetClass,
                        format!(
                            "reference {} expects {} but {t} is a {}",
                            def.name, def.target_class, target.class_name
                        ),
                    ),
                    Some(_) => {}
                }
                if def.containment && model.objects.contains_key(t) {
                    containers.entry(t).or_default().push(&obj.id);
                }
            }
        }
    }

    for obj in model.objects.values() {
        let parents = containers.get(&obj.id).map(Vec::as_slice).unwrap_or(&[]);
        let is_root = model.roots.contains(&obj.id);
        if is_root && !parents.is_empty() {
            push(
                Some(&obj.id),
                ViolationKind::ContainmentShared,
                format!("root object is contained by {}", parents[0]),
            );
        } else if parents.len() > 1 {
            push(
                Some(&obj.id),
                ViolationKind::ContainmentShared,
                format!(
                    "contained {} times (first by {}, then by {})",
                    parents.len(),
                    parents[0],
                    parents[1]
                ),
            );
        } else if !is_root && parents.is_empty() {
            push(
                Some(&obj.id),
                ViolationKind::Uncontained,
                "object is neither a root nor contained by any object".to_owned(),
            );
        }
    }

    // Walk each object's container chain; a chain that revisits an object is a cycle.
    let mut reported = HashSet::new();
    for obj in model.objects.values() {
        let mut path = vec![&obj.id];
        let mut current = &obj.id;
        while let Some(parent) = containers.get(current).and_then(|p| p.first()) {
            if let Some(pos) = path.iter().position(|p| *p == *parent) {
                let cycle: Vec<&ObjectId> = path[pos..].to_vec();
                let head = cycle.iter().min().copied().unwrap_or(parent);
                if reported.insert(head.clone()) {
                    let members: Vec<String> = cycle.iter().map(|id| id.to_string()).collect();
                    push(
                        Some(head),
                        ViolationKind::ContainmentCycle,
                        format!("containment cycle through {}", members.join(", ")),
                    );
                }
                break;
            }
            path.push(parent);
            current = parent;
        }
    }

    Ok(out)
}
