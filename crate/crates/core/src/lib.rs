//! Typed attributed graph models with metamodel conformance checking and a
//! set of primitive CRUD transformations: constant creation, model-to-text,
//! counting queries, in-place update, migration, deletion and transitive
//! edge insertion.

pub mod builtin;
pub mod codec;
pub mod equiv;
pub mod kernel;
pub mod queries;
pub mod tasks;
pub mod transforms;

pub use builtin::{hello_instance, helloext_instance, registry, MetamodelRegistry};
pub use codec::{parse_model, serialize_model, ParseError, ParseErrorKind};
pub use equiv::{find_isomorphism, model_equivalent};
pub use kernel::{
    validate, AttributeDef, AttributeType, ClassDef, KernelError, MObject, Metamodel, MetamodelError, Model, ObjectId,
    ReferenceDef, Upper, Violation, ViolationKind,
};
pub use queries::{EdgeView, GraphView, ResultValue};
pub use tasks::{InputKind, OutputKind, TaskError, TaskId, TaskOutput, UnknownTask};
pub use transforms::TransformError;
