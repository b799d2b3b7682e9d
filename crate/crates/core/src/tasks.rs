//! The fourteen runnable tasks, keyed by their command-line names.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::builtin::{GRAPH1, HELLOEXT};
use crate::kernel::Model;
use crate::queries::{self, GraphView, ResultValue};
use crate::transforms::{self, TransformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskId {
    HelloConstant,
    HelloextConstant,
    GreetingText,
    CountNodes,
    CountLoops,
    CountIsolated,
    CountCircles,
    CountDangling,
    ReverseEdges,
    MigrateEvolved,
    MigrateTopology,
    DeleteN1,
    DeleteN1Incident,
    TransitiveEdges,
}

/// What a task consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    None,
    Helloext,
    Graph1,
}

impl InputKind {
    /// Metamodel the input must conform to, if any.
    pub fn metamodel(self) -> Option<&'static str> {
        match self {
            InputKind::None => None,
            InputKind::Helloext => Some(HELLOEXT),
            InputKind::Graph1 => Some(GRAPH1),
        }
    }
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.metamodel().unwrap_or("none"))
    }
}

/// What a task produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    Model,
    String,
    Integer,
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            OutputKind::Model => "model",
            OutputKind::String => "string",
            OutputKind::Integer => "integer",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskOutput {
    Model(Model),
    Value(ResultValue),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskError {
    #[error("task {0} requires an input model")]
    MissingInput(TaskId),
    #[error("task {task} expects a {expected} model, got {found:?}")]
    WrongMetamodel {
        task: TaskId,
        expected: &'static str,
        found: String,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown task {0:?}")]
pub struct UnknownTask(pub String);

impl TaskId {
    pub const ALL: [TaskId; 14] = [
        TaskId::HelloConstant,
        TaskId::HelloextConstant,
        TaskId::GreetingText,
        TaskId::CountNodes,
        TaskId::CountLoops,
        TaskId::CountIsolated,
        TaskId::CountCircles,
        TaskId::CountDangling,
        TaskId::ReverseEdges,
        TaskId::MigrateEvolved,
        TaskId::MigrateTopology,
        TaskId::DeleteN1,
        TaskId::DeleteN1Incident,
        TaskId::TransitiveEdges,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskId::HelloConstant => "hello-constant",
            TaskId::HelloextConstant => "helloext-constant",
            TaskId::GreetingText => "greeting-text",
            TaskId::CountNodes => "count-nodes",
            TaskId::CountLoops => "count-loops",
            TaskId::CountIsolated => "count-isolated",
            TaskId::CountCircles => "count-circles",
            TaskId::CountDangling => "count-dangling",
            TaskId::ReverseEdges => "reverse-edges",
            TaskId::MigrateEvolved => "migrate-evolved",
            TaskId::MigrateTopology => "migrate-topology",
            TaskId::DeleteN1 => "delete-n1",
            TaskId::DeleteN1Incident => "delete-n1-incident",
            TaskId::TransitiveEdges => "transitive-edges",
        }
    }

    pub fn input(self) -> InputKind {
        match self {
            TaskId::HelloConstant | TaskId::HelloextConstant => InputKind::None,
            TaskId::GreetingText => InputKind::Helloext,
            _ => InputKind::Graph1,
        }
    }

    pub fn output(self) -> OutputKind {
        match self {
            TaskId::GreetingText => OutputKind::String,
            TaskId::CountNodes
            | TaskId::CountLoops
            | TaskId::CountIsolated
            | TaskId::CountCircles
            | TaskId::CountDangling => OutputKind::Integer,
            _ => OutputKind::Model,
        }
    }

    /// Runs the task. The input's metamodel name is checked here; full
    /// conformance is the caller's responsibility.
    pub fn run(self, input: Option<&Model>) -> Result<TaskOutput, TaskError> {
        let model = match self.input().metamodel() {
            None => None,
            Some(expected) => {
                let m = input.ok_or(TaskError::MissingInput(self))?;
                if m.metamodel_name() != expected {
                    return Err(TaskError::WrongMetamodel {
                        task: self,
                        expected,
                        found: m.metamodel_name().to_owned(),
                    });
                }
                Some(m)
            }
        };
        let m = || model.expect("input presence checked above");
        let count = |f: fn(&GraphView) -> usize| {
            let n = f(&GraphView::from_model(m()));
            TaskOutput::Value(ResultValue::Int(i64::try_from(n).expect("count fits in i64")))
        };
        Ok(match self {
            TaskId::HelloConstant => TaskOutput::Model(transforms::task_hello_constant()),
            TaskId::HelloextConstant => TaskOutput::Model(transforms::task_helloext_constant()),
            TaskId::GreetingText => TaskOutput::Value(transforms::task_greeting_text(m())?),
            TaskId::CountNodes => count(queries::count_nodes),
            TaskId::CountLoops => count(queries::count_looping_edges),
            TaskId::CountIsolated => count(queries::count_isolated_nodes),
            TaskId::CountCircles => count(queries::count_circles),
            TaskId::CountDangling => count(queries::count_dangling_edges),
            TaskId::ReverseEdges => TaskOutput::Model(transforms::task_reverse_edges(m())?),
            TaskId::MigrateEvolved => TaskOutput::Model(transforms::task_migrate_to_graph2(m())?),
            TaskId::MigrateTopology => TaskOutput::Model(transforms::task_migrate_to_graph3(m())?),
            TaskId::DeleteN1 => TaskOutput::Model(transforms::task_delete_n1(m())),
            TaskId::DeleteN1Incident => TaskOutput::Model(transforms::task_delete_n1_incident(m())),
            TaskId::TransitiveEdges => TaskOutput::Model(transforms::task_insert_transitive(m())?),
        })
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for TaskId {
    type Err = UnknownTask;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownTask(s.to_owned()))
    }
}
