use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use modelkit::{parse_model, ResultValue, TaskId};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn modelkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelkit"))
        .args(args)
        .output()
        .unwrap()
}

fn run(task: &str, input: &str) -> Output {
    let path = fixture(input);
    modelkit(&["run", task, "--input", path.to_str().unwrap()])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_prints_every_task_in_order() {
    let out = modelkit(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 14);
    for (line, task) in lines.iter().zip(TaskId::ALL) {
        assert!(line.starts_with(&format!("{} ", task.name())), "{line}");
        assert!(line.contains(&format!("output: {}", task.output())));
    }
}

#[test]
fn integer_results_are_plain_numbers() {
    let cases = [
        ("count-nodes", "empty-graph.model.json", "0"),
        ("count-nodes", "sample.model.json", "6"),
        ("count-loops", "sample.model.json", "1"),
        ("count-isolated", "sample.model.json", "1"),
        ("count-circles", "sample.model.json", "3"),
        ("count-circles", "triangle.model.json", "3"),
        ("count-dangling", "dangling.model.json", "2"),
    ];
    for (task, input, expected) in cases {
        let out = run(task, input);
        assert!(out.status.success(), "{task} {input}");
        assert_eq!(stdout(&out), format!("{expected}\n"), "{task} {input}");
        assert!(out.stderr.is_empty());
    }
}

#[test]
fn result_output_file_holds_a_result_model() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("count.model.json");
    let input = fixture("sample.model.json");
    let out = modelkit(&[
        "run",
        "count-nodes",
        "--input",
        input.to_str().unwrap(),
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "6\n");
    let model = parse_model(&fs::read(&target).unwrap()).unwrap();
    assert_eq!(model.metamodel_name(), "result");
    assert_eq!(model.objects().next().unwrap().class_name(), "IntResult");
    assert_eq!(ResultValue::from_model(&model).unwrap(), ResultValue::Int(6));

    let text_target = dir.path().join("text.model.json");
    let input = fixture("helloext.model.json");
    let out = modelkit(&[
        "run",
        "greeting-text",
        "--input",
        input.to_str().unwrap(),
        "--output",
        text_target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let model = parse_model(&fs::read(&text_target).unwrap()).unwrap();
    assert_eq!(
        ResultValue::from_model(&model).unwrap(),
        ResultValue::Str("Hello TTC Participants!".into())
    );
}

#[test]
fn model_output_goes_to_file_when_requested() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.model.json");
    let out = modelkit(&["run", "hello-constant", "--output", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        parse_model(&fs::read(&target).unwrap()).unwrap().metamodel_name(),
        "hello"
    );
}

#[test]
fn validate_command() {
    let ok = modelkit(&[
        "validate",
        fixture("sample.model.json").to_str().unwrap(),
        "--metamodel",
        "graph1",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.is_empty());

    let bad = modelkit(&[
        "validate",
        fixture("two-sources.model.json").to_str().unwrap(),
        "--metamodel",
        "graph1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("MultiplicityUpper"));

    let malformed = modelkit(&[
        "validate",
        fixture("malformed/syntax.model.json").to_str().unwrap(),
        "--metamodel",
        "graph1",
    ]);
    assert_eq!(malformed.status.code(), Some(3));

    let mismatch = modelkit(&[
        "validate",
        fixture("hello.model.json").to_str().unwrap(),
        "--metamodel",
        "graph1",
    ]);
    assert_eq!(mismatch.status.code(), Some(1));

    let unknown = modelkit(&[
        "validate",
        fixture("hello.model.json").to_str().unwrap(),
        "--metamodel",
        "uml",
    ]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(modelkit(&["run", "count-edges"]).status.code(), Some(2));
    assert_eq!(modelkit(&["run", "count-nodes"]).status.code(), Some(2));
    let hello = fixture("hello.model.json");
    assert_eq!(
        modelkit(&["run", "hello-constant", "--input", hello.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(modelkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn missing_input_file_is_an_io_error() {
    let out = modelkit(&["run", "count-nodes", "--input", "/nonexistent/graph.model.json"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn wrong_or_nonconforming_input_fails_validation() {
    let out = run("count-nodes", "helloext.model.json");
    assert_eq!(out.status.code(), Some(1));
    let out = run("count-nodes", "two-sources.model.json");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MultiplicityUpper"));
    assert!(out.stdout.is_empty());
}
