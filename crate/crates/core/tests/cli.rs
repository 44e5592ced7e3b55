mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cig_core::testlib::{ComposedLibraryResult, TestLibrary};
use cig_core::{cig_from_json, CompositionResult};
use common::fixture_path;

fn cig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixtures() -> (String, String) {
    (
        fixture_path("vending_machine.sc").display().to_string(),
        fixture_path("dispenser.sc").display().to_string(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn parse_prints_canonical_text() {
    let (vm, _) = fixtures();
    let o = cig(&["parse", &vm]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("component VendingMachine\n"));
    assert!(text.ends_with("end\n"));
    assert_eq!(
        cig_core::parse_statechart(&text).unwrap(),
        cig_core::fixtures::vending_machine()
    );
}

#[test]
fn parse_reports_bad_files_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.sc",
        "component A\nstate X\ninitial X\ntransition X -> Q on go\n",
    );
    let o = cig(&["parse", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("bad.sc:4:17: unknown state"),
        "{}",
        stderr(&o)
    );

    let (vm, _) = fixtures();
    let o = cig(&["parse", &vm, &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("component VendingMachine"));
    assert!(stderr(&o).contains("bad.sc:4:17"));
}

#[test]
fn compose_fixture_pair() {
    let (vm, dp) = fixtures();
    let o = cig(&["compose", &vm, &dp]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = CompositionResult::from_json(&stdout(&o)).unwrap();
    let names = |s: &std::collections::BTreeSet<cig_core::ServiceName>| {
        s.iter().map(|x| x.as_str().to_owned()).collect::<Vec<_>>()
    };
    assert_eq!(names(r.composed().provided()), ["cancel", "insert", "vend"]);
    assert_eq!(names(r.composed().required()), ["returnCoins"]);
    assert_eq!(names(r.satisfied()), ["dispense", "nok", "ok", "setCredit"]);
    assert_eq!(r.order(), ["VendingMachine", "Dispenser"]);
}

#[test]
fn compose_errors() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.sc",
        "component A\nstate X\ninitial X\ntransition X -> X on a do b\n",
    );
    let b = write(
        dir.path(),
        "b.sc",
        "component B\nstate Y\ninitial Y\ntransition Y -> Y on c do d\n",
    );
    let o = cig(&["compose", &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not composable: S is empty"));

    let o = cig(&["compose", &a]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("usage"));

    let o = cig(&["compose", &a, "/nonexistent/x.sc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cig_outputs_and_report() {
    let (vm, dp) = fixtures();
    let o = cig(&["cig", &vm, &dp, "--format", "dot", "--report"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.contains("style=dashed"));
    assert!(!dot.contains("ReadyToDispense"));
    let report = stderr(&o);
    let row = report
        .lines()
        .find(|l| l.contains("ReadyToDispense") && !l.starts_with("warning"))
        .unwrap();
    assert!(row.trim_end().ends_with("Removed"));

    let o = cig(&["cig", &vm, &dp, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = cig_from_json(&stdout(&o)).unwrap();
    assert_eq!(parsed.edges().len(), 5);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cig.json");
    let o = cig(&[
        "cig",
        &vm,
        &dp,
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(
        cig_from_json(&fs::read_to_string(&out).unwrap()).unwrap(),
        parsed
    );
}

#[test]
fn cig_without_interaction_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "a.sc",
        "component A\nstate X\ninitial X\ntransition X -> X on a\n",
    );
    let b = write(
        dir.path(),
        "b.sc",
        "component B\nstate Y\ninitial Y\ntransition Y -> Y on c\n",
    );
    let o = cig(&["cig", &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
}

#[test]
fn tests_gen_and_compose_end_to_end() {
    let (vm, dp) = fixtures();
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).display().to_string();

    assert_eq!(
        cig(&["cig", &vm, &dp, "--format", "json", "--out", &p("cig.json")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cig(&["compose", &vm, &dp, "--out", &p("comp.json")])
            .status
            .code(),
        Some(0)
    );
    let o = cig(&[
        "tests",
        "gen",
        "--cig",
        &p("cig.json"),
        &vm,
        &dp,
        "--out",
        &p("gen.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let generated = TestLibrary::from_json(&fs::read_to_string(p("gen.json")).unwrap()).unwrap();
    assert_eq!(generated.len(), 5);

    let t1 = write(
        dir.path(),
        "t1.json",
        r#"{"cases":[
        {"id":"vm_vend_single","owner":"VendingMachine","origin":"library","services":["setCredit","insert"],"steps":[]},
        {"id":"vm_cancel","owner":"VendingMachine","origin":"library","services":["cancel"],"steps":[]}]}"#,
    );
    let t2 = write(
        dir.path(),
        "t2.json",
        r#"{"cases":[
        {"id":"dp_ok","owner":"Dispenser","origin":"library","services":["ok"],"steps":[]}]}"#,
    );
    let o = cig(&[
        "tests",
        "compose",
        "--t1",
        &t1,
        "--t2",
        &t2,
        "--composition",
        &p("comp.json"),
        "--tnew",
        &p("gen.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = ComposedLibraryResult::from_json(&stdout(&o)).unwrap();
    assert_eq!(
        r.removed.ids().collect::<Vec<_>>(),
        ["vm_vend_single", "dp_ok"]
    );
    assert_eq!(r.final_library.len(), 3 - 2 + 5);
    assert_eq!(r.final_library.cases()[0].id, "vm_cancel");

    // Same id in both libraries.
    let o = cig(&[
        "tests",
        "compose",
        "--t1",
        &t1,
        "--t2",
        &t1,
        "--composition",
        &p("comp.json"),
        "--tnew",
        &p("gen.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("duplicate test id"));

    // Schema error.
    let broken = write(dir.path(), "broken.json", r#"{"case":[]}"#);
    let o = cig(&[
        "tests",
        "compose",
        "--t1",
        &broken,
        "--t2",
        &t2,
        "--composition",
        &p("comp.json"),
        "--tnew",
        &p("gen.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_libraries_compose_to_empty() {
    let (vm, dp) = fixtures();
    let dir = tempfile::tempdir().unwrap();
    let comp = dir.path().join("comp.json").display().to_string();
    assert_eq!(
        cig(&["compose", &vm, &dp, "--out", &comp]).status.code(),
        Some(0)
    );
    let empty = write(dir.path(), "empty.json", "{\"cases\":[]}");
    let o = cig(&[
        "tests",
        "compose",
        "--t1",
        &empty,
        "--t2",
        &empty,
        "--composition",
        &comp,
        "--tnew",
        &empty,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = ComposedLibraryResult::from_json(&stdout(&o)).unwrap();
    assert!(r.final_library.is_empty());
}

#[test]
fn unreachable_provider_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.sc", "component A\nstate S\nstate Dead\ninitial S\ntransition S -> S on idle\ntransition Dead -> S on fire do ping\n");
    let b = write(
        dir.path(),
        "b.sc",
        "component B\nstate Y\ninitial Y\ntransition Y -> Y on ping\n",
    );
    let cig_json = dir.path().join("cig.json").display().to_string();
    assert_eq!(
        cig(&["cig", &a, &b, "--format", "json", "--out", &cig_json])
            .status
            .code(),
        Some(0)
    );
    let o = cig(&["tests", "gen", "--cig", &cig_json, &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unreachable"));
}

#[test]
fn inputs_are_not_modified() {
    let (vm, dp) = fixtures();
    let before = (fs::read(&vm).unwrap(), fs::read(&dp).unwrap());
    cig(&["cig", &vm, &dp, "--report"]);
    cig(&["compose", &vm, &dp]);
    assert_eq!(before, (fs::read(&vm).unwrap(), fs::read(&dp).unwrap()));
}

#[test]
fn run_report_records_inputs_and_warnings() {
    let (vm, dp) = fixtures();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let report = cig_core::cli::run(["cig", "cig", vm.as_str(), dp.as_str()], &mut out, &mut err);
    assert_eq!(report.exit_code, 0);
    assert_eq!(report.command, "cig");
    assert_eq!(report.inputs.len(), 2);
    assert!(report
        .warnings
        .iter()
        .any(|w| w.contains("VendingMachine.ReadyToDispense")));
    assert!(String::from_utf8(out).unwrap().starts_with("digraph CIG {"));
}
