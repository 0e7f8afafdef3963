use std::process::Command;

use jsonschema::JSONSchema;
use lattice_agg::cli::run;
use serde_json::Value;

fn ok(args: &str) -> String {
    let argv = std::iter::once("lattice-agg").chain(args.split_whitespace());
    let out = run(argv);
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    out.stdout
}

fn json(args: &str) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn schema() -> JSONSchema {
    let text = include_str!("../schema/output.schema.json");
    JSONSchema::compile(&serde_json::from_str(text).unwrap()).unwrap()
}

const ONE_OF_EACH_KIND: &[&str] = &[
    "dist box 1,3 1,2",
    "dist partition 3,1,1 3,1,1",
    "dist partition 4,2 4,1 --combinatorial",
    "growth pmf 1,2 3,2",
    "growth moment 3,2 2,1 -p 2",
    "chain unit 1,1 --steps 2",
    "chain nstep 1,1 2,3 --steps 3",
    "trace 3,1,1 --steps 3",
    "fib 10,6 --steps 9",
    "mc 1,3 1,2 --trials 5000 --seed 7",
    "mc 3,1 2,1 --trials 5000 --seed 7 --partition",
];

#[test]
fn every_kind_matches_schema() {
    let schema = schema();
    let mut kinds = std::collections::BTreeSet::new();
    for args in ONE_OF_EACH_KIND {
        let v = json(args);
        if let Err(errors) = schema.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{args}: {msgs:?}");
        }
        kinds.insert(v["kind"].as_str().unwrap().to_string());
    }
    assert_eq!(kinds.len(), 8);
}

#[test]
fn box_golden() {
    let v = json("dist box 1,3 1,2");
    assert_eq!(v["total"], "14");
    let rows: Vec<(String, String)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["key"].as_str().unwrap().into(), e["exact"].as_str().unwrap().into()))
        .collect();
    let expected = [("(2,5)", "2/7"), ("(2,4)", "2/7"), ("(2,3)", "2/7"), ("(1,5)", "1/7")];
    assert_eq!(rows, expected.map(|(a, b)| (a.to_string(), b.to_string())));
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["den"] == "7"));
}

#[test]
fn csv_golden() {
    let out = ok("--format csv dist box 1,3 1,2");
    assert_eq!(
        out,
        "key,num,den,decimal\n\"(2,5)\",2,7,0.2857\n\"(2,4)\",2,7,0.2857\n\"(2,3)\",2,7,0.2857\n\"(1,5)\",1,7,0.1429\n"
    );
}

#[test]
fn fib_golden() {
    let v = json("fib 10,6 --steps 9");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    assert!(entries[0]["exact"].is_null());
    assert_eq!(entries[1]["exact"], "5/32");
    assert_eq!(entries[8]["key"], "9:[466,288]");
    assert_eq!(entries[8]["exact"], "111/932");
    assert_eq!(entries[8]["ratios"][0]["decimal"], "1.6181");
}

#[test]
fn unit_chain_zero_steps_is_point_mass() {
    let v = json("chain unit 1,1 --steps 0");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["key"], "(1,1)");
    assert_eq!(entries[0]["exact"], "1");
}

#[test]
fn growth_normalizes_order() {
    assert_eq!(ok("growth pmf 1,2 3,2"), ok("growth pmf 3,2 1,2"));
    let v = json("growth moment 3,2 2,1 -p 1");
    assert_eq!(v["entries"][0]["exact"], "3/2");
}

#[test]
fn nstep_reports_zero_probability() {
    let v = json("chain nstep 2,2 1,5 --steps 2");
    assert_eq!(v["entries"][0]["exact"], "0");
}

#[test]
fn trace_reports_ties() {
    let v = json("trace 3,1,1 --steps 3");
    let last: Vec<&Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["level"] == 3)
        .collect();
    assert_eq!(last.len(), 2);
    assert!(last.iter().all(|e| e["tie_count"] == 2 && e["decimal"] == "0.0401"));
}

#[test]
fn reruns_are_byte_identical() {
    for args in ONE_OF_EACH_KIND {
        assert_eq!(ok(args), ok(args), "{args}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases = [
        ("dist box 1,3 1,2,3", "Y"),
        ("dist box 0,3 1,2", "X"),
        ("fib 9,6", "L"),
        ("mc 1,1 1,1 --trials 0", "trials"),
        ("chain unit 1,1", "--steps"),
        ("dist partition 1,3 2,1", "LAM"),
    ];
    for (args, named) in cases {
        let out = run(std::iter::once("lattice-agg").chain(args.split_whitespace()));
        assert_eq!(out.code, 2, "{args}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains(named), "{args}: {}", out.stderr);
    }
}

#[test]
fn help_goes_to_stdout() {
    let out = run(["lattice-agg", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("dist"));
}

#[test]
fn binary_matches_library_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_lattice-agg"))
        .args(["dist", "box", "1,1", "1,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), ok("dist box 1,1 1,1"));

    let out = Command::new(env!("CARGO_BIN_EXE_lattice-agg"))
        .args(["dist", "box", "1,1", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
