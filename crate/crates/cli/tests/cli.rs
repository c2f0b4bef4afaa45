use std::path::Path;
use std::process::{Command, Output};

use splitenergy::io::read_graph;
use splitenergy::{complete_graph, cycle_graph, generalized_splitting, Graph, SplitParams};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_splitenergy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write_gen(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let p = path.to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &p]);
    assert!(run(&full).status.success());
    p
}

fn load(path: &str) -> Graph {
    read_graph(&std::fs::read_to_string(path).unwrap(), None).unwrap()
}

#[test]
fn gen_examples() {
    let out = run(&["gen", "complete", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Bw\n");

    let dir = TempDir::new().unwrap();
    let c4 = load(&write_gen(&dir, "c4", &["cycle", "4", "--format", "mtx"]));
    assert_eq!((c4.order(), c4.edge_count().value()), (4, 4));

    let u = load(&write_gen(
        &dir,
        "u",
        &["union", "complete:7", "complete:8"],
    ));
    assert_eq!((u.order(), u.edge_count().value()), (15, 21 + 28));

    let a = stdout(&run(&["gen", "random", "12", "0.3", "5"]));
    let b = stdout(&run(&["gen", "random", "12", "0.3", "5"]));
    assert_eq!(a, b);

    assert_eq!(run(&["gen", "cycle", "2"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "union", "wheel:5"]).status.code(), Some(2));
}

#[test]
fn construct_examples() {
    let dir = TempDir::new().unwrap();
    let c4 = write_gen(&dir, "c4.g6", &["cycle", "4"]);
    let k3 = write_gen(&dir, "k3.g6", &["complete", "3"]);
    let out = dir.path().join("s22.edges");
    let s = run(&[
        "construct",
        &c4,
        "split",
        "2",
        "2",
        "--format",
        "edges",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(s.status.success());
    let s22 = load(out.to_str().unwrap());
    let expected =
        generalized_splitting(&cycle_graph(4).unwrap(), SplitParams::new(2, 2).unwrap()).unwrap();
    assert_eq!(s22, expected);
    assert_eq!((s22.order(), s22.edge_count().value()), (16, 40));

    let d3 = read_graph(&stdout(&run(&["construct", &c4, "shadow", "3"])), None).unwrap();
    assert_eq!(d3.order(), 12);
    let kron = read_graph(
        &stdout(&run(&["construct", &c4, "kron", "--with", &k3])),
        None,
    )
    .unwrap();
    assert_eq!(kron.order(), 12);
    assert_eq!(kron.edge_count().value(), 2 * 4 * 3);

    assert_eq!(
        run(&["construct", &c4, "split", "0", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "/no/such/file", "shadow", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn energy_and_spectrum() {
    let dir = TempDir::new().unwrap();
    let k7 = write_gen(&dir, "k7", &["complete", "7"]);
    let k3 = write_gen(&dir, "k3", &["complete", "3"]);

    let e = json(&run(&["energy", &k7]));
    assert!((e["energy"].as_f64().unwrap() - 12.0).abs() < 1e-9);

    let s = json(&run(&["spectrum", &k3]));
    let values: Vec<f64> = s["oracle"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    for (got, want) in values.iter().zip([2.0, -1.0, -1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    assert_eq!(s["oracle"]["distinct"][1]["multiplicity"], 2);

    let out = run(&["energy", &k3, "--apply", "split:2:1", "--method", "both"]);
    assert!(out.status.success());
    let e = json(&out);
    assert_eq!(e["order"], 9);
    assert!((e["formula"].as_f64().unwrap() - 16.0).abs() < 1e-12);
    assert!((e["oracle"].as_f64().unwrap() - 16.0).abs() < 1e-9);
    assert!(e["delta"].as_f64().unwrap() < 1e-8);
    assert_eq!(e["agree"], true);

    let s = json(&run(&["spectrum", &k3, "--apply", "shadow-split:2:2"]));
    assert_eq!(s["agree"], true);
    assert!(s["max_abs_diff"].as_f64().unwrap() < 1e-8);

    // formula-only skips the eigensolve of the operator graph
    let e = json(&run(&[
        "energy", &k3, "--apply", "shadow:3", "--method", "formula",
    ]));
    assert!(e["oracle"].is_null());
    assert!((e["energy"].as_f64().unwrap() - 12.0).abs() < 1e-12);

    assert_eq!(
        run(&["energy", &k3, "--method", "formula"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["energy", &k3, "--apply", "twist:2"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "C6_2", "t=1"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["members"][0]["order"], 49);
    assert!((r["members"][0]["measured_energy"].as_f64().unwrap() - 96.0).abs() < 1e-8);
    assert!(r["tolerance"].as_f64().unwrap() > 0.0);

    let r = json(&run(&["verify", "C5_9", "t=1", "--base", "cycle:4"]));
    assert_eq!(r["verdict"], "pass");
    let members = r["members"].as_array().unwrap();
    assert_eq!(members.len(), 4);
    for m in members {
        assert!((m["predicted_energy"].as_f64().unwrap() - 72.0).abs() < 1e-9);
    }

    let out = run(&["verify", "C5_4", "p=2", "q=5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["energies_equal"], false);

    let dir = TempDir::new().unwrap();
    let star = write_gen(&dir, "star", &["bipartite", "1", "4"]);
    let c4k1 = write_gen(&dir, "c4k1", &["union", "cycle:4", "empty:1"]);
    let out = run(&[
        "verify", "C5_1", "p=2", "q=2", "c=2", "k=1", "--base", &star, "--base", &c4k1,
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(json(&out)["bases"][0]["label"], "star");

    let table = stdout(&run(&["verify", "C6_1", "k=1", "--table"]));
    assert!(table.contains("S_{15,2}(K3)") && table.contains("PASS"));

    for bad in [
        vec!["verify", "C9_9"],
        vec!["verify", "C6_2"],
        vec!["verify", "C6_2", "t=1", "x=2"],
        vec!["verify", "C6_2", "t=1", "t=2"],
        vec!["verify", "C6_2", "t=one"],
        vec!["verify", "C5_3", "m=2", "t=2"],
        vec!["verify", "C6_2", "t=1", "--tol", "-1"],
        vec!["verify", "C6_2", "t=1", "--base", "cycle:4"],
    ] {
        assert_eq!(run(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn sweep_examples() {
    let out = run(&["sweep", "C6_1", "k=1..5", "--method", "oracle"]);
    assert!(out.status.success());
    let entries = json(&out);
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 5);
    for (i, e) in entries.iter().enumerate() {
        assert_eq!(e["parameters"]["k"], i as i64 + 1);
        assert_eq!(e["report"]["verdict"], "pass");
    }

    let out = run(&["sweep", "C5_3", "m=2..4", "t=1..3", "--jobs", "1"]);
    assert!(out.status.success());
    let entries = json(&out);
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 9);
    let run_points = entries
        .iter()
        .filter(|e| e["report"]["verdict"] == "pass")
        .count();
    let skipped = entries.iter().filter(|e| e["skipped"].is_string()).count();
    assert_eq!((run_points, skipped), (6, 3));

    let out = run(&["sweep", "C5_4", "p=1..2", "q=6"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(run(&["sweep", "C6_1", "k=5..1"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "C6_1", "k=1..2", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep", "C5_2", "t=1", "m=1", "k=-1,1"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // 17 significant digits
    assert!(stdout(&a).contains("\"tolerance\": 1.0000000000000000e-8"));
}

#[test]
fn convert_round_trips() {
    let dir = TempDir::new().unwrap();
    let src = write_gen(&dir, "p", &["random", "25", "0.4", "11"]);
    let original = load(&src);
    let mut previous = src;
    for (i, format) in ["mtx", "edges", "graph6", "mtx"].iter().enumerate() {
        let next = dir.path().join(format!("step{i}"));
        let out = run(&[
            "convert",
            &previous,
            "--format",
            format,
            "-o",
            next.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        previous = next.to_str().unwrap().to_string();
        assert_eq!(load(&previous), original);
    }
    assert!(Path::new(&previous).exists());
    assert_eq!(
        load(&write_gen(&dir, "k5", &["complete", "5"])),
        complete_graph(5).unwrap()
    );
}
