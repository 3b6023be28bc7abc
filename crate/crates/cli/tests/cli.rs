use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use redistrict::gadgets::grid;
use redistrict::{build_graph, validate_plan, GraphFile, Plan, ProblemSpec};

fn redistrict(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redistrict"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn write_grid(dir: &Path, r: usize, c: usize) {
    let o = redistrict(
        dir,
        &[
            "gen",
            "grid",
            &r.to_string(),
            &c.to_string(),
            "-o",
            "g.json",
        ],
    );
    assert!(o.status.success());
}

const HALVES: [&str; 6] = ["--k", "2", "--min-weight", "2", "--max-weight", "3"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn gen_grid_writes_a_graph() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 3, 3);
    let file =
        GraphFile::from_json(&fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    let g = build_graph(&file).unwrap();
    assert_eq!((g.num_vertices(), g.num_edges()), (9, 12));
}

#[test]
fn optimize_2x2_halves() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 2, 2);
    let o = redistrict(
        dir.path(),
        &with(&["optimize", "g.json", "-o", "plan.json"], &HALVES),
    );
    assert!(o.status.success());
    let plan = Plan::from_json(&fs::read_to_string(dir.path().join("plan.json")).unwrap()).unwrap();
    assert_eq!(plan.cost, 2);
    assert_eq!(plan.weights, vec![2, 2]);
}

#[test]
fn count_with_cost_filter() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 2, 2);
    let o = redistrict(
        dir.path(),
        &with(&["count", "g.json", "--cost", "2"], &HALVES),
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2");
    let o = redistrict(
        dir.path(),
        &with(&["count", "g.json", "--cost", "3"], &HALVES),
    );
    assert_eq!(stdout(&o), "0");
    let o = redistrict(
        dir.path(),
        &with(&["count", "g.json", "--semiring", "min-cost"], &HALVES),
    );
    assert_eq!(stdout(&o), "2");
}

#[test]
fn sample_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 2, 2);
    for out in ["a.json", "b.json"] {
        let o = redistrict(
            dir.path(),
            &with(&["sample", "g.json", "--seed", "7", "-o", out], &HALVES),
        );
        assert!(o.status.success());
    }
    let a = fs::read_to_string(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read_to_string(dir.path().join("b.json")).unwrap());
    let plan = Plan::from_json(&a).unwrap();
    assert_eq!(plan.seed, Some(7));
    validate_plan(&grid(2, 2), &ProblemSpec::new(2, 2, 3, 5).unwrap(), &plan).unwrap();
    let o = redistrict(
        dir.path(),
        &with(&["validate", "g.json", "--plan", "a.json"], &HALVES),
    );
    assert!(o.status.success());
}

#[test]
fn infeasible_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 2, 2);
    let spec = ["--k", "2", "--min-weight", "3", "--max-weight", "4"];
    assert_eq!(
        redistrict(dir.path(), &with(&["optimize", "g.json"], &spec))
            .status
            .code(),
        Some(2)
    );
    let o = redistrict(
        dir.path(),
        &with(&["sample", "g.json", "--cost", "3"], &HALVES),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        redistrict(dir.path(), &with(&["optimize", "missing.json"], &HALVES))
            .status
            .code(),
        Some(1)
    );
    write_grid(dir.path(), 2, 2);
    assert_eq!(
        redistrict(dir.path(), &["optimize", "g.json", "--k", "2"])
            .status
            .code(),
        Some(1)
    );
    let bad = ["--k", "2", "--min-weight", "3", "--max-weight", "3"];
    assert_eq!(
        redistrict(dir.path(), &with(&["count", "g.json"], &bad))
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn oracle_histogram_for_3x3_thirds() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 3, 3);
    let spec = ["--k", "3", "--min-weight", "3", "--max-weight", "4"];
    let o = redistrict(
        dir.path(),
        &with(&["oracle", "g.json", "-o", "h.json"], &spec),
    );
    assert!(o.status.success());
    let h: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("h.json")).unwrap()).unwrap();
    assert_eq!(h["total"], 10);
    let o = redistrict(dir.path(), &with(&["count", "g.json"], &spec));
    assert_eq!(stdout(&o), "10");
}

#[test]
fn oracle_refuses_large_graphs() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 4, 4);
    let spec = ["--k", "2", "--min-weight", "8", "--max-weight", "9"];
    assert_eq!(
        redistrict(dir.path(), &with(&["oracle", "g.json"], &spec))
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn gadget_writes_graph_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    let o = redistrict(
        dir.path(),
        &[
            "gadget",
            "binpacking",
            "--values",
            "1,1",
            "--bins",
            "2",
            "--capacity",
            "1",
            "-o",
            "gadget.json",
            "--labels",
            "labels.json",
        ],
    );
    assert!(o.status.success());
    let file =
        GraphFile::from_json(&fs::read_to_string(dir.path().join("gadget.json")).unwrap()).unwrap();
    let g = build_graph(&file).unwrap();
    let labels: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("labels.json")).unwrap()).unwrap();
    assert_eq!(labels["labels"].as_array().unwrap().len(), g.num_vertices());
    let spec = &labels["spec"];
    let args: Vec<String> = ["k", "lower", "upper", "max_cost"]
        .iter()
        .map(|f| spec[f].to_string())
        .collect();
    let o = redistrict(
        dir.path(),
        &[
            "count",
            "gadget.json",
            "--semiring",
            "feasibility",
            "--k",
            &args[0],
            "--min-weight",
            &args[1],
            "--max-weight",
            &args[2],
            "--max-cost",
            &args[3],
        ],
    );
    assert_eq!(stdout(&o), "true");
}

#[test]
fn decompose_and_import() {
    let dir = tempfile::tempdir().unwrap();
    write_grid(dir.path(), 4, 4);
    let o = redistrict(dir.path(), &["decompose", "g.json", "-o", "d.json"]);
    assert!(o.status.success());
    let report = String::from_utf8_lossy(&o.stderr);
    let width: usize = report
        .lines()
        .find_map(|l| l.strip_prefix("width "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(width <= 5);
    assert!(redistrict(
        dir.path(),
        &["validate", "g.json", "--decomposition", "d.json"]
    )
    .status
    .success());

    let spec = ["--k", "2", "--min-weight", "8", "--max-weight", "9"];
    let direct = redistrict(dir.path(), &with(&["count", "g.json"], &spec));
    let imported = redistrict(
        dir.path(),
        &with(
            &[
                "count",
                "g.json",
                "--builder",
                "import",
                "--decomposition",
                "d.json",
            ],
            &spec,
        ),
    );
    assert!(imported.status.success());
    assert_eq!(stdout(&direct), stdout(&imported));

    // drop a leaf: the validator lists the violation and fails
    let mut d: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("d.json")).unwrap()).unwrap();
    let nodes = d["nodes"].as_array_mut().unwrap();
    let leaf = nodes.iter().position(|n| n.get("edges").is_some()).unwrap();
    nodes[leaf]["edges"] = serde_json::json!([]);
    fs::write(dir.path().join("bad.json"), d.to_string()).unwrap();
    let o = redistrict(
        dir.path(),
        &["validate", "g.json", "--decomposition", "bad.json"],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn triangle_has_width_two() {
    let dir = tempfile::tempdir().unwrap();
    let triangle = r#"{
        "vertices": [{"id": 0, "weight": 1}, {"id": 1, "weight": 1}, {"id": 2, "weight": 1}],
        "edges": [{"id": 0, "u": 0, "v": 1, "cost": 1}, {"id": 1, "u": 1, "v": 2, "cost": 1}, {"id": 2, "u": 2, "v": 0, "cost": 1}],
        "rotation": {"0": [0, 2], "1": [1, 0], "2": [2, 1]}
    }"#;
    fs::write(dir.path().join("t.json"), triangle).unwrap();
    let o = redistrict(dir.path(), &["decompose", "t.json", "-o", "d.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("width 2"));
}
