use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiflower")).args(args).env_remove("MULTIFLOWER_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &PathBuf) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&["gen", "--n", "6", "--edges", "5", "--rank", "3", "--seed", "42", "-o", p(out)]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn gen_rejects_infeasible_parameters() {
    let o = run(&["gen", "--n", "2", "--edges", "5", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible parameters"));
}

#[test]
fn relax_golden_bounds() {
    let inst = data("example1.json");
    let (r1, shared) = (data("r1.json"), data("r2_shared13.json"));
    let cases: [(&[&str], &str); 5] = [
        (&["--method", "std"], "bound=1.333333"),
        (&["--method", "flower"], "bound=1.000000"),
        (&["--method", "eflower"], "bound=1.000000"),
        (&["--method", "rmc", "--rmc-file", p(&r1)], "bound=1.333333"),
        (&["--method", "rmc", "--rmc-file", p(&shared)], "bound=1.000000"),
    ];
    for (flags, want) in cases {
        let mut args = vec!["relax", p(&inst)];
        args.extend_from_slice(flags);
        let o = run(&args);
        assert!(o.status.success(), "{flags:?}");
        assert_eq!(stdout(&o).trim(), want, "{flags:?}");
    }
}

#[test]
fn relax_report_records_cuts() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&[
        "relax",
        p(&data("example1.json")),
        "--method",
        "eflower",
        "--cut-mode",
        "separate",
        "--report",
        p(&report),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert!(v["cuts_added"].as_u64().unwrap() >= 1);
    assert_eq!(v["converged"], true);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let inst = data("example1.json");
    for args in [
        vec!["relax", p(&bad), "--method", "std"],
        vec!["relax", "/nonexistent.json", "--method", "std"],
        vec!["relax", p(&inst), "--method", "bogus"],
        vec!["relax", p(&inst), "--method", "rmc", "--rmc-file", p(&bad)],
        vec!["compare", p(&inst), "--methods", "std,rmc:sideways"],
        vec!["relax", p(&inst)],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn solver_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("infeasible.json");
    std::fs::write(
        &inst,
        r#"{"n": 2, "objective": [{"vars": [1, 2], "coef": 1}],
            "constraints": [{"terms": [{"vars": [1], "coef": 1}], "rhs": -1}]}"#,
    )
    .unwrap();
    let o = run(&["relax", p(&inst), "--method", "std"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_example1() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let json = dir.path().join("out.json");
    let methods = format!("std,flower,rmc:file={},rmc:file={}", p(&data("r1.json")), p(&data("r2_shared13.json")));
    let o = run(&["compare", p(&data("example1.json")), "--methods", &methods, "--exact", "--csv", p(&csv), "--json", p(&json)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "method,bound,n_vars,n_ineqs,rounds,ms");
    let bounds: Vec<(String, f64)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap())
        })
        .collect();
    let want = [("flower", 1.0), ("rmc:r1", 4.0 / 3.0), ("rmc:r2_shared13", 1.0), ("std", 4.0 / 3.0), ("exact", 1.0)];
    assert_eq!(bounds.len(), want.len());
    for ((name, b), (wname, wb)) in bounds.iter().zip(want) {
        assert_eq!(name, wname);
        assert!((b - wb).abs() < 1e-6, "{name}: {b}");
    }
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["instance"], "example1");
    assert_eq!(report["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn compare_single_method_and_random_instance() {
    let o = run(&["compare", p(&data("example1.json")), "--methods", "std"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);

    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("seed7.json");
    assert!(run(&["gen", "--n", "8", "--edges", "7", "--rank", "4", "--seed", "7", "-o", p(&inst)]).status.success());
    let o = run(&[
        "compare",
        p(&inst),
        "--methods",
        "std,flower,eflower,rmc:leftmost,rmc:balanced,rmc:minsize",
        "--exact",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn commands_are_deterministic() {
    let inst = data("example4.json");
    let point = data("example4_point.json");
    let a = run(&["separate", p(&inst), "--point", p(&point)]);
    let b = run(&["separate", p(&inst), "--point", p(&point)]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["project", p(&data("example1.json")), "--rmc-file", p(&data("r2.json"))]);
    let b = run(&["project", p(&data("example1.json")), "--rmc-file", p(&data("r2.json"))]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn separate_example4() {
    let o = run(&["separate", p(&data("example4.json")), "--point", p(&data("example4_point.json"))]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["tag"], "eflower");
    assert_eq!(v["neighbors"].as_array().unwrap().len(), 3);
    assert!((v["violation"].as_f64().unwrap() - 0.25).abs() < 1e-12);
}

#[test]
fn separate_integral_and_incomplete_points() {
    let dir = tempfile::tempdir().unwrap();
    let integral = dir.path().join("int.json");
    std::fs::write(
        &integral,
        r#"{"vertices": {"1":1,"2":1,"3":1,"4":0}, "edges": [
            {"vars":[1,2,3],"value":1}, {"vars":[2,3,4],"value":0}, {"vars":[1,3,4],"value":0}]}"#,
    )
    .unwrap();
    let o = run(&["separate", p(&data("example1.json")), "--point", p(&integral)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, r#"{"vertices": {"1":1,"2":1,"3":1,"4":0}, "edges": []}"#).unwrap();
    let o = run(&["separate", p(&data("example1.json")), "--point", p(&partial)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn project_outputs() {
    let o = run(&["project", p(&data("example1.json")), "--rmc-file", p(&data("r2.json"))]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["inequalities"].as_array().unwrap();
    let row = rows.iter().find(|r| r["text"] == "z_2 + z_{1,3,4} - z_{2,3,4} <= 1").expect("witness row");
    assert_eq!(row["provenance"]["family"], "proj2");

    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    std::fs::write(&pair, r#"{"n": 2, "objective": [{"vars": [1, 2], "coef": 1}]}"#).unwrap();
    let o = run(&["project", p(&pair)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut texts: Vec<&str> = v["inequalities"].as_array().unwrap().iter().map(|r| r["text"].as_str().unwrap()).collect();
    texts.sort();
    assert_eq!(texts, ["-z_1 + z_{1,2} <= 0", "-z_2 + z_{1,2} <= 0", "-z_{1,2} <= 0", "z_1 + z_2 - z_{1,2} <= 1", "z_1 <= 1", "z_2 <= 1"]);
}

#[test]
fn tolerance_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_multiflower"))
        .args(["separate", p(&data("example4.json")), "--point", p(&data("example4_point.json"))])
        .env("MULTIFLOWER_TOL", "0.3")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}
