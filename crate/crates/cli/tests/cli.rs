use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gnrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnrp"))
        .args(args)
        .env_remove("GNRP_SEED")
        .output()
        .expect("spawn gnrp")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn generate_is_deterministic() {
    let a = gnrp(&["generate", "--n", "300", "--r", "0.1", "--p", "0.6", "--seed", "42"]);
    let b = gnrp(&["generate", "--n", "300", "--r", "0.1", "--p", "0.6", "--seed", "42"]);
    let c = gnrp(&["generate", "--n", "300", "--r", "0.1", "--p", "0.6", "--seed", "43"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_env_var_is_the_default() {
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gnrp"));
        cmd.args(["generate", "--n", "50", "--r", "0.2", "--p", "0.5"])
            .env_remove("GNRP_SEED");
        if let Some(s) = seed {
            cmd.env("GNRP_SEED", s);
        }
        cmd.output().unwrap().stdout
    };
    let explicit = gnrp(&["generate", "--n", "50", "--r", "0.2", "--p", "0.5", "--seed", "7"]).stdout;
    assert_eq!(run(Some("7")), explicit);
    let zero = gnrp(&["generate", "--n", "50", "--r", "0.2", "--p", "0.5", "--seed", "0"]).stdout;
    assert_eq!(run(None), zero);
}

#[test]
fn triangle_is_connected_with_diameter_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("tri.json");
    let doc = r#"{"schema_version":1,
        "params":{"n":3,"r":0.2,"p":1.0,"seed":0},
        "points":[[0.1,0.1],[0.15,0.1],[0.1,0.15]],
        "edges":[[0,1,3],[0,2,3],[1,2,3]]}"#;
    fs::write(&inst, doc).unwrap();
    let report = dir.path().join("report.json");
    let out = gnrp(&[
        "analyze",
        "--in",
        path(&inst),
        "--props",
        "conn,diam,clique",
        "--out",
        path(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&report);
    assert_eq!(v["connectivity"]["connected"], true);
    assert_eq!(v["diameter"]["diameter"], 1);
    assert_eq!(v["clique"]["size"], 3);
}

#[test]
fn file_and_in_memory_analysis_agree() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.json");
    let model = ["--n", "400", "--r", "0.12", "--p", "0.7", "--seed", "5"];
    let mut gen = vec!["generate", "--out", path(&inst)];
    gen.extend(model);
    assert!(gnrp(&gen).status.success());

    let from_file = dir.path().join("a.json");
    let in_memory = dir.path().join("b.json");
    let props = "degree,conn,diam,clique,alpha,chi";
    assert!(gnrp(&[
        "analyze",
        "--in",
        path(&inst),
        "--props",
        props,
        "--out",
        path(&from_file)
    ])
    .status
    .success());
    let mut mem = vec!["analyze", "--props", props, "--out", path(&in_memory)];
    mem.extend(model);
    assert!(gnrp(&mem).status.success());
    assert_eq!(read_json(&from_file), read_json(&in_memory));
}

#[test]
fn edge_list_has_one_line_per_kept_edge() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let edges = dir.path().join("g.txt");
    let model = ["--n", "200", "--r", "0.1", "--p", "0.8", "--seed", "9"];
    let mut a = vec!["generate", "--out", path(&json)];
    a.extend(model);
    let mut b = vec!["generate", "--format", "edgelist", "--out", path(&edges)];
    b.extend(model);
    assert!(gnrp(&a).status.success());
    assert!(gnrp(&b).status.success());
    let kept = read_json(&json)["edges"].as_array().unwrap().len();
    let text = fs::read_to_string(&edges).unwrap();
    let lines = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(lines, kept);
}

#[test]
fn sweep_writes_one_row_per_observation() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let summary = dir.path().join("s.json");
    let out = gnrp(&[
        "sweep",
        "--theorem",
        "connectivity",
        "--n",
        "300",
        "--r",
        "0.08",
        "--c",
        "0.5:1.0:0.25",
        "--trials",
        "4",
        "--seed",
        "11",
        "--out",
        path(&csv),
        "--summary",
        path(&summary),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theorem,n,r,p,c_or_K,trial,seed,quantity,value,ratio,wall_ms"
    );
    // 3 grid points x 4 trials x (connected, components, isolated)
    assert_eq!(lines.count(), 3 * 4 * 3);
    let s = read_json(&summary);
    assert_eq!(s["points"].as_array().unwrap().len(), 3);
    assert_eq!(s["trials"], 4);
}

#[test]
fn sweep_is_reproducible_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, name: &str| {
        let csv = dir.path().join(name);
        let out = gnrp(&[
            "--workers",
            workers,
            "sweep",
            "--theorem",
            "clique",
            "--n",
            "500",
            "--r",
            "0.1",
            "--p",
            "0.5,0.9",
            "--trials",
            "3",
            "--seed",
            "2",
            "--out",
            path(&csv),
        ]);
        assert!(out.status.success());
        fs::read_to_string(csv).unwrap()
    };
    assert_eq!(run("1", "one.csv"), run("3", "three.csv"));
}

#[test]
fn invalid_input_exits_two() {
    let bad_r = gnrp(&["generate", "--n", "10", "--r", "0.7", "--p", "0.5"]);
    assert_eq!(bad_r.status.code(), Some(2));
    let unknown = gnrp(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    let missing = gnrp(&["analyze", "--in", "/definitely/not/here.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_grid = gnrp(&[
        "sweep",
        "--theorem",
        "conn",
        "--n",
        "10",
        "--r",
        "0.1",
        "--c",
        "1:0:0.1",
    ]);
    assert_eq!(bad_grid.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("x.json");
    fs::write(&garbage, "{\"schema_version\": 99}").unwrap();
    assert_eq!(gnrp(&["analyze", "--in", path(&garbage)]).status.code(), Some(2));
}

#[test]
fn exported_clique_validates_and_tampering_fails() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.json");
    let wit = dir.path().join("wit");
    assert!(gnrp(&[
        "generate",
        "--n",
        "300",
        "--r",
        "0.15",
        "--p",
        "0.6",
        "--seed",
        "3",
        "--out",
        path(&inst)
    ])
    .status
    .success());
    let out = gnrp(&[
        "analyze",
        "--in",
        path(&inst),
        "--props",
        "clique,chi",
        "--export",
        path(&wit),
    ]);
    assert!(out.status.success());

    let clique = wit.join("clique.json");
    let ok = format!("clique={}", path(&clique));
    let good = gnrp(&["analyze", "--in", path(&inst), "--props", "conn", "--check-cert", &ok]);
    assert_eq!(good.status.code(), Some(0));
    let coloring = format!("coloring={}", path(&wit.join("coloring.json")));
    assert_eq!(
        gnrp(&[
            "analyze",
            "--in",
            path(&inst),
            "--props",
            "conn",
            "--check-cert",
            &coloring
        ])
        .status
        .code(),
        Some(0)
    );

    // A vertex about half the torus away from a member cannot be adjacent to it.
    let mut ids: Vec<u64> = serde_json::from_str(&fs::read_to_string(&clique).unwrap()).unwrap();
    let doc = read_json(&inst);
    let pts = doc["points"].as_array().unwrap();
    let anchor = &pts[ids[0] as usize];
    let far = (0..pts.len())
        .find(|&i| {
            let dx = (pts[i][0].as_f64().unwrap() - anchor[0].as_f64().unwrap()).abs();
            (dx - 0.5).abs() < 0.1
        })
        .unwrap();
    ids.push(far as u64);
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, serde_json::to_string(&ids).unwrap()).unwrap();
    let bad = format!("clique={}", path(&tampered));
    let out = gnrp(&["analyze", "--in", path(&inst), "--props", "conn", "--check-cert", &bad]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tampered_hamilton_cycle_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("tri.json");
    let doc = r#"{"schema_version":1,
        "params":{"n":4,"r":0.2,"p":1.0,"seed":0},
        "points":[[0.1,0.1],[0.15,0.1],[0.15,0.15],[0.1,0.15]],
        "edges":[[0,1,3],[1,2,3],[2,3,3],[0,3,3]]}"#;
    fs::write(&inst, doc).unwrap();
    let cert = dir.path().join("cycle.json");
    fs::write(&cert, "[0,1,2,3]").unwrap();
    let ok = format!("hamilton={}", path(&cert));
    assert_eq!(
        gnrp(&["analyze", "--in", path(&inst), "--props", "conn", "--check-cert", &ok])
            .status
            .code(),
        Some(0)
    );
    fs::write(&cert, "[0,2,1,3]").unwrap();
    assert_eq!(
        gnrp(&["analyze", "--in", path(&inst), "--props", "conn", "--check-cert", &ok])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_quick_criteria_pass() {
    let out = gnrp(&["verify", "--only", "1,9"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.lines().filter(|l| l.contains("PASS")).count() >= 2, "{stdout}");
    assert!(stdout.contains("summary: 2 of 2 criteria passed"));
}

#[test]
fn verify_rejects_bad_selection() {
    assert_eq!(gnrp(&["verify", "--only", "0-3"]).status.code(), Some(2));
}
