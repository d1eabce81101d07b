use std::path::Path;
use std::process::{Command, Output};

fn bimodal(dir: &Path, args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimodal"))
        .args(args)
        .current_dir(dir)
        .env("BIMODAL_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bimodal(dir, args, "2")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .to_string()
}

#[test]
fn entropy_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (args, s) in [
        (&["entropy", "--family", "cubic", "--v", "1,0"][..], "3.000000"),
        (&["entropy", "--family", "saw", "--w", "1,0"][..], "3.000000"),
        (&["entropy", "--family", "quad", "--v", "1"][..], "2.000000"),
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(field(&stdout(&o), "s"), s);
    }
    let o = run(dir.path(), &["entropy", "--v", "0.9,0.2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "markov");
    assert!(v["s"].as_f64().unwrap() > 1.0);
}

#[test]
fn usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(run(d, &["skeleton", "--n", "1"]).status.code(), Some(1));
    assert_eq!(run(d, &["scan", "--family", "saw", "--m", "16", "--window", ".5,.5,0,.1"]).status.code(), Some(1));
    assert_eq!(run(d, &["entropy", "--v", "0.2,0.5"]).status.code(), Some(1));
    assert_eq!(run(d, &["entropy", "--v", "1,0,3"]).status.code(), Some(1));
    assert_eq!(run(d, &["nonsense"]).status.code(), Some(1));
    assert_eq!(run(d, &["contour", "--grid", "missing.csv"]).status.code(), Some(3));
}

#[test]
fn bone_json_has_bottom_edge_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bone", "--family", "cubic", "--period", "2", "--side", "left"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bones = v.as_array().unwrap();
    assert_eq!(bones.len(), 1);
    let ends = bones[0]["endpoints"].as_array().unwrap();
    assert_eq!(ends.len(), 2);
    for e in ends {
        assert!(e[1].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn quad_profile() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["quad-profile", "--grid", "101"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    assert_eq!(rows.len(), 101);
    assert!((rows[100].1 - 2.0).abs() < 1e-9);
    for &(v, s) in &rows {
        if v < 0.25 {
            assert!((s - 1.0).abs() < 1e-6, "v = {v}: {s}");
        }
    }
    for w in rows.windows(2) {
        assert!(w[1].1 + 0.01 >= w[0].1);
    }
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn outputs_are_identical_across_worker_counts() {
    let runs: [&[&str]; 3] = [
        &["scan", "--family", "saw", "--m", "32", "--out", "g.csv", "--pgm", "g.pgm", "--ds", "0.1", "--svg", "s.svg"],
        &["contour", "--grid", "g.csv", "--ds", "0.1", "--svg", "c.svg", "--json", "c.json"],
        &["skeleton", "--family", "saw", "--n", "3", "--json", "k.json", "--svg", "k.svg"],
    ];
    let mut results = Vec::new();
    for workers in ["1", "3"] {
        let dir = tempfile::tempdir().unwrap();
        for args in runs {
            let o = bimodal(dir.path(), args, workers);
            assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        }
        results.push(files(dir.path()));
    }
    assert_eq!(results[0].len(), 7);
    assert_eq!(results[0], results[1]);
}

#[test]
fn seed_config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(d, &["--emit-config", "cfg.txt", "scan", "--family", "saw", "--m", "16", "--out", "a.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let cfg = std::fs::read_to_string(d.join("cfg.txt")).unwrap();
    assert!(cfg.contains("command=scan"));
    std::fs::write(d.join("cfg.txt"), cfg.replace("out=a.csv", "out=b.csv")).unwrap();
    let o = run(d, &["--seed-config", "cfg.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(d.join("a.csv")).unwrap(), std::fs::read(d.join("b.csv")).unwrap());

    for args in [
        &["--emit-config", "e.txt", "entropy", "--family", "saw", "--w", "0.8,0.1"][..],
        &["--emit-config", "k.txt", "bone", "--family", "saw", "--period", "3"][..],
        &["--emit-config", "q.txt", "quad-profile", "--grid", "11"][..],
    ] {
        let first = run(d, args);
        assert_eq!(first.status.code(), Some(0));
        let again = run(d, &["--seed-config", args[1]]);
        assert_eq!(again.status.code(), Some(0));
        assert_eq!(first.stdout, again.stdout, "{args:?}");
    }
}

#[test]
fn help_formats_documents_coordinates() {
    let o = run(Path::new("."), &["--help-formats"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("lower left"));
    assert!(text.contains("PGM") || text.contains("P2"));
}
