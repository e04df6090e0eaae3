use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn knowtherm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knowtherm")).args(args).output().unwrap()
}

fn write_topic(path: &Path) {
    let mut nodes = vec![r#"{"id": "p", "year": 2000, "pioneer": true}"#.to_string()];
    let mut edges = Vec::new();
    for i in 0..12 {
        nodes.push(format!(r#"{{"id": "c{i}", "year": {}}}"#, 2001 + i / 3));
        edges.push(format!(r#"{{"citer": "c{i}", "cited": "p"}}"#));
        if i >= 2 {
            edges.push(format!(r#"{{"citer": "c{i}", "cited": "c{}"}}"#, i / 2));
        }
    }
    let doc = format!(r#"{{"nodes": [{}], "edges": [{}]}}"#, nodes.join(","), edges.join(","));
    fs::write(path, doc).unwrap();
}

#[test]
fn validate_reports_summary() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.json");
    write_topic(&input);
    let out = knowtherm(&["ingest-validate", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("papers: 13"), "{text}");
    assert!(text.contains("pioneer: p (2000)"), "{text}");
}

#[test]
fn invalid_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.jsonl");
    fs::write(&input, "{\"id\": \"p\", \"year\": 2000, \"pioneer\": true}\n{\"citer\": \"x\", \"cited\": \"p\"}\n").unwrap();
    let out = knowtherm(&["ingest-validate", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = knowtherm(&["all", "--input", input.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn temperature_writes_only_the_series() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.json");
    write_topic(&input);
    let out_dir = dir.path().join("out");
    let out = knowtherm(&[
        "temperature",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--topic",
        "demo",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out_dir.join("demo/series.csv").exists());
    assert!(out_dir.join("metadata.json").exists());
    assert!(!out_dir.join("demo/tree_2004.dot").exists());
}

#[test]
fn config_run_with_groups() {
    let dir = tempfile::tempdir().unwrap();
    write_topic(&dir.path().join("a.json"));
    write_topic(&dir.path().join("b.json"));
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "output_dir = \"results\"\n\
         [snapshots]\nstride = 2\n\
         [[topics]]\nname = \"a\"\npath = \"a.json\"\n\
         [[topics]]\nname = \"b\"\npath = \"b.json\"\n\
         [[groups]]\nname = \"ab\"\ntopics = [\"a\", \"b\"]\n",
    )
    .unwrap();
    let out = knowtherm(&["all", "--config", cfg.to_str().unwrap(), "--sequential"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let results = dir.path().join("results");
    for f in ["a/series.csv", "b/tree_2004.dot", "b/tree_2004.json", "a/heat_2001.json", "groups/ab.csv"] {
        assert!(results.join(f).exists(), "{f}");
    }
    let series = fs::read_to_string(results.join("a/series.csv")).unwrap();
    let years: Vec<&str> = series.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(years, ["2001", "2003", "2004"]);
}

#[test]
fn bad_config_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "[[topics]]\nname = \"a\"\npath = \"a.json\"\n[constants]\nc = -1.0\n").unwrap();
    let out = knowtherm(&["tree", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = knowtherm(&["tree", "--config", cfg.to_str().unwrap(), "--years", "20x0"]);
    assert_eq!(out.status.code(), Some(1));
}
