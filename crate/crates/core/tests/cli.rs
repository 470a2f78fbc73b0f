use std::path::{Path, PathBuf};

use relcent::cli::{run, EXIT_COMPUTE, EXIT_INPUT, EXIT_OK};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn relcent(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("relcent").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn ring4(dir: &TempDir) -> (String, String) {
    (
        write(dir, "ring.csv", "source,target\nA,B\nB,C\nC,D\nD,A\n"),
        write(dir, "ring.relevance.csv", "vertex,relevance\nA,2\nB,1\nC,1\nD,1\n"),
    )
}

fn csv_values(text: &str, metric: &str) -> Vec<(String, f64)> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|c| c[2] == metric)
        .map(|c| (c[1].to_owned(), c[3].parse().unwrap()))
        .collect()
}

#[test]
fn compute_ring_product() {
    let dir = TempDir::new().unwrap();
    let (edges, rel) = ring4(&dir);
    let out = path(&dir, "out.csv");
    let r = relcent(&["compute", &edges, &rel, "--format", "csv", "--out", &out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "element,id,metric,value,rank");
    let get = |m| csv_values(&text, m).into_iter().map(|(_, v)| v).collect::<Vec<_>>();
    assert_eq!(get("degree"), [4.0, 3.0, 2.0, 3.0]);
    assert_eq!(get("betweenness"), [1.0, 2.0, 1.0, 2.0]);
    assert_eq!(get("edge-betweenness"), [7.0, 5.0, 5.0, 7.0]);
    assert!(r.stdout.contains("# betweenness (f=product)\n1\tB\t2\n2\tD\t2\n"));
}

#[test]
fn compute_without_relevance_is_classic() {
    let dir = TempDir::new().unwrap();
    let (edges, _) = ring4(&dir);
    let out = path(&dir, "out.json");
    let r = relcent(&["compute", &edges, "--metric", "betweenness", "--out", &out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["metadata"]["function"], "classic");
    assert_eq!(doc["metadata"]["relevance"], "unit");
    for v in doc["vertices"].as_array().unwrap() {
        assert_eq!(v["betweenness"], 1.0);
    }
}

#[test]
fn metric_all_is_union_of_single_metrics() {
    let dir = TempDir::new().unwrap();
    let edges = write(
        &dir,
        "w.csv",
        "source,target,weight\nA,B,0.5\nB,C,1\nC,D,1\nD,A,1\nC,E,2\n",
    );
    let rel = write(&dir, "w.rel.csv", "vertex,relevance\nA,2\nB,1\nC,3\nD,1\nE,1.5\n");
    let all = path(&dir, "all.csv");
    assert_eq!(relcent(&["compute", &edges, &rel, "--f", "mean", "--format", "csv", "--out", &all]).code, 0);
    let all = std::fs::read_to_string(all).unwrap();
    for m in ["degree", "harmonic", "betweenness", "edge-betweenness"] {
        let one = path(&dir, &format!("{m}.csv"));
        let r = relcent(&["compute", &edges, &rel, "--f", "mean", "--metric", m, "--format", "csv", "--out", &one]);
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
        let one = std::fs::read_to_string(one).unwrap();
        assert_eq!(csv_values(&one, m), csv_values(&all, m));
        assert!(!csv_values(&one, m).is_empty());
    }
}

#[test]
fn path_function_skips_degree_under_all() {
    let dir = TempDir::new().unwrap();
    let (edges, rel) = ring4(&dir);
    let r = relcent(&["compute", &edges, &rel, "--f", "path-prod"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stderr.contains("degree skipped"));
    assert!(!r.stdout.contains("# degree"));
    let r = relcent(&["compute", &edges, &rel, "--f", "path-prod", "--metric", "degree"]);
    assert_eq!(r.code, EXIT_INPUT);
}

#[test]
fn oracle_engine_agrees() {
    let dir = TempDir::new().unwrap();
    let (edges, rel) = ring4(&dir);
    let fast = path(&dir, "fast.csv");
    let slow = path(&dir, "slow.csv");
    for (engine, out) in [("fast", &fast), ("oracle", &slow)] {
        let r = relcent(&["compute", &edges, &rel, "--f", "path-sum", "--engine", engine, "--format", "csv", "--out", out]);
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    }
    assert_eq!(std::fs::read(fast).unwrap(), std::fs::read(slow).unwrap());
}

#[test]
fn matrix_function_from_file() {
    let dir = TempDir::new().unwrap();
    let (edges, _) = ring4(&dir);
    // rows and columns deliberately out of graph order
    let m = write(
        &dir,
        "f.csv",
        ",D,C,B,A\nD,0,1,1,1\nC,1,0,1,1\nB,1,1,0,1\nA,1,1,1,0\n",
    );
    let out = path(&dir, "m.csv");
    let sel = format!("matrix:{m}");
    let r = relcent(&["compute", &edges, "--f", &sel, "--metric", "betweenness", "--format", "csv", "--out", &out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let vals = csv_values(&std::fs::read_to_string(out).unwrap(), "betweenness");
    assert!(vals.iter().all(|(_, v)| *v == 1.0));

    let bad = write(&dir, "bad.csv", ",A,B,C,D\nA,1,1,1,1\nB,1,0,1,1\nC,1,1,0,1\nD,1,1,1,0\n");
    let sel = format!("matrix:{bad}");
    assert_eq!(relcent(&["compute", &edges, "--f", &sel]).code, EXIT_INPUT);
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let (edges, rel) = ring4(&dir);
    let out = path(&dir, "g.dot");
    assert_eq!(relcent(&["compute", &edges, &rel, "--format", "dot", "--out", &out]).code, 0);
    let dot = std::fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches(" -- ").count(), 4);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let (edges, rel) = ring4(&dir);
    let cases: Vec<(String, Vec<String>)> = vec![
        ("missing file".into(), vec!["compute".into(), path(&dir, "nope.csv")]),
        (
            "self loop".into(),
            vec!["compute".into(), write(&dir, "loop.csv", "source,target\nA,A\n")],
        ),
        (
            "negative weight".into(),
            vec!["compute".into(), write(&dir, "neg.csv", "source,target,weight\nA,B,-1\n")],
        ),
        (
            "unknown relevance vertex".into(),
            vec![
                "compute".into(),
                edges.clone(),
                write(&dir, "r.csv", "vertex,relevance\nA,1\nZ,2\n"),
            ],
        ),
        (
            "zero relevance".into(),
            vec![
                "compute".into(),
                edges.clone(),
                write(&dir, "r0.csv", "vertex,relevance\nA,0\n"),
            ],
        ),
        (
            "unknown function".into(),
            vec!["compute".into(), edges.clone(), rel.clone(), "--f".into(), "cube".into()],
        ),
        ("bad flag".into(), vec!["compute".into(), edges.clone(), "--metric".into(), "pagerank".into()]),
        ("odd degree".into(), vec!["generate".into(), "--kind".into(), "ring".into(), "--n".into(), "10".into(), "--d".into(), "3".into(), "--out-prefix".into(), path(&dir, "x")]),
    ];
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = relcent(&args);
        assert_eq!(r.code, EXIT_INPUT, "{name}: {}", r.stderr);
        assert!(!r.stderr.is_empty(), "{name}");
    }
}

#[test]
fn malformed_row_reports_line() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "m.csv", "source,target,weight\nA,B,1\nB,C,abc\n");
    let r = relcent(&["compute", &edges]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("m.csv:3:"), "{}", r.stderr);
}

#[test]
fn path_explosion_exits_3() {
    // 13-vertex chain of 4-cycles has 2^6 shortest end-to-end paths; the
    // oracle engine refuses graphs this large
    let dir = TempDir::new().unwrap();
    let mut text = String::from("source,target\n");
    for i in 0..6 {
        let (a, b, c, d) = (2 * i, 2 * i + 1, 2 * i + 101, 2 * i + 2);
        text += &format!("{a},{b}\n{b},{d}\n{a},{c}\n{c},{d}\n");
    }
    let edges = write(&dir, "chain.csv", &text);
    let r = relcent(&["compute", &edges, "--engine", "oracle", "--metric", "betweenness"]);
    assert_eq!(r.code, EXIT_COMPUTE, "{}", r.stderr);
    let r = relcent(&["compute", &edges, "--metric", "betweenness"]);
    assert_eq!(r.code, EXIT_OK);
}

#[test]
fn generate_ring_and_ws() {
    let dir = TempDir::new().unwrap();
    let prefix = path(&dir, "ring");
    let r = relcent(&["generate", "--kind", "ring", "--n", "20", "--d", "4", "--out-prefix", &prefix]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let edges = std::fs::read_to_string(format!("{prefix}.edges.csv")).unwrap();
    assert_eq!(edges.lines().count(), 1 + 40);
    // r defaults to 0: unit relevance
    let rel = std::fs::read_to_string(format!("{prefix}.relevance.csv")).unwrap();
    assert_eq!(rel.lines().skip(1).filter(|l| l.ends_with(",1")).count(), 20);

    let ws = |seed: &str, name: &str| {
        let prefix = path(&dir, name);
        let r = relcent(&["generate", "--kind", "ws", "--n", "100", "--p", "1", "--r", "0.1", "--seed", seed, "--out-prefix", &prefix]);
        assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
        (
            std::fs::read(format!("{prefix}.edges.csv")).unwrap(),
            std::fs::read_to_string(format!("{prefix}.relevance.csv")).unwrap(),
        )
    };
    let (a, ra) = ws("3", "a");
    let (b, rb) = ws("3", "b");
    let (c, _) = ws("4", "c");
    assert_eq!(a, b);
    assert_eq!(ra, rb);
    assert_ne!(a, c);
    assert_eq!(ra.lines().skip(1).filter(|l| !l.ends_with(",1")).count(), 10);
}

#[test]
fn generated_files_feed_compute() {
    let dir = TempDir::new().unwrap();
    let prefix = path(&dir, "g");
    assert_eq!(relcent(&["generate", "--kind", "ws", "--n", "60", "--d", "4", "--p", "0.2", "--r", "1", "--out-prefix", &prefix]).code, 0);
    let r = relcent(&[
        "compute",
        &format!("{prefix}.edges.csv"),
        &format!("{prefix}.relevance.csv"),
        "--metric",
        "harmonic",
        "--top",
        "3",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout.lines().count(), 4);
}

#[test]
fn experiment_with_unit_relevance_is_perfectly_correlated() {
    let dir = TempDir::new().unwrap();
    let grid = write(
        &dir,
        "grid.toml",
        "kinds = [\"random\"]\nsizes = [60]\ndegree = 4\nfractions = [0.0]\nfunctions = [\"product\", \"mean\", \"source\", \"max\", \"path-prod\"]\nseeds = [1, 2]\n",
    );
    let out = path(&dir, "exp.csv");
    let r = relcent(&["experiment", "--grid", &grid, "--out", &out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let text = std::fs::read_to_string(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "kind,n,p,r,f,metric,seed,pearson,spearman,pearson_R,spearman_R"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5 * 2 * 2);
    for row in rows {
        assert_eq!((row[7], row[8]), ("1", "1"), "{row:?}");
    }
}

#[test]
fn experiment_rejects_malformed_grid() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "exp.csv");
    for text in [
        "sizes = [100\n",
        "colour = \"red\"\n",
        "functions = [\"cube\"]\n",
        "metrics = [\"degree\"]\n",
        "fractions = [1.5]\n",
        "sizes = [8]\n",
    ] {
        let grid = write(&dir, "grid.toml", text);
        let r = relcent(&["experiment", "--grid", &grid, "--out", &out]);
        assert_eq!(r.code, EXIT_INPUT, "{text}: {}", r.stderr);
    }
    assert!(!Path::new(&out).exists());
}

#[test]
fn florence_marriages_match_reference_betweenness() {
    // unordered-pair values from networkx, doubled for ordered pairs
    let edges: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "florence", "marriages.csv"]
        .iter()
        .collect();
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "flo.csv");
    let r = relcent(&["compute", edges.to_str().unwrap(), "--format", "csv", "--out", &out]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let text = std::fs::read_to_string(out).unwrap();
    let b: std::collections::HashMap<_, _> = csv_values(&text, "betweenness").into_iter().collect();
    for (family, want) in [
        ("Medici", 95.0),
        ("Guadagni", 46.333333333333336),
        ("Albizzi", 38.666666666666664),
        ("Salviati", 26.0),
        ("Pazzi", 0.0),
    ] {
        assert!((b[family] - want).abs() < 1e-9, "{family}: {}", b[family]);
    }
    let eb: std::collections::HashMap<_, _> = csv_values(&text, "edge-betweenness").into_iter().collect();
    assert!((eb["Medici-Salviati"] - 52.0).abs() < 1e-9);
    let h: std::collections::HashMap<_, _> = csv_values(&text, "harmonic").into_iter().collect();
    assert!((h["Medici"] - 9.5).abs() < 1e-9);
}
