use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const F_STAR: &str = r#"{"r":3,"vertices":["a1","a2","a3","a4","b1","b2","c1","c2"],
"edges":[["a1","a2","a3"],["a1","b1","c1"],["a2","b2","c2"],["a4","b1","c2"],["a4","b2","c1"]]}"#;
const K4: &str = r#"{"r":3,"vertices":["1","2","3","4"],"edges":[["1","2","3"],["1","2","4"],["1","3","4"],["2","3","4"]]}"#;
const EDGE: &str = r#"{"r":3,"vertices":["a","b","c"],"edges":[["a","b","c"]]}"#;
const G_SMALL: &str = r#"{"r":3,"vertices":["a1","a2","a3","b1","b2","c1","c2"],
"edges":[["a1","a2","a3"],["a1","b1","c1"],["a2","b2","c2"]]}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_unifoliate"));
    c.env_remove("UNIFOLIATE_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn complete(n: usize) -> String {
    let names: Vec<String> = (1..=n).map(|i| format!("\"{i}\"")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                edges.push(format!("[{},{},{}]", names[a], names[b], names[c]));
            }
        }
    }
    format!(r#"{{"r":3,"vertices":[{}],"edges":[{}]}}"#, names.join(","), edges.join(","))
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn classify_examples() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", F_STAR);
    let cert = json(&run(&["classify", s(&f)]));
    assert_eq!(cert["class"], "UnifoliateOnly");
    let v = &cert["violation"];
    let a = ["a1", "a2", "a3"];
    assert!(a.contains(&v["x"].as_str().unwrap()) && a.contains(&v["y"].as_str().unwrap()));

    let k4 = write(&dir, "k4.json", K4);
    assert_eq!(json(&run(&["classify", s(&k4)]))["class"], "NotUnifoliate");
    let e = write(&dir, "e.json", EDGE);
    assert_eq!(json(&run(&["classify", s(&e)]))["class"], "StrongUnifoliate");
}

#[test]
fn certificates_reverify() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("f", F_STAR), ("k4", K4), ("e", EDGE)] {
        let f = write(&dir, &format!("{name}.json"), text);
        let cert = dir.path().join(format!("{name}.cert.json"));
        assert!(run(&["classify", s(&f), "--out", s(&cert)]).status.success());
        let o = run(&["check", "certificate", "--f", s(&f), "--cert", s(&cert)]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), "ok");
    }
    // a certificate for another hypergraph is rejected
    let f = write(&dir, "f.json", F_STAR);
    let e = write(&dir, "e.json", EDGE);
    let wrong = dir.path().join("wrong.json");
    fs::write(&wrong, stdout(&run(&["classify", s(&f)]))).unwrap();
    let o = run(&["check", "certificate", "--f", s(&e), "--cert", s(&wrong)]);
    assert!(!o.status.success());
}

#[test]
fn construct_degrees_and_determinism() {
    let dir = TempDir::new().unwrap();
    let out = |tag: &str| {
        let g = dir.path().join(format!("g{tag}.json"));
        let rep = dir.path().join(format!("r{tag}.csv"));
        let deg = dir.path().join(format!("d{tag}.csv"));
        let o = run(&[
            "construct", "g", "--r", "3", "--n", "30", "--mode", "relaxed", "--seed", "5",
            "--out", s(&g), "--report", s(&rep), "--degrees", s(&deg),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (fs::read(&g).unwrap(), fs::read(&rep).unwrap(), fs::read(&deg).unwrap(), g)
    };
    let (g1, r1, d1, path) = out("1");
    let (g2, r2, d2, _) = out("2");
    assert_eq!((&g1, &r1, &d1), (&g2, &r2, &d2));

    let mut rdr = csv::Reader::from_reader(d1.as_slice());
    let mut d_rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        if &rec[1] == "D" {
            d_rows += 1;
            assert_eq!(&rec[2], "100");
        }
    }
    assert_eq!(d_rows, 10);

    let o = run(&["check", "construction", s(&path)]);
    assert_eq!(stdout(&o).trim(), "ok");
    // the file parses back and re-serializes identically
    let g = unifoliate::construct::LayeredHypergraph::from_json(std::str::from_utf8(&g1).unwrap()).unwrap();
    assert_eq!(format!("{}\n", g.to_json()).into_bytes(), g1);
    let o = run(&["report", s(&path)]);
    assert_eq!(o.stdout, r1);
}

#[test]
fn zero_sparsening_flags_edgeless_a_layer() {
    let o = bin()
        .args(["construct", "g", "--r", "3", "--n", "9", "--sparsen-p", "0"])
        .args(["--out", "/dev/null", "--report", "/dev/stdout"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("flag,a_layer_edgeless,true"), "{text}");
    assert!(text.contains("edges,inside_a,0"));
}

#[test]
fn strict_mode_reports_infeasibility() {
    let dir = TempDir::new().unwrap();
    // f = |E(F)| = 10 edges is beyond the feasible theta grid
    let f = write(&dir, "k5.json", &complete(5));
    let o = run(&["construct", "g", "--r", "3", "--n", "9", "--mode", "strict", "--f-file", s(&f)]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("relaxed"));
}

#[test]
fn input_and_budget_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"r":3,"vertices":["x"],"edges":[["x","y","z"]]}"#);
    assert_eq!(run(&["classify", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["lemma", "no-such-lemma"]).status.code(), Some(2));
    let f = write(&dir, "f.json", F_STAR);
    let o = bin().env("UNIFOLIATE_BUDGET", "3").args(["classify", s(&f)]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().env("UNIFOLIATE_BUDGET", "many").args(["classify", s(&f)]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

fn summary(text: &str, column: &str) -> f64 {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let idx = rdr.headers().unwrap().iter().position(|h| h == column).unwrap();
    let last = rdr.records().last().unwrap().unwrap();
    assert_eq!(&last[0], "summary");
    last[idx].parse().unwrap()
}

#[test]
fn lemma_near_or_far() {
    let o = run(&["lemma", "near-or-far", "--trials", "100000", "--d", "5", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 100_000 + 2);
    assert_eq!(summary(&text, "pass_fraction"), 1.0);
}

#[test]
fn lemma_cap_hemisphere() {
    let o = run(&["lemma", "cap", "--radius", "sqrt2", "--samples", "200000"]);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let row = rdr.records().next().unwrap().unwrap();
    let est: f64 = row[4].parse().unwrap();
    assert!((est - 0.5).abs() <= 0.01, "{est}");
}

#[test]
fn lemma_theta_chain() {
    let o = run(&["lemma", "theta-chain", "--f", "3", "--theta", "0.001"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 4 + 1);
    for line in text.lines().skip(1).take(4) {
        assert!(line.contains(",true,"), "{line}");
    }
    assert_eq!(summary(&text, "pass_fraction"), 1.0);
}

#[test]
fn color_or_embed_round_trips_through_check() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", G_SMALL);
    let w = write(&dir, "w.json", r#"{"parts":[["a1","a2","a3"],["b1","b2"],["c1","c2"]]}"#);
    let hosts = [
        ("k9", complete(9), Some("embedding")),
        ("k5", complete(5), Some("coloring")),
        ("f", F_STAR.to_string(), None),
    ];
    for (name, host, want) in hosts {
        let h = write(&dir, &format!("{name}.json"), &host);
        let res = dir.path().join(format!("{name}.res.json"));
        let o = run(&["color-or-embed", "--h", s(&h), "--g", s(&g), "--witness", s(&w), "--part-size-cap", "1", "--out", s(&res)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&res).unwrap()).unwrap();
        if let Some(want) = want {
            assert!(v.get(want).is_some(), "{name}: {v}");
        }
        let o = run(&["check", "result", "--h", s(&h), "--g", s(&g), "--result", s(&res)]);
        assert_eq!(stdout(&o).trim(), "ok", "{name}");
    }
    // a tampered colouring is caught
    let h = write(&dir, "k5.json", &complete(5));
    let tampered = write(
        &dir,
        "bad.res.json",
        r#"{"coloring":{"1":1,"2":1,"3":1,"4":2,"5":2},"colors":2}"#,
    );
    let o = run(&["check", "result", "--h", s(&h), "--g", s(&g), "--result", s(&tampered)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bundle_dim_on_complete_host() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "k9.json", &complete(9));
    let t = write(&dir, "t.json", EDGE);
    let v = json(&run(&["bundle", "dim", "--h", s(&h), "--t-file", s(&t), "--part-size", "2", "--t", "2"]));
    assert_eq!(v["base_edges"], 84);
    assert_eq!(v["matching"].as_array().unwrap().len(), 2);
    let v = json(&run(&["bundle", "dim", "--h", s(&h), "--t-file", s(&t), "--part-size", "2", "--t", "4"]));
    assert!(v["matching"].is_null());
}
