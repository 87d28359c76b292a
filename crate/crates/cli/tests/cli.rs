use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn kkpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kkpoly")).args(args).output().expect("spawn kkpoly")
}

fn kkpoly_workers(workers: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kkpoly"))
        .env("KKPOLY_WORKERS", workers)
        .args(args)
        .output()
        .expect("spawn kkpoly")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kk_a2_longest_element() {
    let o = kkpoly(&["kk", "--type", "A2", "1 2 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "c_w = -1 / (x1)*(x2)*(x1 + x2)\nd_w = 1\n");
}

#[test]
fn kk_empty_word_is_product_of_roots() {
    let o = kkpoly(&["kk", "--type", "A2", "--factored", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("d_w = (x1)*(x2)*(x1 + x2)\n"));
    let o = kkpoly(&["kk", "--type", "A2"]);
    assert!(stdout(&o).ends_with("d_w = x1^2*x2 + x1*x2^2\n"));
}

#[test]
fn kk_json_record() {
    let o = kkpoly(&["kk", "--type", "A3", "--format", "json", "1,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["system"], "A3");
    assert_eq!(v["length"], 3);
    assert_eq!(v["word"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["c_den"].as_array().unwrap().len(), 3);
}

#[test]
fn kk_non_reduced_word() {
    let o = kkpoly(&["kk", "--type", "E6", "1 3 1 3 1 3 1"]);
    assert_eq!(o.status.code(), Some(65));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("[1, 3, 1, 3]"), "{err}");
}

#[test]
fn kk_budget() {
    let o = kkpoly(&["kk", "--type", "E6", "--budget", "50", "1 3 4 2 5 4 3 1"]);
    assert_eq!(o.status.code(), Some(69));
    assert!(String::from_utf8_lossy(&o.stderr).contains("term budget exceeded"));
}

#[test]
fn usage_errors() {
    for args in [
        &["gen-tables", "--type", "E6", "--order", ""][..],
        &["gen-tables", "--type", "E6", "--order", "standard"],
        &["gen-tables", "--type", "F4"],
        &["kk", "--type", "A2", "3"],
        &["frobnicate"],
        &["verify", "--type", "A2", "--max-len", "0"],
    ] {
        assert_eq!(kkpoly(args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(kkpoly(&["--help"]).status.code(), Some(0));
}

#[test]
fn e6_tables_have_sixteen_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = kkpoly(&["gen-tables", "--type", "E6", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["E6_natural.json", "E6_alt.json"] {
        let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        assert_eq!(rows.len(), 16, "{name}");
        for r in &rows {
            assert_eq!(r["eps"].as_array().unwrap().len(), 8);
            assert_eq!(r["b"].as_array().unwrap().len(), 6);
            assert_eq!(r["u_len"].as_u64().unwrap() as usize, r["u_word"].as_array().unwrap().len());
            assert_eq!(r["premise_ok"], true);
        }
    }
}

/// Positive roots of E7 as the closure of the simple roots under simple
/// reflections, Dynkin edges 1-3-4-5-6-7 and 2-4.
fn e7_positive_roots() -> BTreeSet<Vec<i64>> {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)];
    let mut cartan = [[0i64; 7]; 7];
    for i in 0..7 {
        cartan[i][i] = 2;
    }
    for (i, j) in edges {
        cartan[i][j] = -1;
        cartan[j][i] = -1;
    }
    let mut roots: BTreeSet<Vec<i64>> = (0..7).map(|i| (0..7).map(|j| (i == j) as i64).collect()).collect();
    let mut frontier: Vec<Vec<i64>> = roots.iter().cloned().collect();
    while let Some(r) = frontier.pop() {
        for i in 0..7 {
            let pairing: i64 = (0..7).map(|j| cartan[i][j] * r[j]).sum();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&c| c >= 0) && roots.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    roots
}

#[test]
fn e7_table_keys() {
    let o = kkpoly(&["gen-tables", "--type", "E7", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["eps", "b", "u_word", "u_len", "premise_ok"]);
    let keys: BTreeSet<String> = rdr.records().map(|r| r.unwrap()[1].to_string()).collect();
    let expected: BTreeSet<String> = e7_positive_roots()
        .into_iter()
        .filter(|r| r[6] != 0)
        .map(|r| r.iter().map(|d| d.to_string()).collect())
        .collect();
    assert_eq!(keys.len(), 27);
    assert_eq!(keys, expected);
}

#[test]
fn csv_mirrors_json() {
    let j = kkpoly(&["gen-tables", "--type", "E6", "--order", "alt", "--format", "json"]);
    let c = kkpoly(&["gen-tables", "--type", "E6", "--order", "alt", "--format", "csv"]);
    let rows: Vec<Value> = serde_json::from_slice(&j.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(c.stdout.as_slice());
    let recs: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), recs.len());
    for (r, rec) in rows.iter().zip(&recs) {
        let b: String = r["b"].as_array().unwrap().iter().map(|d| d.to_string()).collect();
        assert_eq!(b, rec[1]);
        let eps: Vec<&str> = r["eps"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
        assert_eq!(eps.join(" "), rec[0]);
    }
}

#[test]
fn deterministic_across_workers() {
    for args in [
        &["gen-tables", "--type", "E7"][..],
        &["good-pairs", "--type", "E6", "--max-len", "5", "--compute-len", "4"],
        &["verify", "--type", "A3"],
    ] {
        let a = kkpoly_workers("1", args);
        let b = kkpoly_workers("4", args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn good_pairs_and_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.json");
    let o = kkpoly(&["good-pairs", "--type", "E6", "--max-len", "3", "--compute-len", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let certs: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!certs.is_empty());
    assert!(certs.iter().all(|c| c["distinct"] == true));
    let o = kkpoly(&["good-pairs", "--type", "E6", "--recheck", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{0} certificates, {0} valid\n", certs.len()));
}

#[test]
fn recheck_rejects_tampered_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.json");
    kkpoly(&["good-pairs", "--type", "E6", "--max-len", "3", "--out", path.to_str().unwrap()]);
    let mut certs: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let b1 = certs[0]["beta1"].clone();
    certs[0]["beta1"] = certs[0]["beta2"].clone();
    certs[0]["beta2"] = b1;
    std::fs::write(&path, serde_json::to_string(&certs).unwrap()).unwrap();
    let o = kkpoly(&["good-pairs", "--type", "E6", "--recheck", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_a3() {
    let o = kkpoly(&["verify", "--type", "A3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("A3: 24 elements"));
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_e6_capped() {
    let o = kkpoly(&["verify", "--type", "E6", "--max-len", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_direct_sum() {
    let o = kkpoly(&["verify", "--type", "A2+A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS direct-sum-product"));
}

#[test]
fn missing_recheck_file_is_io_error() {
    let o = kkpoly(&["good-pairs", "--type", "E6", "--recheck", "/nonexistent/pairs.json"]);
    assert_eq!(o.status.code(), Some(1));
}
