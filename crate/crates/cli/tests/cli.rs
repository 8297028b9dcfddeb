use std::process::{Command, Output};

fn dcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcc")).args(args).output().expect("dcc runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exit_codes() {
    assert_eq!(dcc(&["factor", "--q", "2", "--n", "7"]).status.code(), Some(0));
    // gcd(n, q) != 1
    assert_eq!(dcc(&["oracle", "--q", "2", "--n", "4"]).status.code(), Some(2));
    assert_eq!(dcc(&["factor", "--q", "6", "--n", "5"]).status.code(), Some(2));
    assert_eq!(dcc(&["build", "--q", "2", "--n", "7", "--lambda", "x"]).status.code(), Some(2));
    assert_eq!(dcc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dcc(&["build", "--q", "2"]).status.code(), Some(2));
    assert_eq!(dcc(&["oracle", "--q", "2", "--n", "11"]).status.code(), Some(3));
    assert_eq!(
        dcc(&["lift", "--ring", "Z8", "--ring-prime", "Z4", "--n", "7", "--max-tries", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(dcc(&["lift", "--ring", "Z4", "--ring-prime", "Z8", "--n", "7"]).status.code(), Some(2));
    assert_eq!(dcc(&["lift", "--ring", "Z8", "--ring-prime", "Z4", "--lambda", "2", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn factor_and_search_output() {
    let f = json(&dcc(&["factor", "--q", "2", "--n", "7"]));
    assert_eq!(f["degrees"], serde_json::json!([1, 3, 3]));
    assert_eq!(f["mu"], 3);
    let s = json(&dcc(&["search-n", "--q", "2", "--n-max", "10"]));
    let ns: Vec<u64> = s["lengths"].as_array().unwrap().iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![3, 5, 7]);
    // t = 2 over GF(3) removes even lengths
    let s = json(&dcc(&["search-n", "--q", "3", "--lambda", "[2]", "--n-max", "12"]));
    assert_eq!(s["t"], 2);
    assert!(s["lengths"].as_array().unwrap().iter().all(|r| r["n"].as_u64().unwrap() % 2 == 1));
}

#[test]
fn oracle_reports_all_pass() {
    let o = json(&dcc(&["oracle", "--q", "2", "--n", "3"]));
    assert_eq!(o["all_pass"], true);
    assert_eq!(o["reports"][0]["pairs"], 16);
    let single = json(&dcc(&["oracle", "--q", "2", "--n", "3", "--alpha", "2", "--delta", "0.3"]));
    assert_eq!(single["pairs"], 16);
}

#[test]
fn mc_writes_csv_and_summary() {
    let dir = std::env::temp_dir().join(format!("dcc-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("runs.csv");
    let out = dcc(&["mc", "--q", "2", "--n", "7", "--alpha-prime", "2", "--trials", "50", "--delta", "0.05,0.1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("seed,n,alpha,alpha_prime,lambda,dim,min_wt,exact,delta_threshold,is_full_dim"));
    assert_eq!(lines.count(), 50);
    let summary: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.join("runs.csv.summary.json")).unwrap()).unwrap();
    let s = summary.as_array().unwrap();
    assert_eq!(s.len(), 2);
    for key in ["n", "delta", "pr_delta_gt", "pr_full_dim", "bound_EY", "bound_fulldim", "trials"] {
        assert!(s[0].get(key).is_some(), "{key}");
    }
    std::fs::remove_dir_all(&dir).ok();

    let empty = dcc(&["mc", "--q", "2", "--n", "7", "--trials", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());
}

#[test]
fn lift_over_polynomial_chain_ring() {
    let l = json(&dcc(&["lift", "--ring", "F2[u]/u^3", "--ring-prime", "F2[u]/u^2", "--lambda", "[[1],[1],[0]]", "--n", "7", "--alpha-prime", "2"]));
    assert_eq!(l["delta_rescale_check"], true);
    assert_eq!(l["rate_check"], true);
    assert_eq!(l["rr_closed"], true);
    assert_eq!(l["length"], 7 * 2 * 2 + 7 * 3);
}
