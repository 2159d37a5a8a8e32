use std::process::{Command, Output};

fn hermitian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermitian"))
        .args(args)
        .env_remove("HERMITIAN_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn surface_t3() {
    let o = hermitian(&["surface", "--t", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("points 280"), "{out}");
    assert!(out.contains("tangent planes 280"), "{out}");
    assert!(out.contains("generators 112"), "{out}");
}

#[test]
fn weights_csv_has_even_weights_only() {
    let o = hermitian(&["weights", "--t", "2", "--output-format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("weight,codeword_count,projective_count"));
    let rows: Vec<(usize, u64, u64)> = lines
        .map(|l| {
            let v: Vec<u64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (v[0] as usize, v[1], v[2])
        })
        .collect();
    assert!(!rows.is_empty() && rows.len() <= 45);
    assert!(rows.iter().all(|&(w, c, p)| w % 2 == 0 && c > 0 && c == 3 * p));
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 4u64.pow(10) - 1);
}

#[test]
fn census_json_schema() {
    let o = hermitian(&["census", "--t", "2", "--output-format", "json", "--shards", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field"]["t"], 2);
    assert_eq!(v["field"]["q"], 4);
    assert!(v["field"]["poly"].is_string());
    assert_eq!(v["mode"], "exhaustive");
    assert_eq!(v["provenance"]["shards"], 2);
    assert!(v["provenance"]["seed"].is_u64());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    for key in ["type", "rank", "count", "min", "max", "histogram", "verdict"] {
        assert!(rows.iter().all(|r| !r[key].is_null()), "{key}");
    }
    assert_eq!(rows[0]["histogram"]["13"], 45);
}

/// The exhaustive run confirms the weight and family counts but reports
/// cones with one generator of X meeting it in 11 points, below the table's
/// exact value 13, so the exit status is 1 with that witness.
#[test]
fn verify_t2() {
    let o = hermitian(&["verify", "--t", "2"]);
    let out = stdout(&o);
    assert!(out.contains("counts[24] = 2970"), "{out}");
    assert!(out.contains("counts[26] = 4320"), "{out}");
    assert!(out.contains("constructed 2970, formula 2970"), "{out}");
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(fails.iter().all(|l| l.starts_with("FAIL type 10")), "{fails:?}");
    assert_eq!(o.status.code(), Some(if fails.is_empty() { 0 } else { 1 }));
    assert!(out.contains("witness x0^2 + x1x3 + x2^2 + x3^2 has |Q ∩ X| = 11"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["census", "--t", "3", "--mode", "exhaustive"][..],
        &["census", "--t", "3", "--mode", "sample", "--sample-size", "0"],
        &["conjecture", "--t", "3"],
        &["families", "--output-format", "csv"],
    ] {
        let o = hermitian(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("usage error"));
    }
    assert_eq!(hermitian(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_dir_from_environment() {
    let dir = std::env::temp_dir().join(format!("hermitian-cli-{}", std::process::id()));
    let o = Command::new(env!("CARGO_BIN_EXE_hermitian"))
        .args(["surface", "--t", "2", "--output-format", "json", "--output", "s.json"])
        .env("HERMITIAN_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("s.json")).unwrap()).unwrap();
    assert_eq!(v["points"], 45);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sampled_census_is_reproducible_and_seeded() {
    let args = ["census", "--t", "3", "--mode", "sample", "--sample-size", "3000", "--output-format", "json"];
    let a = hermitian(&args);
    let b = hermitian(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut other = args.to_vec();
    other.extend(["--seed", "7"]);
    let c = hermitian(&other);
    assert_ne!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["provenance"]["seed"], 7);
    assert_eq!(v["provenance"]["samples"], 3000);
}
