use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gabor-zak")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// `(x, omega, |Z|)` rows of a surface CSV.
fn rows(csv: &str) -> Vec<(f64, f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
            (f[0], f[1], f[4])
        })
        .collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn surface_of_h2_vanishes_at_origin() {
    let csv = stdout(&["zak-surface", "--hermite", "2", "--n", "64"]);
    assert_eq!(csv.lines().next().unwrap(), "x,omega,re,im,abs");
    let r = rows(&csv);
    assert_eq!(r.len(), 64 * 64);
    let min = r.iter().copied().fold((0.0, 0.0, f64::INFINITY), |a, b| if b.2 < a.2 { b } else { a });
    assert!(min.2 < 1e-12);
    assert!((min.0, min.1) == (0.0, 0.0) || (min.0, min.1) == (0.5, 0.5));
}

#[test]
fn surface_of_dilated_h2_is_small_near_its_zeros() {
    let csv = stdout(&["zak-surface", "--hermite", "2", "--dilate", "0.7071067811865476", "--n", "64"]);
    let r = rows(&csv);
    for (x, w) in [(0.25, 0.5), (0.5, 0.5), (0.75, 0.5)] {
        let at = r.iter().find(|p| p.0 == x && p.1 == w).unwrap();
        assert!(at.2 < 1e-12, "({x}, {w}): {}", at.2);
    }
}

#[test]
fn surface_files_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = run(&["zak-surface", "--hermite", "1", "--n", "8", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 65);
    assert!(!text.contains('\r'));
    let meta = json(&csv.with_extension("json"));
    assert_eq!(meta["resolution"], 8);
}

#[test]
fn surface_output_is_deterministic() {
    let args = ["zak-surface", "--hermite", "3", "--chirp", "0.4", "--shift", "0.2,-0.1", "--n", "32"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn gaussian_on_integer_lattice_is_not_a_frame() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["frame-bounds", "--hermite", "0", "--set", "Z2", "--n", "128", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "NotFrame");
    let r = json(&path);
    assert_eq!(r["verdict"], "NotFrame");
    assert!(r["A_est"].as_f64().unwrap() < 1e-20);
    let z = &r["zeros"][0];
    assert_eq!((z["x"].as_f64().unwrap(), z["omega"].as_f64().unwrap()), (0.5, 0.5));
    assert_eq!(z["certified"], true);
}

#[test]
fn extra_coset_gives_a_frame() {
    let text = stdout(&["frame-bounds", "--hermite", "2", "--set", "Z2", "--extra-shift", "0.25,0.25"]);
    let r: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["verdict"], "LikelyFrame");
    assert!(r["A_est"].as_f64().unwrap() > 10.0 * r["slack"].as_f64().unwrap());
}

#[test]
fn find_zeros_of_h3() {
    let text = stdout(&["find-zeros", "--hermite", "3", "--n", "64"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let zeros = v["zeros"].as_array().unwrap();
    for (x, w) in [(0.0, 0.0), (0.5, 0.0), (0.0, 0.5)] {
        assert!(zeros.iter().any(|z| z["x"].as_f64() == Some(x) && z["omega"].as_f64() == Some(w)), "({x}, {w})");
    }
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "--suite", "zak", "--hermite", "3"][..],
        &["verify", "--suite", "theta"],
        &["verify", "--suite", "frft", "--hermite", "4", "--angle", "0.6"],
        &["verify", "--suite", "intertwining", "--hermite", "1", "--points", "8"],
    ] {
        let text = stdout(args);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], true, "{args:?}");
    }
}

#[test]
fn frft_apply_rotates_hermite_phase() {
    let csv = stdout(&["frft-apply", "--hermite", "1", "--angle", "1.5707963267948966", "--method", "hermite"]);
    assert_eq!(csv.lines().next().unwrap(), "t,re,im,abs");
    // F h_1 = -i h_1
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for l in csv.lines().skip(1) {
        let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
        re = re.max(f[1].abs());
        im = im.max(f[2].abs());
    }
    assert!(re < 1e-9 && im > 0.5);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(run(&["zak-surface", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["zak-surface", "--n", "many"]).status.code(), Some(2));
    let set = r#"{"generator": [[1.3, 0], [0, 1]]}"#;
    assert_eq!(run(&["frame-bounds", "--hermite", "0", "--set-json", set, "--n", "64"]).status.code(), Some(4));
    let strict = run(&["verify", "--suite", "zak", "--hermite", "3", "--tolerance", "1e-30"]);
    assert_eq!(strict.status.code(), Some(5));
    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(run(&["zak-surface", "--n", "8", "--out", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"window": {"hermite": 5, "chain": []}, "n": 16}"#).unwrap();
    let from_file = stdout(&["zak-surface", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file, stdout(&["zak-surface", "--hermite", "5", "--n", "16"]));
    let overridden = stdout(&["zak-surface", "--config", cfg.to_str().unwrap(), "--hermite", "1"]);
    assert_eq!(overridden, stdout(&["zak-surface", "--hermite", "1", "--n", "16"]));
}
