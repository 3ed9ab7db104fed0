mod common;

use std::fs;

use common::{dtnlab, dtnlab_in, f, floats, x3_bump_commutator};

#[test]
fn ball_check_example() {
    let run = dtnlab(&["ball-check", "--n", "3", "--K", "20"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let j = run.json();
    assert_eq!(j["schema"], 1);
    assert_eq!(j["command"], "ball-check");
    assert_eq!(j["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(j["config"]["command"]["K"], 20);
    assert_eq!(j["pass"], true);
    assert!(f(&j["data"]["residual"]) <= 1e-12);
    let degrees = floats(&j["data"]["degree_values"]);
    assert_eq!(degrees.len(), 21);
    assert!(degrees
        .iter()
        .enumerate()
        .all(|(k, v)| (v - k as f64).abs() < 1e-12));
}

#[test]
fn radial_commutator_example() {
    let run = dtnlab(&[
        "commutator",
        "--q",
        "radial:well:1,2",
        "--n",
        "3",
        "--K",
        "6",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(f(&run.data()["h1_l2_norm"]) <= 1e-8);
}

#[test]
fn x3_bump_commutator_example() {
    let run = dtnlab(&["commutator", "--q", "monomial:0,0,1 x bump:0.5,0.2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let d = run.data();
    let (norm, entry) = x3_bump_commutator(6, 0.5, 0.2);
    assert!(
        (f(&d["h1_l2_norm"]) - norm).abs() <= 1e-6,
        "{} vs {norm}",
        d["h1_l2_norm"]
    );
    // Y₁₀ sits at position 2 and Y₀₀ at 0.
    assert_eq!(d["basis"][2], serde_json::json!([1, 0]));
    assert!((f(&d["C"][2][0]) - entry).abs() <= 1e-6);
    assert!(f(&d["radial_deficit"]) > 1e-3);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["commutator", "--bad-flag"][..],
        &["ball-check", "--K", "many"],
        &["no-such-study"],
        &["commutator", "--q", "bogus"],
        &["radial-dtn", "--q", "well:1"],
        &["surface", "--surface", "torus:1,2"],
        &["gohberg", "--symbol", "branch+:x=1"],
        &["gohberg", "--xi0", "sideways"],
        &["ball-check", "--n", "1"],
        &["surface", "--csv"],
    ] {
        let run = dtnlab(args);
        assert_eq!(run.code, 2, "{args:?}: {}", run.stderr);
        assert!(run.stdout.is_empty());
    }
}

#[test]
fn contract_violation_exits_1_with_diagnostic() {
    // Six radial nodes cannot resolve the bump.
    let run = dtnlab(&[
        "commutator",
        "--q",
        "monomial:0,0,1 x bump:0.7,0.4",
        "--K",
        "3",
        "--radial-points",
        "6",
    ]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("refinement_shift"), "{}", run.stderr);
    let j = run.json();
    assert_eq!(j["pass"], false);
    let failed: Vec<_> = j["contracts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "refinement_shift");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "radial-projection",
        "--q",
        "monomial:0,0,1",
        "--runs",
        "2",
        "--rotations",
        "50",
        "--seed",
        "7",
    ];
    let a = dtnlab(&args);
    let b = dtnlab(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let c = dtnlab(&[
        "radial-projection",
        "--q",
        "monomial:0,0,1",
        "--runs",
        "2",
        "--rotations",
        "50",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn env_out_dir_receives_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = dtnlab_in(
        &[
            "radial-dtn",
            "--q",
            "const:1",
            "--K",
            "4",
            "--csv",
            "--quiet",
        ],
        Some(dir.path()),
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.is_empty());
    let json = fs::read_to_string(dir.path().join("radial-dtn.json")).unwrap();
    let j: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(j["config"]["output"]["csv"], true);
    let mut rdr = csv::Reader::from_path(dir.path().join("radial-dtn_symbol.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["k", "lambda", "mu"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    let mu0: f64 = rows[0][2].parse().unwrap();
    assert!((mu0 - (1.0 / 1f64.tanh() - 1.0)).abs() < 1e-9);
}

#[test]
fn flag_out_dir_overrides_env_and_writes_obj() {
    let env_dir = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let run = dtnlab_in(
        &[
            "surface",
            "--surface",
            "ellipsoid:1,0.5",
            "--mesh-resolution",
            "24",
            "--obj",
            "--csv",
            "--out-dir",
            out,
        ],
        Some(env_dir.path()),
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(fs::read_dir(env_dir.path()).unwrap().next().is_none());
    let obj = fs::read_to_string(dir.path().join("surface.obj")).unwrap();
    let verts = obj.lines().filter(|l| l.starts_with("v ")).count();
    let faces: Vec<Vec<usize>> = obj
        .lines()
        .filter_map(|l| l.strip_prefix("f "))
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert!(verts > 0 && !faces.is_empty());
    assert!(faces.iter().flatten().all(|&i| i >= 1 && i <= verts));
    // Closed triangulated sphere: V - E + F = 2 with E = 3F/2.
    assert_eq!(2 * verts, faces.len() + 4);
    let csv = fs::read_to_string(dir.path().join("surface_curvature.csv")).unwrap();
    assert!(csv.starts_with("s,x,rho,k_mu,k_pi,H,K,"));
}

#[test]
fn tablefile_potential_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.csv");
    let mut body = String::from("# constant profile\nr,value\n");
    for i in 0..=10 {
        body.push_str(&format!("{}, 1.0\n", i as f64 / 10.0));
    }
    fs::write(&path, body).unwrap();
    let spec = format!("tablefile:{}", path.display());
    let run = dtnlab(&["radial-dtn", "--q", &spec, "--K", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let mu = floats(&run.data()["mu"]);
    assert!((mu[0] - (1.0 / 1f64.tanh() - 1.0)).abs() < 1e-9, "{mu:?}");

    let missing = dtnlab(&["radial-dtn", "--q", "tablefile:/nonexistent/q.csv"]);
    assert_eq!(missing.code, 2, "{}", missing.stderr);
    fs::write(&path, "r,value\n0,1\nx,2\n").unwrap();
    let bad = dtnlab(&["radial-dtn", "--q", &spec]);
    assert_eq!(bad.code, 2, "{}", bad.stderr);
}
