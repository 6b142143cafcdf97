use std::path::Path;
use std::process::{Command, Output};

use gftkit::radii::{FormulaId, RadiusResult};

fn gftkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gftkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const HALF_PLANE_2: &str = r#"{"id": "hp", "fs": [{"catalog": "half_plane", "class": "convex"}], "gammas": [[2, 0]]}"#;

#[test]
fn radius_prints_json() {
    let o = gftkit(&["radius", "--formula", "thm21", "--alpha", "1", "--M", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(r#"{"radius":0.3333333333333333,"#), "{text}");
}

#[test]
fn radius_json_round_trips_for_every_formula() {
    for formula in FormulaId::ALL {
        for m in ["0", "0.3", "2.5"] {
            let o = gftkit(&[
                "radius",
                "--formula",
                formula.as_str(),
                "--alpha",
                "1.5",
                "--beta",
                "0.5",
                "--xi",
                "0.25",
                "--M",
                m,
                "--N",
                "0.75",
            ]);
            assert_eq!(o.status.code(), Some(0), "{formula} M = {m}: {}", String::from_utf8_lossy(&o.stderr));
            let r: RadiusResult = serde_json::from_str(&stdout(&o)).unwrap();
            assert_eq!(r.formula_id, formula);
            assert!(r.radius > 0.0 && r.radius <= 1.0);
            let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
            for key in ["radius", "formula", "quadratic", "discriminant", "params"] {
                assert!(v.get(key).is_some(), "{formula}: missing {key}");
            }
        }
    }
}

#[test]
fn sweep_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o =
        gftkit(&["sweep", "--formula", "thm23", "--beta", "1", "--M", "0.5:2.0:0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.split_terminator('\n').collect();
    assert_eq!(lines[0], "param,radius,quadratic_a,quadratic_b,quadratic_c");
    let radii: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    let expect = [1.0 / 1.5, 0.5, 1.0 / 2.5, 1.0 / 3.0];
    assert_eq!(radii.len(), 4);
    for (r, e) in radii.iter().zip(expect) {
        assert!((r - e).abs() < 1e-15);
    }
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_rejects_bad_ranges() {
    for range in ["0:1:0.5", "1:2:0", "2:1:0.5", "1:2000000:1"] {
        let o = gftkit(&["sweep", "--formula", "thm23", "--beta", "1", "--M", range]);
        assert_eq!(o.status.code(), Some(1), "{range}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pass = write(dir.path(), "pass.json", HALF_PLANE_2);
    let o = gftkit(&["verify", "--scenario", &pass, "--formula", "thm21"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["closed_form_radius"], 0.2);

    // no class annotation: the hypotheses cannot be checked
    let bare = write(dir.path(), "bare.json", r#"{"fs": [{"catalog": "koebe"}], "gammas": [[1, 0]]}"#);
    let o = gftkit(&["verify", "--scenario", &bare, "--formula", "thm22"]);
    assert_eq!(o.status.code(), Some(3));

    // honest class, but the convex radius is claimed for an order-2 input
    let koebe =
        write(dir.path(), "koebe.json", r#"{"fs": [{"catalog": "koebe", "class": {"lif": 2}}], "gammas": [[1, 0]]}"#);
    let o = gftkit(&["verify", "--scenario", &koebe, "--formula", "thm21", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(3), "class lif(2) does not fit alpha = 1");
    let o = gftkit(&["verify", "--scenario", &koebe, "--formula", "thm21"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_respects_formula_hypotheses() {
    // the sharp case of the convex bound: gamma = -M
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"fs": [{"catalog": "half_plane", "class": "convex"}], "gammas": [[-2, 0]], "M": 2}"#;
    let p = write(dir.path(), "s.json", text);
    let o = gftkit(&["verify", "--scenario", &p, "--formula", "thm21"]);
    assert_eq!(o.status.code(), Some(0));
    let o = gftkit(&["verify", "--scenario", &p, "--formula", "thm23", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(3), "convex is not an Ozaki class claim");
}

#[test]
fn malformed_scenarios_exit_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = write(dir.path(), "t.json", "{\"fs\": [{\"catalog\": \"koebe\"}],\n \"gammas\": [[1, 0]");
    let o = gftkit(&["verify", "--scenario", &truncated, "--formula", "thm22"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");

    let unknown = write(dir.path(), "u.json", r#"{"fs": [{"catalog": "koebe", "shape": 1}], "gammas": [[1, 0]]}"#);
    let o = gftkit(&["verify", "--scenario", &unknown, "--formula", "thm22"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("shape"));

    let o = gftkit(&["verify", "--scenario", "/nonexistent/s.json", "--formula", "thm22"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.json", r#"{"formula": "thm23", "beta": 1, "M": "0.5:2.0:0.5"}"#);
    let o = gftkit(&["sweep", "--formula", "thm21", "--alpha", "2", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 5);

    let bad = write(dir.path(), "bad.json", r#"{"formula": "thm23", "colour": "red"}"#);
    assert_eq!(gftkit(&["radius", "--config", &bad]).status.code(), Some(1));
}

#[test]
fn check_exit_codes() {
    assert_eq!(gftkit(&["check", "--function", "koebe", "--class", "starlike", "--xi", "0"]).status.code(), Some(0));
    assert_eq!(gftkit(&["check", "--function", "koebe", "--class", "convex"]).status.code(), Some(2));
    let o = gftkit(&["check", "--function", "lif_extremal:1.5", "--class", "lif", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("necessary_only"));
    assert_eq!(gftkit(&["check", "--function", "koebe", "--class", "ozaki", "--beta", "2"]).status.code(), Some(1));
    let o = gftkit(&["check", "--function", "koebe", "--class", "ozaki", "--beta", "2", "--allow-large-beta"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gftkit(&[]).status.code(), Some(1));
    assert_eq!(gftkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gftkit(&["radius", "--formula", "thm21", "--M", "1"]).status.code(), Some(1));
    assert_eq!(gftkit(&["radius", "--formula", "thm21", "--alpha", "0.5", "--M", "1"]).status.code(), Some(1));
    assert_eq!(
        gftkit(&[
            "radius",
            "--formula",
            "thm24_paper",
            "--alpha",
            "1",
            "--xi",
            "0",
            "--M",
            "1",
            "--variant",
            "rederived"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(gftkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_csv_dumps_circle_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "s.json", HALF_PLANE_2);
    let o = gftkit(&["verify", "--scenario", &p, "--formula", "thm21", "--format", "csv", "--samples", "256"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,theta,re_q"));
    assert_eq!(lines.count(), 4 * 256);
}
