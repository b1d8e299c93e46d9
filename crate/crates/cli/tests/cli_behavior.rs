//! Contract tests for the command-line binary beyond determinism: the
//! exit-code taxonomy and the frame round-trip invariant.

use std::path::{Path, PathBuf};
use std::process::Command;

fn workdir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(work: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_twoferm"))
        .current_dir(work)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn input_errors_exit_2() {
    let work = workdir("exit-2");
    std::fs::write(work.join("badschema.json"), r#"{"w": [0.5, 0.5]}"#).unwrap();
    std::fs::write(
        work.join("state.json"),
        r#"{"w": [0.25, 0.25], "v": [0.25, 0.25], "b": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["validate", "badschema.json"],
        vec!["validate", "no_such_file.json"],
        vec!["werner-scan", "--gamma-grid=0:2:5"],
        vec!["oracle", "state.json", "--restarts", "0"],
        vec!["evolve", "state.json", "--m", "1", "--lambda", "0", "--t-grid=0:1:0"],
    ];
    for args in cases {
        let out = run(&work, &args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn physics_errors_exit_3() {
    let work = workdir("exit-3");
    // A raw matrix with support outside the two allowed blocks.
    let mut rows = Vec::new();
    for r in 0..4 {
        let mut row = Vec::new();
        for c in 0..4 {
            let re = if r == c { 0.25 } else if (r, c) == (0, 1) || (r, c) == (1, 0) { 0.1 } else { 0.0 };
            row.push(format!("[{re:.1}, 0.0]"));
        }
        rows.push(format!("[{}]", row.join(", ")));
    }
    std::fs::write(
        work.join("offsector.json"),
        format!(r#"{{"matrix": [{}]}}"#, rows.join(", ")),
    )
    .unwrap();
    std::fs::write(
        work.join("unnormalized.json"),
        r#"{"w": [0.5, 0.5], "v": [0.5, 0.5], "b": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    std::fs::write(
        work.join("overweight.json"),
        r#"{"w": [0.5, 0.0], "v": [0.5, 0.0], "b": [[0.6, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();

    for file in ["offsector.json", "unnormalized.json", "overweight.json"] {
        let out = run(&work, &["validate", file]);
        assert_eq!(
            out.status.code(),
            Some(3),
            "{file}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

/// The output of find-frame feeds directly into transform and actually
/// diagonalizes the state.
#[test]
fn find_frame_output_feeds_transform() {
    let work = workdir("frame-pipeline");
    std::fs::write(
        work.join("state.json"),
        r#"{"w": [0.375, 0.125], "v": [0.375, 0.125], "b": [[0.25, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    let first = run(&work, &["find-frame", "state.json", "--output", "frame.json"]);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(
        &work,
        &["transform", "state.json", "frame.json", "--output", "diagonal.json"],
    );
    assert_eq!(second.status.code(), Some(0), "{}", String::from_utf8_lossy(&second.stderr));

    let diagonal: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(work.join("diagonal.json")).unwrap())
            .unwrap();
    for pair in diagonal["b"].as_array().unwrap() {
        for x in pair.as_array().unwrap() {
            assert!(x.as_f64().unwrap().abs() <= 1e-10, "residual coherence");
        }
    }
}

/// Transforming with parameters and then with their inverse restores the
/// original state to 1e-10 componentwise.
#[test]
fn transform_round_trip() {
    let work = workdir("round-trip");
    std::fs::write(
        work.join("state.json"),
        r#"{"w": [0.35, 0.15], "v": [0.25, 0.25], "b": [[0.1, 0.05], [-0.04, 0.08]]}"#,
    )
    .unwrap();

    let (ar, ai) = (0.6, 0.0);
    let (br, bi) = (0.0, 0.8);
    let (zr, zi) = (0.6, 0.0);
    let (or, oi) = (0.8, 0.0);
    let chi = 1.1f64;
    std::fs::write(
        work.join("params.json"),
        format!(
            r#"{{"alpha": [{ar}, {ai}], "beta": [{br}, {bi}], "zeta": [{zr}, {zi}], "omega": [{or}, {oi}], "chi": {chi}}}"#
        ),
    )
    .unwrap();
    // Inverse within the group: conjugate the rotations, negate the pair
    // mixing (carrying the phase picked up from chi), run chi backwards.
    let (c_chi, s_chi) = (chi.cos(), chi.sin());
    let (ior, ioi) = (-(or * c_chi - oi * s_chi), -(or * s_chi + oi * c_chi));
    let inv_chi = (-chi).rem_euclid(std::f64::consts::TAU);
    std::fs::write(
        work.join("inverse.json"),
        format!(
            r#"{{"alpha": [{ar}, {mai}], "beta": [{mbr}, {mbi}], "zeta": [{zr}, {mzi}], "omega": [{ior}, {ioi}], "chi": {inv_chi}}}"#,
            mai = -ai,
            mbr = -br,
            mbi = -bi,
            mzi = -zi,
        ),
    )
    .unwrap();

    let first = run(
        &work,
        &["transform", "state.json", "params.json", "--output", "moved.json"],
    );
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let second = run(
        &work,
        &["transform", "moved.json", "inverse.json", "--output", "back.json"],
    );
    assert_eq!(second.status.code(), Some(0), "{}", String::from_utf8_lossy(&second.stderr));

    let original: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(work.join("state.json")).unwrap()).unwrap();
    let back: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(work.join("back.json")).unwrap()).unwrap();
    let flat = |v: &serde_json::Value| -> Vec<f64> {
        let mut out = Vec::new();
        for key in ["w", "v"] {
            for x in v[key].as_array().unwrap() {
                out.push(x.as_f64().unwrap());
            }
        }
        for pair in v["b"].as_array().unwrap() {
            for x in pair.as_array().unwrap() {
                out.push(x.as_f64().unwrap());
            }
        }
        out
    };
    let a = flat(&original);
    let b = flat(&back);
    assert_eq!(a.len(), b.len());
    for (i, (x, y)) in a.iter().zip(&b).enumerate() {
        assert!(
            (x - y).abs() <= 1e-10,
            "component {i}: {x} vs {y}"
        );
    }
}
