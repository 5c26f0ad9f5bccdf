use std::io::Write;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tripoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn last_json(out: &Output) -> serde_json::Value {
    let text = stdout(out);
    let line = text
        .lines()
        .rev()
        .find(|l| l.starts_with('{'))
        .unwrap_or_else(|| {
            panic!(
                "no JSON in output; stdout={text:?} stderr={:?}",
                String::from_utf8_lossy(&out.stderr)
            )
        });
    serde_json::from_str(line).unwrap()
}

#[test]
fn pathpoly_prints_worked_example() {
    let out = tripoly(&["pathpoly", "--from", "2", "--to", "4", "--length", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "x_{2,2}*x_{2,4} + x_{2,3}*x_{3,4} + x_{2,4}*x_{4,4}"
    );
}

#[test]
fn pathpoly_json() {
    let out = tripoly(&[
        "pathpoly", "--from", "2", "--to", "4", "--length", "3", "--json",
    ]);
    let v = last_json(&out);
    assert_eq!(v["terms"], 6);
    assert_eq!(v["schema"], 1);
}

#[test]
fn check_iv_nonmember_with_witness() {
    let out = tripoly(&[
        "check",
        "iv",
        "--n",
        "2",
        "--poly",
        "1/2*x^2 - 1/2*x",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = last_json(&out);
    assert_eq!(v["decision"], "non_member");
    let witness = &v["witness"];
    assert!(witness.is_object());

    // the witness re-substitutes to the reported non-integral value
    let matrix = witness["matrix"].as_array().unwrap();
    let rows: Vec<Vec<tripoly::RingElem>> = matrix
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|s| {
                    tripoly::RingElem::parse(s.as_str().unwrap(), tripoly::RingSpec::Integers)
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let c = tripoly::UTMatrix::from_rows(tripoly::RingSpec::Integers, &rows).unwrap();
    let f = tripoly::parse_unipoly("1/2*x^2 - 1/2*x", tripoly::RingSpec::Rationals).unwrap();
    let image = tripoly::scalar_subst(&f, &c.to_rationals().unwrap()).unwrap();
    let entry = witness["entry"].as_array().unwrap();
    let (i, j) = (
        entry[0].as_u64().unwrap() as usize,
        entry[1].as_u64().unwrap() as usize,
    );
    assert_eq!(
        image.get(i, j).to_string(),
        witness["value"].as_str().unwrap()
    );
}

#[test]
fn check_iv_member() {
    let out = tripoly(&["check", "iv", "--n", "1", "--poly", "1/2*x^2 - 1/2*x"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("Member"));
}

#[test]
fn check_null_exit_codes() {
    let out = tripoly(&[
        "check", "null", "--mod", "2", "--n", "1", "--poly", "x^2 + x",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = tripoly(&[
        "check", "null", "--mod", "2", "--n", "2", "--poly", "x^2 + x",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = tripoly(&[
        "check",
        "null",
        "--mod",
        "2",
        "--n",
        "2",
        "--poly",
        "x^4 + x^2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_matrix_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    // phi(f) = [[(x^2-x)/2, 0], [0, 0]]: right non-member, left member
    let doc = serde_json::json!({
        "n": 2,
        "ring": "Q",
        "coeffs": [
            [["0", "0"], ["0", "0"]],
            [["-1/2", "0"], ["0", "0"]],
            [["1/2", "0"], ["0", "0"]],
        ],
    });
    std::fs::File::create(&path)
        .unwrap()
        .write_all(doc.to_string().as_bytes())
        .unwrap();
    let p = path.to_str().unwrap();
    let out = tripoly(&[
        "check", "matrix", "--side", "right", "--mode", "iv", "--file", p,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = tripoly(&[
        "check", "matrix", "--side", "left", "--mode", "iv", "--file", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_matrix_null_mode_modulus_coherence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    let doc = serde_json::json!({
        "n": 2,
        "ring": "Zmod:2",
        "coeffs": [
            [["0", "0"], ["0", "0"]],
            [["0", "0"], ["0", "0"]],
            [["1", "0"], ["0", "1"]],
            [["0", "0"], ["0", "0"]],
            [["1", "0"], ["0", "1"]],
        ],
    });
    std::fs::File::create(&path)
        .unwrap()
        .write_all(doc.to_string().as_bytes())
        .unwrap();
    let p = path.to_str().unwrap();
    // (x^4 + x^2) I is null on T_2(Z/2)
    let out = tripoly(&[
        "check", "matrix", "--side", "right", "--mode", "null", "--file", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    // a contradictory --mod is a usage error
    let out = tripoly(&[
        "check", "matrix", "--side", "right", "--mode", "null", "--mod", "3", "--file", p,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_scalar_at_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let doc = serde_json::json!({
        "n": 2,
        "ring": "Z",
        "entries": [["0", "1"], ["0", "2"]],
    });
    std::fs::File::create(&path)
        .unwrap()
        .write_all(doc.to_string().as_bytes())
        .unwrap();
    let out = tripoly(&[
        "eval",
        "--poly",
        "x^2 - x",
        "--ring",
        "Q",
        "--file",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = last_json(&out);
    assert_eq!(v["result"], serde_json::json!([["0", "1"], ["0", "2"]]));
}

#[test]
fn characterize_tables() {
    let out = tripoly(&[
        "characterize",
        "--n",
        "2",
        "--side",
        "right",
        "--mode",
        "iv",
    ]);
    assert_eq!(stdout(&out), "[Int^{T2}, Int^{T1}]\n[zero, Int^{T1}]\n");
    let out = tripoly(&["characterize", "--n", "2", "--side", "left", "--mode", "iv"]);
    assert_eq!(stdout(&out), "[Int^{T1}, Int^{T1}]\n[zero, Int^{T2}]\n");
    let out = tripoly(&[
        "characterize",
        "--n",
        "3",
        "--side",
        "right",
        "--mode",
        "null",
        "--mod",
        "2",
        "--json",
    ]);
    let v = last_json(&out);
    assert_eq!(v["labels"][0][0], "N^{T3}");
    assert_eq!(v["labels"][2][2], "N^{T1}");
}

#[test]
fn basis_null_lists_polynomials() {
    let out = tripoly(&[
        "basis",
        "null",
        "--mod",
        "2",
        "--n",
        "1",
        "--max-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x^2 + x");
    let out = tripoly(&[
        "basis",
        "null",
        "--mod",
        "4",
        "--n",
        "1",
        "--max-degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2), "composite modulus is rejected");
}

#[test]
fn verify_reports() {
    let out = tripoly(&[
        "verify",
        "ideal",
        "--mod",
        "2",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--trials",
        "5",
        "--seed",
        "42",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = last_json(&out);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["verify"], "ideal");
    assert!(v["elapsed_ms"].is_u64());

    let out = tripoly(&[
        "verify",
        "ring",
        "--den",
        "2",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--trials",
        "5",
        "--seed",
        "7",
        "--side",
        "right",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = last_json(&out);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["sides"], serde_json::json!(["right"]));
}

#[test]
fn verify_full_acceptance_commands() {
    // the documented closure-verification runs, at full trial counts
    let out = tripoly(&[
        "verify",
        "ideal",
        "--mod",
        "2",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--trials",
        "100",
        "--seed",
        "42",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(last_json(&out)["failures"], 0);

    let out = tripoly(&[
        "verify",
        "ideal",
        "--mod",
        "3",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--trials",
        "100",
        "--seed",
        "42",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(last_json(&out)["failures"], 0);

    let out = tripoly(&[
        "verify",
        "ring",
        "--den",
        "2",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--trials",
        "100",
        "--seed",
        "7",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(last_json(&out)["failures"], 0);
}

#[test]
fn budget_gates_enumeration() {
    // x^3 + 2x vanishes on Z/3, so the window of width 2 (27 points,
    // over a budget of 10) is actually reached
    let args = [
        "check",
        "null",
        "--mod",
        "3",
        "--n",
        "3",
        "--poly",
        "x^3 + 2*x",
    ];
    let out = tripoly(&[&args[..], &["--budget", "10"]].concat());
    assert_eq!(out.status.code(), Some(3));
    let out = tripoly(&[&args[..], &["--budget", "10", "--force"]].concat());
    assert_eq!(out.status.code(), Some(1)); // but it is not null on T_3(Z/3)
}

#[test]
fn usage_errors_exit_2() {
    let out = tripoly(&["check", "iv", "--n", "2", "--poly", "x + + 1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tripoly(&["check", "null", "--mod", "1", "--n", "1", "--poly", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tripoly(&[
        "check",
        "matrix",
        "--side",
        "right",
        "--mode",
        "iv",
        "--file",
        "/nonexistent.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = tripoly(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_match_json_decision_randomized() {
    // 200 randomized invocations across the scalar checkers
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let out = if trial % 2 == 0 {
            let n = rng.gen_range(1..=2);
            let coeffs: Vec<String> = (0..=rng.gen_range(0..=3))
                .map(|k| format!("{}/{}*x^{}", rng.gen_range(-3..=3), rng.gen_range(1..=2), k))
                .collect();
            let poly = coeffs.join(" + ").replace("+ -", "- ");
            tripoly(&[
                "check",
                "iv",
                "--n",
                &n.to_string(),
                "--poly",
                &poly,
                "--json",
            ])
        } else {
            let m = rng.gen_range(2..=3u64);
            let n = rng.gen_range(1..=2);
            let coeffs: Vec<String> = (0..=rng.gen_range(0..=3))
                .map(|k| format!("{}*x^{}", rng.gen_range(0..m), k))
                .collect();
            let poly = coeffs.join(" + ");
            tripoly(&[
                "check",
                "null",
                "--mod",
                &m.to_string(),
                "--n",
                &n.to_string(),
                "--poly",
                &poly,
                "--json",
            ])
        };
        let v = last_json(&out);
        let expected = match v["decision"].as_str().unwrap() {
            "member" => 0,
            "non_member" => 1,
            other => panic!("unexpected decision {other}"),
        };
        assert_eq!(out.status.code(), Some(expected));
    }
}
