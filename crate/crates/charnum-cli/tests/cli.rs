//! End-to-end checks of the command-line surface: JSON shapes, exit codes,
//! the input-file path, and byte determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn charnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charnum"))
        .args(args)
        .env_remove("CHARNUM_MAX_D")
        .output()
        .expect("binary runs")
}

fn payload(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report: Value = serde_json::from_slice(&output.stdout).expect("valid JSON");
    report["payload"].clone()
}

#[test]
fn alpha_reports_the_digit_sum() {
    let out = charnum(&["alpha", "3"]);
    assert_eq!(payload(&out), serde_json::json!({ "value": 2 }));
}

#[test]
fn partitions_are_padded_and_ordered() {
    let out = charnum(&["partitions", "3"]);
    let body = payload(&out);
    assert_eq!(body["count"], 3);
    assert_eq!(
        body["partitions"],
        serde_json::json!([[3, 0, 0], [1, 1, 0], [0, 0, 1]])
    );
}

#[test]
fn chern_numbers_of_the_projective_plane() {
    let out = charnum(&["chern", "--manifold", "cp(2)"]);
    let body = payload(&out);
    assert_eq!(body["kind"], "complex");
    let values: Vec<&str> = body["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, vec!["9", "3"]);
}

#[test]
fn stiefel_whitney_numbers_of_the_real_plane() {
    let out = charnum(&["chern", "--manifold", "rp(2)"]);
    let body = payload(&out);
    assert_eq!(body["kind"], "real");
    let monomials: Vec<&str> = body["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["monomial"].as_str().unwrap())
        .collect();
    assert_eq!(monomials, vec!["w1^2", "w2"]);
}

#[test]
fn segre_polynomial_weight_two() {
    let out = charnum(&["segre", "--poly", "2"]);
    assert_eq!(payload(&out)["polynomial"], "c1^2 - c2");
}

#[test]
fn segre_number_of_a_milnor_threefold() {
    let out = charnum(&["segre", "--manifold", "h(2,2)"]);
    assert_eq!(payload(&out)["value"], "-6");
}

#[test]
fn divtop_reports_predicate_and_witness() {
    let out = charnum(&["divtop", "3", "1"]);
    let body = payload(&out);
    assert_eq!(body["predicate"], false);
    assert_eq!(body["witness"], Value::Null);

    let out = charnum(&["divtop", "2", "1"]);
    let body = payload(&out);
    assert_eq!(body["predicate"], true);
    assert!(body["witness"].is_object());
}

#[test]
fn mu_lattice_index_weight_two() {
    let out = charnum(&["mu-lattice", "2"]);
    assert_eq!(payload(&out)["index"], "12");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["mu-lattice", "3"],
        vec!["psi", "2"],
        vec!["sweep", "--max-d", "2"],
    ] {
        let first = charnum(&args);
        let second = charnum(&args);
        assert_eq!(first.stdout, second.stdout, "args = {args:?}");
    }
}

#[test]
fn double_point_accepts_a_json_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{
            "source": "cp(1)",
            "pullback_class": [
                {{ "exponents": [0], "coeff": "1" }},
                {{ "exponents": [1], "coeff": "4" }}
            ],
            "self_intersection": "2"
        }}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let out = charnum(&["double-point", &path]);
    let body = payload(&out);
    assert_eq!(body["congruent"], true);
    assert_eq!(body["normal_degree"], "2");

    // Overriding the modulus keeps the comparison mod 4: 6 = 2 mod 4.
    let mut shifted = tempfile::NamedTempFile::new().unwrap();
    write!(
        shifted,
        r#"{{
            "source": "cp(1)",
            "pullback_class": [
                {{ "exponents": [0], "coeff": "1" }},
                {{ "exponents": [1], "coeff": "4" }}
            ],
            "self_intersection": "6"
        }}"#
    )
    .unwrap();
    let path = shifted.path().to_str().unwrap().to_string();
    let exact = charnum(&["double-point", &path]);
    assert_eq!(exact.status.code(), Some(1));
    let modulo = charnum(&["double-point", &path, "--mod", "4"]);
    assert_eq!(modulo.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(charnum(&["bogus"]).status.code(), Some(2));
    assert_eq!(charnum(&["partitions", "40"]).status.code(), Some(2));
    assert_eq!(charnum(&["segre"]).status.code(), Some(2));
    assert_eq!(
        charnum(&["segre", "--manifold", "rp(2)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        charnum(&["chern", "--manifold", "sphere(2)"]).status.code(),
        Some(2)
    );
    assert_eq!(charnum(&["divtop", "2", "9"]).status.code(), Some(2));
    // The halved functional is not integral at this exponent.
    assert_eq!(charnum(&["divtop", "2", "2"]).status.code(), Some(2));
}

#[test]
fn desk_bound_is_overridable_through_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_charnum"))
        .args(["rt-verify", "5"])
        .env("CHARNUM_MAX_D", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("desk bound"), "stderr: {err}");

    let bad = Command::new(env!("CARGO_BIN_EXE_charnum"))
        .args(["rt-verify", "2"])
        .env("CHARNUM_MAX_D", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn help_is_available_for_every_subcommand() {
    for sub in [
        "alpha",
        "partitions",
        "chern",
        "segre",
        "mu-lattice",
        "mo-rank",
        "psi",
        "rt-verify",
        "cor4",
        "divtop",
        "gram",
        "resab",
        "quotab",
        "double-point",
        "predicates",
        "sweep",
    ] {
        let out = charnum(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn table_mode_renders_text() {
    let out = charnum(&["gram", "2", "--table"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("command: gram"));
    assert!(!text.contains('{'));
}

#[test]
fn sweep_small_degree_passes() {
    let out = charnum(&["sweep", "--max-d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let body = payload(&out);
    assert_eq!(body["failed"], 0);
}
