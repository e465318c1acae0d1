//! Acceptance gate for the binary: the invalid-input exit contract.

use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_beurling");

#[test]
fn criterion_8a_non_submultiplicative_weight_exits_2() {
    let dir = tempfile::tempdir().expect("tempdir");
    let group = dir.path().join("group.json");
    let weight = dir.path().join("weight.json");
    std::fs::write(&group, r#"{"type":"cyclic_product","moduli":[4]}"#).expect("fixture");
    // w(1)*w(3) = 0.25 < 1 = w(0): not submultiplicative.
    std::fs::write(&weight, "[1.0, 0.5, 0.5, 0.5]").expect("fixture");

    for subcommand in ["check-lemmas", "verify-weight"] {
        let out = Command::new(BIN)
            .args([
                subcommand,
                "--group",
                group.to_str().expect("path"),
                "--weight",
                weight.to_str().expect("path"),
            ])
            .output()
            .expect("binary should spawn");
        assert_eq!(
            out.status.code(),
            Some(2),
            "{subcommand} must exit 2 on a non-submultiplicative weight"
        );
        let stderr = String::from_utf8(out.stderr).expect("stderr is UTF-8");
        assert!(
            stderr.contains("invalid weight"),
            "{subcommand} stderr should name the problem: {stderr}"
        );
    }
    println!("criterion 8a (non-submultiplicative weight exits 2): PASS");
}
