use std::path::Path;
use std::process::Command;

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
        .display()
        .to_string()
}

fn status(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_modalprob"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(status(&["validate", &golden("validate_uniform.spec")]).0, 0);
    assert_eq!(
        status(&["validate", &golden("validate_negative.spec")]).0,
        1
    );
    assert_eq!(status(&["validate", &golden("err_fractions.spec")]).0, 2);
    assert_eq!(
        status(&["beliefs", &golden("beliefs_contradiction.spec")]).0,
        1
    );
    assert_eq!(
        status(&["frobnicate", &golden("validate_uniform.spec")]).0,
        2
    );
    assert_eq!(status(&["classify", &golden("validate_uniform.spec")]).0, 2);
    assert_eq!(status(&["validate", "/nonexistent/x.spec"]).0, 2);
    assert_eq!(
        status(&[
            "--max-atoms",
            "31",
            "validate",
            &golden("validate_uniform.spec")
        ])
        .0,
        2
    );
    assert_eq!(status(&["--help"]).0, 0);
}

#[test]
fn diagnostics_carry_the_path() {
    let path = golden("err_undeclared.spec");
    let (code, stdout, stderr) = status(&["validate", &path]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(
        stderr.starts_with(&format!("{path}:3:11: error: undeclared outcome `s9`")),
        "{stderr}"
    );
}

#[test]
fn max_atoms_limits_enumeration() {
    let (code, _, stderr) = status(&[
        "--max-atoms",
        "1",
        "correspondence",
        &golden("correspondence_holds.spec"),
    ]);
    assert_eq!(code, 2);
    assert!(
        stderr.contains("above the enumeration cap of 1"),
        "{stderr}"
    );
}

#[test]
fn seed_flag_is_reproducible() {
    let file = golden("simulate_three.spec");
    let a = status(&["--seed", "9", "simulate", &file]);
    assert_eq!(a, status(&["--seed", "9", "simulate", &file]));
    assert_ne!(a.1, status(&["--seed", "10", "simulate", &file]).1);
    assert!(a.1.contains("seed: 9"));
}
