//! Acceptance criterion 13: any CLI run repeated with the same seed
//! produces byte-identical outputs. Also pins the exit-code contract.

use std::process::Command;

fn run(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypolap"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn criterion_13_determinism() {
    let args = [
        "simulate",
        "--n-paths",
        "5000",
        "--seed",
        "7",
        "--dt",
        "0.002",
    ];
    let (a, code_a) = run(&args);
    let (b, code_b) = run(&args);
    let ok = a == b && code_a == code_b;
    println!(
        "[acceptance] criterion 13 (CLI determinism): {} ({} bytes, exit {code_a})",
        if ok { "PASS" } else { "FAIL" },
        a.len()
    );
    assert!(ok);

    let (c, _) = run(&["orbital", "--preset", "sl2c_real"]);
    let (d, _) = run(&["orbital", "--preset", "sl2c_real"]);
    assert_eq!(c, d, "orbital output must be byte-identical");

    let (e, _) = run(&["verify", "--preset", "abelian3"]);
    let (f, _) = run(&["verify", "--preset", "abelian3"]);
    assert_eq!(e, f, "verify output must be byte-identical");
}

#[test]
fn exit_code_contract() {
    // 0: pass
    let (_, code) = run(&["verify", "--preset", "abelian3"]);
    assert_eq!(code, 0);
    // 2: config error (unknown preset)
    let (_, code) = run(&["verify", "--preset", "no_such_preset"]);
    assert_eq!(code, 2);
    // 2: bad tolerance override
    let (_, code) = run(&["verify", "--preset", "abelian3", "--tol-override", "nope=1"]);
    assert_eq!(code, 2);
    // 1: forced check failure via an impossible tolerance
    let (_, code) = run(&[
        "verify",
        "--preset",
        "sl2r",
        "--tol-override",
        "mehler_mass=0",
    ]);
    assert_eq!(code, 1);
    // 2: malformed preset file under HYPOLAP_PRESET_DIR
    let dir = std::env::temp_dir().join("hypolap_bad_presets");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("broken.json"), "{not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hypolap"))
        .args(["verify", "--preset", "broken"])
        .env("HYPOLAP_PRESET_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
