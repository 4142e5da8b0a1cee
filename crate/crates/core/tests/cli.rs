use rotorwalk::cli::run_command;
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> rotorwalk::cli::CommandOutput {
    run_command(std::iter::once("rotorwalk").chain(args.iter().copied()))
}

#[test]
fn hit_prints_g5_sequence() {
    let out = run(&["hit", &fixture("g5.rotor"), "--n", "9"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "4 4 5 4 4 5 4 4 5\n");
}

#[test]
fn hit_defaults_to_three_periods() {
    let out = run(&["hit", &fixture("g5_reversed.rotor")]);
    assert_eq!(out.stdout, "5 4 4 5 4 4 5 4 4\n");
}

#[test]
fn period_text_and_json() {
    assert_eq!(
        run(&["period", &fixture("repetitive.rotor")]).stdout,
        "D=6 p=6 word=3,3,3,3,4,4\n"
    );
    let out = run(&["--json", "period", &fixture("g5.rotor")]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["class_period"], 3);
    assert_eq!(v["word"], serde_json::json!(["4", "4", "5"]));
}

#[test]
fn walk_lists_raw_walk() {
    let out = run(&["walk", &fixture("g5.rotor"), "--n", "4"]);
    assert!(
        out.stdout.starts_with("walk: 1 3 4 1 4 1 5 1 3 2 3 4\n"),
        "{}",
        out.stdout
    );
}

#[test]
fn canonical_and_classes() {
    let out = run(&["canonical", &fixture("g5_cycle.rotor")]);
    assert_eq!(out.stdout, "state 1: 3\nstate 2: 1\nstate 3: 1\n");
    let out = run(&["--json", "classes", &fixture("g5.rotor")]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["count"], 3);
}

#[test]
fn identity_and_order() {
    assert_eq!(
        run(&["identity", &fixture("g5.rotor")]).stdout,
        "e = 1:0 2:0 3:1\n"
    );
    assert!(run(&["order", &fixture("g5.rotor")])
        .stdout
        .starts_with("order(g_s)=3\n"));
}

#[test]
fn verify_random_and_file() {
    assert_eq!(
        run(&["verify", "periodic", "--random", "50", "--seed", "3"]).stdout,
        "PASS 50/50\n"
    );
    assert_eq!(
        run(&["verify", "palindrome", &fixture("palindromic.rotor")]).stdout,
        "PASS 1/1\n"
    );
    let out = run(&[
        "verify",
        "reversal",
        &fixture("g5.rotor"),
        "--reversed-state",
        "1:3,3:2",
    ]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
}

#[test]
fn verify_precondition_error_is_json() {
    let out = run(&["verify", "palindrome", &fixture("g5.rotor")]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "PreconditionNotPalindromic");
}

#[test]
fn export_dot_highlights_cycle() {
    let out = run(&["export-dot", &fixture("g5_cycle.rotor"), "--highlight"]);
    assert!(out.stdout.starts_with("digraph"));
    assert_eq!(out.stdout.matches("color=red").count(), 2);
}

#[test]
fn errors_are_machine_readable() {
    let dir = std::env::temp_dir().join(format!("rotorwalk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.rotor");
    std::fs::write(&bad, "source: 1\ntargets: 3\nrotor 1: 2\nrotor 2: 1\n").unwrap();
    let out = run(&["hit", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "ValidationError");
    assert_eq!(v["error"]["cause"], "NotStronglyConnected");

    std::fs::write(&bad, "source 1\n").unwrap();
    let v: Value = serde_json::from_str(&run(&["hit", bad.to_str().unwrap()]).stderr).unwrap();
    assert_eq!(v["error"]["kind"], "ParseError");
    assert_eq!(v["error"]["line"], 1);

    let out = run(&["hit", &fixture("g5.rotor"), "--step-budget", "1"]);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "StepBudgetExceeded");
    std::fs::remove_dir_all(dir).unwrap();
}
