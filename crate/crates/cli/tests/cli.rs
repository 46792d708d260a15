use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruhat-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

const AFFINE: [&str; 7] = [
    "affine",
    "--k",
    "5",
    "--u",
    "[-6,8,3,-1,4,13]",
    "--w",
    "[8,-6,-2,9,13,-1]",
];

#[test]
fn schubert_example() {
    let text = stdout(&["rbruhat", "--zeta", "3 6 2 5 4 1", "--schur"]);
    assert!(text.contains("S[3,1] + S[2,2] + S[2,1,1]"), "{text}");
    assert!(text.contains("chains: 8"));
}

#[test]
fn affine_example() {
    let text = stdout(&AFFINE);
    assert!(text.contains("paths: 240"));
    assert!(text.contains("9F[4] + 30F[3,1] + 51F[2,2] + 30F[2,1,1] + 30F[1,3] + 51F[1,2,1] + 30F[1,1,2] + 9F[1,1,1,1]"));
    assert!(text.contains("9S[4] + 30S[3,1] + 21S[2,2] + 30S[2,1,1] + 9S[1,1,1,1]"));
}

#[test]
fn core_both_directions() {
    assert!(stdout(&["core", "--k", "4", "--u", "[2,3,6,0,4]"]).contains("5-core: (4,1,1)"));
    assert!(stdout(&["core", "--k", "4", "--mu", "4,1,1"]).contains("window: [2,3,6,0,4]"));
    assert!(stdout(&["core", "--k", "4", "--u", "2 3 6 0 4"]).contains("5-core: (4,1,1)"));
}

#[test]
fn weak_example_has_negative_coefficient() {
    let text = stdout(&["weak", "--k", "2", "--u", "[0,2,4]", "--w", "[-3,4,5]"]);
    assert!(text.contains("S[2,1] - S[1,1,1]"), "{text}");
}

#[test]
fn embed_example() {
    let text = stdout(&["embed", "--zeta", "3 6 2 5 4 1", "--verify"]);
    assert!(text.contains("k = 5, s = 3"));
    assert!(text.contains("u = [-6,8,3,-1,4,13]"));
    assert!(text.contains("u' = [-7,-2,7,-6,8,3]"));
    assert!(text.contains("image:       t(-1,3)"));
    assert!(text.contains("verification: passed"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["core", "--k", "4", "--u", "[2,x]"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["core", "--k", "4", "--u", "[2,2,6,0,4]"])
            .status
            .code(),
        Some(3)
    );
    // not 0-grassmannian
    assert_eq!(
        run(&["affine", "--k", "2", "--u", "[2,1,3]", "--w", "[2,1,3]"])
            .status
            .code(),
        Some(3)
    );
    let capped = run(&["--cap", "3", "rbruhat", "--zeta", "3 6 2 5 4 1", "--chains"]);
    assert_eq!(capped.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
}

#[test]
fn json_reserializes_identically() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "--json",
            "rbruhat",
            "--zeta",
            "3 6 2 5 4 1",
            "--chains",
            "--schur",
        ],
        [&["--json"][..], &AFFINE[..]].concat(),
        vec!["--json", "kschur", "--k", "3", "--degree", "4", "--invert"],
        vec!["--json", "embed", "--zeta", "3 6 2 5 4 1", "--verify"],
        vec!["--json", "relations", "--k", "3", "--sweep", "50"],
    ];
    for args in cases {
        let text = stdout(&args);
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema"], "bruhat-kit/1");
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text);
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["rbruhat", "--zeta", "3 6 2 5 4 1", "--chains", "--schur"],
        vec!["embed", "--zeta", "3 6 2 5 4 1", "--verify"],
        vec!["kschur", "--k", "3", "--degree", "5"],
        vec!["relations", "--k", "4", "--sweep", "200", "--seed", "9"],
        AFFINE.to_vec(),
    ];
    for args in cases {
        let one = stdout(&[&["--threads", "1"][..], &args[..]].concat());
        let many = stdout(&[&["--threads", "4"][..], &args[..]].concat());
        assert_eq!(one, many, "{args:?}");
    }
}

#[test]
fn seeded_sweeps_repeat() {
    let a = stdout(&[
        "relations",
        "--k",
        "5",
        "--sweep",
        "300",
        "--rules",
        "A,X1,x3",
        "--seed",
        "17",
    ]);
    let b = stdout(&[
        "relations",
        "--k",
        "5",
        "--sweep",
        "300",
        "--rules",
        "A,X1,x3",
        "--seed",
        "17",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 4);
}
