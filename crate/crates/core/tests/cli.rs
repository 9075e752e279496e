use std::io::Write as _;

use exact_jordan::cli::{run, EXIT_CHECK_FAILED, EXIT_NOT_REPRESENTABLE, EXIT_OK, EXIT_USAGE};
use exact_jordan::io::parse_matrix_json;
use exact_jordan::io::{DecompositionDocument, GeneratedDocument, SpectrumDocument};
use exact_jordan::{check_decomposition, Matrix};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn exec(args: &[&str], input: &str) -> Outcome {
    let argv: Vec<String> = std::iter::once("exact-jordan")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = run(&argv, &mut input.as_bytes(), &mut stdout, &mut stderr);
    Outcome {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

const WORKED: &str = r#"{"n":3,"entries":[["2","1","1"],["-4","5","4"],["1","0","2"]]}"#;
const ID2: &str = r#"{"n":2,"entries":[["1","0"],["0","1"]]}"#;
const CUBE_ROOT: &str = r#"{"n":3,"entries":[["0","0","2"],["1","0","0"],["0","1","0"]]}"#;

#[test]
fn spectrum_of_identity() {
    let out = exec(&["spectrum", "--format", "json"], ID2);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let doc: SpectrumDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc.n, 2);
    assert_eq!(doc.eigenvalues.len(), 1);
    let e = &doc.eigenvalues[0];
    assert_eq!(
        (e.lambda.as_str(), e.multiplicity, e.geometric, e.max_stage),
        ("1", 2, 2, 1)
    );
}

#[test]
fn pretty_spectrum_output() {
    let out = exec(&["spectrum"], WORKED);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(
        out.stdout,
        "lambda  mult  geo  L\n3       3     1    3\nnot diagonalizable\n"
    );
}

#[test]
fn provided_spectrum_matches_discovery() {
    for cmd in ["spectrum", "jordan", "schur"] {
        let found = exec(&[cmd, "--format", "json"], WORKED);
        let given = exec(&[cmd, "--format", "json", "--spectrum", "3"], WORKED);
        assert_eq!(found.code, EXIT_OK);
        assert_eq!(given.code, EXIT_OK);
        assert_eq!(found.stdout, given.stdout, "{cmd}");
    }
}

#[test]
fn bad_provided_spectrum() {
    let out = exec(&["jordan", "--spectrum", "1"], WORKED);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("not an eigenvalue"), "{}", out.stderr);
    let out = exec(&["jordan", "--spectrum", "3,3"], WORKED);
    assert_eq!(out.code, EXIT_USAGE);
    let out = exec(
        &["spectrum", "--spectrum", "2"],
        r#"{"n":2,"entries":[["2","0"],["0","5"]]}"#,
    );
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("spectrum"));
}

#[test]
fn worked_example_jordan_form() {
    let out = exec(&["jordan", "--format", "json", "--check"], WORKED);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let doc: DecompositionDocument = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc.kind, "jordan");
    assert_eq!(
        doc.m.entries,
        vec![
            vec!["3", "1", "0"],
            vec!["0", "3", "1"],
            vec!["0", "0", "3"]
        ]
    );
    assert!(doc.check.as_ref().unwrap().passed);
    let d = doc.to_decomposition().unwrap();
    let a = parse_matrix_json(WORKED).unwrap();
    assert!(check_decomposition(&a, &d).passed());
}

#[test]
fn every_subcommand_round_trips_json() {
    let a = parse_matrix_json(WORKED).unwrap();
    for (cmd, kind) in [
        ("schur", "schur"),
        ("blockdiag", "blockdiag"),
        ("blocktri", "blocktri"),
        ("jordan", "jordan"),
    ] {
        let out = exec(&[cmd, "--format", "json"], WORKED);
        assert_eq!(out.code, EXIT_OK);
        let doc: DecompositionDocument = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc.kind, kind);
        assert!(doc.check.is_none());
        let d = doc.to_decomposition().unwrap();
        let again =
            serde_json::to_string_pretty(&DecompositionDocument::from_decomposition(&d, None))
                .unwrap();
        assert_eq!(format!("{again}\n"), out.stdout);
        assert!(check_decomposition(&a, &d).passed());
    }
}

#[test]
fn pretty_decomposition_output() {
    let out = exec(&["jordan"], WORKED);
    assert_eq!(out.code, EXIT_OK);
    assert!(out
        .stdout
        .starts_with("kind: jordan\nblocks: λ=3 (3)\nV =\n"));
    assert!(out.stdout.contains("M =\n"));
    let out = exec(&["blockdiag", "--check"], WORKED);
    assert!(out.stdout.contains("checks:"));
    assert!(out.stdout.contains("similarity"));
}

#[test]
fn reads_from_file_and_dash() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(WORKED.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let from_file = exec(&["jordan", "--format", "json", path], "");
    let from_dash = exec(&["jordan", "--format", "json", "-"], WORKED);
    assert_eq!(from_file.code, EXIT_OK);
    assert_eq!(from_file.stdout, from_dash.stdout);
    let missing = exec(&["jordan", "/nonexistent/matrix.json"], "");
    assert_eq!(missing.code, EXIT_USAGE);
    assert!(missing.stderr.starts_with("error: jordan: cannot read"));
}

#[test]
fn gen_pipes_into_jordan() {
    for (structure, seed) in [("3:3", 0), ("0:2,1;1:1", 4), ("1i:2;-1i:1;2:1", 7)] {
        let seed = seed.to_string();
        let gen = exec(&["gen", "--structure", structure, "--seed", &seed], "");
        assert_eq!(gen.code, EXIT_OK, "{}", gen.stderr);
        let doc: GeneratedDocument = serde_json::from_str(&gen.stdout).unwrap();
        assert_eq!(doc.structure, structure);
        let out = exec(&["jordan", "--check", "--format", "json"], &gen.stdout);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let d: DecompositionDocument = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(d.m, doc.jordan);
        let verify = exec(&["verify"], &gen.stdout);
        assert_eq!(verify.code, EXIT_OK);
        assert!(verify.stdout.ends_with("all checks passed\n"));
    }
}

#[test]
fn gen_is_deterministic() {
    let args = [
        "gen",
        "--structure",
        "2:2,1;-1:1",
        "--seed",
        "11",
        "--bound",
        "2",
    ];
    assert_eq!(exec(&args, "").stdout, exec(&args, "").stdout);
    let other = exec(
        &[
            "gen",
            "--structure",
            "2:2,1;-1:1",
            "--seed",
            "12",
            "--bound",
            "2",
        ],
        "",
    );
    assert_ne!(exec(&args, "").stdout, other.stdout);
    let pretty = exec(&["gen", "--structure", "0:1", "--format", "pretty"], "");
    assert!(pretty.stdout.starts_with("A =\n"));
}

#[test]
fn verify_json_lists_all_stages() {
    let out = exec(&["verify", "--format", "json"], WORKED);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let kinds: Vec<&str> = v["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap())
        .collect();
    assert_eq!(
        kinds,
        ["schur", "blockdiag", "blocktri", "jordan", "structure"]
    );
}

#[test]
fn not_representable_exit_code() {
    for cmd in ["spectrum", "jordan", "verify"] {
        let out = exec(&[cmd], CUBE_ROOT);
        assert_eq!(out.code, EXIT_NOT_REPRESENTABLE, "{cmd}");
        assert!(out.stderr.contains("z^3 - 2"), "{}", out.stderr);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(exec(&[], "").code, EXIT_USAGE);
    assert_eq!(exec(&["frobnicate"], "").code, EXIT_USAGE);
    assert_eq!(
        exec(&["jordan", "--format", "xml"], WORKED).code,
        EXIT_USAGE
    );
    assert_eq!(exec(&["gen"], "").code, EXIT_USAGE);
    assert_eq!(exec(&["gen", "--structure", "3:0"], "").code, EXIT_USAGE);
    let bad = exec(&["jordan"], r#"{"n":2,"entries":[["1","x"],["0","1"]]}"#);
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stderr.contains("entry (0,1)"), "{}", bad.stderr);
    assert_eq!(exec(&["spectrum"], "not json").code, EXIT_USAGE);
    assert_eq!(exec(&["--help"], "").code, EXIT_OK);
}

#[test]
fn check_failure_code_is_distinct() {
    assert_ne!(EXIT_CHECK_FAILED, EXIT_USAGE);
    assert_ne!(EXIT_CHECK_FAILED, EXIT_NOT_REPRESENTABLE);
    // an identity matrix still yields a passing report through every command
    for cmd in ["schur", "blockdiag", "blocktri", "jordan"] {
        assert_eq!(exec(&[cmd, "--check"], ID2).code, EXIT_OK);
    }
    assert_eq!(Matrix::identity(2), parse_matrix_json(ID2).unwrap());
}
