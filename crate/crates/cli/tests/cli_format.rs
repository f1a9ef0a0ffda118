//! Front-end behaviour: schema errors, machine format shape, user-supplied
//! irreducibles, and flag overrides.

use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_fittkit")
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(exe()).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn run_with_file(content: &str, extra: &[&str]) -> (String, String, i32) {
    let tmp = std::env::temp_dir().join(format!(
        "fittkit_test_{}_{}.fitt",
        std::process::id(),
        content.len()
    ));
    std::fs::write(&tmp, content).unwrap();
    let mut args = vec!["--input", tmp.to_str().unwrap()];
    args.extend_from_slice(extra);
    let r = run(&args);
    let _ = std::fs::remove_file(&tmp);
    r
}

#[test]
fn empty_file_is_a_schema_error() {
    let (_, err, code) = run_with_file("", &[]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "stderr was: {err}");
}

#[test]
fn decimal_literals_are_rejected_with_position() {
    let text = "fittkit-problem v1\ncommand fitt-comm\nring int\nmatrix 1 1\nentry 0 0 0:0.1\n";
    let (_, err, code) = run_with_file(text, &[]);
    assert_eq!(code, 1);
    assert!(err.contains("line 5"), "stderr was: {err}");
    assert!(err.contains("1/10"), "suggests the exact form: {err}");
}

#[test]
fn machine_format_lattice_records() {
    let text = "fittkit-problem v1\ncommand fitt-nc\norder matrix-ring 2\nprime 3\nmatrix 2 1\nentry 0 0 0:4 1:1 2:1 3:4\nentry 1 0 0:5 1:1 2:1 3:5\n";
    let (out, _, code) = run_with_file(text, &["--format", "machine"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("hash "));
    let lattice_line = lines.find(|l| l.starts_with("lattice ")).unwrap();
    assert!(lattice_line.contains("dim=1"));
    assert!(lattice_line.contains("denom=1"));
    assert!(lattice_line.contains("rows=1"));
    assert!(out.contains("\n3\n"), "HNF row of the invariant: {out}");
}

#[test]
fn user_irreps_for_table_groups() {
    let text = "\
fittkit-problem v1
command nrd
order group-ring
prime 3
group table 3
row 0 1 2
row 1 2 0
row 2 0 1
matrix 1 1
entry 0 0 0:-2 1:1
irrep 3 1
image 1 1 0
irrep 3 1
image 1 0 1
";
    let (out, _, code) = run_with_file(text, &[]);
    assert_eq!(code, 0);
    assert!(out.contains("nrd: (-1, -2 + z3^1)"), "got: {out}");
    // dropping one orbit fails validation
    let partial = text.replace("irrep 3 1\nimage 1 0 1\n", "");
    let (_, err, code) = run_with_file(&partial, &[]);
    assert_eq!(code, 1);
    assert!(err.contains("squared dimensions"), "got: {err}");
}

#[test]
fn seed_flag_overrides_sampler() {
    let base = "fittkit-problem v1\ncommand intring\norder group-ring\nprime 3\ngroup symmetric 3\nsampler size 1 coeff 2 count 25 seed 9\n";
    let (out1, _, _) = run_with_file(base, &["--format", "machine"]);
    let (out2, _, _) = run_with_file(base, &["--format", "machine", "--seed", "9"]);
    assert_eq!(
        out1, out2,
        "explicit seed equal to the file seed is a no-op"
    );
}

#[test]
fn minor_cap_env_is_respected() {
    let text = "fittkit-problem v1\ncommand fitt-comm\nring int\nmatrix 6 3\nentry 0 0 0:2\nentry 1 1 0:3\nentry 2 2 0:5\n";
    let tmp = std::env::temp_dir().join("fittkit_cap_test.fitt");
    std::fs::write(&tmp, text).unwrap();
    let out = Command::new(exe())
        .args(["--input", tmp.to_str().unwrap()])
        .env("FITTKIT_MINOR_CAP", "2")
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&tmp);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("cap"), "cap error surfaced: {err}");
}

#[test]
fn higher_fitting_via_file() {
    let text = "fittkit-problem v1\ncommand fitt-comm\nring int\nhigher 1\nmatrix 2 2\nentry 0 0 0:2\nentry 1 1 0:4\n";
    let (out, _, code) = run_with_file(text, &[]);
    assert_eq!(code, 0);
    assert!(out.contains("ideal: (2) in Z"), "got: {out}");
}

#[test]
fn adjoint_command_prints_coefficient_maps() {
    // 1x1 zero over S3: the adjoint is the averaged commutator sum
    let text = "fittkit-problem v1\ncommand adjoint\norder group-ring\nprime 3\ngroup symmetric 3\nmatrix 1 1\nentry 0 0\n";
    let (out, _, code) = run_with_file(text, &[]);
    assert_eq!(code, 0);
    assert!(out.contains("adjoint 0 0: 0:1/3 3:1/3 4:1/3"), "got: {out}");
}
