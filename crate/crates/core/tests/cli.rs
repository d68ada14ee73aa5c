use std::process::Command;

use braid_inverse::cli::{run_with_output, Document, Format, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("braid-inverse").chain(args.iter().copied());
    let code = run_with_output(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn stdout(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

#[test]
fn lift_golden() {
    assert_eq!(
        stdout(&["lift", "--order", "7", "--method", "strengthen"]),
        "\
# lift
degree  coefficient
1       1/1
3       -1/24
5       3/640
7       -5/7168

note: seed = 1*q^1 + -1*q^-1
note: t lifts to sum of coefficient * seed^degree through order 7
"
    );
}

#[test]
fn lift_methods_are_byte_identical() {
    for order in 1..=25 {
        let n = order.to_string();
        for format in ["text", "json", "csv"] {
            let a = stdout(&["lift", "--order", &n, "--method", "strengthen", "--format", format]);
            let b = stdout(&["lift", "--order", &n, "--method", "reversion", "--format", format]);
            assert_eq!(a, b, "order {order} {format}");
        }
    }
    let seed = "2*q^1 + -2*q^0";
    assert_eq!(
        stdout(&["lift", "--order", "6", "--seed", seed]),
        stdout(&["lift", "--order", "6", "--seed", seed, "--method", "reversion"])
    );
}

#[test]
fn json_round_trips() {
    let commands: [&[&str]; 6] = [
        &["lift", "--order", "9"],
        &["qexpand", "--order", "11"],
        &["asymptotics", "--j", "1", "--orders", "7,9,11", "--float-digits", "20"],
        &["basis", "--balanced", "--r", "3"],
        &["trace", "--sequence", "harmonic", "--window", "8", "--jmax", "3"],
        &["reproduce", "--table", "zeta2-seq"],
    ];
    for args in commands {
        let mut args = args.to_vec();
        args.extend(["--format", "json"]);
        let json = stdout(&args);
        let doc = Document::from_json(&json).unwrap();
        assert_eq!(doc.render(Format::Json).unwrap(), json, "{args:?}");
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value["tables"].is_array());
    }
}

#[test]
fn rationals_serialize_as_fractions() {
    let json = stdout(&["qexpand", "--order", "7", "--format", "json"]);
    let doc = Document::from_json(&json).unwrap();
    let table = doc.table("qexpand").unwrap();
    let coefficients: Vec<&str> = table.rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(coefficients, ["1225/1024", "-245/3072", "49/5120", "-5/7168"]);
}

#[test]
fn csv_output_parses() {
    let text = stdout(&["asymptotics", "--j", "3", "--orders", "7,9", "--format", "csv", "--float-digits", "12"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["order", "coeff", "coeff_float[12]", "target[12]", "abs_error[12]"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][1], "-245/3072");
    assert_eq!(&rows[0][2], "-7.97526041667e-2");
}

#[test]
fn zmap_reports_residue_and_focus() {
    let out = stdout(&["zmap", "--braid", "tau^3", "--order", "5", "--focus", "3"]);
    assert!(out.contains("residue   1/1 t^3"), "{out}");
    assert!(out.contains("focussed on order 3 through order 5: false"));
    let out = stdout(&["zmap", "--braid", "q", "--order", "3"]);
    assert!(out.contains("3  1/48"));
}

#[test]
fn beta_verdicts() {
    let (code, out, _) = run(&["beta", "--s", "5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("5  3  0/1          PASS"), "{out}");
    let (code, out, _) = run(&["beta", "--s", "6"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("5/2"));
    let out = stdout(&["beta", "--s", "1", "--float-digits", "10"]);
    assert!(out.contains("10000  9.99968169e-1"), "{out}");
}

#[test]
fn basis_outputs() {
    let out = stdout(&["basis", "--balanced", "--r", "8", "--entry", "1,3"]);
    assert!(out.contains("7  -266681/176400"));
    let out = stdout(&["basis", "--balanced", "--r", "2", "--solve-t"]);
    assert!(out.contains("1         4/3"), "{out}");
    assert!(out.contains("-2        1/6"));
    let (code, _, err) = run(&["basis", "--r", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--balanced"));
}

#[test]
fn trace_verdicts() {
    let out = stdout(&["trace", "--sequence", "tauhat", "--window", "10", "--jmax", "5"]);
    assert!(out.contains("c          pass"), "{out}");
    let out = stdout(&["trace", "--sequence", "harmonic", "--window", "10"]);
    assert!(out.contains("c          fail"));
}

#[test]
fn trace_reads_sequence_files() {
    let dir = std::env::temp_dir().join(format!("braid-inverse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seq.json");
    std::fs::write(&path, r#"{"label": "pairs", "items": [{"1": "1", "-1": "-1"}, {"1": 1, "-1": -1}, {"1": "1/1", "-1": "-1"}, {"1": "1", "-1": "-1"}]}"#).unwrap();
    let out = stdout(&["trace", "--sequence", "file", "--file", path.to_str().unwrap(), "--window", "4"]);
    assert!(out.contains("sequence pairs over 4 terms"), "{out}");
    let (code, _, _) = run(&["trace", "--sequence", "file"]);
    assert_eq!(code, EXIT_USAGE);
    std::fs::write(&path, "[{\"1\": \"x\"}]").unwrap();
    let (code, _, err) = run(&["trace", "--sequence", "file", "--file", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["lift"][..],
        &["lift", "--order", "x"],
        &["lift", "--order", "0"],
        &["lift", "--order", "3", "--seed", "q"],
        &["bogus"],
        &["asymptotics", "--j", "2", "--orders", "7"],
        &["asymptotics", "--j", "1", "--orders", "7", "--float-digits", "9"],
        &["beta", "--s", "0"],
        &["basis", "--balanced", "--r", "1", "--entry", "0,1"],
        &["lift", "--order", "3", "--jobs", "0"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("reproduce"));
}

#[test]
fn reproduce_flags_known_misprints() {
    let (code, out, _) = run(&["reproduce", "--table", "q-expansion"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("11:3     -12705/131072  -12705/131072  -12705/13107   FLAGGED"), "{out}");
    let (code, out, _) = run(&["reproduce", "--table", "zeta2-seq", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc = Document::from_json(&out).unwrap();
    let table = doc.table("zeta2-seq").unwrap();
    let status = table.column("status").unwrap();
    let flagged: Vec<&str> = table.rows.iter().filter(|r| r[status] == "FLAGGED").map(|r| r[0].as_str()).collect();
    assert_eq!(flagged, ["7"]);
    assert!(doc.notes.iter().any(|n| n == "7 PASS, 1 FLAGGED, 0 FAIL"));
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["reproduce", "--table", "entries-15"];
    let serial = stdout(&args);
    let mut parallel = args.to_vec();
    parallel.extend(["--jobs", "4"]);
    assert_eq!(stdout(&parallel), serial);
    let a = stdout(&["basis", "--balanced", "--r", "7", "--entry", "1,5", "--jobs", "3"]);
    assert_eq!(a, stdout(&["basis", "--balanced", "--r", "7", "--entry", "1,5"]));
}

#[test]
fn exit_codes_are_distinct() {
    assert_ne!(EXIT_MISMATCH, EXIT_USAGE);
    assert_ne!(EXIT_MISMATCH, EXIT_OK);
}

#[test]
fn binary_honours_env_and_out_path() {
    let dir = std::env::temp_dir().join(format!("braid-inverse-bin-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_braid-inverse"))
        .args(["asymptotics", "--j", "1", "--orders", "7", "--format", "csv", "--out"])
        .arg(&path)
        .env("BRAID_INVERSE_FLOAT_DIGITS", "11")
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("order,coeff,coeff_float[11],"), "{text}");

    let output = Command::new(env!("CARGO_BIN_EXE_braid-inverse"))
        .args(["beta", "--s", "7"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&output.stdout).contains("PASS"));

    let output = Command::new(env!("CARGO_BIN_EXE_braid-inverse"))
        .args(["lift", "--order", "nope"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_USAGE));
    std::fs::remove_dir_all(&dir).unwrap();
}
