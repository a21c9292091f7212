//! End-to-end tests that drive the compiled `mtopdiv` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mtopdiv"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process should exit normally")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

/// Minimal well-formedness check for the generated SVG: every open tag is
/// closed in order and the root element is `<svg>`.
fn assert_svg_well_formed(svg: &str) {
    assert!(svg.starts_with("<svg"), "must start with an svg root");
    let mut stack: Vec<String> = Vec::new();
    let mut rest = svg;
    while let Some(open) = rest.find('<') {
        rest = &rest[open + 1..];
        let close = rest.find('>').expect("unterminated tag");
        let tag = &rest[..close];
        rest = &rest[close + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            let top = stack.pop().unwrap_or_else(|| panic!("stray closing tag </{name}>"));
            assert_eq!(top, name, "mismatched closing tag");
        } else if !tag.ends_with('/') && !tag.starts_with('?') && !tag.starts_with('!') {
            let name: String =
                tag.chars().take_while(|c| !c.is_whitespace() && *c != '>').collect();
            stack.push(name);
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
    assert!(!svg.contains("NaN"), "SVG must not contain NaN coordinates");
}

// ---------------------------------------------------------------------------
// Synthesis and file formats
// ---------------------------------------------------------------------------

#[test]
fn synth_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.mtdb");
    let b = dir.path().join("b.mtdb");
    let c = dir.path().join("c.mtdb");
    assert_eq!(code(&run(&["synth", "--kind", "ring", "--n", "40", "--seed", "7", "--out", a.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["synth", "--kind", "ring", "--n", "40", "--seed", "7", "--out", b.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["synth", "--kind", "ring", "--n", "40", "--seed", "8", "--out", c.to_str().unwrap()])), 0);
    let (a, b, c) = (fs::read(a).unwrap(), fs::read(b).unwrap(), fs::read(c).unwrap());
    assert_eq!(a, b, "same seed must give identical bytes");
    assert_ne!(a, c, "different seeds must give different clouds");
}

#[test]
fn csv_and_mtdb_outputs_hold_the_same_cloud() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("x.csv");
    let mtdb = dir.path().join("x.mtdb");
    for out in [&csv, &mtdb] {
        let st = run(&[
            "synth", "--kind", "gauss-mixture", "--n", "30", "--sigma", "0.2", "--seed", "3",
            "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&st), 0, "{}", String::from_utf8_lossy(&st.stderr));
    }
    // Round both files through `barcode` against themselves: identical clouds
    // must produce identical tables if the CSV encoding was lossless.
    let t1 = run(&["barcode", csv.to_str().unwrap(), csv.to_str().unwrap()]);
    let t2 = run(&["barcode", mtdb.to_str().unwrap(), mtdb.to_str().unwrap()]);
    assert_eq!(code(&t1), 0);
    assert_eq!(stdout_str(&t1), stdout_str(&t2));
}

#[test]
fn synth_rejects_unknown_output_extension_without_format_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cloud.dat");
    let st = run(&["synth", "--kind", "disk", "--n", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&st), 2);
    let st = run(&["synth", "--kind", "disk", "--n", "5", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&st), 0);
}

#[test]
fn synth_rejects_malformed_centers() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let st = run(&[
        "synth", "--kind", "gauss-mixture", "--n", "5", "--centers", "0,0;nope",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&st), 2);
}

// ---------------------------------------------------------------------------
// Barcode command
// ---------------------------------------------------------------------------

/// Two interior points between two widely separated anchors: the quotient
/// construction yields one short and one long connectivity interval plus a
/// single loop interval with endpoints sqrt(3.25) and sqrt(7.25).
#[test]
fn barcode_reproduces_the_worked_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "1.5,1\n2.5,1\n");
    let q = write_file(dir.path(), "q.csv", "0,0\n4,0\n");
    let out = run(&["barcode", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let expected = format!(
        "dim,birth,death\n0,{z},{one}\n0,{z},{m}\n1,{m},{d}\n",
        z = "0.0000000000000000e0",
        one = "1.0000000000000000e0",
        m = "1.8027756377319946e0",  // sqrt(3.25)
        d = "2.6925824035672519e0",  // sqrt(7.25)
    );
    assert_eq!(stdout_str(&out), expected);
}

#[test]
fn identical_clouds_give_an_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "0,0\n1,0\n0.5,0.9\n2,2\n");
    let out = run(&["barcode", p.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_str(&out), "dim,birth,death\n");
}

#[test]
fn barcode_json_output_is_valid_and_matches_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "1.5,1\n2.5,1\n");
    let q = write_file(dir.path(), "q.csv", "0,0\n4,0\n");
    let out = run(&["barcode", p.to_str().unwrap(), q.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let json = stdout_str(&out);
    assert!(json.contains("\"intervals\""));
    assert_eq!(json.matches("\"dim\"").count(), 3);
    assert!(json.contains("1.8027756377319946e0"));
}

#[test]
fn barcode_svg_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "1.5,1\n2.5,1\n");
    let q = write_file(dir.path(), "q.csv", "0,0\n4,0\n");
    let svg_path = dir.path().join("bars.svg");
    let out = run(&[
        "barcode", p.to_str().unwrap(), q.to_str().unwrap(),
        "--svg", svg_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_svg_well_formed(&fs::read_to_string(svg_path).unwrap());
}

// ---------------------------------------------------------------------------
// Divergence command
// ---------------------------------------------------------------------------

#[test]
fn mtopdiv_is_byte_deterministic_and_direction_aware() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.mtdb");
    let q = dir.path().join("q.mtdb");
    run(&["synth", "--kind", "ring", "--n", "60", "--seed", "1", "--out", p.to_str().unwrap()]);
    run(&["synth", "--kind", "ring", "--n", "60", "--center", "1.5,0", "--seed", "2", "--out", q.to_str().unwrap()]);
    let args = [
        "mtopdiv", p.to_str().unwrap(), q.to_str().unwrap(),
        "--bp", "20", "--bq", "40", "--runs", "3", "--seed", "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout, "same seed must be byte-identical");

    let mut both_args = args.to_vec();
    both_args.extend_from_slice(&["--direction", "both"]);
    let both = run(&both_args);
    assert_eq!(code(&both), 0);
    let text = stdout_str(&both);
    assert!(text.contains("\"direction\": \"pq\"") && text.contains("\"direction\": \"qp\""));
}

#[test]
fn mtopdiv_rejects_oversized_subsamples() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "0,0\n1,1\n");
    let q = write_file(dir.path(), "q.csv", "2,2\n3,3\n");
    let out = run(&[
        "mtopdiv", p.to_str().unwrap(), q.to_str().unwrap(),
        "--bp", "99", "--bq", "1", "--runs", "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn thread_count_does_not_change_output_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.mtdb");
    let q = dir.path().join("q.mtdb");
    run(&["synth", "--kind", "disk", "--n", "50", "--seed", "1", "--out", p.to_str().unwrap()]);
    run(&["synth", "--kind", "disk", "--n", "50", "--center", "0.5,0", "--seed", "2", "--out", q.to_str().unwrap()]);
    let args = [
        "mtopdiv", p.to_str().unwrap(), q.to_str().unwrap(),
        "--bp", "15", "--bq", "30", "--runs", "4", "--seed", "9",
    ];
    let one = bin().args(args).env("MTOPDIV_THREADS", "1").output().unwrap();
    let two = bin().args(args).env("MTOPDIV_THREADS", "2").output().unwrap();
    assert_eq!(code(&one), 0, "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(code(&two), 0);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn junk_thread_count_is_a_usage_error() {
    let out = bin()
        .args(["synth", "--kind", "disk", "--n", "5", "--format", "csv", "--out", "/dev/null"])
        .env("MTOPDIV_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

// ---------------------------------------------------------------------------
// Sweep command
// ---------------------------------------------------------------------------

#[test]
fn rings_sweep_emits_one_row_per_offset() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("rings.csv");
    let svg_path = dir.path().join("rings.svg");
    let st = run(&[
        "sweep", "rings", "--range", "0:2:0.25", "--n", "30",
        "--bp", "10", "--bq", "20", "--mruns", "1", "--runs", "1",
        "--out", out_path.to_str().unwrap(), "--svg", svg_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&st), 0, "{}", String::from_utf8_lossy(&st.stderr));
    let table = fs::read_to_string(out_path).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "d,mtopdiv_mean,mtopdiv_stderr,h0_max_mean");
    assert_eq!(lines.len(), 1 + 9, "9 offsets from 0 to 2 in steps of 0.25");
    assert_svg_well_formed(&fs::read_to_string(svg_path).unwrap());
}

#[test]
fn decay_sweep_keeps_sizes_as_integers() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("decay.csv");
    let st = run(&[
        "sweep", "decay", "--sizes", "10,20", "--runs", "2",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&st), 0, "{}", String::from_utf8_lossy(&st.stderr));
    let table = fs::read_to_string(out_path).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "n,h1_max_mean");
    assert!(lines[1].starts_with("10,"), "{}", lines[1]);
    assert!(lines[2].starts_with("20,"), "{}", lines[2]);
}

#[test]
fn sweep_rejects_bad_ranges() {
    let st = run(&["sweep", "rings", "--range", "2:0:0.5"]);
    assert_eq!(code(&st), 2);
    let st = run(&["sweep", "disks", "--range", "1:2"]);
    assert_eq!(code(&st), 2);
}

// ---------------------------------------------------------------------------
// Oracle command
// ---------------------------------------------------------------------------

#[test]
fn oracle_agrees_on_the_fixture_and_catches_injected_faults() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "1.5,1\n2.5,1\n");
    let q = write_file(dir.path(), "q.csv", "0,0\n4,0\n");
    let ok = run(&["oracle", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(stdout_str(&ok).contains("all match"));

    let bad = run(&["oracle", p.to_str().unwrap(), q.to_str().unwrap(), "--inject-fault"]);
    assert_eq!(code(&bad), 1, "injected fault must be detected");
    assert!(String::from_utf8_lossy(&bad.stderr).contains("mismatch"));
}

#[test]
fn oracle_without_reference_cloud_checks_the_plain_barcode() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(dir.path(), "p.csv", "0,0\n1,0\n0.5,0.8\n");
    let out = run(&["oracle", p.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_str(&out).contains("all match"));
}

#[test]
fn oracle_refuses_large_instances() {
    let dir = tempfile::tempdir().unwrap();
    let rows: String = (0..20).map(|i| format!("{i},0\n")).collect();
    let p = write_file(dir.path(), "big.csv", &rows);
    let out = run(&["oracle", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

// ---------------------------------------------------------------------------
// Exit codes and argument handling
// ---------------------------------------------------------------------------

#[test]
fn missing_input_files_exit_with_io_code() {
    let out = run(&["barcode", "/no/such/p.csv", "/no/such/q.csv"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn malformed_input_files_exit_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_file(dir.path(), "good.csv", "0,0\n1,1\n");
    let bad = write_file(dir.path(), "bad.csv", "h1,h2\n1,2\nbroken,4\n");
    let out = run(&["barcode", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);

    // MTDB with trailing garbage is also a parse failure.
    let mtdb = dir.path().join("t.mtdb");
    run(&["synth", "--kind", "disk", "--n", "4", "--seed", "1", "--out", mtdb.to_str().unwrap()]);
    let mut bytes = fs::read(&mtdb).unwrap();
    bytes.push(0x00);
    fs::write(&mtdb, bytes).unwrap();
    let out = run(&["barcode", good.to_str().unwrap(), mtdb.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn clap_errors_and_help_use_standard_codes() {
    assert_eq!(code(&run(&["barcode"])), 2, "missing required args");
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["synth", "--help"])), 0);
    let out = run(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_str(&out).starts_with("mtopdiv"));
}
