mod common;

use std::path::Path;
use std::process::Command;

use oatrade::cli::run;
use oatrade::formats;
use oatrade::trades::verify_trade;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn oatrade(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("oatrade").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn rank_reports_match() {
    let r = oatrade(&["rank", "--t", "2", "--v", "3", "--k", "3"]);
    assert_eq!(
        (r.code, r.out.as_str()),
        (0, "rank=19 formula=19 nullity=8 MATCH\n")
    );
    let r = oatrade(&["rank", "--t", "1", "--v", "2", "--k", "4"]);
    assert_eq!(r.out, "rank=5 formula=5 nullity=11 MATCH\n");
    let r = oatrade(&["rank", "--t", "3", "--v", "2", "--k", "3"]);
    assert_eq!(r.out, "rank=8 formula=8 nullity=0 MATCH\n");
}

#[test]
fn t_above_k_is_a_usage_error() {
    for cmd in ["matrix", "rank"] {
        let r = oatrade(&[cmd, "--t", "4", "--v", "2", "--k", "3"]);
        assert_eq!(r.code, 2);
        assert!(r.err.contains("1 <= t <= k"), "{}", r.err);
    }
    let r = oatrade(&["rank", "--t", "0", "--v", "2", "--k", "3"]);
    assert_eq!(r.code, 2);
    let r = oatrade(&["rank", "--v", "2", "--k", "3"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--t"));
}

#[test]
fn matrix_market_has_eight_lines_for_m1_v2_k2() {
    let r = oatrade(&[
        "matrix", "--t", "1", "--v", "2", "--k", "2", "--format", "mm",
    ]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], formats::MATRIX_MARKET_HEADER);
    assert_eq!(lines.len() - 2, 8);
    assert!(r.err.contains("rows=4 cols=4 ones=8"));
}

#[test]
fn dense_matrix_is_the_fixture_picture() {
    let r = oatrade(&[
        "matrix", "--t", "2", "--v", "3", "--k", "3", "--format", "dense",
    ]);
    assert_eq!(r.code, 0);
    let body: Vec<&str> = r
        .out
        .lines()
        .skip(3)
        .map(|l| l.split_once(" | ").unwrap().1)
        .collect();
    assert_eq!(
        body,
        common::fixture("m2_v3_k3.txt").lines().collect::<Vec<_>>()
    );
}

#[test]
fn matrix_out_writes_file_and_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.mtx");
    let r = oatrade(&[
        "matrix",
        "--t",
        "2",
        "--v",
        "3",
        "--k",
        "3",
        "--format",
        "mm",
        "--out",
        path_str(&path),
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "M_2(3,3): rows=27 cols=27 ones=81\n");
    let parsed = formats::parse_matrix_market(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed.entries.len(), 81);
}

#[test]
fn matrix_size_guard() {
    let r = oatrade(&[
        "matrix",
        "--t",
        "2",
        "--v",
        "3",
        "--k",
        "3",
        "--max-ones",
        "80",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("81"), "{}", r.err);
}

#[test]
fn verify_order5_trade() {
    let path = common::fixture_path("trade_order5_volume19.txt");
    let r = oatrade(&["verify", "--in", path_str(&path)]);
    assert_eq!(r.code, 0);
    for n in 1..=4 {
        assert!(r.out.contains(&format!("condition {n} (")), "{}", r.out);
    }
    assert_eq!(r.out.matches(": PASS").count(), 5);
    assert!(r.out.ends_with("volume=19\n"));
}

#[test]
fn verify_edited_trade_names_row_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edited.trade");
    let text = common::fixture("trade_order5_volume19.txt").replacen(". . 2 3 1", ". . 4 3 1", 1);
    std::fs::write(&path, text).unwrap();
    let r = oatrade(&["verify", "--in", path_str(&path)]);
    assert_eq!(r.code, 1);
    assert!(
        r.out.contains("condition 3 (row balance): FAIL at row 0"),
        "{}",
        r.out
    );
    assert!(
        r.out
            .contains("condition 4 (column balance): FAIL at column 2"),
        "{}",
        r.out
    );
}

#[test]
fn verify_reports_parse_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.trade");
    std::fs::write(&path, "0 1\n1 0\n\n1 0\n0 z\n").unwrap();
    let r = oatrade(&["verify", "--in", path_str(&path)]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("line 5, field 2"), "{}", r.err);
}

#[test]
fn verify_cyclic_oa() {
    let path = common::fixture_path("cyclic_oa_v3.txt");
    let r = oatrade(&["verify", "--in", path_str(&path), "--input", "oa"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.contains("direct count: PASS"));
    assert!(r.out.contains("matrix check: PASS"));

    let r = oatrade(&[
        "verify",
        "--in",
        path_str(&path),
        "--input",
        "oa",
        "--lambda",
        "2",
    ]);
    assert_eq!(r.code, 1);
    assert!(
        r.out
            .contains("direct count: FAIL at (0,0)@{1,2} (count 1, expected 2)"),
        "{}",
        r.out
    );
}

#[test]
fn verify_frequency_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.freq");
    let b = oatrade::trades::basis_intercalate(&[1, 2, 1], 3).unwrap();
    std::fs::write(&path, formats::write_frequency(&b)).unwrap();
    let r = oatrade(&[
        "verify",
        "--in",
        path_str(&path),
        "--input",
        "frequency",
        "--t",
        "2",
        "--v",
        "3",
    ]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.contains("M_2(3,3) F = 0: PASS"));
    let r = oatrade(&[
        "verify",
        "--in",
        path_str(&path),
        "--input",
        "frequency",
        "--v",
        "3",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn decompose_order4_trade() {
    let path = common::fixture_path("trade_order4_five_intercalates.txt");
    let r = oatrade(&["decompose", "--in", path_str(&path)]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "5 terms\n+1 · B_(1,1,1)\n-1 · B_(1,1,2)\n+1 · B_(2,2,2)\n-1 · B_(2,2,3)\n+1 · B_(3,3,3)\nreconstruction: EXACT\n"
    );
}

#[test]
fn decompose_emits_intercalate_trades() {
    let dir = tempfile::tempdir().unwrap();
    let path = common::fixture_path("trade_order4_five_intercalates.txt");
    let r = oatrade(&[
        "decompose",
        "--in",
        path_str(&path),
        "--emit",
        path_str(dir.path()),
    ]);
    assert_eq!(r.code, 0);
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "B_1_1_1.trade",
            "B_1_1_2.trade",
            "B_2_2_2.trade",
            "B_2_2_3.trade",
            "B_3_3_3.trade"
        ]
    );
    for name in names {
        let trade =
            formats::parse_trade(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        let report = verify_trade(&trade);
        assert!(report.passed());
        assert_eq!(report.volume, 4);
    }
}

#[test]
fn decompose_order5_trade_and_empty_trade() {
    let path = common::fixture_path("trade_order5_volume19.txt");
    let r = oatrade(&["decompose", "--in", path_str(&path)]);
    assert_eq!(r.code, 0);
    assert!(r.out.ends_with("reconstruction: EXACT\n"));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.trade");
    std::fs::write(&empty, ". . .\n. . .\n. . .\n\n. . .\n. . .\n. . .\n").unwrap();
    let r = oatrade(&["decompose", "--in", path_str(&empty)]);
    assert_eq!((r.code, r.out.as_str()), (0, "0 terms\n"));
}

#[test]
fn decompose_names_the_violated_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("single.freq");
    std::fs::write(&path, "1,2,0 : 1\n").unwrap();
    let r = oatrade(&[
        "decompose",
        "--in",
        path_str(&path),
        "--input",
        "frequency",
        "--v",
        "3",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("row (1,2)@{1,2}"), "{}", r.out);
}

#[test]
fn reduce_weight_three_column() {
    let r = oatrade(&[
        "reduce", "--tuple", "1,1,1", "--t", "2", "--v", "2", "--k", "3",
    ]);
    assert_eq!(r.code, 0);
    let signs: Vec<char> = r
        .out
        .lines()
        .filter(|l| l.contains(" · C_("))
        .map(|l| l.chars().next().unwrap())
        .collect();
    assert_eq!(signs, ['+', '+', '+', '-', '-', '-', '+']);
    assert!(r.out.contains("7 terms"));
    assert!(r.out.ends_with("verified: EXACT\n"));
}

#[test]
fn reduce_low_weight_is_identity() {
    let r = oatrade(&["reduce", "--tuple", "0,2,1", "--t", "2", "--v", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("1 term (identity)"));
    assert!(r.out.contains("+1 · C_(0,2,1)"));
}

#[test]
fn reduce_weight_four_uses_low_weight_columns_only() {
    let r = oatrade(&[
        "reduce", "--tuple", "1,1,1,1", "--t", "2", "--k", "4", "--format", "records",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let terms: Vec<&str> = r.out.lines().filter(|l| l.starts_with("term ")).collect();
    assert!(!terms.is_empty());
    for term in terms {
        let weight: usize = term.rsplit_once("weight=").unwrap().1.parse().unwrap();
        assert!(weight <= 2, "{term}");
    }
    assert!(r.out.lines().last().unwrap().ends_with("verified=EXACT"));
}

#[test]
fn basis_lists_independent_intercalates() {
    let r = oatrade(&["basis", "--t", "2", "--v", "3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().filter(|l| l.starts_with("B_(")).count(), 8);
    assert!(r
        .out
        .ends_with("count=8 stacked_rank=8 nullity=8 annihilated=yes PASS\n"));
}

#[test]
fn records_are_key_value_and_deterministic() {
    let path = common::fixture_path("trade_order5_volume19.txt");
    let args = ["verify", "--in", path_str(&path), "--format", "records"];
    let first = oatrade(&args);
    let second = oatrade(&args);
    assert_eq!(first.out, second.out);
    for line in first.out.lines() {
        let mut fields = line.split(' ');
        let tag = fields.next().unwrap();
        assert!(!tag.contains('='));
        assert!(
            fields.all(|f| f
                .split_once('=')
                .is_some_and(|(k, v)| !k.is_empty() && !v.is_empty())),
            "{line}"
        );
    }
    assert!(first.out.contains("volume=19"));

    let r = oatrade(&[
        "rank", "--t", "2", "--v", "3", "--k", "3", "--format", "records",
    ]);
    assert_eq!(
        r.out,
        "rank t=2 v=3 k=3 rank=19 formula=19 nullity=8 status=MATCH\n"
    );
}

#[test]
fn unsupported_format_is_rejected() {
    let r = oatrade(&["rank", "--t", "2", "--v", "3", "--k", "3", "--format", "mm"]);
    assert_eq!(r.code, 2);
}

#[test]
fn binary_exit_status() {
    let exe = env!("CARGO_BIN_EXE_oatrade");
    let ok = Command::new(exe)
        .args(["rank", "--t", "2", "--v", "3", "--k", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "rank=19 formula=19 nullity=8 MATCH\n"
    );
    let bad = Command::new(exe)
        .args(["rank", "--t", "5", "--v", "3", "--k", "3"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
