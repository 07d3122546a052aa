use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hoffman_core::bgw::{drad160, w10};
use hoffman_core::biangular::{biangular_expected, Variant};
use hoffman_core::hadamard::{skew_bush_order4, sylvester};
use hoffman_core::io::{write_gauss_matrix, write_group_ring, write_int_matrix};
use serde_json::Value;
use tempfile::TempDir;

fn hbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbound")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = hbound(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), v)
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {report}"))
}

#[test]
fn sylvester_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, r) = json(&["construct", "sylvester", "--k", "2", "--out-dir", out]);
    assert_eq!(code, 0, "{r}");
    let written = fs::read_to_string(dir.path().join("H.mat")).unwrap();
    assert_eq!(written, write_int_matrix(sylvester(2).matrix()));
    let (code, r) = json(&["verify", "hadamard", &path(dir.path(), "H.mat")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
}

#[test]
fn drad160_files_and_hoffman_partition() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, r) = json(&["construct", "drad160", "--out-dir", out]);
    assert_eq!(code, 0, "{r}");
    let c = drad160().unwrap();
    assert_eq!(
        fs::read_to_string(dir.path().join("A1.mat")).unwrap(),
        write_int_matrix(&c.twin.a1)
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("G.mat")).unwrap(),
        write_int_matrix(&c.g)
    );

    let (code, r) = json(&["verify", "drad", &path(dir.path(), "A1.mat")]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "doubly regular")["value"], "(160, 54, 18)");

    let (code, r) = json(&[
        "hoffman",
        &path(dir.path(), "A1.mat"),
        "--partition",
        &path(dir.path(), "blocks.txt"),
    ]);
    assert_eq!(code, 0, "{r}");
    assert!(check(&r, "Hoffman bound")["value"]
        .as_str()
        .unwrap()
        .ends_with("bound = 16"));
    for i in 0..10 {
        let part = check(&r, &format!("part {i}"));
        assert_eq!(part["status"], "pass");
        assert_eq!(part["value"], "size 16, condition (i) 12, condition (ii) 6");
    }

    let (code, r) = json(&["verify", "scheme", out]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(check(&r, "eigenmatrices P, Q")["status"], "pass");
}

#[test]
fn output_is_deterministic() {
    let run = || {
        let dir = TempDir::new().unwrap();
        let out = dir.path().to_str().unwrap();
        let construct = hbound(&[
            "construct",
            "biangular",
            "--n",
            "8",
            "--variant",
            "skew",
            "--out-dir",
            out,
        ]);
        let eigen = hbound(&["--json", "scheme", "eigen", out, "--seed", "3"]);
        let files: Vec<String> = ["M.mat", "A1.mat", "P.mat", "Q.mat"]
            .iter()
            .map(|f| fs::read_to_string(dir.path().join(f)).unwrap())
            .collect();
        (construct.stdout, eigen.stdout, files)
    };
    assert_eq!(run(), run());
}

#[test]
fn skew_bush_conversion_round_trip() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let (code, _) = json(&["construct", "skew-bush", "--out-dir", d.to_str().unwrap()]);
    assert_eq!(code, 0);
    let conv = d.join("conv");
    let (code, r) = json(&["convert", "h2d", &path(d, "H.mat"), "--out-dir", conv.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(fs::read_to_string(conv.join("blocks.txt")).unwrap(), "0 1\n2 3\n");
    let back = d.join("back");
    let (code, r) = json(&[
        "convert",
        "d2h",
        &path(&conv, "A.mat"),
        "--partition",
        &path(&conv, "blocks.txt"),
        "--out-dir",
        back.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(
        fs::read_to_string(back.join("H.mat")).unwrap(),
        write_int_matrix(skew_bush_order4().matrix())
    );
    let (code, r) = json(&["verify", "skew-bush", &path(&back, "H.mat")]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn scheme_check_pairs_rows_of_printed_p() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _) = json(&[
        "construct",
        "biangular",
        "--n",
        "4",
        "--variant",
        "skew",
        "--out-dir",
        d,
    ]);
    assert_eq!(code, 0);
    let t = biangular_expected(4, Variant::Skew).unwrap();
    fs::write(dir.path().join("P.mat"), write_gauss_matrix(&t.p)).unwrap();
    let (code, r) = json(&["verify", "scheme", d]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(
        check(&r, "eigenmatrices P, Q")["value"],
        "rows of P paired with columns of Q as [0, 1, 2, 4, 3]"
    );
}

#[test]
fn failures_carry_witnesses() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.mat");
    fs::write(&m, "2 2\n1 1\n1 1\n").unwrap();
    let (code, r) = json(&["verify", "hadamard", m.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    assert_eq!(check(&r, "HH^T = nI")["witness"], "cell (0, 1)");

    // A directed 3-cycle plus an isolated vertex is not normally regular.
    fs::write(&m, "4 4\n0 1 0 0\n0 0 1 0\n1 0 0 0\n0 0 0 0\n").unwrap();
    let (code, r) = json(&["verify", "nrd", m.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(check(&r, "normally regular")["witness"].is_string());

    let w = dir.path().join("w.txt");
    let mut rows = w10().to_rows();
    rows[0][1] = (rows[0][1] % 8) + 1;
    let bad = hoffman_core::bgw::GroupRingMatrix::from_rows(8, &rows).unwrap();
    fs::write(&w, write_group_ring(&bad)).unwrap();
    let (code, r) = json(&["verify", "bgw", w.to_str().unwrap()]);
    assert_eq!(code, 1, "{r}");
    fs::write(&w, write_group_ring(&w10())).unwrap();
    let (code, _) = json(&["verify", "bgw", w.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.mat");
    fs::write(&m, "2 2\n1 x\n1 1\n").unwrap();
    let (code, r) = json(&["verify", "hadamard", m.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert!(r["checks"][0]["witness"].as_str().unwrap().contains("line 2, column 3"));

    let out = hbound(&["verify", "hadamard", dir.path().join("missing.mat").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = hbound(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_of_four_cycle() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("c4.mat");
    fs::write(&m, "4 4\n0 0 1 0\n0 0 0 1\n0 1 0 0\n1 0 0 0\n").unwrap();
    let out = hbound(&["spectrum", m.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("[-1.000000000, 0.000000000, 0.000000000, 1.000000000]"),
        "{text}"
    );
    assert!(text.contains("theta_min: -1.000000000"), "{text}");
}
