use std::fs;
use std::process::{Command, Output};

fn unref(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unref"))
        .args(args)
        .env_remove("UNREF_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn kn_both_directions() {
    let out = unref(&["kn", "--set", "0,3,4,7,9,->"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4,3,3,1,1\n");
    let out = unref(&["kn", "--rows", "7,5,3,2,2,1,1", "--inverse"]);
    assert_eq!(stdout(&out), "0,3,6,8,9,11,12,14,->\n");
    let out = unref(&["kn", "--set", "0,3,6,8,9,11,12,14,->", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["first_column_hooks"], serde_json::json!([13, 10, 7, 5, 4, 2, 1]));
}

#[test]
fn check_reports_witness_and_doubling_cells() {
    let out = unref(&["check", "--partition", "2,3,9"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["unrefinable"], false);
    assert_eq!(v["definitional"]["witness"], serde_json::json!([4, 5, 9]));

    let out = unref(&["check", "--partition", "1,2,5,6,8", "--method", "geo"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["unrefinable"], true);
    let hooks: Vec<u64> = v["doubling_cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["hook"].as_u64().unwrap())
        .collect();
    assert_eq!(hooks, vec![4, 3]);
}

#[test]
fn render_ascii_and_svg() {
    let out = unref(&["render", "--partition", "1,2,5,6,8", "--hooks"]);
    assert_eq!(stdout(&out).lines().next(), Some("[8][5][4][1]"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("y.svg");
    let out = unref(&["render", "--partition", "1,2,5,6,8", "--hooks", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains(">8</text>"));
}

#[test]
fn enumerate_formats() {
    let out = unref(&["enumerate", "--weight", "8", "--min-parts", "2", "--json"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], r#"{"parts":[1,2,5],"weight":8,"n":4,"d":2}"#);

    let out = unref(&["enumerate", "--weight", "8", "--min-parts", "2", "--parity", "odd", "--csv"]);
    assert_eq!(
        stdout(&out),
        "parts;weight;n;d;lambda_t;missing_count;unrefinable;maximal\n1,7;8;4;2;7;5;false;false\n3,5;8;4;2;5;3;false;false\n"
    );

    let out = unref(&["enumerate", "--weight", "120", "--maximal", "--max-missing", "--json"]);
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = unref(&["enumerate", "--weight", "22", "--unrefinable"]);
    assert!(stdout(&out).contains("(1,2,5,6,8)"));
}

#[test]
fn bijection_subcommands() {
    let out = unref(&["bijection", "forward", "--partition", "1,2,3,4,5,6,7,8,11,14,16,17,26"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eta"]["partition"]["parts"], serde_json::json!([1, 3, 4]));

    let out = unref(&["bijection", "backward", "--eta", "1,3,4", "--case", "triangular", "--n", "15"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["partition"]["parts"], serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 11, 14, 16, 17, 26]));

    let out = unref(&["bijection", "backward", "--eta", "3,5", "--case", "triangular", "--n", "15"]);
    assert_eq!(out.status.code(), Some(2));

    let out = unref(&["bijection", "verify", "--case", "nt5", "--n", "15", "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);

    // The triangular count at n = 11 does not match |D_6|.
    let out = unref(&["bijection", "verify", "--case", "triangular", "--n", "11"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(unref(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(unref(&["enumerate"]).status.code(), Some(2));
    assert_eq!(unref(&["check", "--partition", "3,3"]).status.code(), Some(2));
    assert_eq!(unref(&["oeis-check", "--bfile", "/nonexistent/b.txt"]).status.code(), Some(3));
    let out = unref(&["verify", "--suite", "equivalence", "--max-weight", "30"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS equivalence"));
}

#[test]
fn oeis_check_against_local_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    // Values here come from this crate, not from any published table.
    fs::write(&path, "# local check\n3 1\n9 3\n10 1\n").unwrap();
    let out = unref(&["oeis-check", "--bfile", path.to_str().unwrap(), "--max", "40"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    fs::write(&path, "3 1\n9 4\n").unwrap();
    let out = unref(&["oeis-check", "--bfile", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failures"][0]["input"], "N=9");
    fs::write(&path, "3 x\n").unwrap();
    let out = unref(&["oeis-check", "--bfile", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["verify", "--suite", "counts", "--json"][..],
        &["verify", "--suite", "structure", "--csv"][..],
        &["enumerate", "--weight", "60", "--unrefinable", "--csv"][..],
        &["bijection", "verify", "--case", "triangular", "--n", "15", "--json"][..],
    ] {
        let a = unref(args);
        let b = Command::new(env!("CARGO_BIN_EXE_unref"))
            .args(args)
            .env("UNREF_JOBS", "1")
            .output()
            .unwrap();
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}
