use std::process::{Command, Output};

fn linstark(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linstark"))
        .args(args)
        .env_remove("LINSTARK_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn expand_even_second_order_json() {
    let o = linstark(&["expand", "--parity", "even", "--order", "2", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"R1":"0","R2":"-5/9"}"#);
}

#[test]
fn expand_bouncer_is_binomial() {
    let o = linstark(&["expand", "--system", "bouncer", "--order", "4", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), r#"{"R1":"2/3","R2":"-1/9","R3":"4/81","R4":"-7/243"}"#);
}

#[test]
fn expand_csv_shows_polynomials() {
    let o = linstark(&["expand", "--parity", "odd", "--order", "4"]);
    assert_eq!(stdout(&o), "coefficient,value\nR1,0\nR2,-7/9\nR3,0\nR4,4/243*x^3 - 19/243\n");
}

#[test]
fn stark_odd_reports_coefficient_and_root_solve() {
    let o = linstark(&[
        "stark",
        "--system",
        "symmetric",
        "--parity",
        "odd",
        "--n",
        "1",
        "--delta",
        "0.1",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    let r2 = rows.iter().find(|r| r["quantity"] == "R2" && r["method"] == "root_solve").unwrap();
    assert_eq!(r2["exact"], "-7/9");
    assert!(r2["rel_error"].as_f64().unwrap() < 1e-6);
    assert!(rows.iter().any(|r| r["method"] == "fd_oracle" && r["passed"] == true));
    for r in rows {
        assert_eq!(r["rho"], 1.0);
        assert_eq!(r["e0"], 1.0);
    }
}

#[test]
fn stark_bouncer_rows_pass() {
    let o = linstark(&["stark", "--system", "bouncer", "--n", "1", "--delta", "0.1", "--format", "json"]);
    assert!(o.status.success());
    let rows = json(&o);
    let exact: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["method"] == "expansion_engine")
        .map(|r| r["exact"].as_str().unwrap())
        .collect();
    assert_eq!(exact, ["2/3", "-1/9", "4/81"]);
}

#[test]
fn sumrule_odd7() {
    let o = linstark(&["sumrule", "--family", "odd7", "--n", "1", "--kmax", "2000", "--format", "json"]);
    assert!(o.status.success());
    let row = &json(&o)[0];
    assert!(row["rel_error"].as_f64().unwrap() < 1e-6);
    assert_eq!(row["passed"], true);
}

#[test]
fn sumrule_flags_short_sums() {
    let o = linstark(&["sumrule", "--family", "bouncer", "--n", "3", "--kmax", "20"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tight_tolerance_from_environment_fails() {
    let o = Command::new(env!("CARGO_BIN_EXE_linstark"))
        .args(["stark", "--parity", "even", "--delta", "0.2", "--no-oracle"])
        .env("LINSTARK_TOL", "1e-15")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",1e-15,false,"));
}

#[test]
fn invalid_input_exits_nonzero() {
    for args in [
        &["stark", "--bogus"][..],
        &["stark", "--parity", "odd", "--delta", "1.5"],
        &["stark", "--parity", "odd", "--n", "0"],
        &["stark"],
        &["expand", "--parity", "odd", "--order", "9"],
        &["expand", "--system", "bouncer", "--parity", "odd"],
        &["zeros", "--count", "0"],
        &["--mass", "-1", "spectrum"],
        &["--tol", "0", "zeros"],
        &["verify", "--criterion", "11"],
    ] {
        let o = linstark(args);
        assert!(!o.status.success(), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("linstark-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.csv");
    let p = path.to_str().unwrap();
    let o = linstark(&["spectrum", "--count", "6", "--out", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    linstark(&["spectrum", "--count", "6", "--out", p]);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(1).unwrap().starts_with("symmetric,even,1,0.0,energy,1.01879297164747,"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn physical_units_scale_energies() {
    let o = linstark(&[
        "--mass", "2", "--slope", "3", "--hbar", "0.5", "spectrum", "--system", "bouncer", "--count", "1",
        "--format", "json",
    ]);
    let row = &json(&o)[0];
    let rho = (0.25f64 / 12.0).cbrt();
    assert!((row["rho"].as_f64().unwrap() - rho).abs() < 1e-14);
    let e = row["analytic_value"].as_f64().unwrap();
    assert!((e - 2.338107410459767 * 3.0 * rho).abs() < 1e-13);
}

#[test]
fn zeros_table() {
    let o = linstark(&["zeros", "--count", "3", "--format", "json"]);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert_eq!(rows[0]["quantity"], "zeta");
    assert_eq!(rows[1]["quantity"], "chi");
    assert_eq!(rows[1]["analytic_value"], 1.01879297164747);
}

#[test]
fn verify_single_criterion() {
    let o = linstark(&["verify", "--criterion", "1", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)[0]["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("[PASS] criterion  1"));
}
