use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn concrete() -> String {
    configs_dir().join("concrete.json").display().to_string()
}

fn seven_halves() -> String {
    configs_dir()
        .join("seven-halves.json")
        .display()
        .to_string()
}

fn kuroda(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kuroda"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn validate_reports_exact_value() {
    let out = kuroda(&["validate", "--config", &concrete()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["eq1_value"], "3/4");
    assert_eq!(v["report"]["valid"], true);
}

#[test]
fn invalid_and_malformed_configs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // Σ 3/(3+1) = 9/4 is not below 1.
    std::fs::write(
        &bad,
        r#"{"delta": [[-3,1,1,0],[1,-3,1,0],[1,1,-3,0]], "gamma": 1}"#,
    )
    .unwrap();
    let out = kuroda(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["eq1_value"], "9/4");
    let out = kuroda(&["tower", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, r#"{"delta": [[-1,3,3]], "gamma": 1}"#).unwrap();
    let out = kuroda(&["validate", "--config", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 rows"));

    assert_eq!(kuroda(&["tower"]).status.code(), Some(2));
    assert_eq!(kuroda(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn tower_of_concrete_example() {
    let out = kuroda(&["tower", "--config", &concrete()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["census"]["z1_equals_z2"], true);
    for t in v["towers"].as_array().unwrap() {
        assert_eq!(t["block_count"], 1);
        assert_eq!(t["total"], 3);
    }
}

#[test]
fn census_csv() {
    let out = kuroda(&["tower", "--config", &seven_halves(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("axis,n,in_z1,in_z2,label"));
    assert_eq!(lines.next(), Some(",,true,true,B"));
    assert!(text.contains("1,4,true,false,E_{1,4}"));
    assert!(text.contains("1,5,false,false,E_{1,5}"));
}

#[test]
fn membership_both_routes() {
    let out = kuroda(&[
        "member",
        "--config",
        &concrete(),
        "--expr",
        "(P1-P2)*(P2-P3)*(P3-P1)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["star"]["member"], true);
    assert_eq!(v["oracle"]["member"], true);

    let out = kuroda(&["member", "--config", &concrete(), "--expr", "P1*P2*P3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["agree"], true);
    assert_eq!(json(&out)["star"]["member"], false);
}

#[test]
fn parse_errors_exit_two() {
    for expr in ["P1^-1", "P1 + Y1", "Q1", "(P1"] {
        let out = kuroda(&["member", "--config", &concrete(), "--expr", expr]);
        assert_eq!(out.status.code(), Some(2), "{expr}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("1:"),
            "{expr}"
        );
    }
}

#[test]
fn cond_query_with_false_verdicts_succeeds() {
    let out = kuroda(&[
        "cond",
        "--config",
        &concrete(),
        "--r1",
        "1",
        "--r2",
        "0",
        "--r3",
        "0",
        "--axis",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["verdicts"],
        serde_json::json!({"cond1": false, "cond2": false, "cond3": false})
    );

    let out = kuroda(&[
        "cond",
        "--config",
        &concrete(),
        "--expr",
        "(P1-P2)*(P2-P3)*(P3-P1)",
        "--axis",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["cond3"], true);

    assert_eq!(
        kuroda(&["cond", "--config", &concrete(), "--axis", "4", "--r1", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn trace_csv() {
    let out = kuroda(&[
        "pullback",
        "--config",
        &seven_halves(),
        "--r1",
        "7",
        "--r3",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "n,k,r1,r3,pole\n0,1,7,2,true\n1,1,5,2,true\n2,1,3,2,true\n3,1,1,2,true\n4,2,1,1,false\n5,2,1,0,false\n"
    );
}

#[test]
fn pullback_region_inequality() {
    let out = kuroda(&["pullback", "--config", &seven_halves()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["region_inequality"]["poles"],
        serde_json::json!([0, 1, 2, 3])
    );
}

#[test]
fn empty_generator_list() {
    let out = kuroda(&["generators", "--config", &concrete(), "--degree-bound", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["generators"], serde_json::json!([]));
    let out = kuroda(&[
        "generators",
        "--config",
        &concrete(),
        "--degree-bound",
        "2",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n1,n2,n3,n4,degree\n0,0,0,1,1\n"));
}

#[test]
fn probe_is_deterministic_and_bounded() {
    let args = [
        "probe",
        "--config",
        &concrete(),
        "--expr",
        "Y1*Y2",
        "--lambda",
        "2",
        "--samples",
        "3000",
        "--seed",
        "7",
        "--k-max",
        "200",
    ];
    let (a, b) = (kuroda(&args), kuroda(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["probe"]["bound_holds"], true);
    assert_eq!(v["probe"]["status"], "evidence");

    let out = kuroda(&[
        "probe",
        "--config",
        &concrete(),
        "--expr",
        "P1",
        "--seed",
        "1",
        "--samples",
        "200",
    ]);
    assert_eq!(json(&out)["probe"]["divergence"], true);

    let out = kuroda(&[
        "probe",
        "--config",
        &concrete(),
        "--expr",
        "P1",
        "--seed",
        "1",
        "--lambda",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sandwich_and_cloud_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("sandwich.json");
    let out = kuroda(&[
        "sandwich",
        "--config",
        &concrete(),
        "--samples",
        "500",
        "--seed",
        "4",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["violations"], serde_json::json!([]));

    let cloud = dir.path().join("cloud.csv");
    let out = kuroda(&[
        "cloud",
        "--config",
        &concrete(),
        "--grid",
        "1",
        "--out",
        cloud.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&cloud).unwrap();
    assert!(text.starts_with("x,y,z,margin\n"));
    assert!(text.lines().count() <= 2);

    let missing = dir.path().join("missing").join("cloud.csv");
    let out = kuroda(&[
        "cloud",
        "--config",
        &concrete(),
        "--grid",
        "4",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_only_where_defined() {
    let out = kuroda(&["validate", "--config", &concrete(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rationals_parse_exactly() {
    use kuroda_cli::parse_rational;
    use num_rational::BigRational;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    assert_eq!(parse_rational("1/2").unwrap(), r(1, 2));
    assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
    assert_eq!(parse_rational("-1.5").unwrap(), r(-3, 2));
    assert_eq!(parse_rational("3").unwrap(), r(3, 1));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("1.").is_err());
    assert!(parse_rational("abc").is_err());
}
