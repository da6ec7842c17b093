use std::ffi::OsStr;
use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn mvlift<S: AsRef<OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvlift"))
        .args(args)
        .env_remove("MVLIFT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn provenance(text: &str) -> serde_json::Value {
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("# provenance: "))
        .expect("provenance line");
    serde_json::from_str(line).unwrap()
}

#[test]
fn mv_of_example_one() {
    let o = mvlift(&["mv", example("ex1.sys").to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn bigcd_lift_of_example_one() {
    let o = mvlift(&["lift", example("ex1.sys").to_str().unwrap(), "--strategy", "bigcd"]);
    assert!(o.status.success());
    let p = provenance(&stdout(&o));
    assert_eq!(p["mv_before"], 2);
    assert_eq!(p["mv_after"], 1);
    assert_eq!(p["strategy"], "bigcd");
}

#[test]
fn dependency_lift_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lifted.sys");
    let sec4 = example("sec4.sys");
    let o = mvlift(&[
        "lift",
        sec4.to_str().unwrap(),
        "--strategy",
        "lindep",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let p = provenance(&std::fs::read_to_string(&out).unwrap());
    assert_eq!((p["mv_before"].as_u64(), p["mv_after"].as_u64()), (Some(16), Some(12)));
    let v = mvlift(&["verify", sec4.to_str().unwrap(), out.to_str().unwrap()]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn every_emitted_lift_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str]); 6] = [
        ("ex1.sys", &["--strategy", "bigcd"]),
        ("ex1.sys", &["--strategy", "division", "--direction", "0,1", "--alpha", "1"]),
        ("ex1.sys", &["--strategy", "monomial", "--monomial", "1,1"]),
        ("division3.sys", &["--strategy", "division", "--direction", "0,0,-1", "--alpha", "2"]),
        ("isolated3.sys", &["--strategy", "auto"]),
        ("sec4.sys", &["--strategy", "lindep", "--direction", "0,0,-1", "--pair", "0,1"]),
    ];
    for (i, (name, extra)) in cases.iter().enumerate() {
        let out = dir.path().join(format!("{i}.sys"));
        let input = example(name);
        let mut args: Vec<&OsStr> = vec![OsStr::new("lift"), input.as_os_str()];
        args.extend(extra.iter().map(OsStr::new));
        args.extend([OsStr::new("-o"), out.as_os_str()]);
        let o = mvlift(&args);
        assert!(o.status.success(), "{name} {extra:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = mvlift(&[OsStr::new("verify"), input.as_os_str(), out.as_os_str()]);
        assert!(v.status.success(), "{name} {extra:?}: {}", stdout(&v));
    }
}

#[test]
fn tampered_lift_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lifted.sys");
    let ex1 = example("ex1.sys");
    let o = mvlift(&["lift", ex1.to_str().unwrap(), "--strategy", "bigcd", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap().replace("2*x2", "5*x2");
    std::fs::write(&out, text).unwrap();
    let v = mvlift(&["verify", ex1.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn analyze_output_is_deterministic() {
    let path = example("ex1.sys");
    let a = mvlift(&["analyze", path.to_str().unwrap()]);
    let b = mvlift(&["analyze", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["bkk_bound"], 2);
    let solvable: Vec<_> = report["degenerate_directions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["status"] == "solvable")
        .collect();
    assert_eq!(solvable.len(), 1);
    assert_eq!(solvable[0]["u"], serde_json::json!([0, 1]));
}

#[test]
fn solve2_json_is_deterministic_for_a_seed() {
    let path = example("generic2.sys");
    let run = || mvlift(&["--json", "--seed", "17", "solve2", path.to_str().unwrap()]).stdout;
    let a = run();
    assert_eq!(a, run());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["bkk_bound"], 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sys");
    std::fs::write(&bad, "vars: x y\nx + * y\nx - y\n").unwrap();
    assert_eq!(mvlift(&["mv", bad.to_str().unwrap()]).status.code(), Some(1));

    let missing = dir.path().join("missing.sys");
    assert_eq!(mvlift(&["mv", missing.to_str().unwrap()]).status.code(), Some(1));

    let rect = dir.path().join("rect.sys");
    std::fs::write(&rect, "vars: x y\nx + y + 1\n").unwrap();
    let o = mvlift(&["mv", rect.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[square_system]"));

    let o = mvlift(&["lift", example("generic2.sys").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = mvlift(&["lift", example("ex1.sys").to_str().unwrap(), "--strategy", "bigcd", "--direction", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("precondition failed ["));
}

#[test]
fn config_file_and_thread_variable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mvlift.conf");
    std::fs::write(&cfg, "# defaults\noracle.tol = 1e-9\njson = true\n").unwrap();
    let o = mvlift(&["--config", cfg.to_str().unwrap(), "solve2", example("ex1.sys").to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 1);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    let o = mvlift(&["--config", cfg.to_str().unwrap(), "mv", example("ex1.sys").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_mvlift"))
        .args(["mv", example("sec4.sys").to_str().unwrap()])
        .env("MVLIFT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "16");
}

#[test]
fn selftest_passes() {
    let o = mvlift(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
