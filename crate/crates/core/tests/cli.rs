use std::path::PathBuf;
use std::process::Command;

use corediag::cli::run;
use corediag::format::parse_kb;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("corediag").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn core_reports_the_redundant_constraint() {
    for alg in ["sequential", "corediag"] {
        let (code, out, _) = cli(&["core", &data("car_prime.kb"), "--algorithm", alg, "--stats"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "core: c1 c2 c3 c4 c5");
        assert_eq!(lines[1], "redundant: ca");
        assert!(lines[2].starts_with("tp_calls="));
    }
    let (_, out, _) = cli(&[
        "core",
        &data("car_prime.kb"),
        "--algorithm",
        "sequential",
        "--stats",
    ]);
    assert!(out.contains("tp_calls=6"));
}

#[test]
fn solve_with_requirements() {
    let (code, out, _) = cli(&[
        "solve",
        &data("car.kb"),
        "--requirements",
        &data("car_req.kb"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "type=city\nfuel=4l\nskibag=no\n4-wheel=no\npdc=yes\n");
}

#[test]
fn solve_reports_inconsistency() {
    let dir = tempfile::tempdir().unwrap();
    let req = dir.path().join("bad.req");
    std::fs::write(
        &req,
        "constraint r1: type = city\nconstraint r2: type = limo\n",
    )
    .unwrap();
    let (code, out, _) = cli(&[
        "solve",
        &data("car.kb"),
        "--requirements",
        req.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "INCONSISTENT\n");
}

#[test]
fn check_single_constraint() {
    assert_eq!(
        cli(&["check", &data("car_prime.kb"), "--constraint", "ca"]).1,
        "REDUNDANT\n"
    );
    assert_eq!(
        cli(&["check", &data("car.kb"), "--constraint", "c1"]).1,
        "NON-REDUNDANT\n"
    );
    assert_eq!(
        cli(&["check", &data("car.kb"), "--constraint", "nope"]).0,
        1
    );
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(cli(&[]).0, 1);
    assert_eq!(cli(&["frobnicate"]).0, 1);
    assert_eq!(cli(&["core", "/nonexistent.kb"]).0, 1);
    assert_eq!(cli(&["--help"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.kb");
    std::fs::write(
        &bad,
        "var a {x, y}\nconstraint k1: a = z\nconstraint k2: b = x\n",
    )
    .unwrap();
    let (code, _, err) = cli(&["core", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(err.lines().count(), 2, "{err}");
    assert!(err.lines().next().unwrap().contains(":2:"), "{err}");
}

#[test]
fn inconsistent_kb_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("inc.kb");
    std::fs::write(
        &kb,
        "var a {x, y}\nconstraint k1: a = x\nconstraint k2: a = y\n",
    )
    .unwrap();
    assert_eq!(cli(&["core", kb.to_str().unwrap()]).0, 2);
    assert_eq!(
        cli(&["core", kb.to_str().unwrap(), "--algorithm", "sequential"]).0,
        2
    );
}

#[test]
fn gen_writes_a_parseable_variant() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("car4.kb");
    let (code, _, err) = cli(&[
        "gen",
        &data("car.kb"),
        "--factor",
        "4",
        "--seed",
        "3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let kb = parse_kb(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(kb.constraints().len(), 20);
    assert_eq!(
        cli(&[
            "gen",
            &data("car.kb"),
            "--factor",
            "0",
            "--seed",
            "3",
            "-o",
            out.to_str().unwrap()
        ])
        .0,
        1
    );
}

#[test]
fn binary_runs_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let bin = env!("CARGO_BIN_EXE_corediag");
    let status = Command::new(bin)
        .args([
            "bench",
            &data("car.kb"),
            "--factors",
            "1,2",
            "--iterations",
            "2",
            "--seed",
            "1",
            "-o",
        ])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 2);
    assert!(String::from_utf8_lossy(&status.stdout).contains("corediag"));

    let inc = dir.path().join("inc.kb");
    std::fs::write(&inc, "var a {x}\nconstraint k1: a != x\n").unwrap();
    let status = Command::new(bin).arg("core").arg(&inc).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
}
