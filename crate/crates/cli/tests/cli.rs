use std::process::{Command, Output};

fn bsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsf"))
        .args(args)
        .env_remove("BSF_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trees_lists_every_tree() {
    let o = bsf(&["trees", "--degree", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 1 + 2 + 4);
    assert!(out.contains("(()()())\t4\t6\t4"));
    let csv = stdout(&bsf(&["trees", "--degree", "2", "--format", "csv"]));
    assert_eq!(csv, "encoding,size,sigma,factorial\n()\t1\t1\t1\n".replace('\t', ",") + "(()),2,1,2\n");
}

#[test]
fn hopf_antipode_of_cherry() {
    let o = bsf(&["hopf", "(()())", "antipode"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["-1 * (()())", "2 * ()(())", "-1 * ()()()"] {
        assert!(out.contains(line), "{out}");
    }
    let json: serde_json::Value = serde_json::from_slice(&bsf(&["--format", "json", "hopf", "()", "coproduct"]).stdout).unwrap();
    assert_eq!(json["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_reports_all_parts() {
    let out = stdout(&bsf(&["decompose", "(())"]));
    assert!(out.contains("idsqrt = 1/2*(()) + -1/8*()()"), "{out}");
    assert!(out.contains("minus = 1/2*()()"), "{out}");
}

#[test]
fn scheme_check_json() {
    let o = bsf(&["--format", "json", "scheme", "check", "ees27"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ord"], 2);
    assert_eq!(v["ord_plus"], 7);
    assert_eq!(v["explicit"], true);
}

#[test]
fn scheme_show_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("bsf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rk4.json");
    std::fs::write(&path, bsf(&["scheme", "show", "rk4"]).stdout).unwrap();
    let out = stdout(&bsf(&["scheme", "check", path.to_str().unwrap()]));
    assert!(out.contains("ord: 4"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ees_derive_matches_printed_tableau() {
    let o = bsf(&["ees", "derive", "--family", "2,5", "--x", "1/10"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("ord: 2"), "{out}");
    assert!(out.contains("ord+: 5"), "{out}");
    assert!(out.contains("matches printed tableau: yes"), "{out}");
}

#[test]
fn ees_scan_writes_csv() {
    let o = bsf(&["ees", "derive", "--family", "2,5", "--x", "scan", "--step", "0.1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("x,objective\n"));
    assert!(out.lines().count() > 3);
}

#[test]
fn stability_report_and_raster() {
    let out = stdout(&bsf(&["stability", "--scheme", "rk4", "--report"]));
    assert!(out.contains("negative real stability interval: 2.785"), "{out}");
    assert!(out.contains("symmetric component: a-stable"), "{out}");
    let path = std::env::temp_dir().join(format!("bsf-raster-{}.pgm", std::process::id()));
    let o = bsf(&["stability", "--scheme", "euler", "--raster", path.to_str().unwrap(), "--size", "20x10"]);
    assert!(o.status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P5\n20 10\n255\n"));
    assert_eq!(bytes.len(), b"P5\n20 10\n255\n".len() + 200);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn integrate_reports_reversal() {
    let o = bsf(&[
        "integrate", "--problem", "inverse-square", "--scheme", "midpoint", "--h", "0.1", "--t-end", "10", "--reverse",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("reversal error:")).unwrap();
    let e: f64 = line.split(':').nth(1).unwrap().trim().parse().unwrap();
    assert!(e < 1e-11, "{e}");
}

#[test]
fn integrate_streams_trajectory() {
    let out = stdout(&bsf(&["integrate", "--problem", "inverse-square", "--scheme", "rk4", "--h", "0.5", "--t-end", "1"]));
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "t,y1,y2,y3,y4");
    assert_eq!(lines.len(), 4);
}

#[test]
fn verify_subset_and_listing() {
    let o = bsf(&["verify", "hopf.", "--no-timing"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("pass") && out.contains("hopf.antipode"));
    assert_eq!(out, stdout(&bsf(&["verify", "hopf.", "--no-timing"])));
    let o = bsf(&["--format", "json", "verify", "rk.printed-dirk"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("documented-discrepancy"));
    assert!(stdout(&bsf(&["verify", "--list"])).contains("galactic.full.mae (extended)"));
}

#[test]
fn exit_codes() {
    assert_eq!(bsf(&["hopf", "(()", "antipode"]).status.code(), Some(2));
    assert_eq!(bsf(&["scheme", "check", "no-such-scheme"]).status.code(), Some(2));
    assert_eq!(bsf(&["verify", "nothing.matches"]).status.code(), Some(2));
    assert_eq!(bsf(&["ees", "derive", "--family", "3,9", "--x", "1"]).status.code(), Some(2));
    assert_eq!(bsf(&["--format", "json", "integrate", "--problem", "galactic", "--scheme", "rk4", "--h", "0.1", "--t-end", "1"]).status.code(), Some(2));
    assert_eq!(bsf(&["integrate", "--problem", "galactic", "--scheme", "rk4", "--h", "-1", "--t-end", "1"]).status.code(), Some(2));
    assert_eq!(bsf(&["--threads", "0", "trees"]).status.code(), Some(2));
    assert_eq!(bsf(&["--version"]).status.code(), Some(0));
}
