use std::process::{Command, Output};

fn spiders(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiders"))
        .args(args)
        .env_remove("SPIDERS_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn chpoly_five() {
    let o = spiders(&["chpoly", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x^2 - 3x + 1");
}

#[test]
fn bfunc_prints_an_enclosure() {
    let o = spiders(&["--json", "bfunc", "6.25"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lo: f64 = v["lo"].as_str().unwrap().parse().unwrap();
    let hi: f64 = v["hi"].as_str().unwrap().parse().unwrap();
    assert!(lo < -7.097488 && -7.097489 < lo && hi >= lo && hi < -7.097488);
}

#[test]
fn exit_codes() {
    assert_eq!(spiders(&["charpoly", "star:3,x"]).status.code(), Some(1));
    let bad = spiders(&["charpoly", "star:3,x"]);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("`x`"));
    assert_eq!(spiders(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(spiders(&["--help"]).status.code(), Some(0));
    let unknown = spiders(&["--conductor-bound", "1", "--prime-budget", "1", "abelian", "x^2 - 5x + 3"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(spiders(&["abelian", "x^2 - 5x + 3"]).status.code(), Some(0));
}

#[test]
fn morrison_report() {
    let o = spiders(&["--json", "classify", "morrison", "--brute-max", "4", "--corner", "56,57"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["abelian"], serde_json::json!([[0, 0], [1, 1]]));
    assert_eq!(v["unknown"], 0);
}

#[test]
fn output_does_not_depend_on_workers() {
    let run = |w: &str| stdout(&spiders(&["--json", "--workers", w, "classify", "threespider", "--desk", "8"]));
    let one = run("1");
    assert_eq!(one, run("3"));
    let seq = stdout(&spiders(&["--json", "--sequential", "classify", "threespider", "--desk", "8"]));
    assert_eq!(one, seq);
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "conductor_bound = 1\nprime_budget = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    // the file's tiny conductor bound leaves the verdict open
    assert_eq!(spiders(&["--config", c, "abelian", "x^2 - 5x + 3"]).status.code(), Some(2));
    // a flag overrides the file
    assert_eq!(spiders(&["--config", c, "--conductor-bound", "100", "abelian", "x^2 - 5x + 3"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_spiders"))
        .args(["abelian", "x^2 - 5x + 3"])
        .env("SPIDERS_CONFIG", c)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&cfg, "conductor = 3\n").unwrap();
    assert_eq!(spiders(&["--config", c, "chpoly", "5"]).status.code(), Some(1));
}

#[test]
fn journal_resume_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let j = dir.path().join("j.jsonl");
    let csv = dir.path().join("out.csv");
    let (j, csv) = (j.to_str().unwrap(), csv.to_str().unwrap());
    assert!(spiders(&["--journal", j, "classify", "threespider", "--desk", "5"]).status.success());
    // an existing journal needs --resume
    assert_eq!(spiders(&["--journal", j, "classify", "threespider", "--desk", "6"]).status.code(), Some(1));
    let o = spiders(&["--journal", j, "classify", "threespider", "--desk", "6", "--resume", "--csv", csv]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("a,b,c,lambda_lo,lambda_hi,verdict,provenance\n"));
    assert_eq!(text.lines().count(), 1 + 56);
    assert_eq!(std::fs::read_to_string(j).unwrap().lines().count(), 56);
}

#[test]
fn bcert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let p = path.to_str().unwrap();
    assert!(spiders(&["bcert", "emit", "--out", p]).status.success());
    assert!(spiders(&["bcert", "verify", p]).status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["pieces"].as_array_mut().unwrap().pop();
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(spiders(&["bcert", "verify", p]).status.code(), Some(1));
}

#[test]
fn salem_and_spectra() {
    let o = spiders(&["salem", "x^6 - 2x^5 + 2x^4 - 3x^3 + 2x^2 - 2x + 1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("1.635573") && s.contains("x^3 - 2x^2 - x + 1") && s.contains("conductor 7"), "{s}");
    assert_eq!(spiders(&["salem", "x^2 - 3x + 1"]).status.code(), Some(1));
    let pf = stdout(&spiders(&["pf", "star:3,3,3"]));
    assert!(pf.contains("minpoly(λ²) = x^2 - 5x + 3"), "{pf}");
    let cp = stdout(&spiders(&["charpoly", "star:1,1,1"]));
    assert_eq!(cp.trim(), "x^4 - 3x^2");
}

#[test]
fn cyclo_tables_audit() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data");
    let o = spiders(&["table", "cyclo", "--data-dir", data]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "tables agree");
}
