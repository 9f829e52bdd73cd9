use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const HS_EXAMPLE: &str = "space 4 2 2 2 2
0 0 0 0 0
0 1 1 1 1
1 0 1 1 0
1 1 0 0 1
2 0 1 0 1
2 1 0 1 0
3 0 0 1 1
3 1 1 0 0
";

const EVEN4: &str = "space 2 2 2 2
0 0 0 0
1 1 0 0
1 0 1 0
0 1 1 0
1 0 0 1
0 1 0 1
0 0 1 1
1 1 1 1
";

fn perfmix(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfmix"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stdout);
    let start = text.find('{').expect("certificate on stdout");
    serde_json::from_str(&text[start..]).expect("valid JSON")
}

#[test]
fn verify_perfect_example() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("hs_example.code"), HS_EXAMPLE).unwrap();
    let o = perfmix(dir.path(), &["verify", "perfect", "--in", "hs_example.code"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["e"], 1);
    assert_eq!(v["rho"], 1);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["config"]["command"]["subcommand"], "verify");
}

#[test]
fn quasi_perfect_fails() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("even4.code"), EVEN4).unwrap();
    let o = perfmix(dir.path(), &["verify", "perfect", "--in", "even4.code"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_out(&o);
    assert_eq!(v["perfect"]["quasi_perfect"], true);
    assert_eq!(v["verdict"], "FAIL");
}

#[test]
fn grm_table_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = perfmix(dir.path(), &["grm", "--q", "3", "--m", "2", "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let row = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|t| t.len() > 3 && t[..3] == ["3", "2", "2"])
        .expect("row r = 2");
    // n, k by formula, k by rank, d by formula, d measured
    assert_eq!(row[3..8], ["9", "6", "6", "3", "3"]);
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(perfmix(dir.path(), &["nonsense"]).status.code(), Some(2));
    assert_eq!(perfmix(dir.path(), &["grm", "--q", "3"]).status.code(), Some(2));
    let o = perfmix(dir.path(), &["--gate", "300000000", "construct", "thm4", "--out", "x.code"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
    assert!(!dir.path().join("x.code").exists());
}

#[test]
fn no_output_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    // (2, 1) is excluded from the main construction
    let o = perfmix(dir.path(), &["construct", "thm4", "--q", "2", "--m", "1", "--out", "c.code"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    // a gate below |V| refuses the perfection scan before anything is written
    let o = perfmix(dir.path(), &["--gate", "50", "construct", "thm4", "--out", "c.code"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn construct_writes_code_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let o = perfmix(dir.path(), &["construct", "thm4", "--q", "3", "--m", "1", "--out", "t.code"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.code.json")).unwrap()).unwrap();
    assert_eq!(cert, json_out(&o));
    assert_eq!(cert["construction"], "thm4");
    assert_eq!(cert["space_size"], "81");
    assert_eq!((cert["code_size"].as_u64(), cert["d"].as_u64()), (Some(9), Some(3)));
    assert_eq!((cert["e"].as_u64(), cert["rho"].as_u64()), (Some(1), Some(1)));
    let o = perfmix(dir.path(), &["verify", "perfect", "--in", "t.code"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(perfmix(d, &["construct", "hs", "--out", "hs.code"]).status.success());
    let text = std::fs::read_to_string(d.join("hs.code")).unwrap();
    assert_eq!(text, HS_EXAMPLE);
    let code = perfmix::space::parse_code(&text).unwrap();
    assert_eq!(perfmix::space::format_code(&code), text);

    assert!(perfmix(d, &["partition", "--q", "2", "--m", "2", "--out", "p.part"]).status.success());
    let text = std::fs::read_to_string(d.join("p.part")).unwrap();
    let p = perfmix::partition::parse_partition(&text).unwrap();
    assert_eq!(perfmix::partition::format_partition(&p).unwrap(), text);
    let o = perfmix(d, &["partition", "--kind", "file", "--in", "p.part", "--q", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));

    let o = perfmix(d, &["qgroup", "--order", "4", "--arity", "2", "--index", "1", "--out", "g.qg", "--to-code", "g.code"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(d.join("g.qg")).unwrap();
    let g = perfmix::mdsq::parse_quasigroup(&text).unwrap();
    assert_eq!(perfmix::mdsq::format_quasigroup(&g), text);
    assert_eq!(perfmix(d, &["verify", "mds2", "--in", "g.code"]).status.code(), Some(0));
}

#[test]
fn theorem4_matches_example_up_to_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("hs.code"), HS_EXAMPLE).unwrap();
    assert!(perfmix(d, &["construct", "thm4", "--out", "t.code"]).status.success());
    let o = perfmix(d, &["equiv", "--a", "t.code", "--b", "hs.code"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["result"], "equivalent");
    let broken = HS_EXAMPLE.replace("3 1 1 0 0", "3 1 1 1 1");
    std::fs::write(d.join("broken.code"), broken).unwrap();
    let o = perfmix(d, &["equiv", "--a", "t.code", "--b", "broken.code"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["result"], "nonequivalent");
    std::fs::write(d.join("even4.code"), EVEN4).unwrap();
    let o = perfmix(d, &["equiv", "--a", "t.code", "--b", "even4.code"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_is_reproducible() {
    let (x, y) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["census", "--q", "3", "--m1", "1", "--m2", "1", "--limit", "20", "--seed", "11", "--out", "r.json"];
    assert!(perfmix(x.path(), &args).status.success());
    assert!(perfmix(y.path(), &args).status.success());
    let a = std::fs::read(x.path().join("r.json")).unwrap();
    assert_eq!(a, std::fs::read(y.path().join("r.json")).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["report"]["assignments_tried"], 20);
    assert!(v["report"]["distinct_code_count"].as_u64().unwrap() >= 2);
}

#[test]
fn census_counts_classes_of_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("hs.code"), HS_EXAMPLE).unwrap();
    std::fs::write(d.join("broken.code"), HS_EXAMPLE.replace("3 1 1 0 0", "3 1 1 1 1")).unwrap();
    assert!(perfmix(d, &["construct", "thm4", "--out", "t.code"]).status.success());
    let o = perfmix(d, &["census", "--codes", "t.code", "hs.code", "broken.code"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_out(&o)["report"];
    assert_eq!(r["distinct_code_count"], 3);
    assert_eq!(r["nonequivalent_lower_bound"], 2);
    assert_eq!(r["undecided_pairs"], 0);
}

#[test]
fn thread_cap_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_perfmix"))
        .current_dir(dir.path())
        .env("PERFMIX_THREADS", "2")
        .args(["mds2", "--q", "3", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["config"]["threads"], "2");
    let o = Command::new(env!("CARGO_BIN_EXE_perfmix"))
        .env("PERFMIX_THREADS", "zero")
        .args(["mds2", "--q", "3", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
