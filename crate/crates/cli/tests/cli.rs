use std::fs;
use std::process::{Command, Output};

use kh3::BigradedGroups;

fn kh3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kh3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trefoil_table() {
    let o = kh3(&["compute", "--word", "abab", "--ring", "Z", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Z/2"));
    assert!(s.contains("oracle: MATCH"));
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(
        rows[0].split_whitespace().collect::<Vec<_>>(),
        ["j\\i", "0", "1", "2", "3"]
    );
}

#[test]
fn json_round_trips() {
    let o = kh3(&[
        "compute",
        "--class",
        "omega5",
        "--k",
        "1",
        "--l",
        "2",
        "--reduced",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let g = BigradedGroups::from_json(stdout(&o).trim()).unwrap();
    let w =
        kh3::murasugi_word(&kh3::MurasugiSpec::with_l(kh3::MurasugiClass::Omega5, 1, 2)).unwrap();
    assert_eq!(g, kh3::khovanov_homology(&w, true));
    assert_eq!(BigradedGroups::from_json(&g.to_json()).unwrap(), g);
}

#[test]
fn field_output() {
    let o = kh3(&[
        "compute", "--word", "abab", "--ring", "F2", "--output", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let total: u64 = v
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["dim"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 6);
    let o = kh3(&["compute", "--word", "abab", "--ring", "q"]);
    assert!(stdout(&o).contains('Q'));
}

#[test]
fn exit_codes() {
    assert_eq!(kh3(&["compute", "--word", "abx"]).status.code(), Some(2));
    assert_eq!(kh3(&["compute"]).status.code(), Some(2));
    assert_eq!(
        kh3(&["compute", "--class", "omega9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        kh3(&["compute", "--class", "omega6", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kh3(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_reports_per_case() {
    let o = kh3(&["verify", "torus", "--kmax", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 8);
    assert!(lines
        .iter()
        .all(|l| l["pass"] == true && l["claim-id"].is_string()));
    let o = kh3(&[
        "verify",
        "oracle",
        "--maxlen",
        "3",
        "--random",
        "5",
        "--randlen",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn sweep_files() {
    let dir = tempfile::tempdir().unwrap();
    let words = dir.path().join("words.txt");
    fs::write(&words, "abab\nabx\nababab\n").unwrap();
    let out = dir.path().join("out");
    let o = kh3(&["sweep", words.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
        .collect();
    assert_eq!(json.len(), 2);
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    let rows: Vec<&str> = summary.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("1,abab,1,4,2,true,"));
    assert!(rows[2].contains("invalid character"));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
}

#[test]
fn sweep_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let words = dir.path().join("empty.txt");
    fs::write(&words, "").unwrap();
    let out = dir.path().join("out");
    let o = kh3(&["sweep", words.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(out.join("summary.csv"))
            .unwrap()
            .lines()
            .count(),
        1
    );
}
