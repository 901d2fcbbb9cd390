use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    records: Vec<Value>,
    stdout: String,
    stderr: String,
}

fn zfn(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zfn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let records = stdout
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    Run {
        code: out.status.code().unwrap(),
        records,
        stdout,
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

const PETERSEN: &str = "IheA@GUAo";
const HEAWOOD: &str = "MhEGHC@AI?_PC@_G_";
const C5: &str = "Dhc";
const K33: &str = "EFz_";

#[test]
fn named_codes_match_reference_encoding() {
    // codes of the standard labelings, encoded independently
    for (name, code) in [
        ("petersen", PETERSEN),
        ("heawood", HEAWOOD),
        ("mcgee", "WhCGGD@?G?`@_@??_GG_@??C?GGC?H??C?@@?C?GG??o?@@"),
    ] {
        let run = zfn(&["named", name, "--emit", "g6"], "");
        assert_eq!((run.code, run.stdout.trim()), (0, code), "{name}");
    }
}

#[test]
fn number_records() {
    let run = zfn(&["number"], &format!("{PETERSEN}\n"));
    assert_eq!(run.code, 0);
    assert_eq!(run.records[0]["z"], 5);
    assert_eq!(run.records[0]["slack"], 0);

    let empty = zfn(&["number"], "");
    assert_eq!((empty.code, empty.stdout.as_str()), (0, ""));

    let mixed = zfn(
        &["number", "--oracle"],
        &format!("{C5}\nnot a graph\n{K33}\n"),
    );
    assert_eq!(mixed.code, 2);
    let status: Vec<&str> = mixed
        .records
        .iter()
        .map(|r| r["status"].as_str().unwrap())
        .collect();
    assert_eq!(status, ["ok", "error", "ok"]);
    assert_eq!(mixed.records[1]["input_index"], 1);
    assert_eq!(mixed.records[2]["z"], 4);
    assert_eq!(mixed.records[2]["oracle_z"], 4);
}

#[test]
fn key_order_is_stable() {
    let run = zfn(&["number"], &format!("{C5}\n{PETERSEN}\n"));
    let keys = |r: &Value| r.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    // serde_json sorts keys in Value maps, so compare the raw text instead
    let first = run.stdout.lines().next().unwrap();
    assert!(
        first.starts_with(r#"{"input_index":0,"graph6":"Dhc","status":"ok","n":5"#),
        "{first}"
    );
    assert_eq!(keys(&run.records[0]), keys(&run.records[1]));
}

#[test]
fn budget_turns_into_interval() {
    let run = zfn(&["number", "--budget", "2"], &format!("{HEAWOOD}\n"));
    assert_eq!(run.code, 0);
    let z = &run.records[0]["z"];
    if z.is_object() {
        assert!(z["lower"].as_u64().unwrap() <= 6 && z["upper"].as_u64().unwrap() >= 6);
    } else {
        assert_eq!(z, 6);
    }
}

#[test]
fn check_bound_records() {
    let run = zfn(
        &["check-bound", "--summary"],
        &format!("{PETERSEN}\n{HEAWOOD}\nC~\nCF\n"),
    );
    assert_eq!(run.code, 0, "{}", run.stdout);
    let r = &run.records;
    assert_eq!(
        (r[0]["slack"].clone(), r[1]["slack"].clone()),
        (0.into(), 0.into())
    );
    // K4 has girth 3 and δ = 3, the star K_{1,3} is acyclic
    assert_eq!(r[2]["status"], "ok");
    assert_eq!(r[2]["z"], 3);
    assert_eq!(r[3]["status"], "skipped");
    assert_eq!(r[4]["summary"]["records"], 4);
}

#[test]
fn lemmas_records() {
    let petersen = zfn(&["lemmas", "--minimum"], &format!("{PETERSEN}\n"));
    assert_eq!(petersen.code, 0);
    assert_eq!(petersen.records[0]["lemma_summary"]["fail"], 0);

    let c5 = zfn(&["lemmas", "--set", "0,1"], &format!("{C5}\n"));
    assert_eq!(c5.code, 0);
    let lemmas = &c5.records[0]["lemmas"];
    assert_eq!(lemmas["passed"], true);
    assert_eq!(lemmas["hypothesis"]["hypothesis_satisfied"], false);
    assert_eq!(lemmas["forcers"], serde_json::json!([0, 1, 2]));

    let k33 = zfn(&["lemmas", "--minimum"], &format!("{K33}\n"));
    assert_eq!(k33.code, 0);
    assert_eq!(k33.records[0]["status"], "skipped");

    let stalled = zfn(&["lemmas", "--set", "0,2"], &format!("{C5}\n"));
    assert_eq!(stalled.code, 2);
    assert_eq!(stalled.records[0]["status"], "error");

    let missing = zfn(&["lemmas"], &format!("{C5}\n"));
    assert_eq!(missing.code, 2);
}

#[test]
fn extremal_values_and_window() {
    let run = zfn(&["extremal", "7", "4", "--oracle"], "");
    assert_eq!(run.code, 0);
    let r = &run.records[0];
    assert_eq!(
        (
            r["formula"].clone(),
            r["oracle"].clone(),
            r["agree"].clone()
        ),
        (8.into(), 8.into(), true.into())
    );

    let mantel = zfn(&["extremal", "5", "3"], "");
    assert_eq!(mantel.records[0]["formula"], 6);

    let out_of_range = zfn(&["extremal", "20", "4"], "");
    assert_eq!(out_of_range.code, 2);
    assert!(
        out_of_range.stderr.contains("5 <= n <= 8"),
        "{}",
        out_of_range.stderr
    );
}

#[test]
fn named_reports() {
    let run = zfn(&["named", "mcgee"], "");
    assert_eq!(run.code, 0);
    let r = &run.records[0];
    assert_eq!(r["girth"], 7);
    // exhaustive check outside this code base: no 7-set of the McGee graph forces it
    assert_eq!(r["z"], 8);
    assert_eq!(r["lemma_summary"]["fail"], 0);

    let unknown = zfn(&["named", "frucht"], "");
    assert_eq!(unknown.code, 2);
    assert!(unknown.stderr.contains("petersen"));
}

#[test]
fn input_file_and_missing_file() {
    let dir = std::env::temp_dir().join(format!("zfn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two.g6");
    std::fs::write(&path, format!("{C5}\n\n{PETERSEN}\n")).unwrap();
    let run = zfn(&["number", path.to_str().unwrap()], "");
    assert_eq!(run.records.len(), 2);
    assert_eq!(run.records[1]["input_index"], 2);
    let missing = zfn(&["number", dir.join("absent.g6").to_str().unwrap()], "");
    assert_eq!(missing.code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
