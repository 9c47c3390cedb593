//! Golden command cases shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    ("spectrum_blowup_p3", &["spectrum", "--graph", "blowup(2, path(3))"]),
    ("support_p11_v4", &["support", "--graph", "path(11)", "--vertex", "4"]),
    ("cospectral_blowup_p4", &["cospectral", "--graph", "blowup(2,path(4))", "--pair", "0:1", "1:1"]),
    ("periodic_blowup3_p5", &["periodic", "--graph", "blowup(3,path(5))", "--vertex", "3"]),
    ("pst_k6", &["pst", "--graph", "complete(6)", "--vertex", "0"]),
    ("pgst_p11_v2", &["pgst", "--graph", "path(11)", "--vertex", "2", "--json-indent", "0"]),
    (
        "trace_star4",
        &["trace", "--graph", "blowup(2,star(4))", "--pair", "apex0", "apex1", "--window", "0", "2", "--steps", "1000"],
    ),
    ("predict_star2_q2", &["predict", "--graph", "cartesian(blowup(2,star(2)),hypercube(2))", "--vertex", "apex"]),
    ("validate_cone_c15", &["validate", "--graph", "cone(cycle(15))", "--vertex", "apex"]),
    ("sweep_paths", &["sweep", "--graph", "path({})", "--range", "2", "9", "--vertex", "2"]),
];

pub fn run(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qwalk")).args(args).output().expect("qwalk runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs every case twice and compares against the stored output.
pub fn check_goldens(bless: bool) -> Vec<String> {
    let mut failures = Vec::new();
    for (name, args) in CASES {
        let (first, code) = run(args);
        let (second, _) = run(args);
        if code != 0 {
            failures.push(format!("{name} exited with {code}"));
            continue;
        }
        if first != second {
            failures.push(format!("{name}: two runs differ"));
            continue;
        }
        let path = golden_dir().join(format!("{name}.out"));
        if bless {
            std::fs::write(&path, &first).unwrap();
            continue;
        }
        match std::fs::read(&path) {
            Ok(want) if want == first => {}
            Ok(_) => failures.push(format!("{name}: output differs from {}", path.display())),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    failures
}
