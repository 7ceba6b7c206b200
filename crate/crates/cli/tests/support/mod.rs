#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// A CLI invocation whose standard output is pinned by a golden file.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase { name: "verify_running_example", args: &["verify", "@running_example.json"], exit: 0 },
    GoldenCase { name: "verify_two_dim", args: &["verify", "@two_dim.json"], exit: 0 },
    GoldenCase { name: "verify_mixed_2d", args: &["verify", "@mixed_2d.json"], exit: 0 },
    GoldenCase { name: "verify_density_one_overlap", args: &["verify", "@density_one_overlap.json"], exit: 1 },
    GoldenCase { name: "verify_uncovered", args: &["verify", "@uncovered.json"], exit: 1 },
    GoldenCase { name: "identity_running_example", args: &["identity", "@running_example.json"], exit: 0 },
    GoldenCase { name: "identity_mixed_2d", args: &["identity", "@mixed_2d.json"], exit: 0 },
    GoldenCase { name: "identity_uncovered", args: &["identity", "@uncovered.json"], exit: 1 },
    GoldenCase { name: "witness_running_example", args: &["witness", "@running_example.json"], exit: 0 },
    GoldenCase { name: "witness_two_dim", args: &["witness", "@two_dim.json"], exit: 0 },
    GoldenCase { name: "witness_mixed_2d", args: &["witness", "@mixed_2d.json"], exit: 0 },
    GoldenCase { name: "witness_density_one_overlap", args: &["witness", "@density_one_overlap.json"], exit: 1 },
    GoldenCase {
        name: "search_d1_n4_distinct",
        args: &["search", "--dim", "1", "--max-n", "4", "--distinct-shapes", "--exclude-trivial"],
        exit: 0,
    },
    GoldenCase { name: "search_d1_n4", args: &["search", "--dim", "1", "--max-n", "4", "--exclude-trivial"], exit: 0 },
    GoldenCase { name: "search_d2_n2", args: &["search", "--dim", "2", "--max-n", "2", "--exclude-trivial"], exit: 0 },
    GoldenCase {
        name: "search_d2_n3_k3",
        args: &["search", "--dim", "2", "--max-n", "3", "--exclude-trivial", "--max-cosets", "3"],
        exit: 0,
    },
    GoldenCase {
        name: "poles_running_example_numeric",
        args: &["poles", "@running_example.json", "--point", "1/4", "--numeric"],
        exit: 0,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn data(name: &str) -> PathBuf {
    crate_dir().join("data").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(format!("{name}.json"))
}

/// Replace `@file` arguments with paths into the bundled data directory.
pub fn resolve(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => data(file).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect()
}

pub struct Run {
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub code: i32,
}

/// Run the compiled binary with the given extra environment.
pub fn run_binary(args: &[String], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tiling"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: out.stdout,
        stderr: out.stderr,
        code: out.status.code().unwrap_or(-1),
    }
}

pub fn read_golden(name: &str) -> Option<Vec<u8>> {
    std::fs::read(golden_path(name)).ok()
}

pub fn write_golden(name: &str, bytes: &[u8]) {
    let path = golden_path(name);
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(path, bytes).unwrap();
}
