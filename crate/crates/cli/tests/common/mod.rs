#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mirrorfield"));
    cmd.env_remove("MIRRORFIELD_THREADS");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn goldens_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens")
}

const SWEEP: [&str; 6] = ["--k0x-min", "0.01", "--k0x-max", "10", "--points", "1000"];

/// Rate sweeps for the perfect, symmetric (r = t) and lossless mirror
/// families, all with a dipole parallel to the mirror unless noted.
pub const GOLDENS: &[(&str, &[&str])] = &[
    ("perfect-mu0", &["--preset", "perfect", "--mu", "0"]),
    ("perfect-mu0.5", &["--preset", "perfect", "--mu", "0.5"]),
    ("perfect-mu1", &["--preset", "perfect", "--mu", "1"]),
    (
        "symmetric-r0",
        &["--preset", "symmetric", "--r", "0", "--t", "0"],
    ),
    (
        "symmetric-r0.35",
        &["--preset", "symmetric", "--r", "0.35", "--t", "0.35"],
    ),
    (
        "symmetric-r0.7071",
        &[
            "--preset",
            "symmetric",
            "--r",
            "0.7071067811865476",
            "--t",
            "0.7071067811865476",
        ],
    ),
    ("lossless-r0", &["--preset", "lossless", "--r", "0"]),
    ("lossless-r0.5", &["--preset", "lossless", "--r", "0.5"]),
    ("lossless-r1", &["--preset", "lossless", "--r", "1"]),
];

/// Run one golden sweep into `dir`, returning the CSV path.
pub fn regenerate(name: &str, args: &[&str], dir: &Path) -> PathBuf {
    let out = dir.join(format!("{name}.csv"));
    let mut full = vec!["rates-scan"];
    full.extend_from_slice(args);
    full.extend_from_slice(&SWEEP);
    let status = bin()
        .args(&full)
        .arg("--output")
        .arg(&out)
        .status()
        .expect("binary runs");
    assert!(status.success(), "rates-scan {name} failed");
    out
}

pub fn sidecar(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Columns of a CSV file with a header line, parsed as floats.
pub fn read_columns(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let mut cols = vec![Vec::new(); header.len()];
    for line in lines {
        for (c, v) in line.split(',').enumerate() {
            cols[c].push(v.parse().unwrap());
        }
    }
    (header, cols)
}
