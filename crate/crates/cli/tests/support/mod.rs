//! Fixed invocations whose output is stored under `tests/golden`.
//!
//! Set `WSIM_BLESS=1` to rewrite the stored files from the current binary.

#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: Option<&'static str>,
    pub exit_code: i32,
}

pub const MALFORMED: &str = "{\n  \"n\": 3,\n  \"coeffs\": [0.6, 0.8 0.0]\n}\n";

pub const CASES: [GoldenCase; 5] = [
    GoldenCase {
        name: "concurrence_w3_pair",
        args: &["concurrence", "inputs/w3_uniform.json", "--pair", "1,2"],
        stdin: None,
        exit_code: 0,
    },
    GoldenCase {
        name: "qst_w5",
        args: &[
            "qst",
            "inputs/w5_uniform.json",
            "--alpha",
            "0.6",
            "--beta",
            "0.8",
            "--seed",
            "7",
            "--trials",
            "1000",
        ],
        stdin: None,
        exit_code: 0,
    },
    GoldenCase {
        name: "prepare_w3_anti",
        args: &[
            "prepare",
            "inputs/w3_anti.json",
            "--alpha",
            "0.6",
            "--beta",
            "0.8",
        ],
        stdin: None,
        exit_code: 0,
    },
    GoldenCase {
        name: "design_bs_w3",
        args: &["design-bs", "inputs/w3_uniform.json", "--run-qst"],
        stdin: None,
        exit_code: 0,
    },
    GoldenCase {
        name: "parse_error",
        args: &["concurrence", "-"],
        stdin: Some(MALFORMED),
        exit_code: 2,
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Runs `wsim` from the golden directory.
pub fn wsim(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wsim"));
    cmd.args(args)
        .current_dir(golden_dir())
        .env_remove("WSIM_MAX_QUBITS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("wsim binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin pipe");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    child.wait_with_output().expect("wsim finishes")
}

impl GoldenCase {
    /// Successful runs are compared on stdout, failures on stderr.
    pub fn stored_path(&self) -> PathBuf {
        let ext = if self.exit_code == 0 {
            "json"
        } else {
            "stderr"
        };
        golden_dir().join(format!("{}.{ext}", self.name))
    }

    pub fn run(&self) -> Output {
        wsim(self.args, self.stdin, &[])
    }

    /// `Ok` when the exit code and the stored bytes both match.
    pub fn check(&self) -> Result<(), String> {
        let out = self.run();
        let code = out.status.code();
        if code != Some(self.exit_code) {
            return Err(format!(
                "{}: exit {:?}, expected {}; stderr: {}",
                self.name,
                code,
                self.exit_code,
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let actual = if self.exit_code == 0 {
            &out.stdout
        } else {
            &out.stderr
        };
        let path = self.stored_path();
        if std::env::var_os("WSIM_BLESS").is_some() {
            std::fs::write(&path, actual).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        let stored = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if &stored != actual {
            return Err(format!(
                "{}: output differs from {}\n--- got ---\n{}",
                self.name,
                path.display(),
                String::from_utf8_lossy(actual)
            ));
        }
        Ok(())
    }
}
