//! The CLI corpus shared by the golden tests and the acceptance run.
//!
//! Each case stores its expected stdout and stderr under `tests/golden/`.
//! Run with `UPDATE_GOLDEN=1` to rewrite them from the current binary.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use planar_tangles::cli;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CORPUS: &[Case] = &[
    Case { name: "validate_closed", args: &["validate", "(-2,0)(-2,0)(2,2)(2,0)"], exit: 0 },
    Case { name: "validate_generators", args: &["validate", "U(1,2);U(3,3);H(3,3);H(1,2)"], exit: 0 },
    Case { name: "validate_open", args: &["validate", "H(3,4);H(1,2)"], exit: 0 },
    Case { name: "validate_condition_c", args: &["validate", "(2,0)(-2,0)"], exit: 1 },
    Case { name: "validate_syntax", args: &["validate", "(-2,0)(2,"], exit: 1 },
    Case { name: "validate_arity", args: &["validate", "U(1,2);U(1,2)"], exit: 1 },
    Case { name: "normalize_one_step", args: &["normalize", "(-2,0)(-2,0)(2,2)(2,0)"], exit: 0 },
    Case { name: "normalize_trace", args: &["normalize", "(-2,0)(-2,0)(2,2)(2,0)", "--trace"], exit: 0 },
    Case { name: "normalize_long_trace", args: &["normalize", "(-2,0)(-2,0)(2,2)(-2,2)(2,2)(2,0)", "--trace"], exit: 0 },
    Case { name: "normalize_empty", args: &["normalize", ""], exit: 0 },
    Case { name: "normalize_step_limit", args: &["normalize", "(-2,0)(-2,0)(2,2)(2,0)", "--max-steps", "0"], exit: 2 },
    Case { name: "invariant_count", args: &["invariant", "(-2,0)(2,0)", "--monoid", "count"], exit: 0 },
    Case { name: "invariant_prime", args: &["invariant", "(-2,0)(-2,0)(2,0)(2,0)"], exit: 0 },
    Case { name: "invariant_generators", args: &["invariant", "U(1,2);U(3,2);H(3,4);H(1,2)", "--monoid", "prime"], exit: 0 },
    Case { name: "invariant_seven_nested", args: &["invariant", "(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)"], exit: 0 },
    Case { name: "invariant_out_of_range", args: &["invariant", "(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(-2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)(2,0)"], exit: 1 },
    Case { name: "invariant_open", args: &["invariant", "H(1,2)"], exit: 1 },
    Case { name: "equiv_distinct", args: &["equiv", "(-2,0)(-2,0)(2,0)(2,0)", "(-2,0)(2,0)(-2,0)(2,0)"], exit: 0 },
    Case { name: "equiv_same", args: &["equiv", "(-2,0)(2,0)", "(-2,0)(-2,0)(2,2)(2,0)"], exit: 0 },
    Case { name: "enumerate_three", args: &["enumerate", "--circles", "3"], exit: 0 },
    Case { name: "enumerate_too_many", args: &["enumerate", "--circles", "9"], exit: 1 },
    Case { name: "eval_steps", args: &["eval", "(-2,0)(-2,0)(2,2)(2,0)", "--steps", "--show-state"], exit: 0 },
    Case { name: "eval_count", args: &["eval", "U(1,2);U(3,3);H(3,3);H(1,2)", "--monoid", "count", "--steps"], exit: 0 },
    Case { name: "eval_open", args: &["eval", "H(1,2)", "--show-state"], exit: 0 },
    Case { name: "selftest_seed_7", args: &["selftest", "--seed", "7", "--trials", "50"], exit: 0 },
    Case { name: "unknown_command", args: &["frobnicate"], exit: 1 },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Output {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tangles").chain(args.iter().copied());
    let exit = cli::run(argv, &mut out, &mut err);
    Output {
        exit,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

/// Runs one case against its golden files. Returns a description of the
/// first mismatch.
pub fn check(case: &Case) -> Result<(), String> {
    let got = run(case.args);
    let dir = golden_dir();
    let out_path = dir.join(format!("{}.stdout", case.name));
    let err_path = dir.join(format!("{}.stderr", case.name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&out_path, &got.stdout).map_err(|e| e.to_string())?;
        fs::write(&err_path, &got.stderr).map_err(|e| e.to_string())?;
    }
    let read = |p: &PathBuf| fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    if got.exit != case.exit {
        return Err(format!("{}: exit {} expected {}", case.name, got.exit, case.exit));
    }
    if got.stdout != read(&out_path)? {
        return Err(format!("{}: stdout differs", case.name));
    }
    if got.stderr != read(&err_path)? {
        return Err(format!("{}: stderr differs", case.name));
    }
    Ok(())
}
