//! The `tangles` command line.
//!
//! Exit codes: 0 on success, 1 on invalid input or usage, 2 when an
//! internal consistency check fails.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::invariants::{closed_forms, equivalent, report, InvariantError};
use crate::lomonoid::{CountMonoid, LatticeMonoid, PrimeMonoid};
use crate::normalize::{normalize, DEFAULT_MAX_STEPS};
use crate::operators::Representation;
use crate::oracle::{completeness_report, MAX_ENUMERATED_CIRCLES};
use crate::selftest::run_all;
use crate::states::TangleState;
use crate::words::{check_condition_c, decode, Word};

#[derive(Debug, Parser)]
#[command(name = "tangles", version, about = "Planar tangle words, normal forms and invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MonoidArg {
    Prime,
    Count,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a word's syntax, arities and condition C.
    Validate { word: String },
    /// Rewrite a closed word into (-2,0)/(2,0) symbols.
    Normalize {
        word: String,
        /// Print every rewrite.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Compute the invariant of a closed word by both methods.
    Invariant {
        word: String,
        #[arg(long, value_enum, default_value_t = MonoidArg::Prime)]
        monoid: MonoidArg,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Decide whether two closed words describe isotopic systems.
    Equiv { first: String, second: String },
    /// Tabulate the invariants of every system with at most N circles.
    Enumerate {
        #[arg(long, value_name = "N")]
        circles: usize,
    },
    /// Evaluate a word on the representation.
    Eval {
        word: String,
        #[arg(long, value_enum, default_value_t = MonoidArg::Prime)]
        monoid: MonoidArg,
        /// Print the state after every generator.
        #[arg(long)]
        steps: bool,
        /// Include the relation matrix with each printed state.
        #[arg(long)]
        show_state: bool,
    },
    /// Run the seeded consistency suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            2
        }
    }
}

fn parse(word: &str, io: &mut Io) -> Result<Word, i32> {
    word.parse::<Word>().map_err(|e| {
        let _ = writeln!(io.err, "invalid word: {e}");
        1
    })
}

fn show(s: impl ToString) -> String {
    let s = s.to_string();
    if s.is_empty() {
        "(empty)".into()
    } else {
        s
    }
}

fn invariant_failure(e: &InvariantError, io: &mut Io) -> i32 {
    if e.is_internal() {
        let _ = writeln!(io.err, "internal error: {e}");
        2
    } else if e.is_out_of_range() {
        let _ = writeln!(io.err, "unsupported: {e}");
        1
    } else {
        let _ = writeln!(io.err, "invalid word: {e}");
        1
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> std::io::Result<i32> {
    let code = match cmd {
        Command::Validate { word } => validate(&word, io)?,
        Command::Normalize {
            word,
            trace,
            max_steps,
        } => normalize_cmd(&word, trace, max_steps, io)?,
        Command::Invariant {
            word,
            monoid,
            max_steps,
        } => match monoid {
            MonoidArg::Prime => invariant_cmd(&word, &PrimeMonoid, max_steps, io)?,
            MonoidArg::Count => invariant_cmd(&word, &CountMonoid, max_steps, io)?,
        },
        Command::Equiv { first, second } => equiv_cmd(&first, &second, io)?,
        Command::Enumerate { circles } => enumerate_cmd(circles, io)?,
        Command::Eval {
            word,
            monoid,
            steps,
            show_state,
        } => match monoid {
            MonoidArg::Prime => eval_cmd(&word, &PrimeMonoid, steps, show_state, io)?,
            MonoidArg::Count => eval_cmd(&word, &CountMonoid, steps, show_state, io)?,
        },
        Command::Selftest { seed, trials } => selftest_cmd(seed, trials, io)?,
    };
    Ok(code)
}

fn validate(text: &str, io: &mut Io) -> std::io::Result<i32> {
    let word = match parse(text, io) {
        Ok(w) => w,
        Err(code) => return Ok(code),
    };
    match word {
        Word::Sym(s) => {
            if let Err(e) = check_condition_c(&s) {
                writeln!(io.err, "invalid word: {e}")?;
                return Ok(1);
            }
            let g = decode(&s).expect("condition C holds");
            writeln!(io.out, "VALID closed")?;
            writeln!(io.out, "symbols {}", show(&s))?;
            writeln!(io.out, "generators {}", show(&g))?;
        }
        Word::Gen(g) => {
            if g.is_closed() {
                let (_, s) = closed_forms(&Word::Gen(g.clone())).expect("closed");
                writeln!(io.out, "VALID closed")?;
                writeln!(io.out, "symbols {}", show(&s))?;
            } else {
                let top = g.input_width().expect("non-empty") - 1;
                let bottom = g.output_width().expect("non-empty") - 1;
                writeln!(io.out, "VALID open top {top} bottom {bottom}")?;
            }
            writeln!(io.out, "generators {}", show(&g))?;
        }
    }
    Ok(0)
}

fn normalize_cmd(text: &str, trace: bool, max_steps: usize, io: &mut Io) -> std::io::Result<i32> {
    let word = match parse(text, io) {
        Ok(w) => w,
        Err(code) => return Ok(code),
    };
    let s = match closed_forms(&word) {
        Ok((_, s)) => s,
        Err(e) => {
            writeln!(io.err, "invalid word: {e}")?;
            return Ok(1);
        }
    };
    match normalize(&s, max_steps) {
        Ok((out, steps)) => {
            if trace {
                write!(io.out, "{steps}")?;
            }
            writeln!(io.out, "{}", show(&out))?;
            Ok(0)
        }
        Err(e) if e.is_internal() => {
            writeln!(io.err, "internal error: {e}")?;
            Ok(2)
        }
        Err(e) => {
            writeln!(io.err, "invalid word: {e}")?;
            Ok(1)
        }
    }
}

fn invariant_cmd<M: LatticeMonoid>(
    text: &str,
    m: &M,
    max_steps: usize,
    io: &mut Io,
) -> std::io::Result<i32> {
    let word = match parse(text, io) {
        Ok(w) => w,
        Err(code) => return Ok(code),
    };
    match report(&word, m, max_steps) {
        Ok(r) => {
            writeln!(io.out, "{} operator {}", r.monoid, r.operator)?;
            writeln!(io.out, "{} recursive {}", r.monoid, r.recursive)?;
            if r.agree() {
                writeln!(io.out, "AGREE")?;
                Ok(0)
            } else {
                writeln!(io.out, "DISAGREE")?;
                Ok(2)
            }
        }
        Err(e) => Ok(invariant_failure(&e, io)),
    }
}

fn equiv_cmd(a: &str, b: &str, io: &mut Io) -> std::io::Result<i32> {
    let (wa, wb) = match (parse(a, io), parse(b, io)) {
        (Ok(x), Ok(y)) => (x, y),
        _ => return Ok(1),
    };
    match equivalent(&wa, &wb) {
        Ok(e) => {
            let verdict = if e.equivalent { "EQUIVALENT" } else { "DISTINCT" };
            writeln!(io.out, "{verdict} {} {}", e.left, e.right)?;
            Ok(0)
        }
        Err(e) => Ok(invariant_failure(&e, io)),
    }
}

fn enumerate_cmd(circles: usize, io: &mut Io) -> std::io::Result<i32> {
    if circles > MAX_ENUMERATED_CIRCLES {
        writeln!(
            io.err,
            "invalid input: --circles must be at most {MAX_ENUMERATED_CIRCLES}"
        )?;
        return Ok(1);
    }
    match completeness_report(circles) {
        Ok(r) => {
            writeln!(io.out, "{r}")?;
            Ok(if r.passed() { 0 } else { 2 })
        }
        Err(e) => {
            writeln!(io.err, "internal error: {e}")?;
            Ok(2)
        }
    }
}

fn print_state<M: LatticeMonoid>(
    label: &str,
    s: &TangleState<M::Value>,
    m: &M,
    show_state: bool,
    io: &mut Io,
) -> std::io::Result<()> {
    let vals: Vec<String> = s.values().iter().map(|v| m.render(v)).collect();
    writeln!(io.out, "{label} width {} values ({})", s.width(), vals.join(","))?;
    if show_state {
        writeln!(io.out, "{}", s.relation())?;
    }
    Ok(())
}

fn eval_cmd<M: LatticeMonoid>(
    text: &str,
    m: &M,
    steps: bool,
    show_state: bool,
    io: &mut Io,
) -> std::io::Result<i32> {
    let word = match parse(text, io) {
        Ok(w) => w,
        Err(code) => return Ok(code),
    };
    let g = match word {
        Word::Gen(g) => g,
        Word::Sym(s) => match decode(&s) {
            Ok(g) => g,
            Err(e) => {
                writeln!(io.err, "invalid word: {e}")?;
                return Ok(1);
            }
        },
    };
    let start = TangleState::identity(g.input_width().unwrap_or(1), m);
    let rep = Representation::new(m);
    let trail = match rep.eval_steps(&g, &start) {
        Ok(t) => t,
        Err(e) if matches!(e.source, crate::operators::OpError::Monoid(_)) => {
            writeln!(io.err, "unsupported: {e}")?;
            return Ok(1);
        }
        Err(e) => {
            writeln!(io.err, "internal error: {e}")?;
            return Ok(2);
        }
    };
    if steps {
        print_state("start", &start, m, show_state, io)?;
        for (pos, s) in &trail {
            print_state(&format!("step {pos} {}", g[pos - 1]), s, m, show_state, io)?;
        }
    }
    let end = trail.last().map(|(_, s)| s).unwrap_or(&start);
    print_state("result", end, m, show_state, io)?;
    Ok(0)
}

fn selftest_cmd(seed: u64, trials: usize, io: &mut Io) -> std::io::Result<i32> {
    writeln!(io.out, "selftest seed {seed} trials {trials}")?;
    let results = run_all(seed, trials);
    let mut ok = true;
    for r in &results {
        writeln!(io.out, "{r}")?;
        ok &= r.failure.is_none();
    }
    writeln!(io.out, "selftest {}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { 0 } else { 2 })
}
