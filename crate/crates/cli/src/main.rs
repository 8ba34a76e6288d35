//! Command-line front end: law checking, the composers differential
//! scenario, the memoizing synchronisation session and the floating-point
//! reciprocal demo.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use entangle::effect::{ConsoleError, ConsoleWorld, Failure, LiveTerminal};
use entangle::examples::{
    composers_scenario, sync_session, tavener_scenario, DynState, ExampleError, ScriptStep,
};
use entangle::lawcheck::{standard_corpus, RunConfig, SuiteKind};
use entangle::stateful;
use entangle::Bx;

const USAGE: u8 = 2;
const UNEXPECTED: u8 = 1;
const EXHAUSTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "entangle",
    version,
    about = "Check and explore effectful bidirectional transformations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run law suites from the built-in corpus.
    Laws {
        /// Suite family to run, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Only run entries with this name.
        #[arg(long)]
        bx: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest number of assignments checked exhaustively per law.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        /// Seed for sampling laws above the cap; without it such laws are errors.
        #[arg(long)]
        seed: Option<u64>,
        /// List the selected entries instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Replay a composers script against the symmetric lens and the bx.
    Composers {
        /// JSON script; defaults to the built-in Tavener scenario.
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a memoizing synchronisation session between two integers.
    Sync {
        /// Commands and answers, one per line.
        #[arg(
            long,
            conflicts_with = "interactive",
            required_unless_present = "interactive"
        )]
        script: Option<PathBuf>,
        /// Read commands and answers from the terminal.
        #[arg(long)]
        interactive: bool,
        /// Initial left value.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        left: i64,
        /// Initial right value.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        right: i64,
        /// Write the session transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Write the final state, memo tables included, as JSON here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Round-trip floats through the reciprocal bx and report rounding error.
    Demo {
        /// Largest relative error accepted.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Values to set on the right; defaults to a fixed list.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        values: Vec<f32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Suite {
    All,
    Kind(SuiteKind),
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    if s == "all" {
        return Ok(Suite::All);
    }
    SuiteKind::parse(s).map(Suite::Kind).ok_or_else(|| {
        let known: Vec<&str> = SuiteKind::ALL.iter().map(SuiteKind::as_str).collect();
        format!("unknown suite `{s}`; expected all, {}", known.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Laws {
            suite,
            bx,
            format,
            cap,
            seed,
            list,
        } => cmd_laws(suite, bx.as_deref(), format, cap, seed, list),
        Command::Composers { script, format } => cmd_composers(script.as_deref(), format),
        Command::Sync {
            script,
            interactive,
            left,
            right,
            transcript,
            dump,
        } => cmd_sync(
            script.as_deref(),
            interactive,
            DynState::new(left, right),
            transcript.as_deref(),
            dump.as_deref(),
        ),
        Command::Demo { tolerance, values } => cmd_demo(tolerance, &values),
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExitCode> {
    std::fs::write(path, contents)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_laws(
    suite: Suite,
    bx: Option<&str>,
    format: Format,
    cap: u64,
    seed: Option<u64>,
    list: bool,
) -> ExitCode {
    let kind = match suite {
        Suite::All => None,
        Suite::Kind(k) => Some(k),
    };
    let corpus = standard_corpus().select(kind, bx);
    if corpus.entries.is_empty() {
        return usage(format!(
            "no corpus entry matches suite `{}` and bx `{}`",
            kind.map_or("all", |k| k.as_str()),
            bx.unwrap_or("*")
        ));
    }
    if list {
        for name in corpus.names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let mut cfg = RunConfig::default().with_cap(cap).exhaustive_only();
    if let Some(seed) = seed {
        cfg = cfg.with_seed(seed);
    }
    let report = corpus.run(&cfg);
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.all_as_expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(UNEXPECTED)
    }
}

fn cmd_composers(script: Option<&Path>, format: Format) -> ExitCode {
    let steps: Vec<ScriptStep> = match script {
        None => tavener_scenario(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
            };
            match serde_json::from_str(&text) {
                Ok(s) => s,
                Err(e) => {
                    return usage(format!(
                        "{}: parse error at line {}, column {}: {e}",
                        path.display(),
                        e.line(),
                        e.column()
                    ))
                }
            }
        }
    };
    let report = match composers_scenario(&steps) {
        Ok(r) => r,
        Err(e @ ExampleError::KeyViolation(_)) => return usage(e),
        Err(e) => return usage(e),
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
        Format::Text => {
            for s in &report.steps {
                let flag = if s.agree { "agree" } else { "DIFFER" };
                println!("{:>2} {:<4} {flag}", s.step, s.op);
                println!("   symlens: {}", s.symlens);
                println!("   bx:      {}", s.bx);
            }
            println!("all agree: {}", report.all_agree);
        }
    }
    if report.all_agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(UNEXPECTED)
    }
}

fn cmd_sync(
    script: Option<&Path>,
    interactive: bool,
    initial: DynState<i64, i64>,
    transcript: Option<&Path>,
    dump: Option<&Path>,
) -> ExitCode {
    let world = if interactive {
        ConsoleWorld::live(Arc::new(LiveTerminal::stdio()))
    } else {
        let path = script.expect("clap requires a script unless interactive");
        match std::fs::read_to_string(path) {
            Ok(text) => ConsoleWorld::scripted(text.lines().map(str::to_string)),
            Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
        }
    };
    let (state, entries, failure) = match sync_session(initial, world) {
        Ok(out) => (out.state, out.transcript, None),
        Err(f) => (f.state, f.transcript, Some(f.error)),
    };
    let text = entangle::examples::render_transcript(&entries);
    if !interactive {
        print!("{text}");
    }
    println!(
        "final state: ({}, {}), {} left memo entries, {} right memo entries",
        state.views.0,
        state.views.1,
        state.memo_l.len(),
        state.memo_r.len()
    );
    if let Some(path) = transcript {
        if let Err(code) = write_file(path, &text) {
            return code;
        }
    }
    if let Some(path) = dump {
        let json = serde_json::to_string_pretty(&state).expect("states serialize");
        if let Err(code) = write_file(path, &format!("{json}\n")) {
            return code;
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(ConsoleError::ScriptExhausted) => {
            eprintln!("error: input ran out while waiting for an answer");
            ExitCode::from(EXHAUSTED)
        }
        Some(e) => usage(e),
    }
}

/// The reciprocal bx over single-precision floats: the state is the left
/// value, the right view is its reciprocal, and zero is rejected on both
/// sides.
fn float_inv() -> Bx<Failure, f32, f32, f32> {
    let nonzero = |x: f32| x != 0.0;
    Bx::new(
        "float inv",
        &Failure,
        stateful::get(&Failure),
        move |a: f32| {
            if nonzero(a) {
                stateful::set(&Failure, a)
            } else {
                stateful::lift(&Failure, None)
            }
        },
        stateful::gets(&Failure, |a: &f32| 1.0 / a),
        move |b: f32| {
            if nonzero(b) {
                stateful::set(&Failure, 1.0 / b)
            } else {
                stateful::lift(&Failure, None)
            }
        },
    )
}

fn cmd_demo(tolerance: f64, values: &[f32]) -> ExitCode {
    let defaults = [3.0, 7.0, 0.1, 49.0, 1e-3, 12345.0, 0.0];
    let values = if values.is_empty() {
        &defaults[..]
    } else {
        values
    };
    let bx = float_inv();
    let mut within = true;
    println!(
        "{:>14} {:>14} {:>12}  verdict",
        "set right", "read right", "rel. error"
    );
    for &b in values {
        let read = bx.set_r(b).then(&bx.get_r()).eval(1.0);
        match read {
            None => println!("{b:>14} {:>14} {:>12}  rejected", "-", "-"),
            Some(r) => {
                let err = ((r as f64 - b as f64) / b as f64).abs();
                let verdict = if r == b {
                    "exact"
                } else if err <= tolerance {
                    "within tolerance"
                } else {
                    within = false;
                    "OUT OF TOLERANCE"
                };
                println!("{b:>14} {r:>14} {err:>12.3e}  {verdict}");
            }
        }
    }
    println!(
        "tolerance {tolerance:e}: {}",
        if within {
            "all round trips within tolerance"
        } else {
            "some round trips out of tolerance"
        }
    );
    if within {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(UNEXPECTED)
    }
}
