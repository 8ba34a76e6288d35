//! A line-oriented synchronisation session over [`dynamic_io_bx`].
//!
//! Commands are read from the console one per line:
//!
//! * `setL <n>` / `setR <n>` update one side, asking for a replacement on the
//!   other side unless the same edit was answered before;
//! * `getL` / `getR` print the current view;
//! * `state` prints the views and memo table sizes;
//! * `quit` (or end of input) stops the session.
//!
//! Answers to replacement prompts are read from the same input, so a scripted
//! world and a live terminal run through exactly the same code.

use serde::Serialize;
use thiserror::Error;

use super::dynamic::{dynamic_io_bx, DynState};
use crate::bx::Bx;
use crate::effect::{Console, ConsoleError, ConsoleWorld, Direction, TranscriptEntry};

type SyncBx = Bx<Console, DynState<i64, i64>, i64, i64>;

/// How a session ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionEnd {
    Quit,
    EndOfInput,
}

/// The result of a completed session.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionOutcome {
    pub state: DynState<i64, i64>,
    pub transcript: Vec<TranscriptEntry>,
    pub end: SessionEnd,
}

impl SessionOutcome {
    /// Number of replacement prompts shown.
    pub fn prompts(&self) -> usize {
        count_prompts(&self.transcript)
    }

    /// The transcript as text: output verbatim, input prefixed with `> `.
    pub fn render_transcript(&self) -> String {
        render_transcript(&self.transcript)
    }
}

/// A session aborted by a console failure, with everything up to the last
/// completed command.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("{error}")]
pub struct SessionFailure {
    pub error: ConsoleError,
    pub state: DynState<i64, i64>,
    pub transcript: Vec<TranscriptEntry>,
}

/// Counts `Replacement for` prompts in a transcript.
pub fn count_prompts(transcript: &[TranscriptEntry]) -> usize {
    transcript
        .iter()
        .filter(|e| e.dir == Direction::Out && e.text.starts_with("Replacement for"))
        .count()
}

/// Renders a transcript one entry per line.
pub fn render_transcript(transcript: &[TranscriptEntry]) -> String {
    let mut out = String::new();
    for e in transcript {
        match e.dir {
            Direction::In => out.push_str("> "),
            Direction::Out => {}
        }
        out.push_str(&e.text);
        out.push('\n');
    }
    out
}

enum Command {
    SetL(i64),
    SetR(i64),
    GetL,
    GetR,
    State,
    Quit,
}

fn parse_command(line: &str) -> Result<Command, String> {
    let mut words = line.split_whitespace();
    let cmd = words.next().unwrap_or("");
    let arg = words.next();
    let num = |arg: Option<&str>| -> Result<i64, String> {
        arg.ok_or_else(|| format!("`{cmd}` needs a number"))?
            .parse::<i64>()
            .map_err(|_| format!("`{cmd}` needs a number"))
    };
    let cmd = match cmd {
        "setL" => Command::SetL(num(arg)?),
        "setR" => Command::SetR(num(arg)?),
        "getL" => Command::GetL,
        "getR" => Command::GetR,
        "state" => Command::State,
        "quit" => Command::Quit,
        other => return Err(format!("unknown command `{other}`")),
    };
    match words.next() {
        Some(extra) => Err(format!("unexpected argument `{extra}`")),
        None => Ok(cmd),
    }
}

fn describe(st: &DynState<i64, i64>) -> String {
    format!(
        "state ({}, {}) memoL {} memoR {}",
        st.views.0,
        st.views.1,
        st.memo_l.len(),
        st.memo_r.len()
    )
}

/// Runs a session from `initial` against `world` until `quit` or end of input.
pub fn sync_session(
    initial: DynState<i64, i64>,
    world: ConsoleWorld,
) -> Result<SessionOutcome, SessionFailure> {
    let console = Console::opaque();
    let bx: SyncBx = dynamic_io_bx(&console);
    let mut state = initial;
    let mut world = world;
    let fail = |error, state: &DynState<i64, i64>, world: &ConsoleWorld| SessionFailure {
        error,
        state: state.clone(),
        transcript: world.transcript().to_vec(),
    };
    loop {
        let (line, w) = match Console::run(&console.try_read_line(), world.clone()) {
            Ok(r) => r,
            Err(e) => return Err(fail(e, &state, &world)),
        };
        let Some(line) = line else {
            return Ok(SessionOutcome {
                state,
                transcript: w.into_transcript(),
                end: SessionEnd::EndOfInput,
            });
        };
        if line.trim().is_empty() {
            world = w;
            continue;
        }
        let step = match parse_command(&line) {
            Ok(Command::Quit) => {
                return Ok(SessionOutcome {
                    state,
                    transcript: w.into_transcript(),
                    end: SessionEnd::Quit,
                });
            }
            Ok(Command::SetL(a)) => Console::run(&bx.set_l(a).exec(state.clone()), w.clone()),
            Ok(Command::SetR(b)) => Console::run(&bx.set_r(b).exec(state.clone()), w.clone()),
            Ok(Command::GetL) => {
                Console::run(&console.print_line(state.views.0.to_string()), w.clone())
                    .map(|(_, w)| (state.clone(), w))
            }
            Ok(Command::GetR) => {
                Console::run(&console.print_line(state.views.1.to_string()), w.clone())
                    .map(|(_, w)| (state.clone(), w))
            }
            Ok(Command::State) => Console::run(&console.print_line(describe(&state)), w.clone())
                .map(|(_, w)| (state.clone(), w)),
            Err(msg) => Console::run(&console.print_line(format!("error: {msg}")), w.clone())
                .map(|(_, w)| (state.clone(), w)),
        };
        match step {
            Ok((s, w)) => {
                state = s;
                world = w;
            }
            Err(e) => return Err(fail(e, &state, &w)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn memo_hit_skips_prompt() {
        let script = ["setL 5", "10", "setL 0", "0", "setL 5", "getR"];
        let out = sync_session(DynState::new(0, 0), ConsoleWorld::scripted(script)).unwrap();
        assert_eq!(out.state.views, (5, 10));
        assert_eq!(out.prompts(), 2);
        assert_eq!(out.end, SessionEnd::EndOfInput);
    }

    #[test]
    fn missing_answer_is_exhaustion() {
        let err =
            sync_session(DynState::new(0, 0), ConsoleWorld::scripted(["setL 1"])).unwrap_err();
        assert_eq!(err.error, ConsoleError::ScriptExhausted);
        assert_eq!(err.state, DynState::new(0, 0));
    }

    #[test]
    fn bad_command_is_reported_and_skipped() {
        let out = sync_session(
            DynState::new(0, 0),
            ConsoleWorld::scripted(["frob", "getL", "quit", "getR"]),
        )
        .unwrap();
        assert_eq!(out.end, SessionEnd::Quit);
        assert_eq!(
            out.render_transcript(),
            "> frob\nerror: unknown command `frob`\n> getL\n0\n> quit\n"
        );
    }
}
