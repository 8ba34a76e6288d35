use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Effect, EffectError, Val};

/// Which way a transcript line travelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// One line of console traffic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub dir: Direction,
    pub text: String,
}

/// Failures of console computations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConsoleError {
    #[error("input script exhausted")]
    ScriptExhausted,
    #[error("cannot parse `{input}` as {expected}")]
    Unparsable { input: String, expected: String },
    #[error("terminal i/o failed: {0}")]
    Io(String),
}

/// A real terminal backing a console world.
pub struct LiveTerminal {
    input: Mutex<Box<dyn BufRead + Send>>,
    output: Mutex<Box<dyn Write + Send>>,
}

impl LiveTerminal {
    pub fn new(input: Box<dyn BufRead + Send>, output: Box<dyn Write + Send>) -> Self {
        Self {
            input: Mutex::new(input),
            output: Mutex::new(output),
        }
    }

    pub fn stdio() -> Self {
        Self::new(
            Box::new(std::io::BufReader::new(std::io::stdin())),
            Box::new(std::io::stdout()),
        )
    }

    fn write(&self, text: &str, newline: bool) -> Result<(), ConsoleError> {
        let mut out = self
            .output
            .lock()
            .map_err(|e| ConsoleError::Io(e.to_string()))?;
        let res = if newline {
            writeln!(out, "{text}")
        } else {
            write!(out, "{text}")
        };
        res.and_then(|_| out.flush())
            .map_err(|e| ConsoleError::Io(e.to_string()))
    }

    fn read(&self) -> Result<Option<String>, ConsoleError> {
        let mut input = self
            .input
            .lock()
            .map_err(|e| ConsoleError::Io(e.to_string()))?;
        let mut line = String::new();
        let n = input
            .read_line(&mut line)
            .map_err(|e| ConsoleError::Io(e.to_string()))?;
        if n == 0 {
            return Ok(None);
        }
        Ok(Some(line.trim_end_matches(['\n', '\r']).to_string()))
    }
}

/// Console state threaded through computations: pending input lines, the
/// transcript so far and, for interactive use, a live terminal consulted once
/// the scripted input runs out.
#[derive(Clone, Default)]
pub struct ConsoleWorld {
    pending: VecDeque<String>,
    transcript: Vec<TranscriptEntry>,
    live: Option<Arc<LiveTerminal>>,
}

impl ConsoleWorld {
    pub fn scripted<S: Into<String>>(lines: impl IntoIterator<Item = S>) -> Self {
        Self {
            pending: lines.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn live(terminal: Arc<LiveTerminal>) -> Self {
        Self {
            live: Some(terminal),
            ..Self::default()
        }
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    pub fn into_transcript(self) -> Vec<TranscriptEntry> {
        self.transcript
    }

    pub fn pending(&self) -> impl Iterator<Item = &String> {
        self.pending.iter()
    }

    fn emit(&mut self, text: &str, newline: bool) -> Result<(), ConsoleError> {
        if let Some(t) = &self.live {
            t.write(text, newline)?;
        }
        self.transcript.push(TranscriptEntry {
            dir: Direction::Out,
            text: text.to_string(),
        });
        Ok(())
    }

    fn take_line(&mut self) -> Result<Option<String>, ConsoleError> {
        let line = match self.pending.pop_front() {
            Some(l) => Some(l),
            None => match &self.live {
                Some(t) => t.read()?,
                None => None,
            },
        };
        if let Some(l) = &line {
            self.transcript.push(TranscriptEntry {
                dir: Direction::In,
                text: l.clone(),
            });
        }
        Ok(line)
    }
}

impl PartialEq for ConsoleWorld {
    fn eq(&self, other: &Self) -> bool {
        self.pending == other.pending && self.transcript == other.transcript
    }
}

impl fmt::Debug for ConsoleWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConsoleWorld")
            .field("pending", &self.pending)
            .field("transcript", &self.transcript)
            .field("live", &self.live.is_some())
            .finish()
    }
}

/// A console computation.
pub type ConsoleIo<A> =
    Arc<dyn Fn(ConsoleWorld) -> Result<(A, ConsoleWorld), ConsoleError> + Send + Sync>;

/// Line-oriented terminal interaction. Equality runs both computations against
/// every declared input script and compares results, remaining input and
/// transcripts.
#[derive(Clone, Debug, Default)]
pub struct Console {
    scripts: Option<Arc<Vec<Vec<String>>>>,
}

impl Console {
    pub fn new(scripts: Vec<Vec<String>>) -> Self {
        Self {
            scripts: Some(Arc::new(scripts)),
        }
    }

    /// A console family with no input scripts to observe it by.
    pub fn opaque() -> Self {
        Self { scripts: None }
    }

    pub fn scripts(&self) -> &[Vec<String>] {
        self.scripts.as_deref().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Writes a line.
    pub fn print_line(&self, text: impl Into<String>) -> ConsoleIo<()> {
        let text = text.into();
        Arc::new(move |mut w: ConsoleWorld| {
            w.emit(&text, true)?;
            Ok(((), w))
        })
    }

    /// Writes text without a trailing newline, as for a prompt.
    pub fn print(&self, text: impl Into<String>) -> ConsoleIo<()> {
        let text = text.into();
        Arc::new(move |mut w: ConsoleWorld| {
            w.emit(&text, false)?;
            Ok(((), w))
        })
    }

    /// Reads a line, failing with [`ConsoleError::ScriptExhausted`] at end of input.
    pub fn read_line(&self) -> ConsoleIo<String> {
        Arc::new(|mut w: ConsoleWorld| match w.take_line()? {
            Some(l) => Ok((l, w)),
            None => Err(ConsoleError::ScriptExhausted),
        })
    }

    /// Reads a line, yielding `None` at end of input.
    pub fn try_read_line(&self) -> ConsoleIo<Option<String>> {
        Arc::new(|mut w: ConsoleWorld| {
            let l = w.take_line()?;
            Ok((l, w))
        })
    }

    pub fn fail<A: Val>(&self, err: ConsoleError) -> ConsoleIo<A> {
        Arc::new(move |_| Err(err.clone()))
    }

    /// Runs a computation from `world`.
    pub fn run<A: Val>(
        m: &ConsoleIo<A>,
        world: ConsoleWorld,
    ) -> Result<(A, ConsoleWorld), ConsoleError> {
        m(world)
    }

    fn contexts(&self) -> Result<&[Vec<String>], EffectError> {
        match &self.scripts {
            Some(s) if !s.is_empty() => Ok(s),
            _ => Err(EffectError::Unobservable(self.name())),
        }
    }
}

impl Effect for Console {
    type M<A: Val> = ConsoleIo<A>;

    fn name(&self) -> String {
        "console".into()
    }

    fn pure<A: Val>(&self, a: A) -> ConsoleIo<A> {
        Arc::new(move |w| Ok((a.clone(), w)))
    }

    fn bind<A: Val, B: Val, K>(&self, m: ConsoleIo<A>, k: K) -> ConsoleIo<B>
    where
        K: Fn(A) -> ConsoleIo<B> + Send + Sync + 'static,
    {
        Arc::new(move |w| {
            let (a, w) = m(w)?;
            k(a)(w)
        })
    }

    fn observable(&self) -> bool {
        self.scripts.as_ref().is_some_and(|s| !s.is_empty())
    }

    fn equal<A: Val>(&self, x: &ConsoleIo<A>, y: &ConsoleIo<A>) -> Result<bool, EffectError> {
        Ok(self
            .contexts()?
            .iter()
            .all(|s| x(ConsoleWorld::scripted(s.clone())) == y(ConsoleWorld::scripted(s.clone()))))
    }

    fn outcomes<A: Val>(&self, m: &ConsoleIo<A>) -> Result<Vec<A>, EffectError> {
        Ok(self
            .contexts()?
            .iter()
            .filter_map(|s| m(ConsoleWorld::scripted(s.clone())).ok())
            .map(|(a, _)| a)
            .collect())
    }

    fn as_pure<A: Val>(&self, m: &ConsoleIo<A>) -> Result<Option<A>, EffectError> {
        let mut found: Option<A> = None;
        for s in self.contexts()? {
            let start = ConsoleWorld::scripted(s.clone());
            match m(start.clone()) {
                Ok((a, w)) if w == start && found.as_ref().is_none_or(|f| *f == a) => {
                    found = Some(a)
                }
                _ => return Ok(None),
            }
        }
        Ok(found)
    }

    fn render<A: Val>(&self, m: &ConsoleIo<A>) -> String {
        let runs: Vec<String> = self
            .scripts()
            .iter()
            .map(|s| match m(ConsoleWorld::scripted(s.clone())) {
                Ok((a, w)) => format!("{s:?}->({a:?}, {:?})", w.transcript),
                Err(e) => format!("{s:?}->error({e})"),
            })
            .collect();
        format!("console{{{}}}", runs.join(", "))
    }

    /// Pure results, results after a line of output, and a result chosen by
    /// the next input line.
    fn sample<A: Val>(&self, dom: &[A]) -> Vec<ConsoleIo<A>> {
        let mut out = Vec::new();
        for a in dom {
            out.push(self.pure(a.clone()));
        }
        for a in dom {
            out.push(self.then(self.print_line(format!("{a:?}")), self.pure(a.clone())));
        }
        if !dom.is_empty() {
            let dom = dom.to_vec();
            let e = self.clone();
            out.push(self.bind(self.read_line(), move |l| {
                let i = l.trim().parse::<usize>().unwrap_or(0) % dom.len();
                e.pure(dom[i].clone())
            }));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_then_read_transcript() {
        let c = Console::new(vec![vec!["7".into()]]);
        let prog = c.then(c.print("x?"), c.read_line());
        let (s, w) = Console::run(&prog, ConsoleWorld::scripted(["7"])).unwrap();
        assert_eq!(s, "7");
        assert_eq!(
            w.transcript(),
            &[
                TranscriptEntry {
                    dir: Direction::Out,
                    text: "x?".into()
                },
                TranscriptEntry {
                    dir: Direction::In,
                    text: "7".into()
                }
            ]
        );
        assert_eq!(
            Console::run(&c.read_line(), ConsoleWorld::scripted(Vec::<String>::new())).unwrap_err(),
            ConsoleError::ScriptExhausted
        );
    }

    #[test]
    fn live_terminal_echoes_and_reads() {
        let input = std::io::Cursor::new(b"hello\n".to_vec());
        let out: Vec<u8> = Vec::new();
        let term = Arc::new(LiveTerminal::new(Box::new(input), Box::new(out)));
        let c = Console::opaque();
        let (s, w) = Console::run(
            &c.then(c.print_line("hi"), c.read_line()),
            ConsoleWorld::live(term),
        )
        .unwrap();
        assert_eq!(s, "hello");
        assert_eq!(w.transcript().len(), 2);
    }
}
