//! The shared law runner.
//!
//! A law is a named equation quantified over a product of finite index
//! ranges. The runner enumerates every assignment when the product fits under
//! the evaluation cap and otherwise checks a seeded random sample, recording
//! which mode was used. Assignments are checked in parallel when the
//! `parallel` feature is enabled and requested by the configuration; results
//! are identical either way.

use std::fmt::Debug;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::effect::{Effect, EffectError, Val};

mod corpus;
mod enumerate;
mod parallel;
mod report;

pub use corpus::{
    leq_nondet, run_corpus, shifted_partial, standard_corpus, Corpus, CorpusEntry, CorpusReport,
    EntryReport, Expectation, ExpectedFailure, SuiteKind,
};
pub use enumerate::{enumerate_functions, FunctionSet};
pub use report::{LawOutcome, LawReport, Mode, Witness};

/// Errors raised while building or running law suites.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error(transparent)]
    Effect(#[from] EffectError),
    #[error(
        "law `{law}` needs {space} evaluations, above the cap of {cap}, and sampling is disabled"
    )]
    DomainTooLarge {
        law: String,
        space: String,
        cap: u64,
    },
    #[error("`{0}` has no declared domains to quantify over")]
    MissingDomain(String),
    #[error("no law named `{0}` in this suite")]
    UnknownLaw(String),
    #[error("{0}")]
    Setup(String),
}

/// Seeded sampling used when a law's assignment space exceeds the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub size: usize,
}

/// Runner settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest number of assignments checked exhaustively.
    pub cap: u64,
    /// Fallback above the cap; `None` turns oversized laws into errors.
    pub sampling: Option<Sampling>,
    /// Failing assignments rendered per law (at least one is always kept).
    pub max_witnesses: usize,
    /// Check assignments on the rayon pool when available.
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            cap: 1_000_000,
            sampling: Some(Sampling {
                seed: 0x5eed,
                size: 10_000,
            }),
            max_witnesses: 3,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl RunConfig {
    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.sampling = Some(Sampling {
            seed,
            size: self.sampling.map_or(10_000, |s| s.size),
        });
        self
    }

    pub fn exhaustive_only(mut self) -> Self {
        self.sampling = None;
        self
    }
}

/// A single quantified variable ranging over `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var(usize);

/// A quantified function from a domain of `len` points into `0..cod`,
/// occupying `len` consecutive coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuncVar {
    start: usize,
    len: usize,
}

/// The coordinates of a law's assignment space.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quantifiers {
    dims: Vec<usize>,
}

impl Quantifiers {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(&mut self, size: usize) -> Var {
        self.dims.push(size);
        Var(self.dims.len() - 1)
    }

    pub fn func(&mut self, dom: usize, cod: usize) -> FuncVar {
        let start = self.dims.len();
        self.dims.extend(std::iter::repeat_n(cod, dom));
        FuncVar { start, len: dom }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of assignments, saturating.
    pub fn space(&self) -> u128 {
        self.dims
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }
}

/// One point of the assignment space.
#[derive(Debug, Clone, Copy)]
pub struct Assignment<'a> {
    cell: &'a [usize],
}

impl<'a> Assignment<'a> {
    pub fn new(cell: &'a [usize]) -> Self {
        Self { cell }
    }

    pub fn at(&self, v: Var) -> usize {
        self.cell[v.0]
    }

    /// The function's table: entry `i` is the image of domain point `i`.
    pub fn table(&self, f: FuncVar) -> &'a [usize] {
        &self.cell[f.start..f.start + f.len]
    }

    pub fn cell(&self) -> &'a [usize] {
        self.cell
    }
}

type Pred = dyn Fn(&Assignment) -> Result<bool, LawError> + Send + Sync;
type Explain = dyn Fn(&Assignment) -> Result<(String, String), LawError> + Send + Sync;
type Describe = dyn Fn(&Assignment) -> String + Send + Sync;

/// A named equation between two sides built from an assignment.
pub struct Law {
    name: String,
    quantifiers: Quantifiers,
    holds: Box<Pred>,
    explain: Box<Explain>,
    describe: Box<Describe>,
}

impl Law {
    /// The general form: `judge` decides equality, `show` renders a side.
    pub fn equation<O, L, R, J, S, D>(
        name: &str,
        q: Quantifiers,
        describe: D,
        lhs: L,
        rhs: R,
        judge: J,
        show: S,
    ) -> Self
    where
        O: 'static,
        L: Fn(&Assignment) -> O + Send + Sync + 'static,
        R: Fn(&Assignment) -> O + Send + Sync + 'static,
        J: Fn(&O, &O) -> Result<bool, LawError> + Send + Sync + 'static,
        S: Fn(&O) -> String + Send + Sync + 'static,
        D: Fn(&Assignment) -> String + Send + Sync + 'static,
    {
        let (lhs, rhs, judge) = (Arc::new(lhs), Arc::new(rhs), Arc::new(judge));
        let (l2, r2) = (lhs.clone(), rhs.clone());
        Self {
            name: name.to_string(),
            quantifiers: q,
            holds: Box::new(move |a| judge(&lhs(a), &rhs(a))),
            explain: Box::new(move |a| Ok((show(&l2(a)), show(&r2(a))))),
            describe: Box::new(describe),
        }
    }

    /// An equation between plain values.
    pub fn values<T, L, R, D>(name: &str, q: Quantifiers, describe: D, lhs: L, rhs: R) -> Self
    where
        T: Val,
        L: Fn(&Assignment) -> T + Send + Sync + 'static,
        R: Fn(&Assignment) -> T + Send + Sync + 'static,
        D: Fn(&Assignment) -> String + Send + Sync + 'static,
    {
        Self::equation(
            name,
            q,
            describe,
            lhs,
            rhs,
            |x: &T, y: &T| Ok(x == y),
            |x: &T| format!("{x:?}"),
        )
    }

    /// An equation between computations of an effect family.
    pub fn effects<E, T, L, R, D>(
        eff: &E,
        name: &str,
        q: Quantifiers,
        describe: D,
        lhs: L,
        rhs: R,
    ) -> Self
    where
        E: Effect,
        T: Val,
        L: Fn(&Assignment) -> E::M<T> + Send + Sync + 'static,
        R: Fn(&Assignment) -> E::M<T> + Send + Sync + 'static,
        D: Fn(&Assignment) -> String + Send + Sync + 'static,
    {
        let (e1, e2) = (eff.clone(), eff.clone());
        Self::equation(
            name,
            q,
            describe,
            lhs,
            rhs,
            move |x: &E::M<T>, y: &E::M<T>| Ok(e1.equal(x, y)?),
            move |x: &E::M<T>| e2.render(x),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quantifiers(&self) -> &Quantifiers {
        &self.quantifiers
    }

    /// Checks one assignment, returning a witness when the law fails there.
    pub fn check_cell(&self, cell: &[usize]) -> Result<Option<Witness>, LawError> {
        let a = Assignment::new(cell);
        if (self.holds)(&a)? {
            return Ok(None);
        }
        let (lhs, rhs) = (self.explain)(&a)?;
        Ok(Some(Witness {
            cell: cell.to_vec(),
            inputs: (self.describe)(&a),
            lhs,
            rhs,
        }))
    }
}

/// A named collection of laws about one subject.
pub struct LawSuite {
    pub subject: String,
    pub effect: String,
    laws: Vec<Law>,
}

impl LawSuite {
    pub fn new(subject: impl Into<String>, effect: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            effect: effect.into(),
            laws: Vec::new(),
        }
    }

    pub fn push(&mut self, law: Law) -> &mut Self {
        self.laws.push(law);
        self
    }

    pub fn with(mut self, law: Law) -> Self {
        self.laws.push(law);
        self
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    pub fn extend(&mut self, other: LawSuite) {
        self.laws.extend(other.laws);
    }

    /// Re-evaluates a recorded assignment of one law in isolation.
    pub fn recheck(&self, law: &str, cell: &[usize]) -> Result<Option<Witness>, LawError> {
        let l = self
            .laws
            .iter()
            .find(|l| l.name == law)
            .ok_or_else(|| LawError::UnknownLaw(law.to_string()))?;
        l.check_cell(cell)
    }

    pub fn run(&self, cfg: &RunConfig) -> Result<LawReport, LawError> {
        run_suite(self, cfg)
    }
}

/// Checks every law of the suite.
pub fn run_suite(suite: &LawSuite, cfg: &RunConfig) -> Result<LawReport, LawError> {
    let laws = suite
        .laws
        .iter()
        .map(|l| run_law(l, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LawReport {
        bx: suite.subject.clone(),
        effect: suite.effect.clone(),
        laws,
    })
}

fn decode(mut index: u64, dims: &[usize]) -> Vec<usize> {
    let mut cell = vec![0; dims.len()];
    for (slot, &d) in cell.iter_mut().zip(dims).rev() {
        *slot = (index % d as u64) as usize;
        index /= d as u64;
    }
    cell
}

fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Sorted, distinct random cells of the space.
fn sample_cells(dims: &[usize], sampling: Sampling, law: &str) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed ^ name_hash(law));
    let mut cells: Vec<Vec<usize>> = (0..sampling.size)
        .map(|_| dims.iter().map(|&d| rng.gen_range(0..d)).collect())
        .collect();
    cells.sort();
    cells.dedup();
    cells
}

fn run_law(law: &Law, cfg: &RunConfig) -> Result<LawOutcome, LawError> {
    let dims = law.quantifiers.dims();
    let space = law.quantifiers.space();
    let check = |cell: &[usize]| (law.holds)(&Assignment::new(cell));
    let (checked, mode, failing): (u64, Mode, Vec<Vec<usize>>) = if space <= cfg.cap as u128 {
        let n = space as u64;
        let bad = parallel::failing(n, cfg.parallel, |i| check(&decode(i, dims)))?;
        (
            n,
            Mode::Exhaustive,
            bad.into_iter().map(|i| decode(i, dims)).collect(),
        )
    } else if let Some(sampling) = cfg.sampling {
        let cells = sample_cells(dims, sampling, &law.name);
        let bad = parallel::failing(cells.len() as u64, cfg.parallel, |i| {
            check(&cells[i as usize])
        })?;
        let failing = bad.into_iter().map(|i| cells[i as usize].clone()).collect();
        (
            cells.len() as u64,
            Mode::Sampled {
                seed: sampling.seed,
                requested: sampling.size,
            },
            failing,
        )
    } else {
        return Err(LawError::DomainTooLarge {
            law: law.name.clone(),
            space: space.to_string(),
            cap: cfg.cap,
        });
    };
    let mut failures = Vec::new();
    for cell in failing.iter().take(cfg.max_witnesses.max(1)) {
        let a = Assignment::new(cell);
        let (lhs, rhs) = (law.explain)(&a)?;
        failures.push(Witness {
            cell: cell.clone(),
            inputs: (law.describe)(&a),
            lhs,
            rhs,
        });
    }
    Ok(LawOutcome {
        name: law.name.clone(),
        checked,
        space: u64::try_from(space).unwrap_or(u64::MAX),
        mode,
        failure_count: failing.len() as u64,
        failures,
    })
}

/// Renders a function table as `{x->y, ...}`.
pub fn show_table<A: Debug>(dom: &[A], table: &[usize], show: impl Fn(usize) -> String) -> String {
    let cells: Vec<String> = dom
        .iter()
        .zip(table)
        .map(|(a, &j)| format!("{a:?}->{}", show(j)))
        .collect();
    format!("{{{}}}", cells.join(", "))
}

/// Looks up `x` in `dom`, falling back to the first element for values that
/// escaped the declared domain.
pub fn position<A: PartialEq>(dom: &[A], x: &A) -> usize {
    dom.iter().position(|y| y == x).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity_suite() -> LawSuite {
        let mut q = Quantifiers::new();
        let x = q.var(10);
        let y = q.var(10);
        LawSuite::new("arith", "identity").with(Law::values(
            "x+y even",
            q,
            move |a| format!("x={}, y={}", a.at(x), a.at(y)),
            move |a| (a.at(x) + a.at(y)) % 2,
            |_| 0,
        ))
    }

    #[test]
    fn exhaustive_counts_and_orders_failures() {
        let r = parity_suite().run(&RunConfig::default()).unwrap();
        let l = &r.laws[0];
        assert_eq!(l.checked, 100);
        assert_eq!(l.failure_count, 50);
        assert_eq!(l.mode, Mode::Exhaustive);
        assert_eq!(l.failures[0].inputs, "x=0, y=1");
        assert_eq!(l.failures.len(), 3);
    }

    #[test]
    fn sampling_above_cap_is_seeded() {
        let cfg = RunConfig {
            cap: 10,
            sampling: Some(Sampling { seed: 7, size: 30 }),
            ..RunConfig::default()
        };
        let a = parity_suite().run(&cfg).unwrap();
        let b = parity_suite().run(&cfg.clone().sequential()).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            a.laws[0].mode,
            Mode::Sampled {
                seed: 7,
                requested: 30
            }
        ));
        assert!(a.laws[0].checked <= 30);
    }

    #[test]
    fn oversized_without_sampling_is_an_error() {
        let cfg = RunConfig::default().with_cap(10).exhaustive_only();
        assert!(matches!(
            parity_suite().run(&cfg),
            Err(LawError::DomainTooLarge { .. })
        ));
    }

    #[test]
    fn recheck_reproduces_witness() {
        let suite = parity_suite();
        let r = suite.run(&RunConfig::default()).unwrap();
        let w = &r.laws[0].failures[1];
        assert_eq!(
            suite.recheck("x+y even", &w.cell).unwrap().as_ref(),
            Some(w)
        );
    }

    #[test]
    fn decode_is_lexicographic() {
        assert_eq!(decode(0, &[2, 3]), vec![0, 0]);
        assert_eq!(decode(1, &[2, 3]), vec![0, 1]);
        assert_eq!(decode(3, &[2, 3]), vec![1, 0]);
    }
}
