//! A registry of checkable instances with their expected verdicts.
//!
//! Every entry builds one law suite. Entries expected to pass must pass every
//! law; entries expected to fail name each failing law together with the
//! first failing assignment in enumeration order, which is re-evaluated in
//! isolation on every run.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{LawError, LawReport, LawSuite, RunConfig};
use crate::bx::{
    init_law_suite, lens_to_bx, lens_to_ibx, overwrite_suite, seven_law_suite, stability_suite, Bx,
    InitBx,
};
use crate::combinators::{
    const_bx, fst_bx, fst_ibx, inl_bx, iso_bx, list_ibx, pair_bx, snd_bx, sum_bx, sum_ibx, swap_bx,
    Iso,
};
use crate::compose::{
    assoc_bijection, compose, compose_init, equivalence_suite, identity_bx, identity_ibx,
    init_equivalence_suite, left_unit_bijection, right_unit_bijection, ComposeError,
};
use crate::domain::FiniteDomain;
use crate::effect::{
    commutativity_suite, monad_law_suite, monad_morphism_suite, Choice, Console, Effect, Failure,
    Identity, NativeState, Reader, Val, Writer,
};
use crate::either::Either;
use crate::examples::{
    alert_bx, composers_symlens, composers_universe, dynamic_bx, dynamic_io_bx, dynamic_search_bx,
    dynamic_space, inv_bx, log_bx, mutants, nondet_bx, partial_bx, read_some_bx, switch_bx,
    DynState,
};
use crate::lens::{fst_lens, lens_law_suite, snd_lens, Lens, Theta};
use crate::stateful::{state_law_suite, StateT};
use crate::symlens::{consistent_triples, symlens_law_suite, symlens_to_checked_bx};

/// The family of laws an entry is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Monad,
    Commutativity,
    State,
    Lens,
    Theta,
    Symlens,
    Seven,
    Overwrite,
    Stability,
    Init,
    Equivalence,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 11] = [
        SuiteKind::Monad,
        SuiteKind::Commutativity,
        SuiteKind::State,
        SuiteKind::Lens,
        SuiteKind::Theta,
        SuiteKind::Symlens,
        SuiteKind::Seven,
        SuiteKind::Overwrite,
        SuiteKind::Stability,
        SuiteKind::Init,
        SuiteKind::Equivalence,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteKind::Monad => "monad",
            SuiteKind::Commutativity => "commutativity",
            SuiteKind::State => "state",
            SuiteKind::Lens => "lens",
            SuiteKind::Theta => "theta",
            SuiteKind::Symlens => "symlens",
            SuiteKind::Seven => "seven",
            SuiteKind::Overwrite => "overwrite",
            SuiteKind::Stability => "stability",
            SuiteKind::Init => "init",
            SuiteKind::Equivalence => "equivalence",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteKind> {
        SuiteKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A law expected to fail, with the rendered inputs of its first failing
/// assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFailure {
    pub law: String,
    pub inputs: String,
}

/// The verdict an entry should receive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "failures", rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    /// Exactly these laws fail, each first at the stored inputs.
    Fail(Vec<ExpectedFailure>),
}

impl Expectation {
    pub fn fails(laws: &[(&str, &str)]) -> Self {
        Expectation::Fail(
            laws.iter()
                .map(|(l, i)| ExpectedFailure {
                    law: l.to_string(),
                    inputs: i.to_string(),
                })
                .collect(),
        )
    }
}

type Build = Arc<dyn Fn() -> Result<LawSuite, LawError> + Send + Sync>;

/// One registered instance.
#[derive(Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: SuiteKind,
    pub expectation: Expectation,
    build: Build,
}

impl fmt::Debug for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorpusEntry")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("expectation", &self.expectation)
            .finish()
    }
}

impl CorpusEntry {
    pub fn new(
        name: impl Into<String>,
        kind: SuiteKind,
        expectation: Expectation,
        build: impl Fn() -> Result<LawSuite, LawError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            kind,
            expectation,
            build: Arc::new(build),
        }
    }

    pub fn suite(&self) -> Result<LawSuite, LawError> {
        (self.build)()
    }

    /// Runs the suite and compares the outcome with the expectation.
    pub fn run(&self, cfg: &RunConfig) -> EntryReport {
        let mut problems = Vec::new();
        let report = match self.suite().and_then(|s| s.run(cfg).map(|r| (s, r))) {
            Ok((suite, report)) => {
                judge(&suite, &report, &self.expectation, &mut problems);
                Some(report)
            }
            Err(e) => {
                problems.push(format!("could not run: {e}"));
                None
            }
        };
        EntryReport {
            name: self.name.clone(),
            kind: self.kind,
            expectation: self.expectation.clone(),
            as_expected: problems.is_empty(),
            problems,
            report,
        }
    }
}

fn judge(suite: &LawSuite, report: &LawReport, expect: &Expectation, problems: &mut Vec<String>) {
    let expected: &[ExpectedFailure] = match expect {
        Expectation::Pass => &[],
        Expectation::Fail(f) => f,
    };
    for outcome in &report.laws {
        let wanted = expected.iter().find(|e| e.law == outcome.name);
        match (wanted, outcome.failures.first()) {
            (None, None) => {}
            (None, Some(w)) => problems.push(format!(
                "{} failed unexpectedly at {}",
                outcome.name, w.inputs
            )),
            (Some(_), None) => {
                problems.push(format!("{} passed but was expected to fail", outcome.name))
            }
            (Some(e), Some(w)) => {
                if e.inputs != w.inputs {
                    problems.push(format!(
                        "{} first failed at {} instead of {}",
                        outcome.name, w.inputs, e.inputs
                    ));
                }
                match suite.recheck(&outcome.name, &w.cell) {
                    Ok(Some(again)) if again == *w => {}
                    Ok(_) => problems.push(format!(
                        "{} witness did not reproduce in isolation",
                        outcome.name
                    )),
                    Err(err) => problems.push(format!(
                        "{} witness could not be rechecked: {err}",
                        outcome.name
                    )),
                }
            }
        }
    }
    for e in expected {
        if report.law(&e.law).is_none() {
            problems.push(format!("expected law {} is not in the suite", e.law));
        }
    }
}

/// The outcome of one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub name: String,
    pub kind: SuiteKind,
    pub expectation: Expectation,
    pub as_expected: bool,
    /// Differences from the expectation, empty when as expected.
    pub problems: Vec<String>,
    pub report: Option<LawReport>,
}

/// Outcomes of a corpus run, in registration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub all_as_expected: bool,
}

impl CorpusReport {
    pub fn unexpected(&self) -> Vec<&EntryReport> {
        self.entries.iter().filter(|e| !e.as_expected).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tag = if e.as_expected { "ok" } else { "UNEXPECTED" };
            let want = match e.expectation {
                Expectation::Pass => "pass",
                Expectation::Fail(_) => "fail",
            };
            let _ = writeln!(out, "[{tag}] {} {} (expected {want})", e.kind, e.name);
            if let Some(r) = &e.report {
                for line in r.render_text().lines().skip(1) {
                    let _ = writeln!(out, "  {line}");
                }
            }
            for p in &e.problems {
                let _ = writeln!(out, "  ! {p}");
            }
        }
        let n = self.entries.len();
        let bad = self.unexpected().len();
        let _ = writeln!(
            out,
            "{} entries, {} as expected, {} unexpected",
            n,
            n - bad,
            bad
        );
        out
    }
}

/// A list of entries.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn push(&mut self, entry: CorpusEntry) {
        self.entries.push(entry);
    }

    /// Entries of the given kind and name; `None` matches anything.
    pub fn select(&self, kind: Option<SuiteKind>, name: Option<&str>) -> Corpus {
        let entries = self
            .entries
            .iter()
            .filter(|e| kind.is_none_or(|k| e.kind == k) && name.is_none_or(|n| e.name == n))
            .cloned()
            .collect();
        Corpus { entries }
    }

    pub fn get(&self, kind: SuiteKind, name: &str) -> Option<&CorpusEntry> {
        self.entries
            .iter()
            .find(|e| e.kind == kind && e.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| format!("{} {}", e.kind, e.name))
            .collect()
    }

    pub fn run(&self, cfg: &RunConfig) -> CorpusReport {
        let entries: Vec<EntryReport> = self.entries.iter().map(|e| e.run(cfg)).collect();
        let all_as_expected = entries.iter().all(|e| e.as_expected);
        CorpusReport {
            entries,
            all_as_expected,
        }
    }
}

/// Runs the whole standard corpus.
pub fn run_corpus(cfg: &RunConfig) -> CorpusReport {
    standard_corpus().run(cfg)
}

fn setup(e: ComposeError) -> LawError {
    match e {
        ComposeError::Law(l) => l,
        other => LawError::Setup(other.to_string()),
    }
}

fn d<T: Val>(xs: impl IntoIterator<Item = T>) -> FiniteDomain<T> {
    FiniteDomain::dedup(xs)
}

fn bits() -> FiniteDomain<i32> {
    d([0, 1])
}

fn console() -> Console {
    Console::new(vec![vec![], vec!["1".into()], vec!["2".into(), "0".into()]])
}

fn scripted_console() -> Console {
    Console::new(vec![vec!["0".into()], vec!["1".into()]])
}

/// The pairs `(a, b)` with `a <= b`, fixed up by the least or greatest
/// partner.
pub fn leq_nondet(choice: &Choice, dom: &FiniteDomain<i32>) -> Bx<Choice, (i32, i32), i32, i32> {
    let (up, down) = (dom.as_slice().to_vec(), dom.as_slice().to_vec());
    nondet_bx(
        choice,
        |a: &i32, b: &i32| a <= b,
        move |a: &i32| up.iter().copied().filter(|b| a <= b).collect(),
        move |b: &i32| down.iter().copied().filter(|a| a <= b).collect(),
        dom,
        dom,
    )
    .expect("offered partners satisfy the predicate")
}

/// `a` on the left, `a + 10` on the right, defined below `2`.
pub fn shifted_partial<E: Effect>(eff: &E) -> Bx<E, (i32, i32), i32, i32> {
    partial_bx(
        eff,
        |a: &i32| (*a < 2).then_some(a + 10),
        |b: &i32| (*b < 12).then_some(b - 10),
        &d([0, 1, 2]),
        &d([10, 11, 12]),
    )
    .expect("partial inverses over a family with a zero")
}

fn ratios() -> FiniteDomain<Ratio<i64>> {
    d([
        Ratio::from_integer(0),
        Ratio::from_integer(1),
        Ratio::from_integer(2),
        Ratio::new(1, 2),
    ])
}

fn flip_iso() -> Iso<i32, i32> {
    Iso::new(|a: &i32| 1 - a, |b: &i32| 1 - b)
}

fn monad<E: Effect>(name: &str, eff: E) -> CorpusEntry {
    CorpusEntry::new(name, SuiteKind::Monad, Expectation::Pass, move || {
        monad_law_suite(&eff, &d([0u8, 1]))
    })
}

fn state<E: Effect>(name: &str, eff: E) -> CorpusEntry {
    CorpusEntry::new(name, SuiteKind::State, Expectation::Pass, move || {
        state_law_suite(&eff, &d([0u8, 1, 2]), &bits())
    })
}

fn seven<E: Effect, S: Val, A: Val, B: Val>(
    name: &str,
    expectation: Expectation,
    bx: impl Fn() -> Result<Bx<E, S, A, B>, LawError> + Send + Sync + 'static,
) -> CorpusEntry {
    CorpusEntry::new(name, SuiteKind::Seven, expectation, move || {
        seven_law_suite(&bx()?)
    })
}

fn init<E: Effect, S: Val, A: Val, B: Val>(
    name: &str,
    expectation: Expectation,
    ibx: impl Fn() -> Result<InitBx<E, S, A, B>, LawError> + Send + Sync + 'static,
) -> CorpusEntry {
    CorpusEntry::new(name, SuiteKind::Init, expectation, move || {
        init_law_suite(&ibx()?)
    })
}

fn lens<A: Val, B: Val>(
    name: &str,
    expectation: Expectation,
    l: Lens<A, B>,
    da: FiniteDomain<A>,
    db: FiniteDomain<B>,
) -> CorpusEntry {
    CorpusEntry::new(name, SuiteKind::Lens, expectation, move || {
        Ok(lens_law_suite(&l, &da, &db))
    })
}

fn theta<A: Val, B: Val>(
    name: &str,
    expectation: Expectation,
    l: Lens<A, B>,
    da: FiniteDomain<A>,
    db: FiniteDomain<B>,
) -> CorpusEntry {
    CorpusEntry::new(name, SuiteKind::Theta, expectation, move || {
        let phi = Theta::from_lens(&Identity, &l);
        monad_morphism_suite(
            &phi,
            &StateT::new(&Identity, &db),
            &StateT::new(&Identity, &da),
            &bits(),
        )
    })
}

fn composers_checked() -> Result<
    InitBx<Identity, impl Val, crate::examples::ComposerSet, Vec<crate::examples::NameNation>>,
    LawError,
> {
    let (dl, dr) = composers_universe();
    symlens_to_checked_bx(&Identity, &composers_symlens(), &dl, &dr, 10_000)
        .map(|b| b.renamed("composers"))
        .map_err(|e| LawError::Setup(e.to_string()))
}

fn dyn_identity() -> Bx<Identity, DynState<i32, i32>, i32, i32> {
    dynamic_bx(
        &Identity,
        |a: &i32, _: &i32| 1 - a,
        |_: &i32, b: &i32| 1 - b,
    )
    .renamed("dynamic")
    .with_space(dynamic_space(&bits(), &bits(), 1))
}

/// The registered instances.
pub fn standard_corpus() -> Corpus {
    let mut c = Corpus::default();

    c.push(monad("identity", Identity));
    c.push(monad("failure", Failure));
    c.push(monad("choice", Choice::ordered()));
    c.push(monad("reader", Reader::new(vec![0u8, 1, 2])));
    c.push(monad("writer", Writer::new(vec!['a', 'b'])));
    c.push(monad("console", console()));
    c.push(monad("native-state", NativeState::new(vec![false, true])));

    c.push(CorpusEntry::new(
        "failure",
        SuiteKind::Commutativity,
        Expectation::Pass,
        || commutativity_suite(&Failure, &bits(), &bits()),
    ));
    c.push(CorpusEntry::new(
        "reader",
        SuiteKind::Commutativity,
        Expectation::Pass,
        || commutativity_suite(&Reader::new(vec![0u8, 1, 2]), &bits(), &bits()),
    ));
    c.push(CorpusEntry::new(
        "choice",
        SuiteKind::Commutativity,
        Expectation::fails(&[("commutative", "m=[0, 0], n=[0, 1]")]),
        || commutativity_suite(&Choice::ordered(), &bits(), &bits()),
    ));

    c.push(state("identity", Identity));
    c.push(state("failure", Failure));
    c.push(state("choice", Choice::ordered()));
    c.push(state("reader", Reader::new(vec![0u8, 1])));
    c.push(state("writer", Writer::new(vec!['a'])));
    c.push(state(
        "console",
        Console::new(vec![vec![], vec!["1".into()]]),
    ));
    c.push(state("native-state", NativeState::new(vec![false, true])));

    let pairs = bits().product(&bits());
    c.push(lens(
        "fst",
        Expectation::Pass,
        fst_lens(0),
        pairs.clone(),
        bits(),
    ));
    c.push(lens(
        "snd",
        Expectation::Pass,
        snd_lens(0),
        pairs.clone(),
        bits(),
    ));
    c.push(lens(
        "counting",
        Expectation::fails(&[("UU", "a=(0, 0), b=1, b'=0")]),
        mutants::counting_lens(),
        bits().product(&d([0u8, 1, 2])),
        bits(),
    ));
    c.push(lens(
        "resetting",
        Expectation::fails(&[("VU", "a=(0, 1)")]),
        mutants::resetting_lens(),
        pairs.clone(),
        bits(),
    ));

    c.push(theta(
        "fst",
        Expectation::Pass,
        fst_lens(0),
        pairs.clone(),
        bits(),
    ));
    c.push(theta(
        "snd",
        Expectation::Pass,
        snd_lens(0),
        pairs.clone(),
        bits(),
    ));
    c.push(theta(
        "counting",
        Expectation::fails(&[(
            "preserves bind",
            "m={0->(0, 0), 1->(0, 0)}, k={0->{0->(0, 1), 1->(0, 1)}, 1->{0->(0, 0), 1->(0, 1)}}",
        )]),
        mutants::counting_lens(),
        bits().product(&d([0u8, 1, 2])),
        bits(),
    ));

    c.push(CorpusEntry::new(
        "composers",
        SuiteKind::Symlens,
        Expectation::Pass,
        || {
            let (dl, dr) = composers_universe();
            let sl = composers_symlens();
            let dc = consistent_triples(&sl, &dl, &dr, 10_000)
                .map_err(|e| LawError::Setup(e.to_string()))?
                .map(|t| t.2.clone());
            Ok(symlens_law_suite(
                &sl,
                &dl,
                &dr,
                &FiniteDomain::dedup(dc.into_vec()),
            ))
        },
    ));
    c.push(CorpusEntry::new(
        "stale composers",
        SuiteKind::Symlens,
        Expectation::fails(&[(
            "PutRL",
            r#"a={}, c=[("J. S. Bach", Dates(Some(("1685", "1750"))))]"#,
        )]),
        || {
            let (dl, dr) = composers_universe();
            let sl = mutants::stale_composers_symlens();
            let dc = consistent_triples(&composers_symlens(), &dl, &dr, 10_000)
                .map_err(|e| LawError::Setup(e.to_string()))?
                .map(|t| t.2.clone());
            Ok(symlens_law_suite(
                &sl,
                &dl,
                &dr,
                &FiniteDomain::dedup(dc.into_vec()),
            ))
        },
    ));

    seven_law_entries(&mut c);

    c.push(CorpusEntry::new(
        "identity",
        SuiteKind::Overwrite,
        Expectation::Pass,
        || overwrite_suite(&identity_bx(&Identity, &bits())),
    ));
    c.push(CorpusEntry::new(
        "fst",
        SuiteKind::Overwrite,
        Expectation::Pass,
        || overwrite_suite(&fst_bx(&Identity, &bits(), &bits())),
    ));
    c.push(CorpusEntry::new(
        "toggle p",
        SuiteKind::Overwrite,
        Expectation::Pass,
        || overwrite_suite(&mutants::xor_components().0),
    ));
    c.push(CorpusEntry::new(
        "toggle q by p",
        SuiteKind::Overwrite,
        Expectation::Pass,
        || overwrite_suite(&mutants::xor_components().1),
    ));
    c.push(CorpusEntry::new(
        "pair(toggle p, toggle q by p)",
        SuiteKind::Overwrite,
        Expectation::fails(&[
            (
                "S_LS_L",
                "first=(false, false), second=(true, false), state=(false, true)",
            ),
            (
                "S_RS_R",
                "first=(false, false), second=(true, false), state=(false, true)",
            ),
        ]),
        || {
            let (x, y) = mutants::xor_components();
            overwrite_suite(&pair_bx(&x, &y).map_err(setup)?)
        },
    ));

    c.push(CorpusEntry::new(
        "identity",
        SuiteKind::Stability,
        Expectation::Pass,
        || stability_suite(&identity_bx(&Identity, &bits())),
    ));
    c.push(CorpusEntry::new(
        "nondet",
        SuiteKind::Stability,
        Expectation::Pass,
        || stability_suite(&leq_nondet(&Choice::ordered(), &bits())),
    ));
    c.push(CorpusEntry::new(
        "unstable",
        SuiteKind::Stability,
        Expectation::fails(&[("stable L", "pair=(1, 0), state=(0, 1)")]),
        || stability_suite(&mutants::unstable_bx()),
    ));

    init_entries(&mut c);
    equivalence_entries(&mut c);
    c
}

fn seven_law_entries(c: &mut Corpus) {
    let pass = Expectation::Pass;
    c.push(seven("identity", pass.clone(), || {
        Ok(identity_bx(&Identity, &d([0, 1, 2])))
    }));
    c.push(seven("lens fst", pass.clone(), || {
        let pairs = bits().product(&bits());
        Ok(
            lens_to_bx(&Identity, &fst_lens::<i32, i32>(0)).with_space(crate::bx::Space::new(
                pairs.clone(),
                pairs,
                bits(),
            )),
        )
    }));
    c.push(seven("composers", pass.clone(), || {
        Ok(composers_checked()?.into_bx())
    }));
    c.push(seven("inv", pass.clone(), || Ok(inv_bx(&ratios()))));
    c.push(seven("partial over failure", pass.clone(), || {
        Ok(shifted_partial(&Failure))
    }));
    c.push(seven("partial over choice", pass.clone(), || {
        Ok(shifted_partial(&Choice::ordered()))
    }));
    c.push(seven("read-some", pass.clone(), || {
        Ok(read_some_bx(
            &bits(),
            &d(["0".to_string(), "1".into(), "01".into(), "x".into()]),
        ))
    }));
    c.push(seven("nondet", pass.clone(), || {
        Ok(leq_nondet(&Choice::ordered(), &bits()))
    }));
    c.push(seven("log", pass.clone(), || {
        Ok(log_bx(&identity_bx(
            &Writer::<Either<i32, i32>>::new(vec![]),
            &bits(),
        )))
    }));
    c.push(seven("alert", pass.clone(), || {
        Ok(alert_bx(&identity_bx(&console(), &bits())))
    }));
    c.push(seven("switch", pass.clone(), || {
        let reader = Reader::new(vec![false, true]);
        let r2 = reader.clone();
        let space = identity_bx(&reader, &bits()).require_space()?.clone();
        switch_bx(
            &reader,
            move |flip| {
                if *flip {
                    iso_bx(&r2, &flip_iso(), &bits()).into_bx()
                } else {
                    identity_bx(&r2, &bits())
                }
            },
            space,
        )
        .map_err(|e| LawError::Setup(e.to_string()))
    }));
    c.push(seven("dynamic", pass.clone(), || Ok(dyn_identity())));
    c.push(seven("dynamic-search", pass.clone(), || {
        Ok(
            dynamic_search_bx(|a: &i32, b: &i32| a == b, &bits(), &bits())
                .with_space(dynamic_space(&bits(), &bits(), 1)),
        )
    }));
    c.push(seven("dynamic-io", pass.clone(), || {
        let dom = d([0i64, 1]);
        Ok(dynamic_io_bx::<i64, i64>(&scripted_console()).with_space(dynamic_space(&dom, &dom, 1)))
    }));
    c.push(seven("const", pass.clone(), || {
        Ok(const_bx(&Identity, 0, &bits()).into_bx())
    }));
    c.push(seven("fst", pass.clone(), || {
        Ok(fst_bx(&Identity, &bits(), &bits()))
    }));
    c.push(seven("snd", pass.clone(), || {
        Ok(snd_bx(&Identity, &bits(), &bits()))
    }));
    c.push(seven("inl", pass.clone(), || {
        Ok(inl_bx(&Identity, 0, &bits(), &d([false, true])).into_bx())
    }));
    c.push(seven("swap", pass.clone(), || {
        Ok(swap_bx(&Identity, &bits(), &d([false, true])).into_bx())
    }));
    c.push(seven("pair", pass.clone(), || {
        pair_bx(
            &identity_bx(&Identity, &bits()),
            &iso_bx(&Identity, &flip_iso(), &bits()).into_bx(),
        )
        .map_err(setup)
    }));
    c.push(seven("sum", pass.clone(), || {
        sum_bx(
            &identity_bx(&Identity, &bits()),
            &fst_bx(&Identity, &d([false, true]), &d(['x', 'y'])),
        )
        .map_err(setup)
    }));
    c.push(seven("list", pass.clone(), || {
        Ok(list_ibx(&identity_ibx(&Identity, &bits()), 2)
            .map_err(setup)?
            .into_bx())
    }));
    c.push(seven("list of inv", pass.clone(), || {
        let inv = InitBx::new(
            inv_bx(&ratios()),
            |a: Ratio<i64>| (a != Ratio::from_integer(0)).then(|| (a, a.recip())),
            |b: Ratio<i64>| (b != Ratio::from_integer(0)).then(|| (b.recip(), b)),
        );
        Ok(list_ibx(&inv, 2).map_err(setup)?.into_bx())
    }));

    c.push(seven("identity ; identity", pass.clone(), || {
        compose(
            &identity_bx(&Identity, &bits()),
            &identity_bx(&Identity, &bits()),
        )
        .map_err(setup)
    }));
    c.push(seven("swap ; fst", pass.clone(), || {
        compose(
            &swap_bx(&Identity, &bits(), &d([false, true])).into_bx(),
            &fst_bx(&Identity, &d([false, true]), &bits()),
        )
        .map_err(setup)
    }));
    c.push(seven("swap ; swap", pass.clone(), || {
        let s1 = swap_bx(&Identity, &bits(), &d([false, true])).into_bx();
        let s2 = swap_bx(&Identity, &d([false, true]), &bits()).into_bx();
        compose(&s1, &s2).map_err(setup)
    }));
    c.push(seven("inv ; inv", pass.clone(), || {
        compose(&inv_bx(&ratios()), &inv_bx(&ratios())).map_err(setup)
    }));
    c.push(seven("nondet ; nondet", pass.clone(), || {
        compose(
            &leq_nondet(&Choice::ordered(), &bits()),
            &leq_nondet(&Choice::ordered(), &bits()),
        )
        .map_err(setup)
    }));
    c.push(seven("partial ; identity", pass.clone(), || {
        compose(
            &shifted_partial(&Failure),
            &identity_bx(&Failure, &d([10, 11, 12])),
        )
        .map_err(setup)
    }));
    c.push(seven("flip ; lens fst", pass.clone(), || {
        let pairs = bits().product(&bits());
        let flip = iso_bx(
            &Identity,
            &Iso::new(
                |(a, b): &(i32, i32)| (*b, *a),
                |(b, a): &(i32, i32)| (*a, *b),
            ),
            &pairs,
        )
        .into_bx();
        let fst = lens_to_bx(&Identity, &fst_lens::<i32, i32>(0))
            .with_space(crate::bx::Space::new(pairs.clone(), pairs, bits()));
        compose(&flip, &fst).map_err(setup)
    }));

    for law in mutants::SEVEN_LAWS {
        c.push(seven(
            &format!("breaks {law}"),
            Expectation::fails(&[(law, mutant_witness(law))]),
            move || {
                mutants::law_mutant(law)
                    .ok_or_else(|| LawError::Setup(format!("no mutant for {law}")))
            },
        ));
    }
}

/// The first failing assignment of each seven-law mutant.
fn mutant_witness(law: &str) -> &'static str {
    match law {
        "S_LG_L" | "S_RG_R" => "value=0, state=(1, 0)",
        _ => "state=(0, 0)",
    }
}

fn init_entries(c: &mut Corpus) {
    let pass = Expectation::Pass;
    c.push(init("identity", pass.clone(), || {
        Ok(identity_ibx(&Identity, &bits()))
    }));
    c.push(init("lens fst", pass.clone(), || {
        let pairs = bits().product(&bits());
        lens_to_ibx(&Identity, &fst_lens::<i32, i32>(0))
            .map(|b| b.with_space(crate::bx::Space::new(pairs.clone(), pairs, bits())))
            .ok_or_else(|| LawError::Setup("lens has no create".into()))
    }));
    c.push(init("composers", pass.clone(), composers_checked));
    c.push(init("const", pass.clone(), || {
        Ok(const_bx(&Identity, 0, &bits()))
    }));
    c.push(init("fst", pass.clone(), || {
        Ok(fst_ibx(&Identity, 0, &bits(), &bits()))
    }));
    c.push(init("inl", pass.clone(), || {
        Ok(inl_bx(&Identity, 0, &bits(), &d([false, true])))
    }));
    c.push(init("swap", pass.clone(), || {
        Ok(swap_bx(&Identity, &bits(), &d([false, true])))
    }));
    c.push(init("list", pass.clone(), || {
        list_ibx(&identity_ibx(&Identity, &bits()), 2).map_err(setup)
    }));
    c.push(init("sum", pass.clone(), || {
        sum_ibx(
            &identity_ibx(&Identity, &bits()),
            &fst_ibx(&Identity, 'x', &d([false, true]), &d(['x', 'y'])),
        )
        .map_err(setup)
    }));
    c.push(init("identity ; identity", pass.clone(), || {
        compose_init(
            &identity_ibx(&Identity, &bits()),
            &identity_ibx(&Identity, &bits()),
        )
        .map_err(setup)
    }));
    c.push(init("swap ; fst", pass.clone(), || {
        compose_init(
            &swap_bx(&Identity, &bits(), &d([false, true])),
            &fst_ibx(&Identity, 0, &d([false, true]), &bits()),
        )
        .map_err(setup)
    }));
    c.push(init("const ; identity", pass.clone(), || {
        compose_init(
            &const_bx(&Identity, 1, &bits()),
            &identity_ibx(&Identity, &bits()),
        )
        .map_err(setup)
    }));
    c.push(init(
        "forgetful init",
        Expectation::fails(&[("I_LG_L", "a=1")]),
        || Ok(mutants::forgetful_init_ibx()),
    ));
}

fn equivalence_entries(c: &mut Corpus) {
    let pass = Expectation::Pass;
    c.push(CorpusEntry::new(
        "identity ; fst",
        SuiteKind::Equivalence,
        pass.clone(),
        || {
            let bx = fst_bx(&Identity, &bits(), &bits());
            let id = identity_bx(&Identity, &bits().product(&bits()));
            let h = left_unit_bijection(&bx).map_err(setup)?;
            equivalence_suite(&bx, &compose(&id, &bx).map_err(setup)?, &h).map_err(setup)
        },
    ));
    c.push(CorpusEntry::new(
        "nondet ; identity",
        SuiteKind::Equivalence,
        pass.clone(),
        || {
            let bx = leq_nondet(&Choice::ordered(), &bits());
            let id = identity_bx(&Choice::ordered(), &bits());
            let h = right_unit_bijection(&bx).map_err(setup)?;
            equivalence_suite(&bx, &compose(&bx, &id).map_err(setup)?, &h).map_err(setup)
        },
    ));
    c.push(CorpusEntry::new(
        "identity ; swap (init)",
        SuiteKind::Equivalence,
        pass.clone(),
        || {
            let bx = swap_bx(&Identity, &bits(), &d([false, true]));
            let id = identity_ibx(&Identity, &bits().product(&d([false, true])));
            let h = left_unit_bijection(bx.bx()).map_err(setup)?;
            init_equivalence_suite(&bx, &compose_init(&id, &bx).map_err(setup)?, &h).map_err(setup)
        },
    ));
    c.push(CorpusEntry::new(
        "(swap ; swap) ; fst",
        SuiteKind::Equivalence,
        pass.clone(),
        || {
            let s1 = swap_bx(&Identity, &bits(), &d([false, true])).into_bx();
            let s2 = swap_bx(&Identity, &d([false, true]), &bits()).into_bx();
            let f = fst_bx(&Identity, &bits(), &d([false, true]));
            let lhs = compose(&compose(&s1, &s2).map_err(setup)?, &f).map_err(setup)?;
            let rhs = compose(&s1, &compose(&s2, &f).map_err(setup)?).map_err(setup)?;
            equivalence_suite(&lhs, &rhs, &assoc_bijection()).map_err(setup)
        },
    ));
    c.push(CorpusEntry::new(
        "(inv ; inv) ; inv",
        SuiteKind::Equivalence,
        pass.clone(),
        || {
            let i = inv_bx(&ratios());
            let lhs = compose(&compose(&i, &i).map_err(setup)?, &i).map_err(setup)?;
            let rhs = compose(&i, &compose(&i, &i).map_err(setup)?).map_err(setup)?;
            equivalence_suite(&lhs, &rhs, &assoc_bijection()).map_err(setup)
        },
    ));
    c.push(CorpusEntry::new(
        "(nondet ; nondet) ; nondet",
        SuiteKind::Equivalence,
        pass.clone(),
        || {
            let n = leq_nondet(&Choice::ordered(), &bits());
            let lhs = compose(&compose(&n, &n).map_err(setup)?, &n).map_err(setup)?;
            let rhs = compose(&n, &compose(&n, &n).map_err(setup)?).map_err(setup)?;
            equivalence_suite(&lhs, &rhs, &assoc_bijection()).map_err(setup)
        },
    ));
}
