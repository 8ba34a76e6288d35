use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ExampleError;
use crate::bx::{Bx, InitBx};
use crate::domain::FiniteDomain;
use crate::effect::Identity;
use crate::stateful::{self, Stateful};
use crate::symlens::SymLens;

/// Birth and death years, when known.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dates(pub Option<(String, String)>);

impl Dates {
    pub fn known(born: &str, died: &str) -> Self {
        Self(Some((born.into(), died.into())))
    }
}

impl fmt::Display for Dates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("????"),
            Some((b, d)) => write!(f, "{b}--{d}"),
        }
    }
}

/// A full record, as held on the left.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composer {
    pub name: String,
    pub nation: String,
    #[serde(default)]
    pub dates: Dates,
}

impl Composer {
    pub fn new(name: &str, nation: &str, dates: Dates) -> Self {
        Self {
            name: name.into(),
            nation: nation.into(),
            dates,
        }
    }

    pub fn name_nation(&self) -> NameNation {
        NameNation {
            name: self.name.clone(),
            nation: self.nation.clone(),
        }
    }
}

impl fmt::Display for Composer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {})", self.name, self.nation, self.dates)
    }
}

/// A record as held on the right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NameNation {
    pub name: String,
    pub nation: String,
}

impl NameNation {
    pub fn new(name: &str, nation: &str) -> Self {
        Self {
            name: name.into(),
            nation: nation.into(),
        }
    }
}

/// The left view: an unordered collection of records.
pub type ComposerSet = BTreeSet<Composer>;

/// The complement of the symmetric lens: names with their dates, in right
/// view order.
pub type NameDates = Vec<(String, Dates)>;

fn name_dates(triples: &[Composer]) -> NameDates {
    triples
        .iter()
        .map(|c| (c.name.clone(), c.dates.clone()))
        .collect()
}

fn name_nations(triples: &[Composer]) -> Vec<NameNation> {
    triples.iter().map(Composer::name_nation).collect()
}

fn take_named<T>(pool: Vec<T>, name: &str, key: impl Fn(&T) -> &str) -> (Vec<T>, Vec<T>) {
    pool.into_iter().partition(|t| key(t) == name)
}

/// Orders `records` by the names in `order`, appending the rest sorted.
fn align(order: impl IntoIterator<Item = String>, records: Vec<Composer>) -> Vec<Composer> {
    let mut selected: Vec<Composer> = Vec::new();
    let mut leftover = records;
    for name in order {
        let (mut picked, rest) = take_named(leftover, &name, |c| &c.name);
        picked.append(&mut selected);
        selected = picked;
        leftover = rest;
    }
    selected.reverse();
    leftover.sort();
    selected.extend(leftover);
    selected
}

/// Rebuilds records for the right view, taking dates from `known` by name.
fn rebuild<T>(
    view: &[NameNation],
    known: Vec<T>,
    key: impl Fn(&T) -> &str,
    dates: impl Fn(&T) -> Dates,
) -> Vec<Composer> {
    let mut pool = known;
    let mut out = Vec::new();
    for nn in view {
        let (picked, rest) = take_named(pool, &nn.name, &key);
        let d = picked.first().map(&dates).unwrap_or_default();
        out.push(Composer {
            name: nn.name.clone(),
            nation: nn.nation.clone(),
            dates: d,
        });
        pool = rest;
    }
    out
}

/// The composers example as a symmetric lens whose complement remembers
/// dates and right-view order.
pub fn composers_symlens() -> SymLens<NameDates, ComposerSet, Vec<NameNation>> {
    SymLens::new(
        |m: &ComposerSet, c: &NameDates| {
            let triples = align(
                c.iter().map(|(n, _)| n.clone()),
                m.iter().cloned().collect(),
            );
            (name_nations(&triples), name_dates(&triples))
        },
        |n: &Vec<NameNation>, c: &NameDates| {
            let triples = rebuild(n, c.clone(), |(name, _)| name, |(_, d)| d.clone());
            (triples.iter().cloned().collect(), name_dates(&triples))
        },
        Vec::new(),
    )
}

/// The composers example as an initialisable bx over a list of records.
pub fn composers_bx() -> InitBx<Identity, Vec<Composer>, ComposerSet, Vec<NameNation>> {
    let bx = Bx::new(
        "composers",
        &Identity,
        stateful::gets(&Identity, |l: &Vec<Composer>| {
            l.iter().cloned().collect::<ComposerSet>()
        }),
        |m: ComposerSet| {
            stateful::modify(&Identity, move |l: Vec<Composer>| {
                align(l.into_iter().map(|c| c.name), m.iter().cloned().collect())
            })
        },
        stateful::gets(&Identity, |l: &Vec<Composer>| name_nations(l)),
        |n: Vec<NameNation>| {
            stateful::modify(&Identity, move |l: Vec<Composer>| {
                rebuild(&n, l, |c: &Composer| &c.name, |c| c.dates.clone())
            })
        },
    );
    InitBx::new(
        bx,
        |m: ComposerSet| m.into_iter().collect(),
        |n: Vec<NameNation>| {
            n.into_iter()
                .map(|nn| Composer {
                    name: nn.name,
                    nation: nn.nation,
                    dates: Dates::default(),
                })
                .collect()
        },
    )
}

/// One step of a composers scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", content = "value")]
pub enum ScriptStep {
    #[serde(rename = "setL")]
    SetL(Vec<Composer>),
    #[serde(rename = "setR")]
    SetR(Vec<NameNation>),
    #[serde(rename = "getL")]
    GetL,
    #[serde(rename = "getR")]
    GetR,
}

/// A view value reported by a scenario step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "side", content = "items")]
pub enum View {
    #[serde(rename = "left")]
    Left(Vec<Composer>),
    #[serde(rename = "right")]
    Right(Vec<NameNation>),
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = match self {
            View::Left(cs) => cs.iter().map(ToString::to_string).collect(),
            View::Right(ns) => ns
                .iter()
                .map(|n| format!("{} ({})", n.name, n.nation))
                .collect(),
        };
        write!(f, "[{}]", items.join(", "))
    }
}

/// What both implementations reported for one step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: usize,
    pub op: String,
    /// For a set, the opposite view afterwards; for a get, the view read.
    pub symlens: View,
    pub bx: View,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub steps: Vec<StepReport>,
    pub all_agree: bool,
}

fn check_keys<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<(), ExampleError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(ExampleError::KeyViolation(n.to_string()));
        }
    }
    Ok(())
}

/// Runs `script` against both the symmetric lens and the bx, starting from
/// no composers on either side, and compares what each reports.
pub fn composers_scenario(script: &[ScriptStep]) -> Result<ScenarioReport, ExampleError> {
    let sl = composers_symlens();
    let ibx = composers_bx();
    let (mut left, mut c) = sl.putl(&Vec::new(), sl.missing());
    let mut right: Vec<NameNation> = Vec::new();
    let mut state = ibx.init_r(Vec::new());
    let run = |m: Stateful<Identity, Vec<Composer>, ()>, s: Vec<Composer>| m.exec(s);
    let mut steps = Vec::new();
    for (i, step) in script.iter().enumerate() {
        let (op, sl_view, bx_view) = match step {
            ScriptStep::SetL(records) => {
                check_keys(records.iter().map(|r| r.name.as_str()))?;
                let m: ComposerSet = records.iter().cloned().collect();
                let (n, c2) = sl.putr(&m, &c);
                (left, right, c) = (m.clone(), n, c2);
                state = run(ibx.set_l(m), state);
                (
                    "setL",
                    View::Right(right.clone()),
                    View::Right(ibx.get_r().eval(state.clone())),
                )
            }
            ScriptStep::SetR(n) => {
                check_keys(n.iter().map(|r| r.name.as_str()))?;
                let (m, c2) = sl.putl(n, &c);
                (left, right, c) = (m, n.clone(), c2);
                state = run(ibx.set_r(n.clone()), state);
                let bx_left = ibx.get_l().eval(state.clone());
                (
                    "setR",
                    View::Left(left.iter().cloned().collect()),
                    View::Left(bx_left.into_iter().collect()),
                )
            }
            ScriptStep::GetL => (
                "getL",
                View::Left(left.iter().cloned().collect()),
                View::Left(ibx.get_l().eval(state.clone()).into_iter().collect()),
            ),
            ScriptStep::GetR => (
                "getR",
                View::Right(right.clone()),
                View::Right(ibx.get_r().eval(state.clone())),
            ),
        };
        let agree = sl_view == bx_view;
        steps.push(StepReport {
            step: i + 1,
            op: op.into(),
            symlens: sl_view,
            bx: bx_view,
            agree,
        });
    }
    let all_agree = steps.iter().all(|s| s.agree);
    Ok(ScenarioReport { steps, all_agree })
}

/// Bach on the left; Tavener appended on the right; Tavener's dates fixed
/// on the left; Andriessen and Lully added around them on the right.
pub fn tavener_scenario() -> Vec<ScriptStep> {
    let bach = Composer::new("J. S. Bach", "German", Dates::known("1685", "1750"));
    let tavener = Composer::new("John Tavener", "British", Dates::known("1944", "2013"));
    vec![
        ScriptStep::SetL(vec![bach.clone()]),
        ScriptStep::GetR,
        ScriptStep::SetR(vec![
            NameNation::new("J. S. Bach", "German"),
            NameNation::new("John Tavener", "British"),
        ]),
        ScriptStep::GetL,
        ScriptStep::SetL(vec![bach, tavener]),
        ScriptStep::GetR,
        ScriptStep::SetR(vec![
            NameNation::new("Hendrik Andriessen", "Dutch"),
            NameNation::new("J. S. Bach", "German"),
            NameNation::new("John Tavener", "British"),
            NameNation::new("J-B Lully", "French"),
        ]),
        ScriptStep::GetL,
    ]
}

/// A small universe for exhaustive checking: every set of the two records
/// `J. S. Bach` and `John Tavener` on the left, and every duplicate-free
/// ordering of their name/nation pairs on the right.
pub fn composers_universe() -> (FiniteDomain<ComposerSet>, FiniteDomain<Vec<NameNation>>) {
    let bach = Composer::new("J. S. Bach", "German", Dates::known("1685", "1750"));
    let tavener = Composer::new("John Tavener", "British", Dates::known("1944", "2013"));
    let left = FiniteDomain::dedup([
        ComposerSet::new(),
        ComposerSet::from([bach.clone()]),
        ComposerSet::from([tavener.clone()]),
        ComposerSet::from([bach.clone(), tavener.clone()]),
    ]);
    let (b, t) = (bach.name_nation(), tavener.name_nation());
    let right = FiniteDomain::dedup([
        vec![],
        vec![b.clone()],
        vec![t.clone()],
        vec![b.clone(), t.clone()],
        vec![t, b],
    ]);
    (left, right)
}
