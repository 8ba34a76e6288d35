use entangle::bx::{check_init_laws, check_seven_laws};
use entangle::combinators::{iso_bx, Iso};
use entangle::compose::identity_bx;
use entangle::effect::{
    Choice, Console, ConsoleError, ConsoleWorld, Failure, Identity, Reader, Writer,
};
use entangle::examples::{
    alert_bx, composers_bx, composers_scenario, count_prompts, dynamic_bx, dynamic_io_bx,
    dynamic_search_bx, dynamic_space, log_bx, nondet_bx, signal_bx, switch_bx, sync_session,
    tavener_scenario, Composer, Dates, DynState, ExampleError, NameNation, ScriptStep, SessionEnd,
    View,
};
use entangle::lawcheck::RunConfig;
use entangle::{Either, FiniteDomain};

fn cfg() -> RunConfig {
    RunConfig::default().exhaustive_only()
}

fn trits() -> FiniteDomain<i32> {
    FiniteDomain::dedup([0, 1, 2])
}

fn bits() -> FiniteDomain<i32> {
    FiniteDomain::dedup([0, 1])
}

/// Direct reading of nondeterministic restoration: keep the other side when
/// the pair is consistent, otherwise try every offered partner in order.
fn oracle_set_l(
    ok: fn(&i32, &i32) -> bool,
    bs: fn(&i32) -> Vec<i32>,
    s: (i32, i32),
    a2: i32,
) -> Vec<((), (i32, i32))> {
    if ok(&a2, &s.1) {
        vec![((), (a2, s.1))]
    } else {
        bs(&a2).into_iter().map(|b2| ((), (a2, b2))).collect()
    }
}

fn oracle_set_r(
    ok: fn(&i32, &i32) -> bool,
    as_: fn(&i32) -> Vec<i32>,
    s: (i32, i32),
    b2: i32,
) -> Vec<((), (i32, i32))> {
    if ok(&s.0, &b2) {
        vec![((), (s.0, b2))]
    } else {
        as_(&b2).into_iter().map(|a2| ((), (a2, b2))).collect()
    }
}

fn check_against_oracle(
    ok: fn(&i32, &i32) -> bool,
    bs: fn(&i32) -> Vec<i32>,
    as_: fn(&i32) -> Vec<i32>,
) -> usize {
    let bx = nondet_bx(&Choice::ordered(), ok, bs, as_, &trits(), &trits()).unwrap();
    let mut compared = 0;
    for a in trits().iter() {
        for b in trits().iter() {
            let s = (*a, *b);
            assert_eq!(bx.get_l().run(s), vec![(*a, s)]);
            assert_eq!(bx.get_r().run(s), vec![(*b, s)]);
            for v in trits().iter() {
                assert_eq!(
                    bx.set_l(*v).run(s),
                    oracle_set_l(ok, bs, s, *v),
                    "setL {v} at {s:?}"
                );
                assert_eq!(
                    bx.set_r(*v).run(s),
                    oracle_set_r(ok, as_, s, *v),
                    "setR {v} at {s:?}"
                );
                compared += 2;
            }
        }
    }
    compared
}

#[test]
fn nondet_matches_oracle_for_order() {
    let n = check_against_oracle(
        |a, b| a <= b,
        |a| (*a..=2).rev().collect(),
        |b| (0..=*b).collect(),
    );
    assert_eq!(n, 2 * 27);
}

#[test]
fn nondet_matches_oracle_for_parity() {
    check_against_oracle(
        |a, b| (a + b) % 2 == 0,
        |a| (0..=2).filter(|b| (a + b) % 2 == 0).collect(),
        |b| (0..=2).rev().filter(|a| (a + b) % 2 == 0).collect(),
    );
}

#[test]
fn nondet_with_no_partner_has_no_outcome() {
    let bx = nondet_bx(
        &Choice::ordered(),
        |a: &i32, b: &i32| a == b,
        |_| vec![],
        |b| vec![*b],
        &bits(),
        &bits(),
    )
    .unwrap();
    assert_eq!(bx.set_l(1).run((0, 0)), vec![]);
    assert_eq!(bx.set_r(1).run((0, 0)), vec![((), (1, 1))]);
}

#[test]
fn nondet_rejects_offers_that_are_not_ok() {
    let err = nondet_bx(
        &Choice::ordered(),
        |a: &i32, b: &i32| a <= b,
        |_| vec![0],
        |b| vec![*b],
        &bits(),
        &bits(),
    )
    .unwrap_err();
    assert!(matches!(err, ExampleError::SideCondition(_)));
}

#[test]
fn log_records_exactly_the_changed_views() {
    let w = Writer::<Either<i32, i32>>::new(vec![]);
    let bx = log_bx(&identity_bx(&w, &bits()));
    assert!(check_seven_laws(&bx, &cfg()).unwrap().passed());
    let ops: Vec<Either<i32, i32>> = [0, 1]
        .iter()
        .flat_map(|v| [Either::Left(*v), Either::Right(*v)])
        .collect();
    let mut scripts: Vec<Vec<Either<i32, i32>>> = vec![vec![]];
    for _ in 0..4 {
        let longer: Vec<_> = scripts
            .iter()
            .filter(|s| s.len() == scripts.last().unwrap().len())
            .flat_map(|s| {
                ops.iter().map(move |op| {
                    let mut t = s.clone();
                    t.push(op.clone());
                    t
                })
            })
            .collect();
        scripts.extend(longer);
    }
    assert_eq!(scripts.len(), 1 + 4 + 16 + 64 + 256);
    for script in &scripts {
        for start in [0, 1] {
            let mut state = start;
            let mut log = Vec::new();
            let mut expected = Vec::new();
            for op in script {
                let (s2, written) = match op {
                    Either::Left(a) => bx.set_l(*a).exec(state),
                    Either::Right(b) => bx.set_r(*b).exec(state),
                };
                let v = match op {
                    Either::Left(v) | Either::Right(v) => *v,
                };
                if v != state {
                    expected.push(op.clone());
                }
                log.extend(written);
                state = s2;
            }
            assert_eq!(log, expected, "{script:?} from {start}");
        }
    }
}

#[test]
fn signal_over_failure_keeps_failures() {
    let bx = signal_bx(
        |_: &i32| Some(()),
        |b: &i32| if *b == 1 { None } else { Some(()) },
        &identity_bx(&Failure, &bits()),
    );
    assert_eq!(bx.set_r(1).exec(0), None);
    assert_eq!(bx.set_r(1).exec(1), Some(1));
    assert_eq!(bx.set_l(1).exec(0), Some(1));
}

#[test]
fn alert_prints_the_changed_side() {
    let console = Console::new(vec![vec![]]);
    let bx = alert_bx(&identity_bx(&console, &bits()));
    let m = bx.set_l(1).then(&bx.set_r(1)).then(&bx.set_r(0));
    let (s, w) = Console::run(&m.exec(0), ConsoleWorld::scripted(Vec::<String>::new())).unwrap();
    assert_eq!(s, 0);
    let out: Vec<&str> = w.transcript().iter().map(|e| e.text.as_str()).collect();
    assert_eq!(out, vec!["Left", "Right"]);
}

#[test]
fn switch_follows_the_environment() {
    let reader = Reader::new(vec![false, true]);
    let r2 = reader.clone();
    let flip = Iso::new(|a: &i32| 1 - a, |b: &i32| 1 - b);
    let space = identity_bx(&reader, &bits())
        .require_space()
        .unwrap()
        .clone();
    let bx = switch_bx(
        &reader,
        move |f| {
            if *f {
                iso_bx(&r2, &flip, &bits()).into_bx()
            } else {
                identity_bx(&r2, &bits())
            }
        },
        space,
    )
    .unwrap();
    assert!(check_seven_laws(&bx, &cfg()).unwrap().passed());
    let m = bx.get_r().run(0);
    assert_eq!(Reader::run(&m, &false), (0, 0));
    assert_eq!(Reader::run(&m, &true), (1, 0));
    let m = bx.set_r(0).exec(0);
    assert_eq!(Reader::run(&m, &true), 1);
}

#[test]
fn dynamic_memoises_first_answer() {
    let bx = dynamic_bx(
        &Identity,
        |a: &i32, b: &i32| a + b,
        |a: &i32, b: &i32| a * b,
    );
    let s = bx.set_l(2).exec(DynState::new(0, 5));
    assert_eq!(s.views, (2, 7));
    assert_eq!(s.memo_l, vec![((2, 5), 7)]);
    let s = bx.set_l(3).exec(s);
    assert_eq!(s.memo_l, vec![((3, 7), 10), ((2, 5), 7)]);
    let s = bx.set_r(4).exec(s);
    assert_eq!(s.views, (12, 4));
    assert_eq!(s.memo_r, vec![((3, 4), 12)]);
    let unchanged = bx.set_r(4).exec(s.clone());
    assert_eq!(unchanged, s);
}

#[test]
fn dynamic_replays_a_recorded_answer() {
    // A matcher that would answer differently the second time is never asked.
    let bx = dynamic_bx(&Identity, |_: &i32, _: &i32| 99, |_: &i32, b: &i32| *b);
    let mut s = DynState::new(0, 0);
    s.memo_l = vec![((1, 0), 7)];
    let s = bx.set_l(1).exec(s);
    assert_eq!(s.views, (1, 7));
    assert_eq!(s.memo_l.len(), 1);
}

#[test]
fn dynamic_search_picks_first_match_or_fails() {
    let bx = dynamic_search_bx(|a: &i32, b: &i32| a < b, &trits(), &trits());
    let s = bx.set_l(1).exec(DynState::new(0, 0)).unwrap();
    assert_eq!(s.views, (1, 2));
    assert_eq!(bx.set_l(2).exec(DynState::new(0, 0)), None);
    let checked = dynamic_search_bx(|a: &i32, b: &i32| a <= b, &bits(), &bits())
        .with_space(dynamic_space(&bits(), &bits(), 1));
    assert!(check_seven_laws(&checked, &cfg()).unwrap().passed());
}

#[test]
fn dynamic_io_prompts_once_per_edit() {
    let console = Console::opaque();
    let bx = dynamic_io_bx::<i64, i64>(&console);
    let m = bx
        .set_l(5)
        .then(&bx.set_l(0))
        .then(&bx.set_l(5))
        .exec(DynState::new(0, 0));
    let (s, w) = Console::run(&m, ConsoleWorld::scripted(["10", "0"])).unwrap();
    assert_eq!(s.views, (5, 10));
    assert_eq!(count_prompts(w.transcript()), 2);
    let texts: Vec<&str> = w.transcript().iter().map(|e| e.text.as_str()).collect();
    assert_eq!(&texts[..3], &["Setting 5", "Replacement for 0?", "10"]);
    let err = Console::run(&m, ConsoleWorld::scripted(["x"])).unwrap_err();
    assert!(matches!(err, ConsoleError::Unparsable { .. }));
}

fn step_left(report: &entangle::examples::ScenarioReport, i: usize) -> Vec<Composer> {
    match &report.steps[i].bx {
        View::Left(cs) => cs.clone(),
        other => panic!("step {} reported {other:?}", i + 1),
    }
}

#[test]
fn composers_scenario_agrees_throughout() {
    let report = composers_scenario(&tavener_scenario()).unwrap();
    assert_eq!(report.steps.len(), 8);
    assert!(report.all_agree);
    assert!(report.steps.iter().all(|s| s.agree));
    let after_append = step_left(&report, 3);
    let tavener = after_append
        .iter()
        .find(|c| c.name == "John Tavener")
        .unwrap();
    assert_eq!(tavener.dates, Dates(None));
    assert_eq!(
        report.steps[3].bx.to_string(),
        "[J. S. Bach (German, 1685--1750), John Tavener (British, ????)]"
    );
    assert_eq!(
        report.steps[1].bx,
        View::Right(vec![NameNation::new("J. S. Bach", "German")])
    );
    let last = step_left(&report, 7);
    let names: Vec<&str> = last.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        vec![
            "Hendrik Andriessen",
            "J-B Lully",
            "J. S. Bach",
            "John Tavener"
        ]
    );
    assert_eq!(last[3].dates, Dates::known("1944", "2013"));
    assert_eq!(last[0].dates.to_string(), "????");
}

#[test]
fn composers_rejects_duplicate_names() {
    let err = composers_scenario(&[ScriptStep::SetR(vec![
        NameNation::new("Bach", "German"),
        NameNation::new("Bach", "German"),
    ])])
    .unwrap_err();
    assert_eq!(err, ExampleError::KeyViolation("Bach".into()));
}

#[test]
fn composers_bx_initialises() {
    let ibx = composers_bx();
    assert_eq!(
        ibx.init_r(vec![NameNation::new("Lully", "French")]),
        vec![Composer::new("Lully", "French", Dates::default())]
    );
}

#[test]
fn sync_session_is_deterministic() {
    let script = ["setL 5", "10", "setL 0", "0", "setL 5", "getR", "state"];
    let a = sync_session(DynState::new(0, 0), ConsoleWorld::scripted(script)).unwrap();
    let b = sync_session(DynState::new(0, 0), ConsoleWorld::scripted(script)).unwrap();
    assert_eq!(a.render_transcript(), b.render_transcript());
    assert_eq!(a.prompts(), 2);
    assert_eq!(a.end, SessionEnd::EndOfInput);
    assert!(a
        .render_transcript()
        .ends_with("state (5, 10) memoL 2 memoR 0\n"));
    // The repeated edit `setL 5` against view 0 is answered from the memo.
    for key in ["Replacement for 0?", "Replacement for 10?"] {
        assert_eq!(a.transcript.iter().filter(|e| e.text == key).count(), 1);
    }
}

#[test]
fn sync_session_reports_exhaustion_and_bad_commands() {
    let err = sync_session(DynState::new(0, 0), ConsoleWorld::scripted(["setR 4"])).unwrap_err();
    assert_eq!(err.error, ConsoleError::ScriptExhausted);
    assert_eq!(err.state, DynState::new(0, 0));
    let out = sync_session(
        DynState::new(0, 0),
        ConsoleWorld::scripted(["frobnicate", "setL", "quit", "getL"]),
    )
    .unwrap();
    assert_eq!(out.end, SessionEnd::Quit);
    assert_eq!(
        out.render_transcript(),
        "> frobnicate\nerror: unknown command `frobnicate`\n> setL\nerror: `setL` needs a number\n> quit\n"
    );
}

#[test]
fn composers_checked_bx_init_laws() {
    let (dl, dr) = entangle::examples::composers_universe();
    let ibx = entangle::symlens::symlens_to_checked_bx(
        &Identity,
        &entangle::examples::composers_symlens(),
        &dl,
        &dr,
        10_000,
    )
    .unwrap();
    assert!(check_init_laws(&ibx, &cfg()).unwrap().passed());
}
