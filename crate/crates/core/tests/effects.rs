use entangle::effect::{
    check_commutative, check_monad_laws, check_monad_morphism, guard, sequence, Choice, Console,
    ConsoleError, ConsoleWorld, ConstNothing, Effect, EffectError, Failure, Identity,
    IdentityMorphism, JustEmbedding, NativeState, Reader, Writer,
};
use entangle::lawcheck::{enumerate_functions, LawError, Mode, RunConfig};
use entangle::FiniteDomain;

fn domains() -> Vec<FiniteDomain<u8>> {
    (1..=3u8).map(|n| FiniteDomain::dedup(0..n)).collect()
}

fn console() -> Console {
    Console::new(vec![vec![], vec!["1".into()], vec!["2".into(), "0".into()]])
}

/// Unit laws are always exhaustive; associativity quantifies over two
/// functions into the sampled computations and falls back to seeded sampling
/// once that space passes the cap.
fn assert_monad<E: Effect>(eff: &E) {
    let cfg = RunConfig::default();
    for dom in domains() {
        let r = check_monad_laws(eff, &dom, &cfg).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        for law in ["left unit", "right unit", "associativity"] {
            let l = r.law(law).unwrap();
            assert!(l.checked > 0);
            if law != "associativity" || l.space <= cfg.cap {
                assert_eq!(l.mode, Mode::Exhaustive, "{law}");
            }
        }
    }
}

#[test]
fn identity_is_a_monad() {
    assert_monad(&Identity);
}

#[test]
fn failure_is_a_monad_with_absorbing_zero() {
    assert_monad(&Failure);
    let r = check_monad_laws(
        &Failure,
        &FiniteDomain::dedup([0u8, 1, 2]),
        &RunConfig::default(),
    )
    .unwrap();
    assert!(r.law("zero left").unwrap().passed());
    assert!(r.law("zero right").unwrap().passed());
}

#[test]
fn choice_is_a_monad_with_absorbing_zero() {
    assert_monad(&Choice::ordered());
    assert_monad(&Choice::multiset());
    let r = check_monad_laws(
        &Choice::ordered(),
        &FiniteDomain::dedup([0u8, 1]),
        &RunConfig::default(),
    )
    .unwrap();
    assert!(r.law("zero left").unwrap().passed());
    assert!(r.law("zero right").unwrap().passed());
}

#[test]
fn identity_has_no_zero_laws() {
    let r = check_monad_laws(
        &Identity,
        &FiniteDomain::dedup([0u8]),
        &RunConfig::default(),
    )
    .unwrap();
    assert!(r.law("zero left").is_none());
    assert_eq!(r.laws.len(), 3);
}

#[test]
fn reader_writer_console_and_state_are_monads() {
    for envs in 1..=3u8 {
        assert_monad(&Reader::new((0..envs).collect()));
    }
    assert_monad(&Writer::new(vec!['a', 'b']));
    assert_monad(&Writer::bounded(1, vec!['a', 'b']));
    assert_monad(&console());
    assert_monad(&NativeState::new(vec![false, true]));
}

#[test]
fn unobservable_families_refuse_law_checks() {
    let dom = FiniteDomain::dedup([0u8]);
    let err = check_monad_laws(&Console::opaque(), &dom, &RunConfig::default()).unwrap_err();
    assert!(matches!(
        err,
        LawError::Effect(EffectError::Unobservable(_))
    ));
    assert!(check_monad_laws(&Reader::<u8>::opaque(), &dom, &RunConfig::default()).is_err());
    assert!(check_monad_laws(&NativeState::<u8>::opaque(), &dom, &RunConfig::default()).is_err());
}

#[test]
fn failure_and_reader_commute() {
    let bits = FiniteDomain::dedup([0, 1]);
    let cfg = RunConfig::default();
    assert!(check_commutative(&Failure, &bits, &bits, &cfg)
        .unwrap()
        .passed());
    assert!(
        check_commutative(&Reader::new(vec![0u8, 1, 2]), &bits, &bits, &cfg)
            .unwrap()
            .passed()
    );
    assert!(check_commutative(&Choice::multiset(), &bits, &bits, &cfg)
        .unwrap()
        .passed());
}

#[test]
fn ordered_choice_does_not_commute() {
    let bits = FiniteDomain::dedup([0, 1]);
    let r = check_commutative(&Choice::ordered(), &bits, &bits, &RunConfig::default()).unwrap();
    let law = r.law("commutative").unwrap();
    assert!(!law.passed());
    let w = &law.failures[0];
    assert_eq!(w.inputs, "m=[0, 0], n=[0, 1]");
    // m >>= n pairs up as (0,0),(0,1),(0,0),(0,1); n >>= m as (0,0),(0,0),(0,1),(0,1).
    assert_eq!(w.lhs, "[(0, 0), (0, 1), (0, 0), (0, 1)]");
    assert_eq!(w.rhs, "[(0, 0), (0, 0), (0, 1), (0, 1)]");
}

#[test]
fn writer_and_console_do_not_commute() {
    let bits = FiniteDomain::dedup([0, 1]);
    let cfg = RunConfig::default();
    assert!(
        !check_commutative(&Writer::new(vec!['a', 'b']), &bits, &bits, &cfg)
            .unwrap()
            .passed()
    );
    assert!(!check_commutative(&console(), &bits, &bits, &cfg)
        .unwrap()
        .passed());
}

#[test]
fn morphisms() {
    let dom = FiniteDomain::dedup([0u8, 1]);
    let cfg = RunConfig::default();
    let r = check_monad_morphism(&JustEmbedding, &Identity, &Failure, &dom, &cfg).unwrap();
    assert!(r.passed());
    let r = check_monad_morphism(&IdentityMorphism, &Failure, &Failure, &dom, &cfg).unwrap();
    assert!(r.passed());
    let r = check_monad_morphism(&ConstNothing, &Identity, &Failure, &dom, &cfg).unwrap();
    assert!(!r.law("preserves return").unwrap().passed());
    assert_eq!(r.law("preserves return").unwrap().failures[0].inputs, "a=0");
}

#[test]
fn sequence_collects_left_to_right() {
    assert_eq!(sequence(&Failure, vec![Some(1), Some(2)]), Some(vec![1, 2]));
    assert_eq!(sequence(&Failure, vec![Some(1), None]), None);
    let c = Choice::ordered();
    assert_eq!(
        sequence(&c, vec![vec![1, 2], vec![3, 4]]),
        vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]
    );
    let w = Writer::new(vec!['x']);
    assert_eq!(
        sequence(&w, vec![(1, vec!['a']), (2, vec!['b'])]),
        (vec![1, 2], vec!['a', 'b'])
    );
}

#[test]
fn guard_uses_the_zero() {
    assert_eq!(guard(&Failure, true), Some(Some(())));
    assert_eq!(guard(&Failure, false), Some(None));
    assert_eq!(guard(&Choice::ordered(), false), Some(vec![]));
    assert!(guard(&Identity, false).is_none());
}

#[test]
fn bounded_writer_keeps_newest_entries() {
    let w = Writer::bounded(2, vec!['a']);
    let m = w.then(w.tell(vec!['a', 'b']), w.tell(vec!['c']));
    assert_eq!(m, ((), vec!['b', 'c']));
}

#[test]
fn reader_observes_every_environment() {
    let r = Reader::new(vec![1, 2, 3]);
    let m = r.map(r.ask(), |e| e * 10);
    assert_eq!(r.outcomes(&m).unwrap(), vec![10, 20, 30]);
    assert_eq!(r.as_pure(&m).unwrap(), None);
    assert_eq!(r.as_pure(&r.pure(7)).unwrap(), Some(7));
}

#[test]
fn console_runs_against_scripts() {
    let c = Console::new(vec![vec!["x".into()]]);
    let m = c.bind(c.read_line(), {
        let c = c.clone();
        move |l| c.then(c.print_line(format!("got {l}")), c.pure(l.len()))
    });
    let (n, w) = Console::run(&m, ConsoleWorld::scripted(["hello"])).unwrap();
    assert_eq!(n, 5);
    assert_eq!(w.transcript().len(), 2);
    let err = Console::run(&m, ConsoleWorld::scripted(Vec::<String>::new())).unwrap_err();
    assert_eq!(err, ConsoleError::ScriptExhausted);
}

#[test]
fn all_functions_on_two_points() {
    let bits = FiniteDomain::dedup([0, 1]);
    let fs = enumerate_functions(&bits, &bits, &RunConfig::default()).unwrap();
    assert_eq!(fs.len(), 4);
    assert_eq!(fs.mode, Mode::Exhaustive);
    let mut graphs: Vec<(i32, i32)> = (0..4)
        .map(|i| (fs.apply(i, &0).unwrap(), fs.apply(i, &1).unwrap()))
        .collect();
    graphs.sort();
    assert_eq!(graphs, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    assert_eq!(fs.apply(0, &5), None);
}

#[test]
fn function_sampling_above_the_cap() {
    let dom = FiniteDomain::dedup(0..6);
    let cod = FiniteDomain::dedup(0..5);
    let cfg = RunConfig::default().with_cap(100).with_seed(9);
    let a = enumerate_functions(&dom, &cod, &cfg).unwrap();
    let b = enumerate_functions(&dom, &cod, &cfg).unwrap();
    assert!(matches!(a.mode, Mode::Sampled { seed: 9, .. }));
    assert_eq!(a.tables, b.tables);
    assert!(a
        .tables
        .iter()
        .all(|t| t.len() == 6 && t.iter().all(|&j| j < 5)));
    let err = enumerate_functions(&dom, &cod, &cfg.exhaustive_only()).unwrap_err();
    assert!(matches!(err, LawError::DomainTooLarge { .. }));
}
