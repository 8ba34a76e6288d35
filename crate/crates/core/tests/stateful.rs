use std::sync::Arc;

use entangle::effect::{
    check_monad_laws, check_monad_morphism, Choice, Console, Effect, Failure, Identity,
    NativeState, Reader, Writer,
};
use entangle::lawcheck::{Mode, RunConfig};
use entangle::stateful::{
    self, check_state_laws, data_refinement, Lift, RefinementError, StateInterface, StateT,
};
use entangle::{FiniteDomain, Stateful};

const LAWS: [&str; 7] = [
    "GG",
    "SG",
    "GS",
    "SS",
    "unused get",
    "lift commutes with get",
    "lift commutes with set",
];

fn assert_state_laws<E: Effect>(eff: &E) {
    let cfg = RunConfig::default().exhaustive_only();
    let values = FiniteDomain::dedup([0u8, 1]);
    for n in 1..=3u8 {
        let states = FiniteDomain::dedup(0..n);
        let r = check_state_laws(eff, &states, &values, &cfg).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        for law in LAWS {
            let l = r.law(law).unwrap_or_else(|| panic!("missing {law}"));
            assert_eq!(l.mode, Mode::Exhaustive);
            assert_eq!(l.checked, l.space);
        }
    }
}

#[test]
fn state_laws_over_every_family() {
    assert_state_laws(&Identity);
    assert_state_laws(&Failure);
    assert_state_laws(&Choice::ordered());
    assert_state_laws(&Reader::new(vec![0u8, 1, 2]));
    assert_state_laws(&Writer::new(vec!['a', 'b']));
    assert_state_laws(&Console::new(vec![vec![], vec!["1".into()]]));
    assert_state_laws(&NativeState::new(vec![false, true]));
}

#[test]
fn get_set_modify_semantics() {
    let m: Stateful<Failure, i32, i32> = stateful::get(&Failure)
        .bind(|s| stateful::set(&Failure, s + 1).then(&stateful::gets(&Failure, |s: &i32| s * 10)));
    assert_eq!(m.run(4), Some((50, 5)));
    let inc = stateful::modify(&Failure, |s: i32| s * 2);
    assert_eq!(inc.exec(3), Some(6));
    let boom: Stateful<Failure, i32, i32> = stateful::lift(&Failure, None);
    assert_eq!(stateful::set(&Failure, 9).then(&boom).run(0), None);
}

#[test]
fn choice_branches_carry_their_own_state() {
    let c = Choice::ordered();
    let m: Stateful<Choice, i32, i32> = stateful::lift(&c, vec![1, 2])
        .bind(move |x| stateful::modify(&c, move |s| s + x).then(&stateful::get(&c)));
    assert_eq!(m.run(10), vec![(11, 11), (12, 12)]);
}

#[test]
fn transformer_is_a_monad() {
    let states = FiniteDomain::dedup([0u8, 1]);
    let t = StateT::new(&Failure, &states);
    let r = check_monad_laws(
        &t,
        &FiniteDomain::dedup([false, true]),
        &RunConfig::default(),
    )
    .unwrap();
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn lift_is_a_monad_morphism() {
    let states = FiniteDomain::dedup([0u8, 1]);
    let dom = FiniteDomain::dedup([0u8, 1]);
    let r = check_monad_morphism(
        &Lift::<Failure, u8>::new(&Failure),
        &Failure,
        &StateT::new(&Failure, &states),
        &dom,
        &RunConfig::default(),
    )
    .unwrap();
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn native_state_refines_the_transformer() {
    let states = vec![0u8, 1, 2];
    let native = NativeState::new(states.clone());
    let cfg = RunConfig::default();
    let refinement = data_refinement(
        &native,
        native.interface(),
        &FiniteDomain::dedup(states.clone()),
        &cfg,
    )
    .unwrap();
    let r = refinement
        .refinement_suite(
            &FiniteDomain::dedup(states),
            &FiniteDomain::dedup([false, true]),
        )
        .run(&cfg)
        .unwrap();
    assert!(r.passed(), "{}", r.render_text());
    assert!(r.law("abs . conc = id").is_some());
    assert!(r.law("conc distributes over bind").is_some());
}

#[test]
fn abs_runs_against_the_base_state() {
    let native = NativeState::new(vec![0u8, 1, 2]);
    let refinement = data_refinement(
        &native,
        native.interface(),
        &FiniteDomain::dedup([0u8, 1, 2]),
        &RunConfig::default(),
    )
    .unwrap();
    let bump: Stateful<NativeState<u8>, u8, u8> = stateful::get(&native).bind({
        let n = native.clone();
        move |s| stateful::set(&n, (s + 1) % 3).then(&stateful::pure(&n, s))
    });
    let base = refinement.abs(&bump);
    assert_eq!(base(2), (2, 0));
    assert_eq!(base(0), (0, 1));
}

#[test]
fn refinement_rejects_a_lossy_interface() {
    let native = NativeState::new(vec![0u8, 1]);
    let n = native.clone();
    let iface = StateInterface {
        get: native.get_t(),
        set: Arc::new(move |_| n.pure(())),
    };
    let err = match data_refinement(
        &native,
        iface,
        &FiniteDomain::dedup([0u8, 1]),
        &RunConfig::default(),
    ) {
        Err(e) => e,
        Ok(_) => panic!("a set that ignores its argument is not a state interface"),
    };
    match err {
        RefinementError::BaseLawsViolated { law, .. } => assert_eq!(law, "SG"),
        other => panic!("unexpected {other}"),
    }
}
