use entangle::bx::{analyze_transparency, check_init_laws, check_seven_laws, lens_to_bx};
use entangle::combinators::{
    assoc_bx, const_bx, fst_bx, fst_ibx, inl_bx, inr_bx, iso_bx, list_ibx, pair_bx, snd_ibx,
    sum_bx, sum_ibx, swap_bx, unitl_bx, unitr_bx, Iso, ListState, ListStateError, SumState,
};
use entangle::compose::{
    assoc_bijection, check_equivalence, check_init_equivalence, compose, compose_init, compose_via,
    identity_bx, identity_ibx, join_states, left_unit_bijection, right_unit_bijection,
    ComposeError, Route, StateBijection,
};
use entangle::effect::{Choice, Console, Effect, Failure, Identity};
use entangle::examples::inv_bx;
use entangle::lawcheck::{leq_nondet, shifted_partial, RunConfig};
use entangle::lens::fst_lens;
use entangle::stateful;
use entangle::{Bx, Either, FiniteDomain, InitBx, Space, Val};
use num_rational::Ratio;

fn bits() -> FiniteDomain<i32> {
    FiniteDomain::dedup([0, 1])
}

fn bools() -> FiniteDomain<bool> {
    FiniteDomain::dedup([false, true])
}

fn cfg() -> RunConfig {
    RunConfig::default().exhaustive_only()
}

fn ratios() -> FiniteDomain<Ratio<i64>> {
    FiniteDomain::dedup([
        Ratio::from_integer(1),
        Ratio::from_integer(2),
        Ratio::new(1, 2),
        Ratio::from_integer(0),
    ])
}

fn flip() -> Iso<i32, i32> {
    Iso::new(|a: &i32| 1 - a, |b: &i32| 1 - b)
}

fn assert_composite<E: Effect, S: Val, A: Val, B: Val>(bx: &Bx<E, S, A, B>) {
    assert!(
        analyze_transparency(bx).unwrap().transparent,
        "{}",
        bx.name()
    );
    let r = check_seven_laws(bx, &cfg()).unwrap();
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn composites_of_transparent_pairs_are_well_behaved() {
    assert_composite(
        &compose(
            &identity_bx(&Identity, &bits()),
            &identity_bx(&Identity, &bits()),
        )
        .unwrap(),
    );
    assert_composite(
        &compose(
            &swap_bx(&Identity, &bits(), &bools()).into_bx(),
            &fst_bx(&Identity, &bools(), &bits()),
        )
        .unwrap(),
    );
    assert_composite(&compose(&inv_bx(&ratios()), &inv_bx(&ratios())).unwrap());
    assert_composite(
        &compose(
            &leq_nondet(&Choice::ordered(), &bits()),
            &leq_nondet(&Choice::ordered(), &bits()),
        )
        .unwrap(),
    );
    assert_composite(
        &compose(
            &shifted_partial(&Failure),
            &identity_bx(&Failure, &FiniteDomain::dedup([10, 11, 12])),
        )
        .unwrap(),
    );
    assert_composite(
        &compose(
            &iso_bx(&Identity, &flip(), &bits()).into_bx(),
            &iso_bx(&Identity, &flip(), &bits()).into_bx(),
        )
        .unwrap(),
    );
}

#[test]
fn composite_behaviour() {
    let bx = compose(&inv_bx(&ratios()), &inv_bx(&ratios())).unwrap();
    let two = Ratio::from_integer(2);
    let half = Ratio::new(1, 2);
    let one = Ratio::from_integer(1);
    let s = ((one, one), (one, one));
    assert_eq!(bx.set_l(two).exec(s), Some(((two, half), (half, two))));
    assert_eq!(bx.get_r().eval(((two, half), (half, two))), Some(two));
    // Join states pair reciprocal states that agree on the middle value.
    assert_eq!(bx.space().unwrap().states.len(), 3);
}

#[test]
fn join_predicate() {
    let (l, r) = (
        leq_nondet(&Choice::ordered(), &bits()),
        leq_nondet(&Choice::ordered(), &bits()),
    );
    let joined = join_states(&l, &r).unwrap();
    assert!(joined.iter().all(|((_, b), (b2, _))| b == b2));
    // Consistent pairs a <= b: (0,0),(0,1),(1,1); joins on the middle value.
    assert_eq!(joined.len(), 4);
}

#[test]
fn composition_requires_transparency_and_matching_middles() {
    let console = Console::new(vec![vec![]]);
    let base = identity_bx(&console, &bits());
    let (sl, sr) = (base.setter_l(), base.setter_r());
    let noisy = Bx::new(
        "noisy",
        &console,
        stateful::lift(&console, console.print_line("hi")).then(&base.get_l()),
        move |a| sl(a),
        base.get_r(),
        move |b| sr(b),
    )
    .with_space(base.space().unwrap().clone());
    assert!(matches!(
        compose(&noisy, &base),
        Err(ComposeError::NotTransparent { .. })
    ));
    let wide = identity_bx(&Identity, &FiniteDomain::dedup([0, 1, 2]));
    assert!(matches!(
        compose(&identity_bx(&Identity, &bits()), &wide),
        Err(ComposeError::MiddleTypeMismatch { .. })
    ));
}

#[test]
fn both_routes_agree() {
    let id = StateBijection::new(|s: &((i32, i32), (i32, i32))| *s, |s| *s);
    {
        let (l, r) = (
            leq_nondet(&Choice::ordered(), &bits()),
            leq_nondet(&Choice::ordered(), &bits()),
        );
        let a = compose_via(&l, &r, Route::LeftRight).unwrap();
        let b = compose_via(&l, &r, Route::MLens).unwrap();
        assert!(check_seven_laws(&b, &cfg()).unwrap().passed());
        assert!(check_equivalence(&a, &b, &id, &cfg()).unwrap().passed());
    }
    let p = shifted_partial(&Failure);
    let q = identity_bx(&Failure, &FiniteDomain::dedup([10, 11, 12]));
    let id = StateBijection::new(|s: &((i32, i32), i32)| *s, |s| *s);
    let a = compose_via(&p, &q, Route::LeftRight).unwrap();
    let b = compose_via(&p, &q, Route::MLens).unwrap();
    assert!(check_equivalence(&a, &b, &id, &cfg()).unwrap().passed());
}

#[test]
fn identity_is_a_unit_for_composition() {
    let bx = fst_bx(&Identity, &bits(), &bools());
    let da = bx.space().unwrap().left.clone();
    let db = bx.space().unwrap().right.clone();
    let left = compose(&identity_bx(&Identity, &da), &bx).unwrap();
    let h = left_unit_bijection(&bx).unwrap();
    assert!(check_equivalence(&bx, &left, &h, &cfg()).unwrap().passed());
    let right = compose(&bx, &identity_bx(&Identity, &db)).unwrap();
    let h = right_unit_bijection(&bx).unwrap();
    assert!(check_equivalence(&bx, &right, &h, &cfg()).unwrap().passed());

    let nd = leq_nondet(&Choice::ordered(), &bits());
    let right = compose(&nd, &identity_bx(&Choice::ordered(), &bits())).unwrap();
    let h = right_unit_bijection(&nd).unwrap();
    assert!(check_equivalence(&nd, &right, &h, &cfg()).unwrap().passed());
}

#[test]
fn composition_is_associative() {
    let swap = || swap_bx(&Identity, &bits(), &bools()).into_bx();
    let unswap = || swap_bx(&Identity, &bools(), &bits()).into_bx();
    let fst = fst_bx(&Identity, &bits(), &bools());
    let lhs = compose(&compose(&swap(), &unswap()).unwrap(), &fst).unwrap();
    let rhs = compose(&swap(), &compose(&unswap(), &fst).unwrap()).unwrap();
    assert!(check_equivalence(&lhs, &rhs, &assoc_bijection(), &cfg())
        .unwrap()
        .passed());

    let inv = || inv_bx(&ratios());
    let lhs = compose(&compose(&inv(), &inv()).unwrap(), &inv()).unwrap();
    let rhs = compose(&inv(), &compose(&inv(), &inv()).unwrap()).unwrap();
    assert!(check_equivalence(&lhs, &rhs, &assoc_bijection(), &cfg())
        .unwrap()
        .passed());

    let nd = || leq_nondet(&Choice::ordered(), &bits());
    let lhs = compose(&compose(&nd(), &nd()).unwrap(), &nd()).unwrap();
    let rhs = compose(&nd(), &compose(&nd(), &nd()).unwrap()).unwrap();
    assert!(check_equivalence(&lhs, &rhs, &assoc_bijection(), &cfg())
        .unwrap()
        .passed());
}

#[test]
fn a_wrong_bijection_is_caught() {
    let bx = identity_bx(&Identity, &bits());
    let twisted = StateBijection::new(|s: &i32| 1 - s, |s: &i32| 1 - s);
    let r = check_equivalence(&bx, &bx, &twisted, &cfg()).unwrap();
    assert!(!r.law("iota getL").unwrap().passed());
    let not_bijective = StateBijection::new(|_: &i32| 0, |s: &i32| *s);
    assert!(matches!(
        check_equivalence(&bx, &bx, &not_bijective, &cfg()),
        Err(ComposeError::NotBijective(_))
    ));
}

fn assert_init<E: Effect, S: Val, A: Val, B: Val>(ibx: &InitBx<E, S, A, B>) {
    let r = check_init_laws(ibx, &cfg()).unwrap();
    assert!(r.passed(), "{}", r.render_text());
}

#[test]
fn initialisers_read_back() {
    assert_init(&identity_ibx(&Identity, &bits()));
    assert_init(&const_bx(&Identity, 0, &bits()));
    assert_init(&fst_ibx(&Identity, false, &bits(), &bools()));
    assert_init(&snd_ibx(&Identity, 0, &bits(), &bools()));
    assert_init(&inl_bx(&Identity, 0, &bits(), &bools()));
    assert_init(&inr_bx(&Identity, false, &bits(), &bools()));
    assert_init(&swap_bx(&Identity, &bits(), &bools()));
    assert_init(&assoc_bx(&Identity, &bits(), &bools(), &bits()));
    assert_init(&unitl_bx(&Identity, &bits()));
    assert_init(&unitr_bx(&Identity, &bits()));
    assert_init(&iso_bx(&Identity, &flip(), &bits()));
    assert_init(&list_ibx(&identity_ibx(&Identity, &bits()), 2).unwrap());
    assert_init(
        &sum_ibx(
            &identity_ibx(&Identity, &bits()),
            &swap_bx(&Identity, &bits(), &bools()),
        )
        .unwrap(),
    );
}

#[test]
fn composed_initialisers() {
    let c = compose_init(
        &identity_ibx(&Identity, &bits()),
        &identity_ibx(&Identity, &bits()),
    )
    .unwrap();
    assert_init(&c);
    let c2 = compose_init(
        &swap_bx(&Identity, &bits(), &bools()),
        &fst_ibx(&Identity, 0, &bools(), &bits()),
    )
    .unwrap();
    assert_init(&c2);
    let c3 = compose_init(
        &const_bx(&Identity, 1, &bits()),
        &identity_ibx(&Identity, &bits()),
    )
    .unwrap();
    assert_init(&c3);

    let joined = c2.space().unwrap().states.clone();
    for v in c2.space().unwrap().left.iter() {
        assert!(joined.contains(&c2.init_l(*v)));
    }
    for v in c2.space().unwrap().right.iter() {
        assert!(joined.contains(&c2.init_r(*v)));
    }
    assert_eq!(c2.init_r(true), ((0, true), (true, 0)));
}

#[test]
fn identity_is_a_unit_for_initialisable_composition() {
    let sw = swap_bx(&Identity, &bits(), &bools());
    let da = sw.space().unwrap().left.clone();
    let composed = compose_init(&identity_ibx(&Identity, &da), &sw).unwrap();
    let h = left_unit_bijection(sw.bx()).unwrap();
    assert!(check_init_equivalence(&sw, &composed, &h, &cfg())
        .unwrap()
        .passed());
}

#[test]
fn pairs_sums_and_lists_are_well_behaved() {
    let id = identity_bx(&Identity, &bits());
    let fl = iso_bx(&Identity, &flip(), &bits()).into_bx();
    assert_composite(&pair_bx(&id, &fl).unwrap());
    assert_composite(&sum_bx(&id, &fst_bx(&Identity, &bools(), &bools())).unwrap());
    assert_composite(list_ibx(&identity_ibx(&Identity, &bits()), 2).unwrap().bx());
    let sum = sum_ibx(
        &identity_ibx(&Identity, &bits()),
        &iso_bx(&Identity, &flip(), &bits()),
    )
    .unwrap();
    assert_composite(sum.bx());
    let lens = lens_to_bx(&Identity, &fst_lens::<i32, i32>(0)).with_space(Space::new(
        bits().product(&bits()),
        bits().product(&bits()),
        bits(),
    ));
    assert_composite(&pair_bx(&lens, &id).unwrap());
}

#[test]
fn sum_retains_the_inactive_side() {
    let bx = sum_bx(
        &identity_bx(&Identity, &bits()),
        &fst_bx(&Identity, &bools(), &bools()),
    )
    .unwrap();
    let s = (true, 1, (true, false));
    let s = bx.set_l(Either::Right((false, false))).exec(s);
    assert_eq!(s, (false, 1, (false, false)));
    let s = bx.set_l(Either::Left(0)).exec(s);
    assert_eq!(s, (true, 0, (false, false)));
    assert_eq!(bx.get_r().eval(s), Either::Left(0));
}

#[test]
fn initialisable_sum_initialises_on_first_switch() {
    let ibx = sum_ibx(
        &identity_ibx(&Identity, &bits()),
        &fst_ibx(&Identity, true, &bools(), &bools()),
    )
    .unwrap();
    let s = ibx.init_l(Either::Left(1));
    assert_eq!(
        s,
        SumState::Left {
            active: 1,
            other: None
        }
    );
    let s = ibx.set_r(Either::Right(false)).exec(s);
    assert_eq!(
        s,
        SumState::Right {
            active: (false, true),
            other: Some(1)
        }
    );
    let s = ibx.set_l(Either::Left(0)).exec(s);
    assert_eq!(
        s,
        SumState::Left {
            active: 0,
            other: Some((false, true))
        }
    );
}

#[test]
fn list_retains_truncated_states() {
    let ibx = list_ibx(
        &fst_ibx(&Identity, 'x', &bits(), &FiniteDomain::dedup(['x', 'y'])),
        2,
    )
    .unwrap();
    let s = ListState::try_new(2, vec![(0, 'y'), (1, 'y')]).unwrap();
    let s = ibx.set_r(vec![1]).exec(s);
    assert_eq!(s.active(), &[(1, 'y')]);
    assert_eq!(s.states(), &[(1, 'y'), (1, 'y')]);
    let s = ibx.set_r(vec![1, 0]).exec(s);
    assert_eq!(s.active(), &[(1, 'y'), (0, 'y')]);
    let s = ibx.set_r(vec![1, 0, 1]).exec(s);
    assert_eq!(s.states(), &[(1, 'y'), (0, 'y'), (1, 'x')]);
    assert_eq!(ibx.get_l().eval(s), vec![(1, 'y'), (0, 'y'), (1, 'x')]);
}

#[test]
fn list_state_validation() {
    assert_eq!(
        ListState::<u8>::try_new(-1, vec![]).unwrap_err(),
        ListStateError::Negative(-1)
    );
    assert!(matches!(
        ListState::try_new(2, vec![0u8]),
        Err(ListStateError::TooLong {
            count: 2,
            stored: 1
        })
    ));
    assert_eq!(ListState::try_new(1, vec![0u8, 1]).unwrap().count(), 1);
}

#[test]
fn list_of_partial_elements_fails_as_a_whole() {
    let inv = InitBx::new(
        inv_bx(&ratios()),
        |a: Ratio<i64>| (a != Ratio::from_integer(0)).then(|| (a, a.recip())),
        |b: Ratio<i64>| (b != Ratio::from_integer(0)).then(|| (b.recip(), b)),
    );
    let list = list_ibx(&inv, 2).unwrap();
    assert_composite(list.bx());
    let one = Ratio::from_integer(1);
    let zero = Ratio::from_integer(0);
    assert_eq!(list.init_l(vec![one, zero]), None);
    assert!(list.init_l(vec![one, Ratio::from_integer(2)]).is_some());
}
