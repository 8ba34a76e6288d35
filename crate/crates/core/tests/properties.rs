#![allow(clippy::result_large_err)]

use entangle::bx::analyze_transparency;
use entangle::combinators::{fst_ibx, list_ibx, ListState};
use entangle::compose::{compose, join_states};
use entangle::effect::{Choice, Console, ConsoleIo, ConsoleWorld, Effect, Identity, Reader};
use entangle::examples::{dynamic_bx, inv_bx, nondet_bx, sync_session, DynState};
use entangle::lawcheck::leq_nondet;
use entangle::lens::fst_lens;
use entangle::stateful;
use entangle::{Either, FiniteDomain, Stateful};
use num_rational::Ratio;
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum IoOp {
    Print(String),
    Read,
}

fn io_op() -> impl Strategy<Value = IoOp> {
    prop_oneof!["[a-z]{0,4}".prop_map(IoOp::Print), Just(IoOp::Read),]
}

/// Runs the operations in order, collecting what was read.
fn program(c: &Console, ops: &[IoOp]) -> ConsoleIo<Vec<String>> {
    ops.iter().fold(c.pure(Vec::new()), |acc, op| {
        let c2 = c.clone();
        let op = op.clone();
        c.bind(acc, move |got: Vec<String>| match &op {
            IoOp::Print(s) => c2.then(c2.print_line(s.clone()), c2.pure(got)),
            IoOp::Read => c2.map(c2.read_line(), move |l| {
                let mut got = got.clone();
                got.push(l);
                got
            }),
        })
    })
}

fn bits() -> FiniteDomain<i32> {
    FiniteDomain::dedup([0, 1])
}

fn trits() -> FiniteDomain<i32> {
    FiniteDomain::dedup([0, 1, 2])
}

proptest! {
    #[test]
    fn console_runs_are_deterministic(
        ops in prop::collection::vec(io_op(), 0..8),
        script in prop::collection::vec("[0-9]{1,2}", 0..6),
    ) {
        let c = Console::opaque();
        let m = program(&c, &ops);
        let a = Console::run(&m, ConsoleWorld::scripted(script.clone()));
        let b = Console::run(&m, ConsoleWorld::scripted(script.clone()));
        prop_assert_eq!(&a, &b);
        let reads = ops.iter().filter(|o| matches!(o, IoOp::Read)).count();
        match a {
            Ok((got, w)) => {
                prop_assert_eq!(got, script[..reads].to_vec());
                prop_assert_eq!(w.transcript().len(), ops.len());
            }
            Err(_) => prop_assert!(reads > script.len()),
        }
    }

    #[test]
    fn reader_equality_is_pointwise(
        xs in prop::collection::vec(0u8..3, 3),
        ys in prop::collection::vec(0u8..3, 3),
    ) {
        let r = Reader::new(vec![0usize, 1, 2]);
        let (tx, ty) = (xs.clone(), ys.clone());
        let mx = r.asks(move |e| tx[*e]);
        let my = r.asks(move |e| ty[*e]);
        prop_assert_eq!(r.equal(&mx, &my).unwrap(), xs == ys);
    }

    #[test]
    fn unused_gets_are_discardable(s in 0i32..5, writes in prop::collection::vec(0i32..5, 0..4)) {
        let m: Stateful<Identity, i32, i32> = writes.iter().fold(
            stateful::get(&Identity),
            |acc, w| acc.then(&stateful::set(&Identity, *w)).then(&stateful::get(&Identity)),
        );
        let with_get = stateful::get::<Identity, i32>(&Identity).then(&m);
        prop_assert_eq!(with_get.run(s), m.run(s));
    }

    #[test]
    fn fst_lens_round_trips(a in any::<(i16, i16)>(), b in any::<i16>(), b2 in any::<i16>()) {
        let l = fst_lens::<i16, i16>(0);
        prop_assert_eq!(l.view(&l.update(&a, &b)), b);
        prop_assert_eq!(l.update(&a, &l.view(&a)), a);
        prop_assert_eq!(l.update(&l.update(&a, &b), &b2), l.update(&a, &b2));
    }

    #[test]
    fn nondet_never_leaves_the_ok_region(
        start in 0usize..6,
        ops in prop::collection::vec((any::<bool>(), 0i32..3), 0..6),
    ) {
        let bx = nondet_bx(
            &Choice::ordered(),
            |a: &i32, b: &i32| a <= b,
            |a| (*a..=2).rev().collect(),
            |b| (0..=*b).collect(),
            &trits(),
            &trits(),
        )
        .unwrap();
        let mut states = vec![*bx.space().unwrap().states.get(start)];
        for (left, v) in ops {
            states = states
                .into_iter()
                .flat_map(|s| if left { bx.set_l(v).exec(s) } else { bx.set_r(v).exec(s) })
                .collect();
            prop_assert!(states.iter().all(|(a, b)| a <= b));
            prop_assert!(!states.is_empty());
        }
    }

    #[test]
    fn composed_operations_stay_in_the_join(
        start in 0usize..4,
        ops in prop::collection::vec((any::<bool>(), 0i32..2), 0..6),
    ) {
        let nd = || leq_nondet(&Choice::ordered(), &bits());
        let bx = compose(&nd(), &nd()).unwrap();
        let joined = join_states(&nd(), &nd()).unwrap();
        let mut states = vec![*joined.get(start)];
        for (left, v) in ops {
            states = states
                .into_iter()
                .flat_map(|s| if left { bx.set_l(v).exec(s) } else { bx.set_r(v).exec(s) })
                .collect();
            prop_assert!(states.iter().all(|s| joined.contains(s)));
        }
    }

    #[test]
    fn reciprocal_composite_stays_in_the_join(
        ops in prop::collection::vec((any::<bool>(), 1i64..4, 1i64..4), 0..6),
    ) {
        let d = FiniteDomain::dedup([Ratio::from_integer(1)]);
        let bx = compose(&inv_bx(&d), &inv_bx(&d)).unwrap();
        let one = Ratio::from_integer(1);
        let mut s = ((one, one), (one, one));
        for (left, n, k) in ops {
            let v = Ratio::new(n, k);
            s = if left { bx.set_l(v).exec(s) } else { bx.set_r(v).exec(s) }.unwrap();
            let ((a, b), (b2, c)) = s;
            prop_assert_eq!(b, b2);
            prop_assert_eq!(a * b, one);
            prop_assert_eq!(b2 * c, one);
        }
    }

    #[test]
    fn extracted_reads_match_gets(i in 0usize..3) {
        let bx = leq_nondet(&Choice::ordered(), &bits());
        let t = analyze_transparency(&bx).unwrap();
        let s = *bx.space().unwrap().states.get(i);
        prop_assert_eq!(bx.get_l().run(s), vec![(t.left_at(&s).unwrap(), s)]);
        prop_assert_eq!(bx.get_r().run(s), vec![(t.right_at(&s).unwrap(), s)]);
    }

    #[test]
    fn list_count_tracks_the_last_set(
        edits in prop::collection::vec(
            (any::<bool>(), prop::collection::vec(0i32..2, 0..4)),
            1..6,
        ),
    ) {
        let chars = FiniteDomain::dedup(['x', 'y']);
        let ibx = list_ibx(&fst_ibx(&Identity, 'x', &bits(), &chars), 2).unwrap();
        let mut s = ListState::try_new(0, vec![]).unwrap();
        let mut longest = 0;
        for (left, xs) in edits {
            s = if left {
                let pairs: Vec<(i32, char)> = xs.iter().map(|x| (*x, 'y')).collect();
                ibx.set_l(pairs).exec(s)
            } else {
                ibx.set_r(xs.clone()).exec(s)
            };
            longest = longest.max(xs.len());
            prop_assert_eq!(s.count(), xs.len());
            prop_assert_eq!(s.states().len(), longest);
            prop_assert_eq!(ibx.get_r().eval(s.clone()), xs);
        }
    }

    #[test]
    fn dynamic_memo_only_grows(edits in prop::collection::vec((any::<bool>(), 0i32..3), 0..8)) {
        let bx = dynamic_bx(&Identity, |a: &i32, b: &i32| (a + b) % 3, |a: &i32, b: &i32| (a * b) % 3);
        let mut s = DynState::new(0, 0);
        for (left, v) in edits {
            let before = (s.memo_l.len(), s.memo_r.len());
            s = if left { bx.set_l(v).exec(s) } else { bx.set_r(v).exec(s) };
            prop_assert!(s.memo_l.len() >= before.0 && s.memo_r.len() >= before.1);
            prop_assert!(s.memo_l.len() + s.memo_r.len() <= before.0 + before.1 + 1);
            if left { prop_assert_eq!(s.views.0, v) } else { prop_assert_eq!(s.views.1, v) }
        }
    }

    #[test]
    fn scripted_sessions_are_deterministic(
        cmds in prop::collection::vec(
            prop_oneof![
                (0i64..3).prop_map(|n| format!("setL {n}")),
                (0i64..3).prop_map(|n| format!("setR {n}")),
                (0i64..3).prop_map(|n| n.to_string()),
                Just("getL".to_string()),
                Just("state".to_string()),
            ],
            0..10,
        ),
    ) {
        let run = || sync_session(DynState::new(0, 0), ConsoleWorld::scripted(cmds.clone()));
        match (run(), run()) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.render_transcript(), b.render_transcript()),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "runs diverged"),
        }
    }

    #[test]
    fn either_projections(x in any::<i8>(), left in any::<bool>()) {
        let e: Either<i8, i8> = if left { Either::Left(x) } else { Either::Right(x) };
        prop_assert_eq!(e.is_left(), left);
        prop_assert_eq!(e.clone().left().is_some(), left);
        prop_assert_eq!(e.right().is_some(), !left);
    }
}
