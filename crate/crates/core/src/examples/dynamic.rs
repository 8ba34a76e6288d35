use std::fmt::Display;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bx::{Bx, Space};
use crate::domain::{lists_up_to, FiniteDomain};
use crate::effect::{Console, ConsoleError, ConsoleIo, Effect, Failure, Val};
use crate::stateful;

/// The current views together with the restorations learned so far.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynState<A, B> {
    pub views: (A, B),
    /// `((a', b), b')`: setting `a'` against `b` produced `b'`.
    pub memo_l: Vec<((A, B), B)>,
    /// `((a, b'), a')`: setting `b'` against `a` produced `a'`.
    pub memo_r: Vec<((A, B), A)>,
}

impl<A, B> DynState<A, B> {
    pub fn new(a: A, b: B) -> Self {
        Self {
            views: (a, b),
            memo_l: Vec::new(),
            memo_r: Vec::new(),
        }
    }
}

type Matcher<E, X, Y, Z> = Arc<dyn Fn(&X, &Y) -> <E as Effect>::M<Z> + Send + Sync>;

/// Consistency restoration that asks `f` (or `g`) for a match the first time
/// a given edit is seen, and replays the recorded answer afterwards.
pub fn dynamic_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    f: impl Fn(&A, &B) -> E::M<B> + Send + Sync + 'static,
    g: impl Fn(&A, &B) -> E::M<A> + Send + Sync + 'static,
) -> Bx<E, DynState<A, B>, A, B> {
    let (f, g): (Matcher<E, A, B, B>, Matcher<E, A, B, A>) = (Arc::new(f), Arc::new(g));
    let (e1, e2) = (eff.clone(), eff.clone());
    Bx::new(
        "dynamic",
        eff,
        stateful::gets(eff, |s: &DynState<A, B>| s.views.0.clone()),
        move |a2: A| {
            let (e, f) = (e1.clone(), f.clone());
            stateful::get::<E, DynState<A, B>>(&e1).bind(move |st| {
                let (a, b) = st.views.clone();
                if a == a2 {
                    return stateful::pure(&e, ());
                }
                let key = (a2.clone(), b.clone());
                match st.memo_l.iter().find(|(k, _)| *k == key) {
                    Some((_, b2)) => stateful::set(
                        &e,
                        DynState {
                            views: (a2.clone(), b2.clone()),
                            ..st
                        },
                    ),
                    None => {
                        let (e2, a2) = (e.clone(), a2.clone());
                        stateful::lift::<E, DynState<A, B>, B>(&e, f(&a2, &b)).bind(move |b2| {
                            let mut memo_l = st.memo_l.clone();
                            memo_l.insert(0, (key.clone(), b2.clone()));
                            stateful::set(
                                &e2,
                                DynState {
                                    views: (a2.clone(), b2),
                                    memo_l,
                                    memo_r: st.memo_r.clone(),
                                },
                            )
                        })
                    }
                }
            })
        },
        stateful::gets(eff, |s: &DynState<A, B>| s.views.1.clone()),
        move |b2: B| {
            let (e, g) = (e2.clone(), g.clone());
            stateful::get::<E, DynState<A, B>>(&e2).bind(move |st| {
                let (a, b) = st.views.clone();
                if b == b2 {
                    return stateful::pure(&e, ());
                }
                let key = (a.clone(), b2.clone());
                match st.memo_r.iter().find(|(k, _)| *k == key) {
                    Some((_, a2)) => stateful::set(
                        &e,
                        DynState {
                            views: (a2.clone(), b2.clone()),
                            ..st
                        },
                    ),
                    None => {
                        let (e2, b2) = (e.clone(), b2.clone());
                        stateful::lift::<E, DynState<A, B>, A>(&e, g(&a, &b2)).bind(move |a2| {
                            let mut memo_r = st.memo_r.clone();
                            memo_r.insert(0, (key.clone(), a2.clone()));
                            stateful::set(
                                &e2,
                                DynState {
                                    views: (a2, b2.clone()),
                                    memo_l: st.memo_l.clone(),
                                    memo_r,
                                },
                            )
                        })
                    }
                }
            })
        },
    )
}

/// Every state whose views come from the domains and whose memo tables hold
/// at most `max_memo` entries each.
pub fn dynamic_space<A: Val, B: Val>(
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    max_memo: usize,
) -> Space<DynState<A, B>, A, B> {
    let pairs = da.product(db);
    let left_entries: Vec<((A, B), B)> = pairs.product(db).into_vec();
    let right_entries: Vec<((A, B), A)> = pairs.product(da).into_vec();
    let memo_ls = lists_up_to(&left_entries, max_memo);
    let memo_rs = lists_up_to(&right_entries, max_memo);
    let mut states = Vec::new();
    for views in pairs.iter() {
        for ml in &memo_ls {
            for mr in &memo_rs {
                states.push(DynState {
                    views: views.clone(),
                    memo_l: ml.clone(),
                    memo_r: mr.clone(),
                });
            }
        }
    }
    Space::new(FiniteDomain::dedup(states), da.clone(), db.clone())
}

/// Asks on the console for a replacement of `b` consistent with the new `a`.
/// Prints `Setting <a>`, then `Replacement for <b>?` without a newline, and
/// parses the next input line.
pub fn match_io<X: Display, Y: Val + Display + FromStr>(
    console: &Console,
    a: &X,
    b: &Y,
) -> ConsoleIo<Y> {
    let c = console.clone();
    let ask = c.then(
        c.print_line(format!("Setting {a}")),
        c.print(format!("Replacement for {b}?")),
    );
    c.bind(c.then(ask, c.read_line()), |line: String| -> ConsoleIo<Y> {
        match line.trim().parse::<Y>() {
            Ok(y) => Arc::new(move |w| Ok((y.clone(), w))),
            Err(_) => {
                let err = ConsoleError::Unparsable {
                    input: line.clone(),
                    expected: std::any::type_name::<Y>().into(),
                };
                Arc::new(move |_| Err(err.clone()))
            }
        }
    })
}

/// [`dynamic_bx`] that asks the user through [`match_io`].
pub fn dynamic_io_bx<A, B>(console: &Console) -> Bx<Console, DynState<A, B>, A, B>
where
    A: Val + Display + FromStr,
    B: Val + Display + FromStr,
{
    let (c1, c2) = (console.clone(), console.clone());
    dynamic_bx(
        console,
        move |a: &A, b: &B| match_io(&c1, a, b),
        move |a: &A, b: &B| match_io(&c2, b, a),
    )
    .renamed("dynamic-io")
}

/// The first candidate in `candidates` related to `x` by `p`.
pub fn search<X, Y: Clone>(p: impl Fn(&X, &Y) -> bool, x: &X, candidates: &[Y]) -> Option<Y> {
    candidates.iter().find(|y| p(x, y)).cloned()
}

/// [`dynamic_bx`] that restores consistency with the first enumerated value
/// satisfying `p`, failing when there is none.
pub fn dynamic_search_bx<A: Val, B: Val>(
    p: impl Fn(&A, &B) -> bool + Send + Sync + 'static,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Bx<Failure, DynState<A, B>, A, B> {
    let p = Arc::new(p);
    let (p1, p2) = (p.clone(), p);
    let (ea, eb) = (
        Arc::new(da.as_slice().to_vec()),
        Arc::new(db.as_slice().to_vec()),
    );
    dynamic_bx(
        &Failure,
        move |a: &A, _: &B| search(|a: &A, b: &B| p1(a, b), a, &eb),
        move |_: &A, b: &B| search(|b: &B, a: &A| p2(a, b), b, &ea),
    )
    .renamed("dynamic-search")
}
