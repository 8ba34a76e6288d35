//! Standard ways of building bx: constants, projections, pairs, sums,
//! retentive lists and bx induced by isomorphisms.

use std::sync::Arc;

use thiserror::Error;

use crate::bx::{Bx, InitBx, Space};
use crate::compose::{transparency, ComposeError};
use crate::domain::{lists_up_to, FiniteDomain};
use crate::effect::{sequence, Effect, Val};
use crate::either::Either;
use crate::lens::{left, right};
use crate::stateful::{self, Stateful};

fn either_domain<A: Val, B: Val>(
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> FiniteDomain<Either<A, B>> {
    FiniteDomain::dedup(
        da.iter()
            .cloned()
            .map(Either::Left)
            .chain(db.iter().cloned().map(Either::Right)),
    )
}

/// Relates the unit view to a stored constant that can be changed from the
/// right.
pub fn const_bx<E: Effect, A: Val>(eff: &E, a: A, dom: &FiniteDomain<A>) -> InitBx<E, A, (), A> {
    let (e1, e2, e3, e4) = (eff.clone(), eff.clone(), eff.clone(), eff.clone());
    let bx = Bx::new(
        "const",
        eff,
        stateful::pure(eff, ()),
        move |()| stateful::pure(&e1, ()),
        stateful::get(eff),
        move |b| stateful::set(&e2, b),
    )
    .with_space(Space::new(
        dom.clone(),
        FiniteDomain::dedup([()]),
        dom.clone(),
    ));
    InitBx::new(bx, move |()| e3.pure(a.clone()), move |b| e4.pure(b))
}

/// A pair on the left, its first component on the right.
pub fn fst_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Bx<E, (A, B), (A, B), A> {
    let (e1, e2) = (eff.clone(), eff.clone());
    let pairs = da.product(db);
    Bx::new(
        "fst",
        eff,
        stateful::get(eff),
        move |p| stateful::set(&e1, p),
        stateful::gets(eff, |p: &(A, B)| p.0.clone()),
        move |a: A| stateful::modify(&e2, move |(_, b)| (a.clone(), b)),
    )
    .with_space(Space::new(pairs.clone(), pairs, da.clone()))
}

/// [`fst_bx`] initialised from the right with `b0` as the missing component.
pub fn fst_ibx<E: Effect, A: Val, B: Val>(
    eff: &E,
    b0: B,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> InitBx<E, (A, B), (A, B), A> {
    let (e1, e2) = (eff.clone(), eff.clone());
    InitBx::new(
        fst_bx(eff, da, db),
        move |p| e1.pure(p),
        move |a| e2.pure((a, b0.clone())),
    )
}

/// A pair on the left, its second component on the right.
pub fn snd_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Bx<E, (A, B), (A, B), B> {
    let (e1, e2) = (eff.clone(), eff.clone());
    let pairs = da.product(db);
    Bx::new(
        "snd",
        eff,
        stateful::get(eff),
        move |p| stateful::set(&e1, p),
        stateful::gets(eff, |p: &(A, B)| p.1.clone()),
        move |b: B| stateful::modify(&e2, move |(a, _)| (a, b.clone())),
    )
    .with_space(Space::new(pairs.clone(), pairs, db.clone()))
}

/// [`snd_bx`] initialised from the right with `a0` as the missing component.
pub fn snd_ibx<E: Effect, A: Val, B: Val>(
    eff: &E,
    a0: A,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> InitBx<E, (A, B), (A, B), B> {
    let (e1, e2) = (eff.clone(), eff.clone());
    InitBx::new(
        snd_bx(eff, da, db),
        move |p| e1.pure(p),
        move |b| e2.pure((a0.clone(), b)),
    )
}

/// Runs two transparent bx side by side. Sets act on the left component
/// first, then on the right.
pub fn pair_bx<E: Effect, S1: Val, S2: Val, A1: Val, A2: Val, B1: Val, B2: Val>(
    bx1: &Bx<E, S1, A1, B1>,
    bx2: &Bx<E, S2, A2, B2>,
) -> Result<Bx<E, (S1, S2), (A1, A2), (B1, B2)>, ComposeError> {
    transparency(bx1)?;
    transparency(bx2)?;
    let (sp1, sp2) = (bx1.require_space()?, bx2.require_space()?);
    let space = Space::new(
        sp1.states.product(&sp2.states),
        sp1.left.product(&sp2.left),
        sp1.right.product(&sp2.right),
    );
    let eff = bx1.effect().clone();
    let (x1, x2, y1, y2) = (bx1.clone(), bx2.clone(), bx1.clone(), bx2.clone());
    Ok(Bx::new(
        format!("pair({}, {})", bx1.name(), bx2.name()),
        &eff,
        both(&eff, left(&bx1.get_l()), right(&bx2.get_l())),
        move |(a1, a2)| left::<E, S1, S2, ()>(&x1.set_l(a1)).then(&right(&x2.set_l(a2))),
        both(&eff, left(&bx1.get_r()), right(&bx2.get_r())),
        move |(b1, b2)| left::<E, S1, S2, ()>(&y1.set_r(b1)).then(&right(&y2.set_r(b2))),
    )
    .with_space(space))
}

fn both<E: Effect, S: Val, X: Val, Y: Val>(
    eff: &E,
    m: Stateful<E, S, X>,
    n: Stateful<E, S, Y>,
) -> Stateful<E, S, (X, Y)> {
    let e = eff.clone();
    m.bind(move |x| {
        let e = e.clone();
        n.bind(move |y| stateful::pure(&e, (x.clone(), y)))
    })
}

/// Injects `A` into `Either<A, B>`, keeping the last `A` while the right
/// side holds a `B`.
pub fn inl_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    default_a: A,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> InitBx<E, (A, Option<B>), A, Either<A, B>> {
    let (e1, e2, e3, e4, e5) = (
        eff.clone(),
        eff.clone(),
        eff.clone(),
        eff.clone(),
        eff.clone(),
    );
    let opts = FiniteDomain::dedup(std::iter::once(None).chain(db.iter().cloned().map(Some)));
    let bx = Bx::new(
        "inl",
        eff,
        stateful::gets(eff, |s: &(A, Option<B>)| s.0.clone()),
        move |a: A| stateful::modify(&e1, move |(_, mb)| (a.clone(), mb)),
        stateful::gets(eff, |s: &(A, Option<B>)| match &s.1 {
            Some(b) => Either::Right(b.clone()),
            None => Either::Left(s.0.clone()),
        }),
        move |v: Either<A, B>| match v {
            Either::Left(a) => stateful::set(&e2, (a, None)),
            Either::Right(b) => stateful::modify(&e3, move |(a, _)| (a, Some(b.clone()))),
        },
    )
    .with_space(Space::new(
        da.product(&opts),
        da.clone(),
        either_domain(da, db),
    ));
    InitBx::new(
        bx,
        move |a| e4.pure((a, None)),
        move |v| {
            e5.pure(match v {
                Either::Left(a) => (a, None),
                Either::Right(b) => (default_a.clone(), Some(b)),
            })
        },
    )
}

/// Injects `B` into `Either<A, B>`, keeping the last `B` while the right
/// side holds an `A`.
pub fn inr_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    default_b: B,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> InitBx<E, (B, Option<A>), B, Either<A, B>> {
    let (e1, e2, e3, e4, e5) = (
        eff.clone(),
        eff.clone(),
        eff.clone(),
        eff.clone(),
        eff.clone(),
    );
    let opts = FiniteDomain::dedup(std::iter::once(None).chain(da.iter().cloned().map(Some)));
    let bx = Bx::new(
        "inr",
        eff,
        stateful::gets(eff, |s: &(B, Option<A>)| s.0.clone()),
        move |b: B| stateful::modify(&e1, move |(_, ma)| (b.clone(), ma)),
        stateful::gets(eff, |s: &(B, Option<A>)| match &s.1 {
            Some(a) => Either::Left(a.clone()),
            None => Either::Right(s.0.clone()),
        }),
        move |v: Either<A, B>| match v {
            Either::Left(a) => stateful::modify(&e2, move |(b, _)| (b, Some(a.clone()))),
            Either::Right(b) => stateful::set(&e3, (b, None)),
        },
    )
    .with_space(Space::new(
        db.product(&opts),
        db.clone(),
        either_domain(da, db),
    ));
    InitBx::new(
        bx,
        move |b| e4.pure((b, None)),
        move |v| {
            e5.pure(match v {
                Either::Left(a) => (default_b.clone(), Some(a)),
                Either::Right(b) => (b, None),
            })
        },
    )
}

type SumBx<E, S1, S2, A1, A2, B1, B2> = Bx<E, (bool, S1, S2), Either<A1, A2>, Either<B1, B2>>;

/// Switches between two transparent bx; the flag is `true` while the first
/// is active, and the inactive state is retained.
pub fn sum_bx<E: Effect, S1: Val, S2: Val, A1: Val, A2: Val, B1: Val, B2: Val>(
    bx1: &Bx<E, S1, A1, B1>,
    bx2: &Bx<E, S2, A2, B2>,
) -> Result<SumBx<E, S1, S2, A1, A2, B1, B2>, ComposeError> {
    transparency(bx1)?;
    transparency(bx2)?;
    let (sp1, sp2) = (bx1.require_space()?, bx2.require_space()?);
    let states = FiniteDomain::dedup([true, false].into_iter().flat_map(|f| {
        sp1.states
            .product(&sp2.states)
            .into_vec()
            .into_iter()
            .map(move |(s1, s2)| (f, s1, s2))
    }));
    let space = Space::new(
        states,
        either_domain(&sp1.left, &sp2.left),
        either_domain(&sp1.right, &sp2.right),
    );
    let eff = bx1.effect().clone();

    fn getter<E: Effect, S1: Val, S2: Val, X: Val, Y: Val>(
        eff: &E,
        g1: Stateful<E, S1, X>,
        g2: Stateful<E, S2, Y>,
    ) -> Stateful<E, (bool, S1, S2), Either<X, Y>> {
        let e = eff.clone();
        Stateful::new(eff, move |(f, s1, s2): (bool, S1, S2)| {
            let st = (f, s1.clone(), s2.clone());
            if f {
                e.map(g1.eval(s1), move |x| (Either::Left(x), st.clone()))
            } else {
                e.map(g2.eval(s2), move |y| (Either::Right(y), st.clone()))
            }
        })
    }

    fn setter<E: Effect, S1: Val, S2: Val, X: Val, Y: Val>(
        eff: &E,
        set1: Arc<dyn Fn(X) -> Stateful<E, S1, ()> + Send + Sync>,
        set2: Arc<dyn Fn(Y) -> Stateful<E, S2, ()> + Send + Sync>,
    ) -> impl Fn(Either<X, Y>) -> Stateful<E, (bool, S1, S2), ()> + Send + Sync + 'static {
        let e = eff.clone();
        move |v| {
            let (e2, set1, set2) = (e.clone(), set1.clone(), set2.clone());
            Stateful::new(&e, move |(_, s1, s2): (bool, S1, S2)| match v.clone() {
                Either::Left(x) => {
                    e2.map(set1(x).exec(s1), move |s1n| ((), (true, s1n, s2.clone())))
                }
                Either::Right(y) => {
                    e2.map(set2(y).exec(s2), move |s2n| ((), (false, s1.clone(), s2n)))
                }
            })
        }
    }

    Ok(Bx::new(
        format!("sum({}, {})", bx1.name(), bx2.name()),
        &eff,
        getter(&eff, bx1.get_l(), bx2.get_l()),
        setter(&eff, bx1.setter_l(), bx2.setter_l()),
        getter(&eff, bx1.get_r(), bx2.get_r()),
        setter(&eff, bx1.setter_r(), bx2.setter_r()),
    )
    .with_space(space))
}

/// The state of [`sum_ibx`]: the active component's state and, once it has
/// been initialised, the retained state of the other one.
#[derive(Clone, Debug, PartialEq)]
pub enum SumState<S1, S2> {
    Left { active: S1, other: Option<S2> },
    Right { active: S2, other: Option<S1> },
}

/// [`sum_bx`] with initialisation. Only the active side is initialised;
/// switching to a side that has no state yet initialises it from the new
/// value.
pub fn sum_ibx<E: Effect, S1: Val, S2: Val, A1: Val, A2: Val, B1: Val, B2: Val>(
    bx1: &InitBx<E, S1, A1, B1>,
    bx2: &InitBx<E, S2, A2, B2>,
) -> Result<InitBx<E, SumState<S1, S2>, Either<A1, A2>, Either<B1, B2>>, ComposeError> {
    transparency(bx1.bx())?;
    transparency(bx2.bx())?;
    let (sp1, sp2) = (bx1.require_space()?, bx2.require_space()?);
    let none1 = std::iter::once(None)
        .chain(sp1.states.iter().cloned().map(Some))
        .collect::<Vec<_>>();
    let none2 = std::iter::once(None)
        .chain(sp2.states.iter().cloned().map(Some))
        .collect::<Vec<_>>();
    let mut states = Vec::new();
    for s1 in sp1.states.iter() {
        for o in &none2 {
            states.push(SumState::Left {
                active: s1.clone(),
                other: o.clone(),
            });
        }
    }
    for s2 in sp2.states.iter() {
        for o in &none1 {
            states.push(SumState::Right {
                active: s2.clone(),
                other: o.clone(),
            });
        }
    }
    let space = Space::new(
        FiniteDomain::dedup(states),
        either_domain(&sp1.left, &sp2.left),
        either_domain(&sp1.right, &sp2.right),
    );
    let eff = bx1.effect().clone();

    fn getter<E: Effect, S1: Val, S2: Val, X: Val, Y: Val>(
        eff: &E,
        g1: Stateful<E, S1, X>,
        g2: Stateful<E, S2, Y>,
    ) -> Stateful<E, SumState<S1, S2>, Either<X, Y>> {
        let e = eff.clone();
        Stateful::new(eff, move |st: SumState<S1, S2>| match &st {
            SumState::Left { active, .. } => {
                let st = st.clone();
                e.map(g1.eval(active.clone()), move |x| {
                    (Either::Left(x), st.clone())
                })
            }
            SumState::Right { active, .. } => {
                let st = st.clone();
                e.map(g2.eval(active.clone()), move |y| {
                    (Either::Right(y), st.clone())
                })
            }
        })
    }

    type Set<E, S, V> = Arc<dyn Fn(V) -> Stateful<E, S, ()> + Send + Sync>;
    type Init<E, S, V> = Arc<dyn Fn(V) -> <E as Effect>::M<S> + Send + Sync>;

    fn setter<E: Effect, S1: Val, S2: Val, X: Val, Y: Val>(
        eff: &E,
        (set1, init1): (Set<E, S1, X>, Init<E, S1, X>),
        (set2, init2): (Set<E, S2, Y>, Init<E, S2, Y>),
    ) -> impl Fn(Either<X, Y>) -> Stateful<E, SumState<S1, S2>, ()> + Send + Sync + 'static {
        let e = eff.clone();
        move |v| {
            let (e2, set1, set2, init1, init2) = (
                e.clone(),
                set1.clone(),
                set2.clone(),
                init1.clone(),
                init2.clone(),
            );
            Stateful::new(&e, move |st: SumState<S1, S2>| {
                let (own1, other2, own2, other1) = match st {
                    SumState::Left { active, other } => {
                        (Some(active.clone()), other.clone(), other, Some(active))
                    }
                    SumState::Right { active, other } => {
                        (other.clone(), Some(active.clone()), Some(active), other)
                    }
                };
                match v.clone() {
                    Either::Left(x) => {
                        let s1 = match own1 {
                            Some(s1) => set1(x).exec(s1),
                            None => init1(x),
                        };
                        e2.map(s1, move |s1n| {
                            (
                                (),
                                SumState::Left {
                                    active: s1n,
                                    other: other2.clone(),
                                },
                            )
                        })
                    }
                    Either::Right(y) => {
                        let s2 = match own2 {
                            Some(s2) => set2(y).exec(s2),
                            None => init2(y),
                        };
                        e2.map(s2, move |s2n| {
                            (
                                (),
                                SumState::Right {
                                    active: s2n,
                                    other: other1.clone(),
                                },
                            )
                        })
                    }
                }
            })
        }
    }

    let bx = Bx::new(
        format!("sum({}, {})", bx1.name(), bx2.name()),
        &eff,
        getter(&eff, bx1.get_l(), bx2.get_l()),
        setter(
            &eff,
            (bx1.setter_l(), bx1.initializer_l()),
            (bx2.setter_l(), bx2.initializer_l()),
        ),
        getter(&eff, bx1.get_r(), bx2.get_r()),
        setter(
            &eff,
            (bx1.setter_r(), bx1.initializer_r()),
            (bx2.setter_r(), bx2.initializer_r()),
        ),
    )
    .with_space(space);

    let (i1, i2, e1, e2) = (bx1.clone(), bx2.clone(), eff.clone(), eff.clone());
    let (j1, j2) = (bx1.clone(), bx2.clone());
    Ok(InitBx::new(
        bx,
        move |v| match v {
            Either::Left(a) => e1.map(i1.init_l(a), |s| SumState::Left {
                active: s,
                other: None,
            }),
            Either::Right(a) => e1.map(i2.init_l(a), |s| SumState::Right {
                active: s,
                other: None,
            }),
        },
        move |v| match v {
            Either::Left(b) => e2.map(j1.init_r(b), |s| SumState::Left {
                active: s,
                other: None,
            }),
            Either::Right(b) => e2.map(j2.init_r(b), |s| SumState::Right {
                active: s,
                other: None,
            }),
        },
    ))
}

/// Rejected [`ListState`] contents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListStateError {
    #[error("negative list length {0}")]
    Negative(i64),
    #[error("list length {count} exceeds the {stored} stored states")]
    TooLong { count: i64, stored: usize },
}

/// The state of [`list_ibx`]: the shared list length and the element states,
/// of which those beyond the length are retained for later.
#[derive(Clone, Debug, PartialEq)]
pub struct ListState<S> {
    count: usize,
    states: Vec<S>,
}

impl<S> ListState<S> {
    pub fn try_new(count: i64, states: Vec<S>) -> Result<Self, ListStateError> {
        if count < 0 {
            return Err(ListStateError::Negative(count));
        }
        if count as u64 > states.len() as u64 {
            return Err(ListStateError::TooLong {
                count,
                stored: states.len(),
            });
        }
        Ok(Self {
            count: count as usize,
            states,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn active(&self) -> &[S] {
        &self.states[..self.count]
    }
}

type ElemSet<E, S, V> = Arc<dyn Fn(V, S) -> <E as Effect>::M<S> + Send + Sync>;
type ElemInit<E, S, V> = Arc<dyn Fn(V) -> <E as Effect>::M<S> + Send + Sync>;

/// Updates states pairwise from views, keeps surplus states and initialises
/// states for surplus views.
pub fn sets<E: Effect, S: Val, V: Val>(
    eff: &E,
    set: ElemSet<E, S, V>,
    init: ElemInit<E, S, V>,
    xs: Vec<V>,
    cs: Vec<S>,
) -> E::M<Vec<S>> {
    if xs.is_empty() {
        return eff.pure(cs);
    }
    if cs.is_empty() {
        return sequence(eff, xs.into_iter().map(|x| init(x)).collect());
    }
    let (x, c) = (xs[0].clone(), cs[0].clone());
    let (xs, cs) = (xs[1..].to_vec(), cs[1..].to_vec());
    let e = eff.clone();
    eff.bind(set(x, c), move |c2| {
        let rest = sets(&e, set.clone(), init.clone(), xs.clone(), cs.clone());
        e.map(rest, move |mut v| {
            v.insert(0, c2.clone());
            v
        })
    })
}

/// Lifts a transparent initialisable bx on elements to lists of equal
/// length, retaining element states beyond the current length. The checking
/// space covers lists of at most `max_len` elements.
pub fn list_ibx<E: Effect, S: Val, A: Val, B: Val>(
    bx: &InitBx<E, S, A, B>,
    max_len: usize,
) -> Result<InitBx<E, ListState<S>, Vec<A>, Vec<B>>, ComposeError> {
    transparency(bx.bx())?;
    let sp = bx.require_space()?;
    let mut states = Vec::new();
    for cs in lists_up_to(sp.states.as_slice(), max_len) {
        for n in 0..=cs.len() {
            states.push(ListState {
                count: n,
                states: cs.clone(),
            });
        }
    }
    let space = Space::new(
        FiniteDomain::dedup(states),
        FiniteDomain::dedup(lists_up_to(sp.left.as_slice(), max_len)),
        FiniteDomain::dedup(lists_up_to(sp.right.as_slice(), max_len)),
    );
    let eff = bx.effect().clone();

    fn getter<E: Effect, S: Val, V: Val>(
        eff: &E,
        g: Stateful<E, S, V>,
    ) -> Stateful<E, ListState<S>, Vec<V>> {
        let e = eff.clone();
        stateful::get::<E, ListState<S>>(eff).bind(move |st| {
            stateful::lift(
                &e,
                sequence(&e, st.active().iter().map(|c| g.eval(c.clone())).collect()),
            )
        })
    }

    fn setter<E: Effect, S: Val, V: Val>(
        eff: &E,
        set: Arc<dyn Fn(V) -> Stateful<E, S, ()> + Send + Sync>,
        init: ElemInit<E, S, V>,
    ) -> impl Fn(Vec<V>) -> Stateful<E, ListState<S>, ()> + Send + Sync + 'static {
        let e = eff.clone();
        let elem: ElemSet<E, S, V> = Arc::new(move |v, c| set(v).exec(c));
        move |xs: Vec<V>| {
            let (e, elem, init) = (e.clone(), elem.clone(), init.clone());
            stateful::get::<E, ListState<S>>(&e.clone()).bind(move |st| {
                let n = xs.len();
                let e2 = e.clone();
                stateful::lift::<E, ListState<S>, Vec<S>>(
                    &e,
                    sets(&e, elem.clone(), init.clone(), xs.clone(), st.states),
                )
                .bind(move |cs| {
                    stateful::set(
                        &e2,
                        ListState {
                            count: n,
                            states: cs,
                        },
                    )
                })
            })
        }
    }

    fn initializer<E: Effect, S: Val, V: Val>(
        eff: &E,
        init: ElemInit<E, S, V>,
    ) -> impl Fn(Vec<V>) -> E::M<ListState<S>> + Send + Sync + 'static {
        let e = eff.clone();
        move |xs: Vec<V>| {
            let n = xs.len();
            e.map(
                sequence(&e, xs.into_iter().map(|x| init(x)).collect()),
                move |cs| ListState {
                    count: n,
                    states: cs,
                },
            )
        }
    }

    let inner = Bx::new(
        format!("list({})", bx.name()),
        &eff,
        getter(&eff, bx.get_l()),
        setter(&eff, bx.setter_l(), bx.initializer_l()),
        getter(&eff, bx.get_r()),
        setter(&eff, bx.setter_r(), bx.initializer_r()),
    )
    .with_space(space);
    Ok(InitBx::new(
        inner,
        initializer(&eff, bx.initializer_l()),
        initializer(&eff, bx.initializer_r()),
    ))
}

/// A pair of mutually inverse functions.
pub struct Iso<A, B> {
    to: Arc<dyn Fn(&A) -> B + Send + Sync>,
    from: Arc<dyn Fn(&B) -> A + Send + Sync>,
}

impl<A, B> Clone for Iso<A, B> {
    fn clone(&self) -> Self {
        Self {
            to: self.to.clone(),
            from: self.from.clone(),
        }
    }
}

impl<A: Val, B: Val> Iso<A, B> {
    pub fn new(
        to: impl Fn(&A) -> B + Send + Sync + 'static,
        from: impl Fn(&B) -> A + Send + Sync + 'static,
    ) -> Self {
        Self {
            to: Arc::new(to),
            from: Arc::new(from),
        }
    }

    pub fn to(&self, a: &A) -> B {
        (self.to)(a)
    }

    pub fn from(&self, b: &B) -> A {
        (self.from)(b)
    }
}

/// The bx whose state is the left view and whose right view is its image.
pub fn iso_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    iso: &Iso<A, B>,
    dom: &FiniteDomain<A>,
) -> InitBx<E, A, A, B> {
    let (e1, e2, e3, e4) = (eff.clone(), eff.clone(), eff.clone(), eff.clone());
    let (i1, i2, i3) = (iso.clone(), iso.clone(), iso.clone());
    let bx = Bx::new(
        "iso",
        eff,
        stateful::get(eff),
        move |a| stateful::set(&e1, a),
        stateful::gets(eff, move |a| i1.to(a)),
        move |b| stateful::set(&e2, i2.from(&b)),
    )
    .with_space(Space::new(dom.clone(), dom.clone(), dom.map(|a| iso.to(a))));
    InitBx::new(bx, move |a| e3.pure(a), move |b| e4.pure(i3.from(&b)))
}

pub fn assoc_bx<E: Effect, A: Val, B: Val, C: Val>(
    eff: &E,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    dc: &FiniteDomain<C>,
) -> InitBx<E, ((A, B), C), ((A, B), C), (A, (B, C))> {
    let iso = Iso::new(
        |((a, b), c): &((A, B), C)| (a.clone(), (b.clone(), c.clone())),
        |(a, (b, c)): &(A, (B, C))| ((a.clone(), b.clone()), c.clone()),
    );
    iso_bx(eff, &iso, &da.product(db).product(dc)).renamed("assoc")
}

pub fn swap_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> InitBx<E, (A, B), (A, B), (B, A)> {
    let iso = Iso::new(
        |(a, b): &(A, B)| (b.clone(), a.clone()),
        |(b, a): &(B, A)| (a.clone(), b.clone()),
    );
    iso_bx(eff, &iso, &da.product(db)).renamed("swap")
}

pub fn unitl_bx<E: Effect, A: Val>(eff: &E, da: &FiniteDomain<A>) -> InitBx<E, A, A, ((), A)> {
    let iso = Iso::new(|a: &A| ((), a.clone()), |(_, a): &((), A)| a.clone());
    iso_bx(eff, &iso, da).renamed("unitl")
}

pub fn unitr_bx<E: Effect, A: Val>(eff: &E, da: &FiniteDomain<A>) -> InitBx<E, A, A, (A, ())> {
    let iso = Iso::new(|a: &A| (a.clone(), ()), |(a, _): &(A, ())| a.clone());
    iso_bx(eff, &iso, da).renamed("unitr")
}
