//! Sequential composition of transparent bx, the identity bx, and
//! equivalence of bx up to a bijection of hidden states.

use std::sync::Arc;

use thiserror::Error;

use crate::bx::{analyze_transparency, Bx, InitBx, Space, Transparency};
use crate::domain::FiniteDomain;
use crate::effect::{Effect, Val};
use crate::lawcheck::{Law, LawError, LawReport, LawSuite, Quantifiers, RunConfig};
use crate::lens::{left, right, theta, MLens};
use crate::stateful::{self, stateful_law, Stateful};

/// Errors from building composites and checking equivalences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("bx `{bx}` is not transparent: {witness}")]
    NotTransparent { bx: String, witness: String },
    #[error("middle domains differ: `{left}` offers {left_dom}, `{right}` expects {right_dom}")]
    MiddleTypeMismatch {
        left: String,
        right: String,
        left_dom: String,
        right_dom: String,
    },
    #[error("state map is not a bijection: {0}")]
    NotBijective(String),
    #[error(transparent)]
    Law(#[from] LawError),
}

/// How the composite operations are assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Component operations run on one half of the paired state.
    #[default]
    LeftRight,
    /// Component operations run through the monadic lenses that keep the
    /// other half consistent.
    MLens,
}

/// The identity bx on `A`, whose state is the shared value.
pub fn identity_bx<E: Effect, A: Val>(eff: &E, dom: &FiniteDomain<A>) -> Bx<E, A, A, A> {
    let (e1, e2) = (eff.clone(), eff.clone());
    Bx::new(
        "identity",
        eff,
        stateful::get(eff),
        move |a| stateful::set(&e1, a),
        stateful::get(eff),
        move |a| stateful::set(&e2, a),
    )
    .with_space(Space::new(dom.clone(), dom.clone(), dom.clone()))
}

/// [`identity_bx`] initialised with the given value.
pub fn identity_ibx<E: Effect, A: Val>(eff: &E, dom: &FiniteDomain<A>) -> InitBx<E, A, A, A> {
    let (e1, e2) = (eff.clone(), eff.clone());
    InitBx::new(
        identity_bx(eff, dom),
        move |a| e1.pure(a),
        move |a| e2.pure(a),
    )
}

pub(crate) fn transparency<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<Transparency<S, A, B>, ComposeError> {
    let t = analyze_transparency(bx)?;
    if !t.transparent {
        return Err(ComposeError::NotTransparent {
            bx: bx.name().to_string(),
            witness: t.witness.clone().unwrap_or_default(),
        });
    }
    Ok(t)
}

/// The paired states whose shared middle views agree.
pub fn join_states<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
) -> Result<FiniteDomain<(S1, S2)>, ComposeError> {
    let (t1, t2) = (transparency(bx1)?, transparency(bx2)?);
    let (sp1, sp2) = (bx1.require_space()?, bx2.require_space()?);
    if !sp1.right.same_set(&sp2.left) {
        return Err(ComposeError::MiddleTypeMismatch {
            left: bx1.name().to_string(),
            right: bx2.name().to_string(),
            left_dom: format!("{:?}", sp1.right.as_slice()),
            right_dom: format!("{:?}", sp2.left.as_slice()),
        });
    }
    Ok(sp1
        .states
        .product(&sp2.states)
        .filter(|(s1, s2)| t1.right_at(s1) == t2.left_at(s2)))
}

/// `bx1 ; bx2`, defined on the join of the two state spaces.
pub fn compose<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
) -> Result<Bx<E, (S1, S2), A, C>, ComposeError> {
    compose_via(bx1, bx2, Route::LeftRight)
}

/// [`compose`] assembled along the chosen route.
pub fn compose_via<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
    route: Route,
) -> Result<Bx<E, (S1, S2), A, C>, ComposeError> {
    let states = join_states(bx1, bx2)?;
    let space = Space::new(
        states,
        bx1.require_space()?.left.clone(),
        bx2.require_space()?.right.clone(),
    );
    let name = format!("{} ; {}", bx1.name(), bx2.name());
    let bx = match route {
        Route::LeftRight => compose_left_right(bx1, bx2, name),
        Route::MLens => compose_mlens(bx1, bx2, name),
    };
    Ok(bx.with_space(space))
}

fn compose_left_right<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
    name: String,
) -> Bx<E, (S1, S2), A, C> {
    let (b1, b2, b3, b4) = (bx1.clone(), bx2.clone(), bx1.clone(), bx2.clone());
    Bx::new(
        name,
        bx1.effect(),
        left(&bx1.get_l()),
        move |a| {
            let b2 = b2.clone();
            left::<E, S1, S2, B>(&b1.set_l(a).then(&b1.get_r())).bind(move |b| right(&b2.set_l(b)))
        },
        right(&bx2.get_r()),
        move |c| {
            let b3 = b3.clone();
            right::<E, S1, S2, B>(&b4.set_r(c).then(&b4.get_l())).bind(move |b| left(&b3.set_r(b)))
        },
    )
}

/// The lens onto the left state that repairs the right state through the
/// shared middle view.
pub fn mlens_left<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
) -> MLens<E, (S1, S2), S1> {
    let (b1, b2, e) = (bx1.clone(), bx2.clone(), bx1.effect().clone());
    MLens::new(
        bx1.effect(),
        |s: &(S1, S2)| s.0.clone(),
        move |(_, s2), s1n| {
            let (b2, e2, s1n, s2) = (b2.clone(), e.clone(), s1n.clone(), s2.clone());
            e.bind(b1.get_r().eval(s1n.clone()), move |b| {
                let s1n = s1n.clone();
                e2.map(b2.set_l(b).exec(s2.clone()), move |s2n| (s1n.clone(), s2n))
            })
        },
    )
}

/// The lens onto the right state that repairs the left state.
pub fn mlens_right<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
) -> MLens<E, (S1, S2), S2> {
    let (b1, b2, e) = (bx1.clone(), bx2.clone(), bx1.effect().clone());
    MLens::new(
        bx1.effect(),
        |s: &(S1, S2)| s.1.clone(),
        move |(s1, _), s2n| {
            let (b1, e2, s1, s2n) = (b1.clone(), e.clone(), s1.clone(), s2n.clone());
            e.bind(b2.get_l().eval(s2n.clone()), move |b| {
                let s2n = s2n.clone();
                e2.map(b1.set_r(b).exec(s1.clone()), move |s1n| (s1n, s2n.clone()))
            })
        },
    )
}

fn compose_mlens<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, B, C>,
    name: String,
) -> Bx<E, (S1, S2), A, C> {
    let (ml, mr) = (mlens_left(bx1, bx2), mlens_right(bx1, bx2));
    let (b1, b2, ml2, mr2) = (bx1.clone(), bx2.clone(), ml.clone(), mr.clone());
    Bx::new(
        name,
        bx1.effect(),
        theta(&ml, &bx1.get_l()),
        move |a| theta(&ml2, &b1.set_l(a)),
        theta(&mr, &bx2.get_r()),
        move |c| theta(&mr2, &b2.set_r(c)),
    )
}

/// Initialises `bx1` from one side, reads its middle view and initialises
/// `bx2` from that; symmetrically from the other side.
pub fn compose_init<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &InitBx<E, S1, A, B>,
    bx2: &InitBx<E, S2, B, C>,
) -> Result<InitBx<E, (S1, S2), A, C>, ComposeError> {
    compose_init_via(bx1, bx2, Route::LeftRight)
}

pub fn compose_init_via<E: Effect, S1: Val, S2: Val, A: Val, B: Val, C: Val>(
    bx1: &InitBx<E, S1, A, B>,
    bx2: &InitBx<E, S2, B, C>,
    route: Route,
) -> Result<InitBx<E, (S1, S2), A, C>, ComposeError> {
    let bx = compose_via(bx1.bx(), bx2.bx(), route)?;
    let (i1, i2, j1, j2) = (bx1.clone(), bx2.clone(), bx1.clone(), bx2.clone());
    let e = bx1.effect().clone();
    let (e1, e2) = (e.clone(), e);
    Ok(InitBx::new(
        bx,
        move |a| {
            let (i2, e) = (i2.clone(), e1.clone());
            let g = i1.get_r();
            e1.bind(i1.init_l(a), move |s1| {
                let (i2, e) = (i2.clone(), e.clone());
                e.clone().bind(g.run(s1), move |(b, s1n)| {
                    e.map(i2.init_l(b), move |s2| (s1n.clone(), s2))
                })
            })
        },
        move |c| {
            let (j1, e) = (j1.clone(), e2.clone());
            let g = j2.get_l();
            e2.bind(j2.init_r(c), move |s2| {
                let (j1, e) = (j1.clone(), e.clone());
                e.clone().bind(g.run(s2), move |(b, s2n)| {
                    e.map(j1.init_r(b), move |s1| (s1, s2n.clone()))
                })
            })
        },
    ))
}

type StateMap<X, Y> = Arc<dyn Fn(&X) -> Y + Send + Sync>;

/// A pair of mutually inverse maps between state spaces.
pub struct StateBijection<S1, S2> {
    forward: StateMap<S1, S2>,
    backward: StateMap<S2, S1>,
}

impl<S1, S2> Clone for StateBijection<S1, S2> {
    fn clone(&self) -> Self {
        Self {
            forward: self.forward.clone(),
            backward: self.backward.clone(),
        }
    }
}

impl<S1: Val, S2: Val> StateBijection<S1, S2> {
    pub fn new(
        forward: impl Fn(&S1) -> S2 + Send + Sync + 'static,
        backward: impl Fn(&S2) -> S1 + Send + Sync + 'static,
    ) -> Self {
        Self {
            forward: Arc::new(forward),
            backward: Arc::new(backward),
        }
    }

    pub fn forward(&self, s: &S1) -> S2 {
        (self.forward)(s)
    }

    pub fn backward(&self, s: &S2) -> S1 {
        (self.backward)(s)
    }

    pub fn inverse(&self) -> StateBijection<S2, S1> {
        StateBijection {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Fails unless the maps are inverse and carry each domain onto the other.
    pub fn verify(&self, d1: &FiniteDomain<S1>, d2: &FiniteDomain<S2>) -> Result<(), ComposeError> {
        for s in d1.iter() {
            let t = self.forward(s);
            if !d2.contains(&t) {
                return Err(ComposeError::NotBijective(format!(
                    "{s:?} maps to {t:?}, outside the target states"
                )));
            }
            if self.backward(&t) != *s {
                return Err(ComposeError::NotBijective(format!(
                    "{s:?} does not round-trip through {t:?}"
                )));
            }
        }
        for t in d2.iter() {
            let s = self.backward(t);
            if !d1.contains(&s) {
                return Err(ComposeError::NotBijective(format!(
                    "{t:?} maps back to {s:?}, outside the source states"
                )));
            }
            if self.forward(&s) != *t {
                return Err(ComposeError::NotBijective(format!(
                    "{t:?} does not round-trip through {s:?}"
                )));
            }
        }
        Ok(())
    }

    /// Transports a computation over `S1` to one over `S2`.
    pub fn iota<E: Effect, A: Val>(&self, m: &Stateful<E, S1, A>) -> Stateful<E, S2, A> {
        let (h, m, e) = (self.clone(), m.clone(), m.effect().clone());
        Stateful::new(&e.clone(), move |s2| {
            let h2 = h.clone();
            e.map(m.run(h.backward(&s2)), move |(a, s1)| (a, h2.forward(&s1)))
        })
    }
}

/// `s |-> (readL s, s)`: the states of `bx` against those of `identity ; bx`.
pub fn left_unit_bijection<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<StateBijection<S, (A, S)>, ComposeError> {
    let t = transparency(bx)?;
    let table: Arc<Vec<(S, A)>> = Arc::new(t.read_l);
    Ok(StateBijection::new(
        move |s: &S| {
            let a = table.iter().find(|(t, _)| t == s).map(|(_, a)| a.clone());
            (
                a.unwrap_or_else(|| panic!("state {s:?} outside the declared states")),
                s.clone(),
            )
        },
        |(_, s): &(A, S)| s.clone(),
    ))
}

/// `s |-> (s, readR s)`: the states of `bx` against those of `bx ; identity`.
pub fn right_unit_bijection<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<StateBijection<S, (S, B)>, ComposeError> {
    let t = transparency(bx)?;
    let table: Arc<Vec<(S, B)>> = Arc::new(t.read_r);
    Ok(StateBijection::new(
        move |s: &S| {
            let b = table.iter().find(|(t, _)| t == s).map(|(_, b)| b.clone());
            (
                s.clone(),
                b.unwrap_or_else(|| panic!("state {s:?} outside the declared states")),
            )
        },
        |(s, _): &(S, B)| s.clone(),
    ))
}

/// `((s1, s2), s3) |-> (s1, (s2, s3))`.
pub fn assoc_bijection<S1: Val, S2: Val, S3: Val>() -> StateBijection<((S1, S2), S3), (S1, (S2, S3))>
{
    StateBijection::new(
        |((a, b), c): &((S1, S2), S3)| (a.clone(), (b.clone(), c.clone())),
        |(a, (b, c)): &(S1, (S2, S3))| ((a.clone(), b.clone()), c.clone()),
    )
}

fn get_iota<E: Effect, S1: Val, S2: Val, V: Val>(
    eff: &E,
    states: &FiniteDomain<S2>,
    name: &str,
    h: &StateBijection<S1, S2>,
    g1: Stateful<E, S1, V>,
    g2: Stateful<E, S2, V>,
) -> Law {
    let h = h.clone();
    stateful_law(
        eff,
        states,
        name,
        Quantifiers::new(),
        |_| String::new(),
        move |_| h.iota(&g1),
        move |_| g2.clone(),
    )
}

fn set_iota<E, S1, S2, V, F, G>(
    eff: &E,
    states: &FiniteDomain<S2>,
    name: &str,
    h: &StateBijection<S1, S2>,
    dom: &FiniteDomain<V>,
    set1: F,
    set2: G,
) -> Law
where
    E: Effect,
    S1: Val,
    S2: Val,
    V: Val,
    F: Fn(V) -> Stateful<E, S1, ()> + Send + Sync + 'static,
    G: Fn(V) -> Stateful<E, S2, ()> + Send + Sync + 'static,
{
    let vals = Arc::new(dom.as_slice().to_vec());
    let mut q = Quantifiers::new();
    let v = q.var(vals.len());
    let (v1, v2, v3, h) = (vals.clone(), vals.clone(), vals, h.clone());
    stateful_law(
        eff,
        states,
        name,
        q,
        move |x| format!("value={:?}", v3[x.at(v)]),
        move |x| h.iota(&set1(v1[x.at(v)].clone())),
        move |x| set2(v2[x.at(v)].clone()),
    )
}

/// Checks that transporting each operation of `bx1` along `h` yields the
/// corresponding operation of `bx2`.
pub fn equivalence_suite<E: Effect, S1: Val, S2: Val, A: Val, B: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, A, B>,
    h: &StateBijection<S1, S2>,
) -> Result<LawSuite, ComposeError> {
    let (sp1, sp2) = (bx1.require_space()?, bx2.require_space()?);
    h.verify(&sp1.states, &sp2.states)?;
    let eff = bx2.effect();
    eff.observe().map_err(LawError::from)?;
    let st = &sp2.states;
    let mut suite = LawSuite::new(format!("{} vs {}", bx1.name(), bx2.name()), eff.name());

    suite.push(get_iota(eff, st, "iota getL", h, bx1.get_l(), bx2.get_l()));
    suite.push(get_iota(eff, st, "iota getR", h, bx1.get_r(), bx2.get_r()));
    let (x1, x2) = (bx1.clone(), bx2.clone());
    suite.push(set_iota(
        eff,
        st,
        "iota setL",
        h,
        &sp1.left,
        move |a| x1.set_l(a),
        move |a| x2.set_l(a),
    ));
    let (x1, x2) = (bx1.clone(), bx2.clone());
    suite.push(set_iota(
        eff,
        st,
        "iota setR",
        h,
        &sp1.right,
        move |b| x1.set_r(b),
        move |b| x2.set_r(b),
    ));
    Ok(suite)
}

pub fn check_equivalence<E: Effect, S1: Val, S2: Val, A: Val, B: Val>(
    bx1: &Bx<E, S1, A, B>,
    bx2: &Bx<E, S2, A, B>,
    h: &StateBijection<S1, S2>,
    cfg: &RunConfig,
) -> Result<LawReport, ComposeError> {
    Ok(equivalence_suite(bx1, bx2, h)?.run(cfg)?)
}

fn init_law<E: Effect, S1: Val, S2: Val, V: Val>(
    eff: &E,
    name: &str,
    dom: &FiniteDomain<V>,
    h: &StateBijection<S1, S2>,
    init1: impl Fn(V) -> E::M<S1> + Send + Sync + 'static,
    init2: impl Fn(V) -> E::M<S2> + Send + Sync + 'static,
) -> Law {
    let d = Arc::new(dom.as_slice().to_vec());
    let mut q = Quantifiers::new();
    let v = q.var(d.len());
    let (d1, d2, d3, h, e) = (d.clone(), d.clone(), d, h.clone(), eff.clone());
    Law::effects(
        eff,
        name,
        q,
        move |x| format!("value={:?}", d3[x.at(v)]),
        move |x| {
            let h = h.clone();
            e.map(init1(d1[x.at(v)].clone()), move |s| h.forward(&s))
        },
        move |x| init2(d2[x.at(v)].clone()),
    )
}

/// [`equivalence_suite`] plus agreement of both initialisers up to `h`.
pub fn init_equivalence_suite<E: Effect, S1: Val, S2: Val, A: Val, B: Val>(
    bx1: &InitBx<E, S1, A, B>,
    bx2: &InitBx<E, S2, A, B>,
    h: &StateBijection<S1, S2>,
) -> Result<LawSuite, ComposeError> {
    let mut suite = equivalence_suite(bx1.bx(), bx2.bx(), h)?;
    let sp = bx1.require_space()?;
    let eff = bx1.effect();
    let (i1, i2) = (bx1.clone(), bx2.clone());
    suite.push(init_law(
        eff,
        "iota initL",
        &sp.left,
        h,
        move |a| i1.init_l(a),
        move |a| i2.init_l(a),
    ));
    let (i1, i2) = (bx1.clone(), bx2.clone());
    suite.push(init_law(
        eff,
        "iota initR",
        &sp.right,
        h,
        move |b| i1.init_r(b),
        move |b| i2.init_r(b),
    ));
    Ok(suite)
}

pub fn check_init_equivalence<E: Effect, S1: Val, S2: Val, A: Val, B: Val>(
    bx1: &InitBx<E, S1, A, B>,
    bx2: &InitBx<E, S2, A, B>,
    h: &StateBijection<S1, S2>,
    cfg: &RunConfig,
) -> Result<LawReport, ComposeError> {
    Ok(init_equivalence_suite(bx1, bx2, h)?.run(cfg)?)
}
