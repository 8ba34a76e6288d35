//! The state transformer `S -> T (A, S)` over an effect family `T`, its
//! get/set laws, lifting, and data refinement onto a native state monad.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use thiserror::Error;

use crate::domain::FiniteDomain;
use crate::effect::{Effect, EffectError, MonadMorphism, NativeState, Val};
use crate::lawcheck::{Assignment, Law, LawError, LawReport, LawSuite, Quantifiers, RunConfig};

/// A computation reading and writing a state of type `S`, with effects from `E`.
pub struct Stateful<E: Effect, S: Val, A: Val> {
    eff: E,
    run: Arc<dyn Fn(S) -> E::M<(A, S)> + Send + Sync>,
}

impl<E: Effect, S: Val, A: Val> Clone for Stateful<E, S, A> {
    fn clone(&self) -> Self {
        Self {
            eff: self.eff.clone(),
            run: self.run.clone(),
        }
    }
}

impl<E: Effect, S: Val, A: Val> fmt::Debug for Stateful<E, S, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stateful<{}>", self.eff.name())
    }
}

impl<E: Effect, S: Val, A: Val> Stateful<E, S, A> {
    pub fn new(eff: &E, f: impl Fn(S) -> E::M<(A, S)> + Send + Sync + 'static) -> Self {
        Self {
            eff: eff.clone(),
            run: Arc::new(f),
        }
    }

    pub fn effect(&self) -> &E {
        &self.eff
    }

    /// Runs from state `s`, yielding the result and final state.
    pub fn run(&self, s: S) -> E::M<(A, S)> {
        (self.run)(s)
    }

    /// The result only.
    pub fn eval(&self, s: S) -> E::M<A> {
        self.eff.map(self.run(s), |(a, _)| a)
    }

    /// The final state only.
    pub fn exec(&self, s: S) -> E::M<S> {
        self.eff.map(self.run(s), |(_, s)| s)
    }

    pub fn bind<B: Val>(
        &self,
        k: impl Fn(A) -> Stateful<E, S, B> + Send + Sync + 'static,
    ) -> Stateful<E, S, B> {
        let (m, e, k) = (self.run.clone(), self.eff.clone(), Arc::new(k));
        Stateful::new(&self.eff, move |s| {
            let k = k.clone();
            e.bind(m(s), move |(a, s1)| k(a).run(s1))
        })
    }

    pub fn then<B: Val>(&self, next: &Stateful<E, S, B>) -> Stateful<E, S, B> {
        let next = next.clone();
        self.bind(move |_| next.clone())
    }

    pub fn map<B: Val>(&self, f: impl Fn(A) -> B + Send + Sync + 'static) -> Stateful<E, S, B> {
        let (m, e, f) = (self.run.clone(), self.eff.clone(), Arc::new(f));
        Stateful::new(&self.eff, move |s| {
            let f = f.clone();
            e.map(m(s), move |(a, s1)| (f(a), s1))
        })
    }
}

pub fn pure<E: Effect, S: Val, A: Val>(eff: &E, a: A) -> Stateful<E, S, A> {
    let e = eff.clone();
    Stateful::new(eff, move |s| e.pure((a.clone(), s)))
}

pub fn get<E: Effect, S: Val>(eff: &E) -> Stateful<E, S, S> {
    let e = eff.clone();
    Stateful::new(eff, move |s: S| e.pure((s.clone(), s)))
}

pub fn set<E: Effect, S: Val>(eff: &E, s: S) -> Stateful<E, S, ()> {
    let e = eff.clone();
    Stateful::new(eff, move |_| e.pure(((), s.clone())))
}

pub fn gets<E: Effect, S: Val, A: Val>(
    eff: &E,
    f: impl Fn(&S) -> A + Send + Sync + 'static,
) -> Stateful<E, S, A> {
    let e = eff.clone();
    Stateful::new(eff, move |s: S| e.pure((f(&s), s)))
}

pub fn modify<E: Effect, S: Val>(
    eff: &E,
    f: impl Fn(S) -> S + Send + Sync + 'static,
) -> Stateful<E, S, ()> {
    let e = eff.clone();
    Stateful::new(eff, move |s: S| e.pure(((), f(s))))
}

/// Runs a base computation, leaving the state untouched.
pub fn lift<E: Effect, S: Val, A: Val>(eff: &E, m: E::M<A>) -> Stateful<E, S, A> {
    let e = eff.clone();
    Stateful::new(eff, move |s: S| e.map(m.clone(), move |a| (a, s.clone())))
}

/// The state transformer over `E` viewed as an effect family in its own
/// right. Equality runs from every declared state.
#[derive(Clone, Debug)]
pub struct StateT<E, S> {
    base: E,
    states: Arc<Vec<S>>,
}

impl<E: Effect, S: Val> StateT<E, S> {
    pub fn new(base: &E, states: &FiniteDomain<S>) -> Self {
        Self {
            base: base.clone(),
            states: Arc::new(states.as_slice().to_vec()),
        }
    }

    pub fn base(&self) -> &E {
        &self.base
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }
}

impl<E: Effect, S: Val> Effect for StateT<E, S> {
    type M<A: Val> = Stateful<E, S, A>;

    fn name(&self) -> String {
        format!("state[{}]", self.base.name())
    }

    fn pure<A: Val>(&self, a: A) -> Stateful<E, S, A> {
        pure(&self.base, a)
    }

    fn bind<A: Val, B: Val, K>(&self, m: Stateful<E, S, A>, k: K) -> Stateful<E, S, B>
    where
        K: Fn(A) -> Stateful<E, S, B> + Send + Sync + 'static,
    {
        m.bind(k)
    }

    fn zero<A: Val>(&self) -> Option<Stateful<E, S, A>> {
        self.base.zero::<A>().map(|z| lift(&self.base, z))
    }

    fn observable(&self) -> bool {
        self.base.observable() && !self.states.is_empty()
    }

    fn equal<A: Val>(
        &self,
        x: &Stateful<E, S, A>,
        y: &Stateful<E, S, A>,
    ) -> Result<bool, EffectError> {
        self.observe()?;
        for s in self.states.iter() {
            if !self.base.equal(&x.run(s.clone()), &y.run(s.clone()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn outcomes<A: Val>(&self, m: &Stateful<E, S, A>) -> Result<Vec<A>, EffectError> {
        let mut out = Vec::new();
        for s in self.states.iter() {
            out.extend(self.base.outcomes(&m.eval(s.clone()))?);
        }
        Ok(out)
    }

    fn as_pure<A: Val>(&self, m: &Stateful<E, S, A>) -> Result<Option<A>, EffectError> {
        self.observe()?;
        let mut found: Option<A> = None;
        for s in self.states.iter() {
            match self.base.as_pure(&m.run(s.clone()))? {
                Some((a, t)) if t == *s && found.as_ref().is_none_or(|f| *f == a) => {
                    found = Some(a)
                }
                _ => return Ok(None),
            }
        }
        Ok(found)
    }

    fn render<A: Val>(&self, m: &Stateful<E, S, A>) -> String {
        let cells: Vec<String> = self
            .states
            .iter()
            .map(|s| format!("{s:?}->{}", self.base.render(&m.run(s.clone()))))
            .collect();
        format!("{{{}}}", cells.join(", "))
    }

    /// Pure results, lifted base computations, overwrites followed by a
    /// result, state-dependent results and a state rotation.
    fn sample<A: Val>(&self, dom: &[A]) -> Vec<Stateful<E, S, A>> {
        let b = &self.base;
        let mut out: Vec<Stateful<E, S, A>> = dom.iter().map(|a| pure(b, a.clone())).collect();
        out.extend(b.sample(dom).into_iter().map(|m| lift(b, m)));
        for a in dom {
            for t in self.states.iter() {
                out.push(set(b, t.clone()).then(&pure(b, a.clone())));
            }
        }
        let ns = self.states.len();
        if !dom.is_empty() && ns > 0 && (dom.len() as u128).pow(ns as u32) <= 27 {
            for code in 0..dom.len().pow(ns as u32) {
                let (states, dom) = (self.states.clone(), dom.to_vec());
                out.push(gets(b, move |s: &S| {
                    let i = states.iter().position(|t| t == s).unwrap_or(0);
                    dom[code / dom.len().pow(i as u32) % dom.len()].clone()
                }));
            }
        }
        if ns > 1 {
            for a in dom {
                let states = self.states.clone();
                let rotate = modify(b, move |s: S| {
                    let i = states.iter().position(|t| *t == s).unwrap_or(0);
                    states[(i + 1) % states.len()].clone()
                });
                out.push(rotate.then(&pure(b, a.clone())));
            }
        }
        out
    }
}

/// `lift` as a monad morphism from the base family into the transformer.
pub struct Lift<E, S> {
    base: E,
    _state: PhantomData<fn() -> S>,
}

impl<E: Clone, S> Clone for Lift<E, S> {
    fn clone(&self) -> Self {
        Self {
            base: self.base.clone(),
            _state: PhantomData,
        }
    }
}

impl<E: Effect, S: Val> Lift<E, S> {
    pub fn new(base: &E) -> Self {
        Self {
            base: base.clone(),
            _state: PhantomData,
        }
    }
}

impl<E: Effect, S: Val> MonadMorphism<E, StateT<E, S>> for Lift<E, S> {
    fn name(&self) -> String {
        "lift".into()
    }

    fn apply<A: Val>(&self, m: E::M<A>) -> Stateful<E, S, A> {
        lift(&self.base, m)
    }
}

/// A law between stateful computations, additionally quantified over the
/// initial state.
pub fn stateful_law<E, S, T, L, R, D>(
    eff: &E,
    states: &FiniteDomain<S>,
    name: &str,
    mut q: Quantifiers,
    describe: D,
    lhs: L,
    rhs: R,
) -> Law
where
    E: Effect,
    S: Val,
    T: Val,
    L: Fn(&Assignment) -> Stateful<E, S, T> + Send + Sync + 'static,
    R: Fn(&Assignment) -> Stateful<E, S, T> + Send + Sync + 'static,
    D: Fn(&Assignment) -> String + Send + Sync + 'static,
{
    let sv = q.var(states.len());
    let (s1, s2, s3) = (
        Arc::new(states.as_slice().to_vec()),
        Arc::new(states.as_slice().to_vec()),
        Arc::new(states.as_slice().to_vec()),
    );
    Law::effects(
        eff,
        name,
        q,
        move |x| {
            let d = describe(x);
            if d.is_empty() {
                format!("state={:?}", s3[x.at(sv)])
            } else {
                format!("{d}, state={:?}", s3[x.at(sv)])
            }
        },
        move |x| lhs(x).run(s1[x.at(sv)].clone()),
        move |x| rhs(x).run(s2[x.at(sv)].clone()),
    )
}

/// The get/set laws of the transformer, discardability of unused gets and
/// commutation of lifted computations with get and set.
pub fn state_law_suite<E: Effect, S: Val, A: Val>(
    eff: &E,
    states: &FiniteDomain<S>,
    dom: &FiniteDomain<A>,
) -> Result<LawSuite, LawError> {
    eff.observe()?;
    let st = Arc::new(states.as_slice().to_vec());
    let ns = st.len();
    let mut suite = LawSuite::new(
        format!("state over {ns} states"),
        format!("state[{}]", eff.name()),
    );
    let e = eff.clone();

    let e1 = e.clone();
    suite.push(stateful_law(
        eff,
        states,
        "GG",
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            let e2 = e1.clone();
            get::<E, S>(&e1).bind(move |s| {
                let e3 = e2.clone();
                get::<E, S>(&e2).bind(move |t| pure(&e3, (s.clone(), t)))
            })
        },
        {
            let e1 = e.clone();
            move |_| {
                let e2 = e1.clone();
                get::<E, S>(&e1).bind(move |s| pure(&e2, (s.clone(), s)))
            }
        },
    ));

    let mut q = Quantifiers::new();
    let v = q.var(ns);
    let (e1, e2, st1, st2, st3) = (e.clone(), e.clone(), st.clone(), st.clone(), st.clone());
    suite.push(stateful_law(
        eff,
        states,
        "SG",
        q,
        move |x| format!("s'={:?}", st3[x.at(v)]),
        move |x| set(&e1, st1[x.at(v)].clone()).then(&get(&e1)),
        move |x| set(&e2, st2[x.at(v)].clone()).then(&pure(&e2, st2[x.at(v)].clone())),
    ));

    let (e1, e2) = (e.clone(), e.clone());
    suite.push(stateful_law(
        eff,
        states,
        "GS",
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            let e = e1.clone();
            get::<E, S>(&e1).bind(move |s| set(&e, s))
        },
        move |_| pure(&e2, ()),
    ));

    let mut q = Quantifiers::new();
    let (v, w) = (q.var(ns), q.var(ns));
    let (e1, e2, st1, st2, st3) = (e.clone(), e.clone(), st.clone(), st.clone(), st.clone());
    suite.push(stateful_law(
        eff,
        states,
        "SS",
        q,
        move |x| format!("s1={:?}, s2={:?}", st3[x.at(v)], st3[x.at(w)]),
        move |x| set(&e1, st1[x.at(v)].clone()).then(&set(&e1, st1[x.at(w)].clone())),
        move |x| set(&e2, st2[x.at(w)].clone()),
    ));

    let tf = StateT::new(eff, states);
    let comps = Arc::new(tf.sample(dom.as_slice()));
    let mut q = Quantifiers::new();
    let m = q.var(comps.len());
    let (e1, c1, c2, c3, tf3) = (
        e.clone(),
        comps.clone(),
        comps.clone(),
        comps.clone(),
        tf.clone(),
    );
    suite.push(stateful_law(
        eff,
        states,
        "unused get",
        q,
        move |x| format!("m={}", tf3.render(&c3[x.at(m)])),
        move |x| get::<E, S>(&e1).then(&c1[x.at(m)]),
        move |x| c2[x.at(m)].clone(),
    ));

    let base = Arc::new(eff.sample(dom.as_slice()));
    let mut q = Quantifiers::new();
    let m = q.var(base.len());
    let (e1, e2, e3, b1, b2, b3) = (
        e.clone(),
        e.clone(),
        e.clone(),
        base.clone(),
        base.clone(),
        base.clone(),
    );
    suite.push(stateful_law(
        eff,
        states,
        "lift commutes with get",
        q,
        move |x| format!("m={}", e3.render(&b3[x.at(m)])),
        move |x| {
            let e = e1.clone();
            lift::<E, S, A>(&e1, b1[x.at(m)].clone()).bind(move |a| {
                let e2 = e.clone();
                get::<E, S>(&e).bind(move |s| pure(&e2, (a.clone(), s)))
            })
        },
        move |x| {
            let (e, mm) = (e2.clone(), b2[x.at(m)].clone());
            get::<E, S>(&e2).bind(move |s| {
                let e3 = e.clone();
                lift::<E, S, A>(&e, mm.clone()).bind(move |a| pure(&e3, (a, s.clone())))
            })
        },
    ));

    let mut q = Quantifiers::new();
    let (m, v) = (q.var(base.len()), q.var(ns));
    let (e1, e2, e3, b1, b2, b3) = (
        e.clone(),
        e.clone(),
        e.clone(),
        base.clone(),
        base.clone(),
        base,
    );
    let (st1, st2, st3) = (st.clone(), st.clone(), st);
    suite.push(stateful_law(
        eff,
        states,
        "lift commutes with set",
        q,
        move |x| format!("m={}, s'={:?}", e3.render(&b3[x.at(m)]), st3[x.at(v)]),
        move |x| {
            let (e, s) = (e1.clone(), st1[x.at(v)].clone());
            lift::<E, S, A>(&e1, b1[x.at(m)].clone())
                .bind(move |a| set(&e, s.clone()).then(&pure(&e, a)))
        },
        move |x| set(&e2, st2[x.at(v)].clone()).then(&lift(&e2, b2[x.at(m)].clone())),
    ));
    Ok(suite)
}

pub fn check_state_laws<E: Effect, S: Val, A: Val>(
    eff: &E,
    states: &FiniteDomain<S>,
    dom: &FiniteDomain<A>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    state_law_suite(eff, states, dom)?.run(cfg)
}

/// A base monad's own get and set operations.
pub struct StateInterface<E: Effect, S: Val> {
    pub get: E::M<S>,
    pub set: Arc<dyn Fn(S) -> E::M<()> + Send + Sync>,
}

impl<E: Effect, S: Val> Clone for StateInterface<E, S> {
    fn clone(&self) -> Self {
        Self {
            get: self.get.clone(),
            set: self.set.clone(),
        }
    }
}

impl<S: Val> NativeState<S> {
    pub fn interface(&self) -> StateInterface<NativeState<S>, S> {
        let me = self.clone();
        StateInterface {
            get: self.get_t(),
            set: Arc::new(move |s| me.set_t(s)),
        }
    }
}

/// Errors from setting up a data refinement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefinementError {
    #[error("base state operations violate {law}: {witness}")]
    BaseLawsViolated { law: String, witness: String },
    #[error(transparent)]
    Law(#[from] LawError),
}

/// Translations between transformer computations and computations of a
/// base monad that already manages a state of the same type.
pub struct DataRefinement<E: Effect, S: Val> {
    eff: E,
    iface: StateInterface<E, S>,
}

/// Checks the base operations' GG, SG and GS laws and returns the refinement.
pub fn data_refinement<E: Effect, S: Val>(
    eff: &E,
    iface: StateInterface<E, S>,
    states: &FiniteDomain<S>,
    cfg: &RunConfig,
) -> Result<DataRefinement<E, S>, RefinementError> {
    eff.observe().map_err(LawError::from)?;
    let st = Arc::new(states.as_slice().to_vec());
    let mut suite = LawSuite::new("base state", eff.name());
    let (e1, e2, i1, i2) = (eff.clone(), eff.clone(), iface.clone(), iface.clone());
    suite.push(Law::effects(
        eff,
        "GG",
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            let (e, g) = (e1.clone(), i1.get.clone());
            e1.bind(i1.get.clone(), move |s| {
                let e = e.clone();
                e.clone().bind(g.clone(), move |t| e.pure((s.clone(), t)))
            })
        },
        move |_| {
            let e = e2.clone();
            e2.bind(i2.get.clone(), move |s| e.pure((s.clone(), s)))
        },
    ));
    let mut q = Quantifiers::new();
    let v = q.var(st.len());
    let (e1, e2, i1, i2, st1, st2, st3) = (
        eff.clone(),
        eff.clone(),
        iface.clone(),
        iface.clone(),
        st.clone(),
        st.clone(),
        st,
    );
    suite.push(Law::effects(
        eff,
        "SG",
        q,
        move |x| format!("s={:?}", st3[x.at(v)]),
        move |x| e1.then((i1.set)(st1[x.at(v)].clone()), i1.get.clone()),
        move |x| {
            e2.then(
                (i2.set)(st2[x.at(v)].clone()),
                e2.pure(st2[x.at(v)].clone()),
            )
        },
    ));
    let (e1, e2, i1) = (eff.clone(), eff.clone(), iface.clone());
    suite.push(Law::effects(
        eff,
        "GS",
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            let set = i1.set.clone();
            e1.bind(i1.get.clone(), move |s| set(s))
        },
        move |_| e2.pure(()),
    ));
    let report = suite.run(cfg)?;
    if let Some(l) = report.laws.iter().find(|l| !l.passed()) {
        return Err(RefinementError::BaseLawsViolated {
            law: l.name.clone(),
            witness: l.failures[0].inputs.clone(),
        });
    }
    Ok(DataRefinement {
        eff: eff.clone(),
        iface,
    })
}

impl<E: Effect, S: Val> DataRefinement<E, S> {
    /// `conc m = \s -> do {a <- m; s' <- getT; return (a, s')}`.
    pub fn conc<A: Val>(&self, m: E::M<A>) -> Stateful<E, S, A> {
        let (e, g) = (self.eff.clone(), self.iface.get.clone());
        Stateful::new(&self.eff, move |_s: S| {
            let (e2, g) = (e.clone(), g.clone());
            e.bind(m.clone(), move |a| {
                e2.map(g.clone(), move |t| (a.clone(), t))
            })
        })
    }

    /// `abs m = do {s <- getT; (a, s') <- m s; setT s'; return a}`.
    pub fn abs<A: Val>(&self, m: &Stateful<E, S, A>) -> E::M<A> {
        let (e, m, set) = (self.eff.clone(), m.clone(), self.iface.set.clone());
        self.eff.bind(self.iface.get.clone(), move |s| {
            let (e2, set) = (e.clone(), set.clone());
            e.bind(m.run(s), move |(a, t)| e2.then(set(t), e2.pure(a)))
        })
    }

    /// `abs . conc = id` and distribution of `conc` over bind.
    pub fn refinement_suite<A: Val>(
        &self,
        states: &FiniteDomain<S>,
        dom: &FiniteDomain<A>,
    ) -> LawSuite {
        let me = Arc::new(DataRefinement {
            eff: self.eff.clone(),
            iface: self.iface.clone(),
        });
        let d = Arc::new(dom.as_slice().to_vec());
        let vals = Arc::new(self.eff.sample(&d));
        let mut suite = LawSuite::new("data refinement", self.eff.name());
        let mut q = Quantifiers::new();
        let m = q.var(vals.len());
        let (r1, v1, v2, v3, e3) = (
            me.clone(),
            vals.clone(),
            vals.clone(),
            vals.clone(),
            self.eff.clone(),
        );
        suite.push(Law::effects(
            &self.eff,
            "abs . conc = id",
            q,
            move |x| format!("m={}", e3.render(&v3[x.at(m)])),
            move |x| r1.abs(&r1.conc(v1[x.at(m)].clone())),
            move |x| v2[x.at(m)].clone(),
        ));
        let mut q = Quantifiers::new();
        let (m, k) = (q.var(vals.len()), q.func(d.len(), vals.len()));
        let (r1, r2, v1, v2, v3, d1, d2, d3, e3) = (
            me.clone(),
            me,
            vals.clone(),
            vals.clone(),
            vals,
            d.clone(),
            d.clone(),
            d,
            self.eff.clone(),
        );
        suite.push(stateful_law(
            &self.eff,
            states,
            "conc distributes over bind",
            q,
            move |x| {
                format!(
                    "m={}, k={}",
                    e3.render(&v3[x.at(m)]),
                    crate::lawcheck::show_table(&d3, x.table(k), |j| e3.render(&v3[j]))
                )
            },
            move |x| {
                let (t, v, d) = (x.table(k).to_vec(), v1.clone(), d1.clone());
                r1.conc(r1.eff.bind(v1[x.at(m)].clone(), move |a| {
                    v[t[crate::lawcheck::position(&d, &a)]].clone()
                }))
            },
            move |x| {
                let (t, v, d, r) = (x.table(k).to_vec(), v2.clone(), d2.clone(), r2.clone());
                r2.conc(v2[x.at(m)].clone())
                    .bind(move |a| r.conc(v[t[crate::lawcheck::position(&d, &a)]].clone()))
            },
        ));
        suite
    }
}
