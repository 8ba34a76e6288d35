//! Symmetric lenses (pure and monadic), their laws, and conversions to and
//! from bx and lens spans.

use std::sync::Arc;

use thiserror::Error;

use crate::bx::{Bx, InitBx, Space};
use crate::domain::FiniteDomain;
use crate::effect::{Effect, Identity, Val};
use crate::lawcheck::{Law, LawError, LawReport, LawSuite, Quantifiers, RunConfig};
use crate::lens::{Lens, MLens};
use crate::stateful::{self, Stateful};

/// Errors from symmetric-lens conversions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymLensError {
    #[error("lens `{0}` of the span has no create")]
    MissingCreate(&'static str),
    #[error("consistent-state closure exceeded {0} states")]
    TooManyStates(usize),
}

type Put<C, X, Y> = Arc<dyn Fn(&X, &C) -> (Y, C) + Send + Sync>;

/// Two views `A` and `B` synchronised through a complement `C`.
pub struct SymLens<C, A, B> {
    putr: Put<C, A, B>,
    putl: Put<C, B, A>,
    missing: C,
}

impl<C: Clone, A, B> Clone for SymLens<C, A, B> {
    fn clone(&self) -> Self {
        Self {
            putr: self.putr.clone(),
            putl: self.putl.clone(),
            missing: self.missing.clone(),
        }
    }
}

impl<C: Val, A: Val, B: Val> SymLens<C, A, B> {
    pub fn new(
        putr: impl Fn(&A, &C) -> (B, C) + Send + Sync + 'static,
        putl: impl Fn(&B, &C) -> (A, C) + Send + Sync + 'static,
        missing: C,
    ) -> Self {
        Self {
            putr: Arc::new(putr),
            putl: Arc::new(putl),
            missing,
        }
    }

    pub fn putr(&self, a: &A, c: &C) -> (B, C) {
        (self.putr)(a, c)
    }

    pub fn putl(&self, b: &B, c: &C) -> (A, C) {
        (self.putl)(b, c)
    }

    pub fn missing(&self) -> &C {
        &self.missing
    }

    pub fn dual(&self) -> SymLens<C, B, A> {
        SymLens {
            putr: self.putl.clone(),
            putl: self.putr.clone(),
            missing: self.missing.clone(),
        }
    }

    /// Sequential composition with paired complements.
    pub fn compose<C2: Val, D: Val>(&self, next: &SymLens<C2, B, D>) -> SymLens<(C, C2), A, D> {
        let (r1, r2, l1, l2) = (
            self.putr.clone(),
            next.putr.clone(),
            self.putl.clone(),
            next.putl.clone(),
        );
        SymLens::new(
            move |a: &A, (c1, c2): &(C, C2)| {
                let (b, c1) = r1(a, c1);
                let (d, c2) = r2(&b, c2);
                (d, (c1, c2))
            },
            move |d: &D, (c1, c2): &(C, C2)| {
                let (b, c2) = l2(d, c2);
                let (a, c1) = l1(&b, c1);
                (a, (c1, c2))
            },
            (self.missing.clone(), next.missing.clone()),
        )
    }
}

/// (PutRL) and (PutLR).
pub fn symlens_law_suite<C: Val, A: Val, B: Val>(
    sl: &SymLens<C, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    dc: &FiniteDomain<C>,
) -> LawSuite {
    let (a_s, b_s, c_s) = (
        Arc::new(da.as_slice().to_vec()),
        Arc::new(db.as_slice().to_vec()),
        Arc::new(dc.as_slice().to_vec()),
    );
    let mut suite = LawSuite::new("symmetric lens", "pure");

    let mut q = Quantifiers::new();
    let (a, c) = (q.var(a_s.len()), q.var(c_s.len()));
    let (s1, s2, a1, a2, c1, c2, a3, c3) = (
        sl.clone(),
        sl.clone(),
        a_s.clone(),
        a_s.clone(),
        c_s.clone(),
        c_s.clone(),
        a_s,
        c_s.clone(),
    );
    suite.push(Law::values(
        "PutRL",
        q,
        move |x| format!("a={:?}, c={:?}", a3[x.at(a)], c3[x.at(c)]),
        move |x| {
            let (b, c2) = s1.putr(&a1[x.at(a)], &c1[x.at(c)]);
            s1.putl(&b, &c2)
        },
        move |x| (a2[x.at(a)].clone(), s2.putr(&a2[x.at(a)], &c2[x.at(c)]).1),
    ));

    let mut q = Quantifiers::new();
    let (b, c) = (q.var(b_s.len()), q.var(c_s.len()));
    let (s1, s2, b1, b2, c1, c2, b3, c3) = (
        sl.clone(),
        sl.clone(),
        b_s.clone(),
        b_s.clone(),
        c_s.clone(),
        c_s.clone(),
        b_s,
        c_s,
    );
    suite.push(Law::values(
        "PutLR",
        q,
        move |x| format!("b={:?}, c={:?}", b3[x.at(b)], c3[x.at(c)]),
        move |x| {
            let (a, c2) = s1.putl(&b1[x.at(b)], &c1[x.at(c)]);
            s1.putr(&a, &c2)
        },
        move |x| (b2[x.at(b)].clone(), s2.putl(&b2[x.at(b)], &c2[x.at(c)]).1),
    ));
    suite
}

pub fn check_symlens_laws<C: Val, A: Val, B: Val>(
    sl: &SymLens<C, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    dc: &FiniteDomain<C>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    symlens_law_suite(sl, da, db, dc).run(cfg)
}

/// A symmetric lens as a bx over `(A, B, C)` triples.
pub fn symlens_to_bx<E: Effect, C: Val, A: Val, B: Val>(
    eff: &E,
    sl: &SymLens<C, A, B>,
) -> InitBx<E, (A, B, C), A, B> {
    let (e1, e2, s1, s2, s3, s4) = (
        eff.clone(),
        eff.clone(),
        sl.clone(),
        sl.clone(),
        sl.clone(),
        sl.clone(),
    );
    let (e3, e4) = (eff.clone(), eff.clone());
    let bx = Bx::new(
        "symlens",
        eff,
        stateful::gets(eff, |s: &(A, B, C)| s.0.clone()),
        move |a2: A| {
            let (e, sl) = (e1.clone(), s1.clone());
            stateful::get::<E, (A, B, C)>(&e1).bind(move |(_, _, c)| {
                let (b2, c2) = sl.putr(&a2, &c);
                stateful::set(&e, (a2.clone(), b2, c2))
            })
        },
        stateful::gets(eff, |s: &(A, B, C)| s.1.clone()),
        move |b2: B| {
            let (e, sl) = (e2.clone(), s2.clone());
            stateful::get::<E, (A, B, C)>(&e2).bind(move |(_, _, c)| {
                let (a2, c2) = sl.putl(&b2, &c);
                stateful::set(&e, (a2, b2.clone(), c2))
            })
        },
    );
    InitBx::new(
        bx,
        move |a: A| {
            let (b, c) = s3.putr(&a, s3.missing());
            e3.pure((a, b, c))
        },
        move |b: B| {
            let (a, c) = s4.putl(&b, s4.missing());
            e4.pure((a, b, c))
        },
    )
}

/// The states reachable from initialising either side and then setting
/// views from the declared domains, computed as a fixed point.
pub fn consistent_triples<C: Val, A: Val, B: Val>(
    sl: &SymLens<C, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    limit: usize,
) -> Result<FiniteDomain<(A, B, C)>, SymLensError> {
    let mut states: Vec<(A, B, C)> = Vec::new();
    let mut frontier: Vec<(A, B, C)> = Vec::new();
    let add = |t: (A, B, C), states: &mut Vec<(A, B, C)>, frontier: &mut Vec<(A, B, C)>| {
        if !states.contains(&t) {
            states.push(t.clone());
            frontier.push(t);
        }
    };
    for a in da.iter() {
        let (b, c) = sl.putr(a, sl.missing());
        add((a.clone(), b, c), &mut states, &mut frontier);
    }
    for b in db.iter() {
        let (a, c) = sl.putl(b, sl.missing());
        add((a, b.clone(), c), &mut states, &mut frontier);
    }
    while let Some((_, _, c)) = frontier.pop() {
        for a in da.iter() {
            let (b, c2) = sl.putr(a, &c);
            add((a.clone(), b, c2), &mut states, &mut frontier);
        }
        for b in db.iter() {
            let (a, c2) = sl.putl(b, &c);
            add((a, b.clone(), c2), &mut states, &mut frontier);
        }
        if states.len() > limit {
            return Err(SymLensError::TooManyStates(limit));
        }
    }
    Ok(FiniteDomain::dedup(states))
}

/// [`symlens_to_bx`] with its consistent-triple space attached.
pub fn symlens_to_checked_bx<E: Effect, C: Val, A: Val, B: Val>(
    eff: &E,
    sl: &SymLens<C, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    limit: usize,
) -> Result<InitBx<E, (A, B, C), A, B>, SymLensError> {
    let states = consistent_triples(sl, da, db, limit)?;
    Ok(symlens_to_bx(eff, sl).with_space(Space::new(states, da.clone(), db.clone())))
}

/// A pure initialisable bx as a symmetric lens whose complement is the
/// optional hidden state.
pub fn bx_to_symlens<S: Val, A: Val, B: Val>(
    ibx: &InitBx<Identity, S, A, B>,
) -> SymLens<Option<S>, A, B> {
    let (i1, i2) = (ibx.clone(), ibx.clone());
    SymLens::new(
        move |a: &A, ms: &Option<S>| {
            let s = ms.clone().unwrap_or_else(|| i1.init_l(a.clone()));
            let (b, s2) = i1.set_l(a.clone()).then(&i1.get_r()).run(s);
            (b, Some(s2))
        },
        move |b: &B, ms: &Option<S>| {
            let s = ms.clone().unwrap_or_else(|| i2.init_r(b.clone()));
            let (a, s2) = i2.set_r(b.clone()).then(&i2.get_l()).run(s);
            (a, Some(s2))
        },
        None,
    )
}

/// A span of lenses with a common source as a symmetric lens.
pub fn lens_span_to_symlens<C: Val, A: Val, B: Val>(
    l1: &Lens<C, A>,
    l2: &Lens<C, B>,
) -> Result<SymLens<Option<C>, A, B>, SymLensError> {
    if !l1.has_create() {
        return Err(SymLensError::MissingCreate("left"));
    }
    if !l2.has_create() {
        return Err(SymLensError::MissingCreate("right"));
    }
    let (a1, b1, a2, b2) = (l1.clone(), l2.clone(), l1.clone(), l2.clone());
    Ok(SymLens::new(
        move |a: &A, mc: &Option<C>| {
            let c = match mc {
                None => a1.create(a).expect("checked"),
                Some(c) => a1.update(c, a),
            };
            (b1.view(&c), Some(c))
        },
        move |b: &B, mc: &Option<C>| {
            let c = match mc {
                None => b2.create(b).expect("checked"),
                Some(c) => b2.update(c, b),
            };
            (a2.view(&c), Some(c))
        },
        None,
    ))
}

/// A symmetric lens as a span of lenses over consistent triples.
pub fn symlens_to_lens_span<C: Val, A: Val, B: Val>(
    sl: &SymLens<C, A, B>,
) -> (Lens<(A, B, C), A>, Lens<(A, B, C), B>) {
    let (s1, s2, s3, s4) = (sl.clone(), sl.clone(), sl.clone(), sl.clone());
    let left = Lens::new(
        |t: &(A, B, C)| t.0.clone(),
        move |t, a| {
            let (b, c) = s1.putr(a, &t.2);
            (a.clone(), b, c)
        },
    )
    .with_create(move |a| {
        let (b, c) = s2.putr(a, s2.missing());
        (a.clone(), b, c)
    });
    let right = Lens::new(
        |t: &(A, B, C)| t.1.clone(),
        move |t, b| {
            let (a, c) = s3.putl(b, &t.2);
            (a, b.clone(), c)
        },
    )
    .with_create(move |b| {
        let (a, c) = s4.putl(b, s4.missing());
        (a, b.clone(), c)
    });
    (left, right)
}

type MPut<E, C, X, Y> = Arc<dyn Fn(&X, &C) -> <E as Effect>::M<(Y, C)> + Send + Sync>;

/// A symmetric lens whose puts have effects.
pub struct SymMLens<E: Effect, C: Val, A: Val, B: Val> {
    eff: E,
    putr: MPut<E, C, A, B>,
    putl: MPut<E, C, B, A>,
    missing: C,
}

impl<E: Effect, C: Val, A: Val, B: Val> Clone for SymMLens<E, C, A, B> {
    fn clone(&self) -> Self {
        Self {
            eff: self.eff.clone(),
            putr: self.putr.clone(),
            putl: self.putl.clone(),
            missing: self.missing.clone(),
        }
    }
}

impl<E: Effect, C: Val, A: Val, B: Val> SymMLens<E, C, A, B> {
    pub fn new(
        eff: &E,
        putr: impl Fn(&A, &C) -> E::M<(B, C)> + Send + Sync + 'static,
        putl: impl Fn(&B, &C) -> E::M<(A, C)> + Send + Sync + 'static,
        missing: C,
    ) -> Self {
        Self {
            eff: eff.clone(),
            putr: Arc::new(putr),
            putl: Arc::new(putl),
            missing,
        }
    }

    /// A pure symmetric lens with its results returned through `eff`.
    pub fn from_pure(eff: &E, sl: &SymLens<C, A, B>) -> Self {
        let (s1, s2, e1, e2) = (sl.clone(), sl.clone(), eff.clone(), eff.clone());
        Self::new(
            eff,
            move |a, c| e1.pure(s1.putr(a, c)),
            move |b, c| e2.pure(s2.putl(b, c)),
            sl.missing.clone(),
        )
    }

    pub fn effect(&self) -> &E {
        &self.eff
    }

    pub fn putr(&self, a: &A, c: &C) -> E::M<(B, C)> {
        (self.putr)(a, c)
    }

    pub fn putl(&self, b: &B, c: &C) -> E::M<(A, C)> {
        (self.putl)(b, c)
    }

    pub fn missing(&self) -> &C {
        &self.missing
    }

    pub fn dual(&self) -> SymMLens<E, C, B, A> {
        SymMLens {
            eff: self.eff.clone(),
            putr: self.putl.clone(),
            putl: self.putr.clone(),
            missing: self.missing.clone(),
        }
    }

    /// Sequential composition with paired complements.
    pub fn compose<C2: Val, D: Val>(
        &self,
        next: &SymMLens<E, C2, B, D>,
    ) -> SymMLens<E, (C, C2), A, D> {
        let (r1, r2, l1, l2) = (
            self.putr.clone(),
            next.putr.clone(),
            self.putl.clone(),
            next.putl.clone(),
        );
        let (e1, e2) = (self.eff.clone(), self.eff.clone());
        SymMLens::new(
            &self.eff,
            move |a: &A, (c1, c2): &(C, C2)| {
                let (r2, e, c2) = (r2.clone(), e1.clone(), c2.clone());
                e1.bind(r1(a, c1), move |(b, c1n)| {
                    e.map(r2(&b, &c2), move |(d, c2n)| (d, (c1n.clone(), c2n)))
                })
            },
            move |d: &D, (c1, c2): &(C, C2)| {
                let (l1, e, c1) = (l1.clone(), e2.clone(), c1.clone());
                e2.bind(l2(d, c2), move |(b, c2n)| {
                    e.map(l1(&b, &c1), move |(a, c1n)| (a, (c1n, c2n.clone())))
                })
            },
            (self.missing.clone(), next.missing.clone()),
        )
    }

    /// The span of monadic lenses over triples.
    pub fn to_mlens_span(&self) -> (MLens<E, (A, B, C), A>, MLens<E, (A, B, C), B>) {
        let (s1, s2, s3, s4) = (self.clone(), self.clone(), self.clone(), self.clone());
        let left = MLens::new(
            &self.eff,
            |t: &(A, B, C)| t.0.clone(),
            move |t, a| {
                let a = a.clone();
                s1.eff
                    .map(s1.putr(&a, &t.2), move |(b, c)| (a.clone(), b, c))
            },
        )
        .with_create(move |a| {
            let a = a.clone();
            s2.eff
                .map(s2.putr(&a, &s2.missing), move |(b, c)| (a.clone(), b, c))
        });
        let right = MLens::new(
            &self.eff,
            |t: &(A, B, C)| t.1.clone(),
            move |t, b| {
                let b = b.clone();
                s3.eff
                    .map(s3.putl(&b, &t.2), move |(a, c)| (a, b.clone(), c))
            },
        )
        .with_create(move |b| {
            let b = b.clone();
            s4.eff
                .map(s4.putl(&b, &s4.missing), move |(a, c)| (a, b.clone(), c))
        });
        (left, right)
    }
}

/// A span of monadic lenses as a monadic symmetric lens.
pub fn mlens_span_to_symmlens<E: Effect, C: Val, A: Val, B: Val>(
    l1: &MLens<E, C, A>,
    l2: &MLens<E, C, B>,
) -> Result<SymMLens<E, Option<C>, A, B>, SymLensError> {
    if !l1.has_create() {
        return Err(SymLensError::MissingCreate("left"));
    }
    if !l2.has_create() {
        return Err(SymLensError::MissingCreate("right"));
    }
    let (a1, b1, a2, b2) = (l1.clone(), l2.clone(), l1.clone(), l2.clone());
    Ok(SymMLens::new(
        l1.effect(),
        move |a: &A, mc: &Option<C>| {
            let c = match mc {
                None => a1.create(a).expect("checked"),
                Some(c) => a1.update(c, a),
            };
            let v = b1.clone();
            a1.effect().map(c, move |c2| (v.view(&c2), Some(c2)))
        },
        move |b: &B, mc: &Option<C>| {
            let c = match mc {
                None => b2.create(b).expect("checked"),
                Some(c) => b2.update(c, b),
            };
            let v = a2.clone();
            b2.effect().map(c, move |c2| (v.view(&c2), Some(c2)))
        },
        None,
    ))
}

/// (PutRL) and (PutLR) with effects:
/// `do {(b, c') <- putr (a, c); putl (b, c')} = do {(b, c') <- putr (a, c); return (a, c')}`.
pub fn symmlens_law_suite<E: Effect, C: Val, A: Val, B: Val>(
    sl: &SymMLens<E, C, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    dc: &FiniteDomain<C>,
) -> Result<LawSuite, LawError> {
    let eff = sl.eff.clone();
    eff.observe()?;
    let mut suite = LawSuite::new("monadic symmetric lens", eff.name());
    suite.push(round_trip("PutRL", sl, da, dc));
    suite.push(round_trip("PutLR", &sl.dual(), db, dc));
    Ok(suite)
}

fn round_trip<E: Effect, C: Val, A: Val, B: Val>(
    name: &str,
    sl: &SymMLens<E, C, A, B>,
    da: &FiniteDomain<A>,
    dc: &FiniteDomain<C>,
) -> Law {
    let (a_s, c_s) = (
        Arc::new(da.as_slice().to_vec()),
        Arc::new(dc.as_slice().to_vec()),
    );
    let mut q = Quantifiers::new();
    let (a, c) = (q.var(a_s.len()), q.var(c_s.len()));
    let (s1, s2, a1, a2, c1, c2, a3, c3) = (
        sl.clone(),
        sl.clone(),
        a_s.clone(),
        a_s.clone(),
        c_s.clone(),
        c_s.clone(),
        a_s,
        c_s,
    );
    Law::effects(
        &sl.eff,
        name,
        q,
        move |x| format!("view={:?}, c={:?}", a3[x.at(a)], c3[x.at(c)]),
        move |x| {
            let s = s1.clone();
            s1.eff
                .bind(s1.putr(&a1[x.at(a)], &c1[x.at(c)]), move |(b, c2)| {
                    s.putl(&b, &c2)
                })
        },
        move |x| {
            let (e, av) = (s2.eff.clone(), a2[x.at(a)].clone());
            s2.eff.bind(s2.putr(&av, &c2[x.at(c)]), move |(_, c2)| {
                e.pure((av.clone(), c2))
            })
        },
    )
}

pub fn check_symmlens_laws<E: Effect, C: Val, A: Val, B: Val>(
    sl: &SymMLens<E, C, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    dc: &FiniteDomain<C>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    symmlens_law_suite(sl, da, db, dc)?.run(cfg)
}

/// A monadic symmetric lens as a bx over triples.
pub fn symmlens_to_bx<E: Effect, C: Val, A: Val, B: Val>(
    sl: &SymMLens<E, C, A, B>,
) -> InitBx<E, (A, B, C), A, B> {
    let eff = sl.eff.clone();
    let (s1, s2, s3, s4) = (sl.clone(), sl.clone(), sl.clone(), sl.clone());
    let bx = Bx::new(
        "symmetric monadic lens",
        &eff,
        stateful::gets(&eff, |s: &(A, B, C)| s.0.clone()),
        move |a2: A| {
            let sl = s1.clone();
            stateful::get::<E, (A, B, C)>(&s1.eff).bind(move |(_, _, c)| {
                let (e, a2) = (sl.eff.clone(), a2.clone());
                stateful::lift::<E, (A, B, C), (B, C)>(&sl.eff, sl.putr(&a2, &c))
                    .bind(move |(b2, c2)| stateful::set(&e, (a2.clone(), b2, c2)))
            })
        },
        stateful::gets(&eff, |s: &(A, B, C)| s.1.clone()),
        move |b2: B| {
            let sl = s2.clone();
            stateful::get::<E, (A, B, C)>(&s2.eff).bind(move |(_, _, c)| {
                let (e, b2) = (sl.eff.clone(), b2.clone());
                stateful::lift::<E, (A, B, C), (A, C)>(&sl.eff, sl.putl(&b2, &c))
                    .bind(move |(a2, c2)| stateful::set(&e, (a2, b2.clone(), c2)))
            })
        },
    );
    InitBx::new(
        bx,
        move |a: A| {
            s3.eff
                .map(s3.putr(&a, &s3.missing), move |(b, c)| (a.clone(), b, c))
        },
        move |b: B| {
            s4.eff
                .map(s4.putl(&b, &s4.missing), move |(a, c)| (a, b.clone(), c))
        },
    )
}

/// An initialisable bx as a monadic symmetric lens over the optional state.
pub fn bx_to_symmlens<E: Effect, S: Val, A: Val, B: Val>(
    ibx: &InitBx<E, S, A, B>,
) -> SymMLens<E, Option<S>, A, B> {
    let eff = ibx.effect().clone();
    let (i1, i2) = (ibx.clone(), ibx.clone());
    SymMLens::new(
        &eff,
        move |a: &A, ms: &Option<S>| {
            let e = i1.effect().clone();
            let start = match ms {
                Some(s) => e.pure(s.clone()),
                None => i1.init_l(a.clone()),
            };
            let m: Stateful<E, S, B> = i1.set_l(a.clone()).then(&i1.get_r());
            let e2 = e.clone();
            e.bind(start, move |s| e2.map(m.run(s), |(b, s2)| (b, Some(s2))))
        },
        move |b: &B, ms: &Option<S>| {
            let e = i2.effect().clone();
            let start = match ms {
                Some(s) => e.pure(s.clone()),
                None => i2.init_r(b.clone()),
            };
            let m: Stateful<E, S, A> = i2.set_r(b.clone()).then(&i2.get_l());
            let e2 = e.clone();
            e.bind(start, move |s| e2.map(m.run(s), |(a, s2)| (a, Some(s2))))
        },
        None,
    )
}
