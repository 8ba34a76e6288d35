//! Asymmetric lenses, monadic lenses, and the lifting of a lens to a monad
//! morphism between state transformers.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::domain::FiniteDomain;
use crate::effect::{Effect, MonadMorphism, Val};
use crate::lawcheck::{Law, LawError, LawReport, LawSuite, Quantifiers, RunConfig};
use crate::stateful::{StateT, Stateful};

type ViewFn<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;
type UpdateFn<A, B> = Arc<dyn Fn(&A, &B) -> A + Send + Sync>;
type CreateFn<A, B> = Arc<dyn Fn(&B) -> A + Send + Sync>;

/// A source `A` with a view `B`. `create` is optional: pure projections used
/// internally have none, and nothing invents default values.
pub struct Lens<A, B> {
    view: ViewFn<A, B>,
    update: UpdateFn<A, B>,
    create: Option<CreateFn<A, B>>,
}

impl<A, B> Clone for Lens<A, B> {
    fn clone(&self) -> Self {
        Self {
            view: self.view.clone(),
            update: self.update.clone(),
            create: self.create.clone(),
        }
    }
}

impl<A, B> fmt::Debug for Lens<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lens {{ create: {} }}", self.create.is_some())
    }
}

impl<A: Val, B: Val> Lens<A, B> {
    pub fn new(
        view: impl Fn(&A) -> B + Send + Sync + 'static,
        update: impl Fn(&A, &B) -> A + Send + Sync + 'static,
    ) -> Self {
        Self {
            view: Arc::new(view),
            update: Arc::new(update),
            create: None,
        }
    }

    pub fn with_create(mut self, create: impl Fn(&B) -> A + Send + Sync + 'static) -> Self {
        self.create = Some(Arc::new(create));
        self
    }

    pub fn view(&self, a: &A) -> B {
        (self.view)(a)
    }

    pub fn update(&self, a: &A, b: &B) -> A {
        (self.update)(a, b)
    }

    pub fn create(&self, b: &B) -> Option<A> {
        self.create.as_ref().map(|c| c(b))
    }

    pub fn has_create(&self) -> bool {
        self.create.is_some()
    }

    /// `self` then `next`: views the view.
    pub fn compose<C: Val>(&self, next: &Lens<B, C>) -> Lens<A, C> {
        let (v1, v2, u1, u2) = (
            self.view.clone(),
            next.view.clone(),
            self.update.clone(),
            next.update.clone(),
        );
        let v1b = v1.clone();
        let mut out = Lens::new(move |a| v2(&v1(a)), move |a, c| u1(a, &u2(&v1b(a), c)));
        if let (Some(c1), Some(c2)) = (self.create.clone(), next.create.clone()) {
            out.create = Some(Arc::new(move |c| c1(&c2(c))));
        }
        out
    }

    /// The same lens with updates and creates returned through `eff`.
    pub fn to_mlens<E: Effect>(&self, eff: &E) -> MLens<E, A, B> {
        let (u, e1, e2) = (self.update.clone(), eff.clone(), eff.clone());
        let view = self.view.clone();
        MLens {
            eff: eff.clone(),
            view: Arc::new(move |a| view(a)),
            update: Arc::new(move |a, b| e1.pure(u(a, b))),
            create: self
                .create
                .clone()
                .map(|c| Arc::new(move |b: &B| e2.pure(c(b))) as MCreateFn<E, A, B>),
        }
    }
}

/// The first component, with `default_b` filling the hidden half on create.
pub fn fst_lens<A: Val, B: Val>(default_b: B) -> Lens<(A, B), A> {
    fst_view::<A, B>().with_create(move |a| (a.clone(), default_b.clone()))
}

/// The second component, with `default_a` filling the hidden half on create.
pub fn snd_lens<A: Val, B: Val>(default_a: A) -> Lens<(A, B), B> {
    snd_view::<A, B>().with_create(move |b| (default_a.clone(), b.clone()))
}

pub(crate) fn fst_view<A: Val, B: Val>() -> Lens<(A, B), A> {
    Lens::new(|s: &(A, B)| s.0.clone(), |s, a| (a.clone(), s.1.clone()))
}

pub(crate) fn snd_view<A: Val, B: Val>() -> Lens<(A, B), B> {
    Lens::new(|s: &(A, B)| s.1.clone(), |s, b| (s.0.clone(), b.clone()))
}

/// The identity lens.
pub fn id_lens<A: Val>() -> Lens<A, A> {
    Lens::new(|a: &A| a.clone(), |_, a| a.clone()).with_create(|a| a.clone())
}

/// UV, VU and UU, plus create-then-view when the lens has a create.
pub fn lens_law_suite<A: Val, B: Val>(
    l: &Lens<A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> LawSuite {
    let (a_s, b_s) = (
        Arc::new(da.as_slice().to_vec()),
        Arc::new(db.as_slice().to_vec()),
    );
    let mut suite = LawSuite::new("lens", "pure");

    let mut q = Quantifiers::new();
    let (a, b) = (q.var(a_s.len()), q.var(b_s.len()));
    let (l1, a1, b1, b2, a3, b3) = (
        l.clone(),
        a_s.clone(),
        b_s.clone(),
        b_s.clone(),
        a_s.clone(),
        b_s.clone(),
    );
    suite.push(Law::values(
        "UV",
        q,
        move |x| format!("a={:?}, b={:?}", a3[x.at(a)], b3[x.at(b)]),
        move |x| l1.view(&l1.update(&a1[x.at(a)], &b1[x.at(b)])),
        move |x| b2[x.at(b)].clone(),
    ));

    let mut q = Quantifiers::new();
    let a = q.var(a_s.len());
    let (l1, a1, a2, a3) = (l.clone(), a_s.clone(), a_s.clone(), a_s.clone());
    suite.push(Law::values(
        "VU",
        q,
        move |x| format!("a={:?}", a3[x.at(a)]),
        move |x| l1.update(&a1[x.at(a)], &l1.view(&a1[x.at(a)])),
        move |x| a2[x.at(a)].clone(),
    ));

    let mut q = Quantifiers::new();
    let (a, b, c) = (q.var(a_s.len()), q.var(b_s.len()), q.var(b_s.len()));
    let (l1, l2, a1, a2, b1, b2, a3, b3) = (
        l.clone(),
        l.clone(),
        a_s.clone(),
        a_s.clone(),
        b_s.clone(),
        b_s.clone(),
        a_s.clone(),
        b_s.clone(),
    );
    suite.push(Law::values(
        "UU",
        q,
        move |x| {
            format!(
                "a={:?}, b={:?}, b'={:?}",
                a3[x.at(a)],
                b3[x.at(b)],
                b3[x.at(c)]
            )
        },
        move |x| l1.update(&l1.update(&a1[x.at(a)], &b1[x.at(b)]), &b1[x.at(c)]),
        move |x| l2.update(&a2[x.at(a)], &b2[x.at(c)]),
    ));

    if l.has_create() {
        let mut q = Quantifiers::new();
        let b = q.var(b_s.len());
        let (l1, b1, b2, b3) = (l.clone(), b_s.clone(), b_s.clone(), b_s);
        suite.push(Law::values(
            "CV",
            q,
            move |x| format!("b={:?}", b3[x.at(b)]),
            move |x| l1.create(&b1[x.at(b)]).map(|a| l1.view(&a)),
            move |x| Some(b2[x.at(b)].clone()),
        ));
    }
    suite
}

pub fn check_lens_laws<A: Val, B: Val>(
    l: &Lens<A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    lens_law_suite(l, da, db).run(cfg)
}

type MUpdateFn<E, A, B> = Arc<dyn Fn(&A, &B) -> <E as Effect>::M<A> + Send + Sync>;
type MCreateFn<E, A, B> = Arc<dyn Fn(&B) -> <E as Effect>::M<A> + Send + Sync>;

/// A lens whose update and create may have effects.
pub struct MLens<E: Effect, A: Val, B: Val> {
    eff: E,
    view: ViewFn<A, B>,
    update: MUpdateFn<E, A, B>,
    create: Option<MCreateFn<E, A, B>>,
}

impl<E: Effect, A: Val, B: Val> Clone for MLens<E, A, B> {
    fn clone(&self) -> Self {
        Self {
            eff: self.eff.clone(),
            view: self.view.clone(),
            update: self.update.clone(),
            create: self.create.clone(),
        }
    }
}

impl<E: Effect, A: Val, B: Val> MLens<E, A, B> {
    pub fn new(
        eff: &E,
        view: impl Fn(&A) -> B + Send + Sync + 'static,
        update: impl Fn(&A, &B) -> E::M<A> + Send + Sync + 'static,
    ) -> Self {
        Self {
            eff: eff.clone(),
            view: Arc::new(view),
            update: Arc::new(update),
            create: None,
        }
    }

    pub fn with_create(mut self, create: impl Fn(&B) -> E::M<A> + Send + Sync + 'static) -> Self {
        self.create = Some(Arc::new(create));
        self
    }

    pub fn effect(&self) -> &E {
        &self.eff
    }

    pub fn view(&self, a: &A) -> B {
        (self.view)(a)
    }

    pub fn update(&self, a: &A, b: &B) -> E::M<A> {
        (self.update)(a, b)
    }

    pub fn create(&self, b: &B) -> Option<E::M<A>> {
        self.create.as_ref().map(|c| c(b))
    }

    pub fn has_create(&self) -> bool {
        self.create.is_some()
    }

    /// `self` then `next`: the update of `next` runs first, then this one.
    pub fn compose<C: Val>(&self, next: &MLens<E, B, C>) -> MLens<E, A, C> {
        let (v1, v2) = (self.view.clone(), next.view.clone());
        let (u1, u2, e) = (self.update.clone(), next.update.clone(), self.eff.clone());
        let v1b = v1.clone();
        let mut out = MLens::new(
            &self.eff,
            move |a| v2(&v1(a)),
            move |a: &A, c: &C| {
                let (u1, a) = (u1.clone(), a.clone());
                e.bind(u2(&v1b(&a), c), move |b| u1(&a, &b))
            },
        );
        if let (Some(c1), Some(c2)) = (self.create.clone(), next.create.clone()) {
            let e = self.eff.clone();
            out.create = Some(Arc::new(move |c| {
                let c1 = c1.clone();
                e.bind(c2(c), move |b| c1(&b))
            }));
        }
        out
    }
}

/// Monadic UV, VU and UU:
/// `update a b >>= return . view = update a b >> return b`,
/// `update a (view a) = return a`,
/// `update a b >>= \a' -> update a' b' = update a b'`.
pub fn mlens_law_suite<E: Effect, A: Val, B: Val>(
    l: &MLens<E, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Result<LawSuite, LawError> {
    let eff = l.eff.clone();
    eff.observe()?;
    let (a_s, b_s) = (
        Arc::new(da.as_slice().to_vec()),
        Arc::new(db.as_slice().to_vec()),
    );
    let mut suite = LawSuite::new("monadic lens", eff.name());

    let mut q = Quantifiers::new();
    let (a, b) = (q.var(a_s.len()), q.var(b_s.len()));
    let (l1, l2, a1, a2, b1, b2, a3, b3) = (
        l.clone(),
        l.clone(),
        a_s.clone(),
        a_s.clone(),
        b_s.clone(),
        b_s.clone(),
        a_s.clone(),
        b_s.clone(),
    );
    suite.push(Law::effects(
        &eff,
        "UV",
        q,
        move |x| format!("a={:?}, b={:?}", a3[x.at(a)], b3[x.at(b)]),
        move |x| {
            let l = l1.clone();
            l1.eff
                .map(l1.update(&a1[x.at(a)], &b1[x.at(b)]), move |a2| l.view(&a2))
        },
        move |x| {
            let bb = b2[x.at(b)].clone();
            l2.eff
                .map(l2.update(&a2[x.at(a)], &bb), move |_| bb.clone())
        },
    ));

    let mut q = Quantifiers::new();
    let a = q.var(a_s.len());
    let (l1, l2, a1, a2, a3) = (l.clone(), l.clone(), a_s.clone(), a_s.clone(), a_s.clone());
    suite.push(Law::effects(
        &eff,
        "VU",
        q,
        move |x| format!("a={:?}", a3[x.at(a)]),
        move |x| l1.update(&a1[x.at(a)], &l1.view(&a1[x.at(a)])),
        move |x| l2.eff.pure(a2[x.at(a)].clone()),
    ));

    let mut q = Quantifiers::new();
    let (a, b, c) = (q.var(a_s.len()), q.var(b_s.len()), q.var(b_s.len()));
    let (l1, l2, a1, a2, b1, b2, a3, b3) = (
        l.clone(),
        l.clone(),
        a_s.clone(),
        a_s.clone(),
        b_s.clone(),
        b_s.clone(),
        a_s,
        b_s,
    );
    suite.push(Law::effects(
        &eff,
        "UU",
        q,
        move |x| {
            format!(
                "a={:?}, b={:?}, b'={:?}",
                a3[x.at(a)],
                b3[x.at(b)],
                b3[x.at(c)]
            )
        },
        move |x| {
            let (l, bb) = (l1.clone(), b1[x.at(c)].clone());
            l1.eff
                .bind(l1.update(&a1[x.at(a)], &b1[x.at(b)]), move |a2| {
                    l.update(&a2, &bb)
                })
        },
        move |x| l2.update(&a2[x.at(a)], &b2[x.at(c)]),
    ));
    Ok(suite)
}

pub fn check_mlens_laws<E: Effect, A: Val, B: Val>(
    l: &MLens<E, A, B>,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    mlens_law_suite(l, da, db)?.run(cfg)
}

/// Runs a computation on the view inside a computation on the source:
/// `do {a <- get; (c, b') <- lift (m (view a)); a' <- lift (update a b'); set a'; return c}`.
pub fn theta<E: Effect, A: Val, B: Val, C: Val>(
    l: &MLens<E, A, B>,
    m: &Stateful<E, B, C>,
) -> Stateful<E, A, C> {
    let (l, m, e) = (l.clone(), m.clone(), l.eff.clone());
    Stateful::new(&e.clone(), move |a: A| {
        let (l2, e2) = (l.clone(), e.clone());
        e.bind(m.run(l.view(&a)), move |(c, b2)| {
            e2.map(l2.update(&a, &b2), move |a2| (c.clone(), a2))
        })
    })
}

/// [`theta`] for a pure lens.
pub fn theta_lens<E: Effect, A: Val, B: Val, C: Val>(
    l: &Lens<A, B>,
    m: &Stateful<E, B, C>,
) -> Stateful<E, A, C> {
    theta(&l.to_mlens(m.effect()), m)
}

/// Runs a computation on the first half of a paired state.
pub fn left<E: Effect, S1: Val, S2: Val, C: Val>(
    m: &Stateful<E, S1, C>,
) -> Stateful<E, (S1, S2), C> {
    theta_lens(&fst_view::<S1, S2>(), m)
}

/// Runs a computation on the second half of a paired state.
pub fn right<E: Effect, S1: Val, S2: Val, C: Val>(
    m: &Stateful<E, S2, C>,
) -> Stateful<E, (S1, S2), C> {
    theta_lens(&snd_view::<S1, S2>(), m)
}

/// [`theta`] as a candidate monad morphism `StateT B -> StateT A`.
pub struct Theta<E: Effect, A: Val, B: Val> {
    lens: MLens<E, A, B>,
    _marker: PhantomData<fn() -> (A, B)>,
}

impl<E: Effect, A: Val, B: Val> Clone for Theta<E, A, B> {
    fn clone(&self) -> Self {
        Self {
            lens: self.lens.clone(),
            _marker: PhantomData,
        }
    }
}

impl<E: Effect, A: Val, B: Val> Theta<E, A, B> {
    pub fn new(lens: &MLens<E, A, B>) -> Self {
        Self {
            lens: lens.clone(),
            _marker: PhantomData,
        }
    }

    pub fn from_lens(eff: &E, lens: &Lens<A, B>) -> Self {
        Self::new(&lens.to_mlens(eff))
    }
}

impl<E: Effect, A: Val, B: Val> MonadMorphism<StateT<E, B>, StateT<E, A>> for Theta<E, A, B> {
    fn name(&self) -> String {
        "theta".into()
    }

    fn apply<C: Val>(&self, m: Stateful<E, B, C>) -> Stateful<E, A, C> {
        theta(&self.lens, &m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::Identity;
    use crate::stateful::{get, set};

    #[test]
    fn fst_lens_creates_with_default() {
        let l = fst_lens::<u8, char>('z');
        assert_eq!(l.create(&3), Some((3, 'z')));
        assert_eq!(l.update(&(1, 'q'), &2), (2, 'q'));
    }

    #[test]
    fn left_runs_on_first_half() {
        let m = get::<Identity, u8>(&Identity).bind(|n| set(&Identity, n + 1));
        let l: Stateful<Identity, (u8, char), ()> = left(&m);
        assert_eq!(l.run((4, 'x')), ((), (5, 'x')));
        let r: Stateful<Identity, (char, u8), ()> = right(&m);
        assert_eq!(r.run(('x', 4)), ((), ('x', 5)));
    }
}
