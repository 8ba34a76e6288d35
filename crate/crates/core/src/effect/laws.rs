//! Monad, zero, commutativity and monad-morphism laws for effect families.

use std::sync::Arc;

use super::{Effect, Failure, Identity, Val};
use crate::domain::FiniteDomain;
use crate::lawcheck::{
    position, show_table, Law, LawError, LawReport, LawSuite, Quantifiers, RunConfig,
};

/// Builds a continuation from an index table into `vals`.
fn kont<M: Clone + Send + Sync + 'static, A: Val>(
    dom: &Arc<Vec<A>>,
    vals: &Arc<Vec<M>>,
    table: &[usize],
) -> impl Fn(A) -> M + Clone + Send + Sync + 'static {
    let (dom, vals, table) = (dom.clone(), vals.clone(), table.to_vec());
    move |x: A| vals[table[position(&dom, &x)]].clone()
}

/// Unit, associativity and (when the family has one) zero absorption.
pub fn monad_law_suite<E: Effect, A: Val>(
    eff: &E,
    dom: &FiniteDomain<A>,
) -> Result<LawSuite, LawError> {
    eff.observe()?;
    let d = Arc::new(dom.as_slice().to_vec());
    let vals = Arc::new(eff.sample(&d));
    let (nd, nv) = (d.len(), vals.len());
    let mut suite = LawSuite::new(format!("monad over {} values", nd), eff.name());
    let show_k = {
        let (d, vals, e) = (d.clone(), vals.clone(), eff.clone());
        move |t: &[usize]| show_table(&d, t, |j| e.render(&vals[j]))
    };

    let mut q = Quantifiers::new();
    let (a, k) = (q.var(nd), q.func(nd, nv));
    let (e, d1, v1, sk) = (eff.clone(), d.clone(), vals.clone(), show_k.clone());
    let (d2, v2) = (d.clone(), vals.clone());
    let d3 = d.clone();
    suite.push(Law::effects(
        eff,
        "left unit",
        q,
        move |x| format!("a={:?}, k={}", d3[x.at(a)], sk(x.table(k))),
        move |x| e.bind(e.pure(d1[x.at(a)].clone()), kont(&d1, &v1, x.table(k))),
        move |x| kont(&d2, &v2, x.table(k))(d2[x.at(a)].clone()),
    ));

    let mut q = Quantifiers::new();
    let m = q.var(nv);
    let (e, v1, v2, v3, e3) = (
        eff.clone(),
        vals.clone(),
        vals.clone(),
        vals.clone(),
        eff.clone(),
    );
    suite.push(Law::effects(
        eff,
        "right unit",
        q,
        move |x| format!("m={}", e3.render(&v3[x.at(m)])),
        move |x| {
            let e2 = e.clone();
            e.bind(v1[x.at(m)].clone(), move |y| e2.pure(y))
        },
        move |x| v2[x.at(m)].clone(),
    ));

    let mut q = Quantifiers::new();
    let (m, k, h) = (q.var(nv), q.func(nd, nv), q.func(nd, nv));
    let (e, d1, v1) = (eff.clone(), d.clone(), vals.clone());
    let (e3, v3, sk) = (eff.clone(), vals.clone(), show_k.clone());
    suite.push(Law::effects(
        eff,
        "associativity",
        q,
        move |x| {
            format!(
                "m={}, k={}, h={}",
                e3.render(&v3[x.at(m)]),
                sk(x.table(k)),
                sk(x.table(h))
            )
        },
        {
            let (e, d1, v1) = (e.clone(), d1.clone(), v1.clone());
            move |x| {
                e.bind(
                    e.bind(v1[x.at(m)].clone(), kont(&d1, &v1, x.table(k))),
                    kont(&d1, &v1, x.table(h)),
                )
            }
        },
        move |x| {
            let (kk, hh, e2) = (
                kont(&d1, &v1, x.table(k)),
                kont(&d1, &v1, x.table(h)),
                e.clone(),
            );
            e.bind(v1[x.at(m)].clone(), move |y| e2.bind(kk(y), hh.clone()))
        },
    ));

    if let Some(zero) = eff.zero::<A>() {
        let mut q = Quantifiers::new();
        let k = q.func(nd, nv);
        let (e, d1, v1, z1, z2, sk) = (
            eff.clone(),
            d.clone(),
            vals.clone(),
            zero.clone(),
            zero.clone(),
            show_k.clone(),
        );
        suite.push(Law::effects(
            eff,
            "zero left",
            q,
            move |x| format!("k={}", sk(x.table(k))),
            move |x| e.bind(z1.clone(), kont(&d1, &v1, x.table(k))),
            move |_| z2.clone(),
        ));
        let mut q = Quantifiers::new();
        let m = q.var(nv);
        let (e, v1, z1, z2, e3, v3) = (
            eff.clone(),
            vals.clone(),
            zero.clone(),
            zero,
            eff.clone(),
            vals.clone(),
        );
        suite.push(Law::effects(
            eff,
            "zero right",
            q,
            move |x| format!("m={}", e3.render(&v3[x.at(m)])),
            move |x| {
                let z = z1.clone();
                e.bind(v1[x.at(m)].clone(), move |_| z.clone())
            },
            move |_| z2.clone(),
        ));
    }
    Ok(suite)
}

/// Runs [`monad_law_suite`].
pub fn check_monad_laws<E: Effect, A: Val>(
    eff: &E,
    dom: &FiniteDomain<A>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    monad_law_suite(eff, dom)?.run(cfg)
}

/// Suite for `do {x <- m; y <- n; return (x, y)} = do {y <- n; x <- m; return (x, y)}`.
pub fn commutativity_suite<E: Effect, A: Val, B: Val>(
    eff: &E,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Result<LawSuite, LawError> {
    eff.observe()?;
    let ms = Arc::new(eff.sample(da.as_slice()));
    let ns = Arc::new(eff.sample(db.as_slice()));
    let mut q = Quantifiers::new();
    let (m, n) = (q.var(ms.len()), q.var(ns.len()));
    let (e1, e2, e3) = (eff.clone(), eff.clone(), eff.clone());
    let (m1, n1, m2, n2, m3, n3) = (ms.clone(), ns.clone(), ms.clone(), ns.clone(), ms, ns);
    Ok(
        LawSuite::new("commutativity", eff.name()).with(Law::effects(
            eff,
            "commutative",
            q,
            move |x| {
                format!(
                    "m={}, n={}",
                    e3.render(&m3[x.at(m)]),
                    e3.render(&n3[x.at(n)])
                )
            },
            move |x| {
                let (e, n) = (e1.clone(), n1[x.at(n)].clone());
                e1.bind(m1[x.at(m)].clone(), move |a: A| {
                    let e2 = e.clone();
                    e.bind(n.clone(), move |b: B| e2.pure((a.clone(), b)))
                })
            },
            move |x| {
                let (e, mm) = (e2.clone(), m2[x.at(m)].clone());
                e2.bind(n2[x.at(n)].clone(), move |b: B| {
                    let e3 = e.clone();
                    e.bind(mm.clone(), move |a: A| e3.pure((a, b.clone())))
                })
            },
        )),
    )
}

/// Checks commutativity on the sampled computations over `da` and `db`.
pub fn check_commutative<E: Effect, A: Val, B: Val>(
    eff: &E,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    commutativity_suite(eff, da, db)?.run(cfg)
}

/// A polymorphic map between effect families.
pub trait MonadMorphism<Src: Effect, Dst: Effect>: Clone + Send + Sync + 'static {
    fn name(&self) -> String;
    fn apply<A: Val>(&self, m: Src::M<A>) -> Dst::M<A>;
}

/// `phi . return = return` and `phi (m >>= k) = phi m >>= (phi . k)`.
pub fn monad_morphism_suite<Src, Dst, P, A>(
    phi: &P,
    src: &Src,
    dst: &Dst,
    dom: &FiniteDomain<A>,
) -> Result<LawSuite, LawError>
where
    Src: Effect,
    Dst: Effect,
    P: MonadMorphism<Src, Dst>,
    A: Val,
{
    dst.observe()?;
    let d = Arc::new(dom.as_slice().to_vec());
    let vals = Arc::new(src.sample(&d));
    let (nd, nv) = (d.len(), vals.len());
    let mut suite = LawSuite::new(phi.name(), format!("{} -> {}", src.name(), dst.name()));

    let mut q = Quantifiers::new();
    let a = q.var(nd);
    let (p, s, t, d1, d2, d3) = (
        phi.clone(),
        src.clone(),
        dst.clone(),
        d.clone(),
        d.clone(),
        d.clone(),
    );
    suite.push(Law::effects(
        dst,
        "preserves return",
        q,
        move |x| format!("a={:?}", d3[x.at(a)]),
        move |x| p.apply(s.pure(d1[x.at(a)].clone())),
        move |x| t.pure(d2[x.at(a)].clone()),
    ));

    let mut q = Quantifiers::new();
    let (m, k) = (q.var(nv), q.func(nd, nv));
    let (p1, s1, d1, v1) = (phi.clone(), src.clone(), d.clone(), vals.clone());
    let (p2, t2, d2, v2) = (phi.clone(), dst.clone(), d.clone(), vals.clone());
    let (s3, d3, v3) = (src.clone(), d.clone(), vals.clone());
    suite.push(Law::effects(
        dst,
        "preserves bind",
        q,
        move |x| {
            format!(
                "m={}, k={}",
                s3.render(&v3[x.at(m)]),
                show_table(&d3, x.table(k), |j| s3.render(&v3[j]))
            )
        },
        move |x| p1.apply(s1.bind(v1[x.at(m)].clone(), kont(&d1, &v1, x.table(k)))),
        move |x| {
            let (kk, p) = (kont(&d2, &v2, x.table(k)), p2.clone());
            t2.bind(p2.apply(v2[x.at(m)].clone()), move |y| p.apply(kk(y)))
        },
    ));
    Ok(suite)
}

pub fn check_monad_morphism<Src, Dst, P, A>(
    phi: &P,
    src: &Src,
    dst: &Dst,
    dom: &FiniteDomain<A>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError>
where
    Src: Effect,
    Dst: Effect,
    P: MonadMorphism<Src, Dst>,
    A: Val,
{
    monad_morphism_suite(phi, src, dst, dom)?.run(cfg)
}

/// The identity map on a family.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityMorphism;

impl<E: Effect> MonadMorphism<E, E> for IdentityMorphism {
    fn name(&self) -> String {
        "id".into()
    }

    fn apply<A: Val>(&self, m: E::M<A>) -> E::M<A> {
        m
    }
}

/// Embeds plain values as successful computations.
#[derive(Clone, Copy, Debug, Default)]
pub struct JustEmbedding;

impl MonadMorphism<Identity, Failure> for JustEmbedding {
    fn name(&self) -> String {
        "just".into()
    }

    fn apply<A: Val>(&self, m: A) -> Option<A> {
        Some(m)
    }
}

/// Sends everything to failure; not a monad morphism.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConstNothing;

impl MonadMorphism<Identity, Failure> for ConstNothing {
    fn name(&self) -> String {
        "const-nothing".into()
    }

    fn apply<A: Val>(&self, _: A) -> Option<A> {
        None
    }
}
