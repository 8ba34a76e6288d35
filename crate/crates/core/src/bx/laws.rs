//! The seven well-behavedness laws, overwritability, stability,
//! initialisation laws and transparency analysis.

use std::sync::Arc;

use super::{Bx, InitBx, Setter};
use crate::domain::FiniteDomain;
use crate::effect::{Effect, Val};
use crate::lawcheck::{Law, LawError, LawReport, LawSuite, Quantifiers, RunConfig};
use crate::stateful::{pure, stateful_law, Stateful};

fn get_get<E: Effect, S: Val, V: Val>(
    name: &str,
    eff: &E,
    states: &FiniteDomain<S>,
    get: Stateful<E, S, V>,
) -> Law {
    let (g1, g2, e1, e2) = (get.clone(), get, eff.clone(), eff.clone());
    stateful_law(
        eff,
        states,
        name,
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            let (g, e) = (g1.clone(), e1.clone());
            g1.bind(move |a| {
                let e = e.clone();
                g.bind(move |b| pure(&e, (a.clone(), b)))
            })
        },
        move |_| {
            let e = e2.clone();
            g2.bind(move |a| pure(&e, (a.clone(), a)))
        },
    )
}

fn set_get<E: Effect, S: Val, V: Val>(
    name: &str,
    eff: &E,
    states: &FiniteDomain<S>,
    dom: &FiniteDomain<V>,
    set: Setter<E, S, V>,
    get: Stateful<E, S, V>,
) -> Law {
    let d = Arc::new(dom.as_slice().to_vec());
    let mut q = Quantifiers::new();
    let v = q.var(d.len());
    let (s1, s2, d1, d2, d3, e) = (set.clone(), set, d.clone(), d.clone(), d, eff.clone());
    stateful_law(
        eff,
        states,
        name,
        q,
        move |x| format!("value={:?}", d3[x.at(v)]),
        move |x| s1(d1[x.at(v)].clone()).then(&get),
        move |x| s2(d2[x.at(v)].clone()).then(&pure(&e, d2[x.at(v)].clone())),
    )
}

fn get_set<E: Effect, S: Val, V: Val>(
    name: &str,
    eff: &E,
    states: &FiniteDomain<S>,
    get: Stateful<E, S, V>,
    set: Setter<E, S, V>,
) -> Law {
    let e = eff.clone();
    stateful_law(
        eff,
        states,
        name,
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            get.bind({
                let set = set.clone();
                move |v| set(v)
            })
        },
        move |_| pure(&e, ()),
    )
}

fn set_set<E: Effect, S: Val, V: Val>(
    name: &str,
    eff: &E,
    states: &FiniteDomain<S>,
    dom: &FiniteDomain<V>,
    set: Setter<E, S, V>,
) -> Law {
    let d = Arc::new(dom.as_slice().to_vec());
    let mut q = Quantifiers::new();
    let (v, w) = (q.var(d.len()), q.var(d.len()));
    let (s1, s2, d1, d2, d3) = (set.clone(), set, d.clone(), d.clone(), d);
    stateful_law(
        eff,
        states,
        name,
        q,
        move |x| format!("first={:?}, second={:?}", d3[x.at(v)], d3[x.at(w)]),
        move |x| s1(d1[x.at(v)].clone()).then(&s1(d1[x.at(w)].clone())),
        move |x| s2(d2[x.at(w)].clone()),
    )
}

/// (G_LG_L), (S_LG_L), (G_LS_L), their right-hand duals, and (G_LG_R).
pub fn seven_law_suite<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<LawSuite, LawError> {
    let sp = bx.require_space()?;
    let eff = bx.effect();
    eff.observe()?;
    let st = &sp.states;
    let mut suite = LawSuite::new(bx.name(), eff.name());
    suite.push(get_get("G_LG_L", eff, st, bx.get_l()));
    suite.push(set_get(
        "S_LG_L",
        eff,
        st,
        &sp.left,
        bx.setter_l(),
        bx.get_l(),
    ));
    suite.push(get_set("G_LS_L", eff, st, bx.get_l(), bx.setter_l()));
    suite.push(get_get("G_RG_R", eff, st, bx.get_r()));
    suite.push(set_get(
        "S_RG_R",
        eff,
        st,
        &sp.right,
        bx.setter_r(),
        bx.get_r(),
    ));
    suite.push(get_set("G_RS_R", eff, st, bx.get_r(), bx.setter_r()));
    let (l1, r1, l2, r2, e1, e2) = (
        bx.get_l(),
        bx.get_r(),
        bx.get_l(),
        bx.get_r(),
        eff.clone(),
        eff.clone(),
    );
    suite.push(stateful_law(
        eff,
        st,
        "G_LG_R",
        Quantifiers::new(),
        |_| String::new(),
        move |_| {
            let (r, e) = (r1.clone(), e1.clone());
            l1.bind(move |a| {
                let e = e.clone();
                r.bind(move |b| pure(&e, (a.clone(), b)))
            })
        },
        move |_| {
            let (l, e) = (l2.clone(), e2.clone());
            r2.bind(move |b| {
                let e = e.clone();
                l.bind(move |a| pure(&e, (a, b.clone())))
            })
        },
    ));
    Ok(suite)
}

pub fn check_seven_laws<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    seven_law_suite(bx)?.run(cfg)
}

/// (S_LS_L) and (S_RS_R): a second set overwrites the first.
pub fn overwrite_suite<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<LawSuite, LawError> {
    let sp = bx.require_space()?;
    let eff = bx.effect();
    eff.observe()?;
    let mut suite = LawSuite::new(bx.name(), eff.name());
    suite.push(set_set("S_LS_L", eff, &sp.states, &sp.left, bx.setter_l()));
    suite.push(set_set("S_RS_R", eff, &sp.states, &sp.right, bx.setter_r()));
    Ok(suite)
}

pub fn check_overwritable<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    overwrite_suite(bx)?.run(cfg)
}

/// The result of probing every declared state with both gets.
#[derive(Debug, Clone, PartialEq)]
pub struct Transparency<S, A, B> {
    pub transparent: bool,
    /// `getL` as a table, complete when transparent.
    pub read_l: Vec<(S, A)>,
    /// `getR` as a table, complete when transparent.
    pub read_r: Vec<(S, B)>,
    /// The first state at which a get was not a pure query.
    pub witness: Option<String>,
}

impl<S: PartialEq, A: Clone, B: Clone> Transparency<S, A, B> {
    pub fn left_at(&self, s: &S) -> Option<A> {
        self.read_l
            .iter()
            .find(|(t, _)| t == s)
            .map(|(_, a)| a.clone())
    }

    pub fn right_at(&self, s: &S) -> Option<B> {
        self.read_r
            .iter()
            .find(|(t, _)| t == s)
            .map(|(_, b)| b.clone())
    }
}

/// Decides whether both gets are effect-free queries on the declared states.
pub fn analyze_transparency<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<Transparency<S, A, B>, LawError> {
    let sp = bx.require_space()?;
    bx.effect().observe()?;
    let mut t = Transparency {
        transparent: true,
        read_l: Vec::new(),
        read_r: Vec::new(),
        witness: None,
    };
    for s in sp.states.iter() {
        match bx.read_l(s)? {
            Some(a) => t.read_l.push((s.clone(), a)),
            None if t.witness.is_none() => {
                t.transparent = false;
                t.witness = Some(format!(
                    "getL at state {s:?} is {}",
                    bx.effect().render(&bx.get_l().run(s.clone()))
                ));
            }
            None => {}
        }
        match bx.read_r(s)? {
            Some(b) => t.read_r.push((s.clone(), b)),
            None if t.witness.is_none() => {
                t.transparent = false;
                t.witness = Some(format!(
                    "getR at state {s:?} is {}",
                    bx.effect().render(&bx.get_r().run(s.clone()))
                ));
            }
            None => {}
        }
    }
    Ok(t)
}

/// Every pair `(a, b)` observable by `do {a <- getL; b <- getR; return (a, b)}`
/// from some declared state, in first-seen order.
pub fn consistent_pairs<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<Vec<(A, B)>, LawError> {
    let sp = bx.require_space()?;
    let eff = bx.effect();
    let (r, e) = (bx.get_r(), eff.clone());
    let both = bx.get_l().bind(move |a| {
        let e = e.clone();
        r.bind(move |b| pure(&e, (a.clone(), b)))
    });
    let mut out = Vec::new();
    for s in sp.states.iter() {
        for p in eff.outcomes(&both.eval(s.clone()))? {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Setting a consistent pair and reading back the side set first.
pub fn stability_suite<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
) -> Result<LawSuite, LawError> {
    let sp = bx.require_space()?;
    let eff = bx.effect();
    let pairs = Arc::new(consistent_pairs(bx)?);
    let mut suite = LawSuite::new(bx.name(), eff.name());
    for left_first in [true, false] {
        let mut q = Quantifiers::new();
        let p = q.var(pairs.len());
        let (b1, b2, p1, p2, p3, e) = (
            bx.clone(),
            bx.clone(),
            pairs.clone(),
            pairs.clone(),
            pairs.clone(),
            eff.clone(),
        );
        let name = if left_first { "stable L" } else { "stable R" };
        suite.push(stateful_law(
            eff,
            &sp.states,
            name,
            q,
            move |x| format!("pair={:?}", p3[x.at(p)]),
            move |x| {
                let (a, b) = p1[x.at(p)].clone();
                if left_first {
                    b1.set_l(a).then(&b1.set_r(b)).then(&b1.get_l().map(Ok))
                } else {
                    b1.set_r(b).then(&b1.set_l(a)).then(&b1.get_r().map(Err))
                }
            },
            move |x| {
                let (a, b) = p2[x.at(p)].clone();
                if left_first {
                    b2.set_l(a.clone())
                        .then(&b2.set_r(b))
                        .then(&pure(&e, Ok(a)))
                } else {
                    b2.set_r(b.clone())
                        .then(&b2.set_l(a))
                        .then(&pure(&e, Err(b)))
                }
            },
        ));
    }
    Ok(suite)
}

pub fn check_stability<E: Effect, S: Val, A: Val, B: Val>(
    bx: &Bx<E, S, A, B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    stability_suite(bx)?.run(cfg)
}

/// (I_LG_L) and (I_RG_R): reading a freshly initialised side returns the
/// value it was initialised from.
pub fn init_law_suite<E: Effect, S: Val, A: Val, B: Val>(
    ibx: &InitBx<E, S, A, B>,
) -> Result<LawSuite, LawError> {
    let sp = ibx.require_space()?;
    let eff = ibx.effect().clone();
    eff.observe()?;
    let mut suite = LawSuite::new(ibx.name(), eff.name());

    let d = Arc::new(sp.left.as_slice().to_vec());
    let mut q = Quantifiers::new();
    let v = q.var(d.len());
    let (i1, i2, d1, d2, d3, e1, e2) = (
        ibx.clone(),
        ibx.clone(),
        d.clone(),
        d.clone(),
        d,
        eff.clone(),
        eff.clone(),
    );
    suite.push(Law::effects(
        &eff,
        "I_LG_L",
        q,
        move |x| format!("a={:?}", d3[x.at(v)]),
        move |x| {
            let g = i1.get_l();
            e1.bind(i1.init_l(d1[x.at(v)].clone()), move |s| g.run(s))
        },
        move |x| {
            let (e, a) = (e2.clone(), d2[x.at(v)].clone());
            e2.bind(i2.init_l(a.clone()), move |s| e.pure((a.clone(), s)))
        },
    ));

    let d = Arc::new(sp.right.as_slice().to_vec());
    let mut q = Quantifiers::new();
    let v = q.var(d.len());
    let (i1, i2, d1, d2, d3, e1, e2) = (
        ibx.clone(),
        ibx.clone(),
        d.clone(),
        d.clone(),
        d,
        eff.clone(),
        eff.clone(),
    );
    suite.push(Law::effects(
        &eff,
        "I_RG_R",
        q,
        move |x| format!("b={:?}", d3[x.at(v)]),
        move |x| {
            let g = i1.get_r();
            e1.bind(i1.init_r(d1[x.at(v)].clone()), move |s| g.run(s))
        },
        move |x| {
            let (e, b) = (e2.clone(), d2[x.at(v)].clone());
            e2.bind(i2.init_r(b.clone()), move |s| e.pure((b.clone(), s)))
        },
    ));
    Ok(suite)
}

pub fn check_init_laws<E: Effect, S: Val, A: Val, B: Val>(
    ibx: &InitBx<E, S, A, B>,
    cfg: &RunConfig,
) -> Result<LawReport, LawError> {
    init_law_suite(ibx)?.run(cfg)
}
