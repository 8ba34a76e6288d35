use std::sync::Arc;

use super::ExampleError;
use crate::bx::{Bx, Space};
use crate::domain::FiniteDomain;
use crate::effect::{Choice, Val};
use crate::stateful;

/// Consistency restoration by choice: a set that breaks `ok` branches over
/// the candidates offered by the fix-up function, in the order given. An
/// empty candidate list yields no outcome.
pub fn nondet_bx<A: Val, B: Val>(
    choice: &Choice,
    ok: impl Fn(&A, &B) -> bool + Send + Sync + 'static,
    bs: impl Fn(&A) -> Vec<B> + Send + Sync + 'static,
    as_: impl Fn(&B) -> Vec<A> + Send + Sync + 'static,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Result<Bx<Choice, (A, B), A, B>, ExampleError> {
    for a in da.iter() {
        if let Some(b) = bs(a).into_iter().find(|b| !ok(a, b)) {
            return Err(ExampleError::SideCondition(format!(
                "{b:?} offered for {a:?} but not ok"
            )));
        }
    }
    for b in db.iter() {
        if let Some(a) = as_(b).into_iter().find(|a| !ok(a, b)) {
            return Err(ExampleError::SideCondition(format!(
                "{a:?} offered for {b:?} but not ok"
            )));
        }
    }
    let ok = Arc::new(ok);
    let (bs, as_) = (Arc::new(bs), Arc::new(as_));
    let states = da.product(db).filter(|(a, b)| ok(a, b));
    let (c1, c2, ok1, ok2) = (*choice, *choice, ok.clone(), ok);
    Ok(Bx::new(
        "nondet",
        choice,
        stateful::gets(choice, |s: &(A, B)| s.0.clone()),
        move |a2: A| {
            let (c, ok, bs) = (c1, ok1.clone(), bs.clone());
            stateful::get::<Choice, (A, B)>(&c1).bind(move |(_, b)| {
                if ok(&a2, &b) {
                    stateful::set(&c, (a2.clone(), b))
                } else {
                    let (c2, a2) = (c, a2.clone());
                    stateful::lift::<Choice, (A, B), B>(&c, bs(&a2))
                        .bind(move |b2| stateful::set(&c2, (a2.clone(), b2)))
                }
            })
        },
        stateful::gets(choice, |s: &(A, B)| s.1.clone()),
        move |b2: B| {
            let (c, ok, as_) = (c2, ok2.clone(), as_.clone());
            stateful::get::<Choice, (A, B)>(&c2).bind(move |(a, _)| {
                if ok(&a, &b2) {
                    stateful::set(&c, (a, b2.clone()))
                } else {
                    let (c2, b2) = (c, b2.clone());
                    stateful::lift::<Choice, (A, B), A>(&c, as_(&b2))
                        .bind(move |a2| stateful::set(&c2, (a2, b2.clone())))
                }
            })
        },
    )
    .with_space(Space::new(states, da.clone(), db.clone())))
}
