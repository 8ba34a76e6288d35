use std::fmt::Display;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;

use super::ExampleError;
use crate::bx::{Bx, Space};
use crate::domain::FiniteDomain;
use crate::effect::{Effect, Failure, Val};
use crate::stateful::{self, Stateful};

type Partial<X, Y> = Arc<dyn Fn(&X) -> Option<Y> + Send + Sync>;

/// A bx from a pair of partial inverses, over the states `(a, b)` with
/// `f a = Some b`. Setting a value outside the domain of `f` (or `g`) yields
/// the family's zero.
pub fn partial_bx<E: Effect, A: Val, B: Val>(
    eff: &E,
    f: impl Fn(&A) -> Option<B> + Send + Sync + 'static,
    g: impl Fn(&B) -> Option<A> + Send + Sync + 'static,
    da: &FiniteDomain<A>,
    db: &FiniteDomain<B>,
) -> Result<Bx<E, (A, B), A, B>, ExampleError> {
    if eff.zero::<()>().is_none() {
        return Err(ExampleError::NoZero(eff.name()));
    }
    let (f, g): (Partial<A, B>, Partial<B, A>) = (Arc::new(f), Arc::new(g));
    for a in da.iter() {
        for b in db.iter() {
            let fwd = f(a).as_ref() == Some(b);
            let bwd = g(b).as_ref() == Some(a);
            if fwd != bwd {
                return Err(ExampleError::NotPartialInverse(format!(
                    "f({a:?}) = {:?} but g({b:?}) = {:?}",
                    f(a),
                    g(b)
                )));
            }
        }
    }
    let states = da.product(db).filter(|(a, b)| f(a).as_ref() == Some(b));
    let (e1, e2) = (eff.clone(), eff.clone());
    Ok(Bx::new(
        "partial",
        eff,
        stateful::gets(eff, |s: &(A, B)| s.0.clone()),
        move |a: A| match f(&a) {
            Some(b) => stateful::set(&e1, (a, b)),
            None => fail(&e1),
        },
        stateful::gets(eff, |s: &(A, B)| s.1.clone()),
        move |b: B| match g(&b) {
            Some(a) => stateful::set(&e2, (a, b)),
            None => fail(&e2),
        },
    )
    .with_space(Space::new(states, da.clone(), db.clone())))
}

fn fail<E: Effect, S: Val>(eff: &E) -> Stateful<E, S, ()> {
    stateful::lift(eff, eff.zero().expect("checked at construction"))
}

fn recip(x: &Ratio<i64>) -> Option<Ratio<i64>> {
    (*x != Ratio::from_integer(0)).then(|| x.recip())
}

/// Relates a rational to its reciprocal; setting zero on either side fails.
pub fn inv_bx(
    dom: &FiniteDomain<Ratio<i64>>,
) -> Bx<Failure, (Ratio<i64>, Ratio<i64>), Ratio<i64>, Ratio<i64>> {
    partial_bx(&Failure, recip, recip, dom, dom)
        .expect("reciprocal is its own partial inverse")
        .renamed("inv")
}

/// A value and its printed form. Setting the string side parses it, failing
/// on text that does not parse, unless the string is unchanged.
pub fn read_some_bx<A>(
    da: &FiniteDomain<A>,
    db: &FiniteDomain<String>,
) -> Bx<Failure, (A, String), A, String>
where
    A: Val + Display + FromStr,
{
    Bx::new(
        "read-some",
        &Failure,
        stateful::gets(&Failure, |s: &(A, String)| s.0.clone()),
        |a: A| {
            let shown = a.to_string();
            stateful::set(&Failure, (a, shown))
        },
        stateful::gets(&Failure, |s: &(A, String)| s.1.clone()),
        |b: String| {
            stateful::get::<Failure, (A, String)>(&Failure).bind(move |(_, old)| {
                if old == b {
                    return stateful::pure(&Failure, ());
                }
                match b.parse::<A>() {
                    Ok(a) => stateful::set(&Failure, (a, b.clone())),
                    Err(_) => stateful::lift(&Failure, None),
                }
            })
        },
    )
    .with_space(read_some_space(da, db))
}

/// The canonical states `(a, show a)` together with both view domains.
pub fn read_some_space<A: Val + Display>(
    da: &FiniteDomain<A>,
    db: &FiniteDomain<String>,
) -> Space<(A, String), A, String> {
    Space::new(
        da.map(|a| (a.clone(), a.to_string())),
        da.clone(),
        db.clone(),
    )
}
