use std::sync::Arc;

use crate::bx::Bx;
use crate::effect::{Console, ConsoleIo, Effect, Val, Writer};
use crate::either::Either;
use crate::stateful;

type Signal<E, V> = Arc<dyn Fn(&V) -> <E as Effect>::M<()> + Send + Sync>;

/// Wraps `bx` so that every set that changes a view also emits a signal.
/// Sets that leave the view unchanged emit nothing.
pub fn signal_bx<E: Effect, S: Val, A: Val, B: Val>(
    sig_a: impl Fn(&A) -> E::M<()> + Send + Sync + 'static,
    sig_b: impl Fn(&B) -> E::M<()> + Send + Sync + 'static,
    bx: &Bx<E, S, A, B>,
) -> Bx<E, S, A, B> {
    let (sig_a, sig_b): (Signal<E, A>, Signal<E, B>) = (Arc::new(sig_a), Arc::new(sig_b));
    let eff = bx.effect().clone();
    let (b1, b2) = (bx.clone(), bx.clone());
    let out = Bx::new(
        format!("signal({})", bx.name()),
        &eff,
        bx.get_l(),
        move |a2: A| {
            let (b, sig, e) = (b1.clone(), sig_a.clone(), b1.effect().clone());
            b1.get_l().bind(move |a| {
                let (sig, e, a2b, changed) = (sig.clone(), e.clone(), a2.clone(), a != a2);
                b.set_l(a2.clone()).then(&stateful::lift(
                    &e.clone(),
                    if changed { sig(&a2b) } else { e.pure(()) },
                ))
            })
        },
        bx.get_r(),
        move |b2v: B| {
            let (b, sig, e) = (b2.clone(), sig_b.clone(), b2.effect().clone());
            b2.get_r().bind(move |bv| {
                let (sig, e, changed) = (sig.clone(), e.clone(), bv != b2v);
                b.set_r(b2v.clone()).then(&stateful::lift(
                    &e.clone(),
                    if changed { sig(&b2v) } else { e.pure(()) },
                ))
            })
        },
    );
    match bx.space() {
        Some(sp) => out.with_space(sp.clone()),
        None => out,
    }
}

/// Logs every changed view, tagged with its side.
pub fn log_bx<S: Val, A: Val, B: Val>(
    bx: &Bx<Writer<Either<A, B>>, S, A, B>,
) -> Bx<Writer<Either<A, B>>, S, A, B> {
    let (w1, w2) = (bx.effect().clone(), bx.effect().clone());
    signal_bx(
        move |a: &A| w1.tell(vec![Either::Left(a.clone())]),
        move |b: &B| w2.tell(vec![Either::Right(b.clone())]),
        bx,
    )
    .renamed(format!("log({})", bx.name()))
}

/// Prints `Left` or `Right` whenever the corresponding view changes.
pub fn alert_bx<S: Val, A: Val, B: Val>(bx: &Bx<Console, S, A, B>) -> Bx<Console, S, A, B> {
    let (c1, c2) = (bx.effect().clone(), bx.effect().clone());
    signal_bx(
        move |_: &A| -> ConsoleIo<()> { c1.print_line("Left") },
        move |_: &B| c2.print_line("Right"),
        bx,
    )
    .renamed(format!("alert({})", bx.name()))
}
