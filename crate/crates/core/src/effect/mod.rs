//! Effect families: monads with an extensional equality over finite
//! observation contexts, a finite sample of computations for law checking and
//! an optional zero element.

use std::fmt;

use thiserror::Error;

mod choice;
mod console;
mod failure;
mod identity;
mod laws;
mod native_state;
mod reader;
mod writer;

pub use choice::Choice;
pub use console::{
    Console, ConsoleError, ConsoleIo, ConsoleWorld, Direction, LiveTerminal, TranscriptEntry,
};
pub use failure::Failure;
pub use identity::Identity;
pub use laws::{
    check_commutative, check_monad_laws, check_monad_morphism, commutativity_suite,
    monad_law_suite, monad_morphism_suite, ConstNothing, IdentityMorphism, JustEmbedding,
    MonadMorphism,
};
pub use native_state::{NativeState, StateFn};
pub use reader::{Reader, ReaderFn};
pub use writer::Writer;

/// Values that can flow through computations and be compared and printed.
pub trait Val: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {}

impl<T> Val for T where T: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {}

/// Raised when a family cannot decide equality of its computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EffectError {
    #[error("effect family `{0}` has no finite observation contexts, so its computations cannot be compared")]
    Unobservable(String),
}

/// A monad together with everything the law checker needs to observe it.
pub trait Effect: Clone + Send + Sync + 'static {
    /// The computation type carrying results of type `A`.
    type M<A: Val>: Clone + Send + Sync + 'static;

    fn name(&self) -> String;

    fn pure<A: Val>(&self, a: A) -> Self::M<A>;

    fn bind<A: Val, B: Val, K>(&self, m: Self::M<A>, k: K) -> Self::M<B>
    where
        K: Fn(A) -> Self::M<B> + Send + Sync + 'static;

    /// A computation absorbing on both sides of `bind`, when the family has one.
    fn zero<A: Val>(&self) -> Option<Self::M<A>> {
        None
    }

    /// Whether [`Effect::equal`] can decide anything.
    fn observable(&self) -> bool {
        true
    }

    /// Extensional equality over the family's observation contexts.
    fn equal<A: Val>(&self, x: &Self::M<A>, y: &Self::M<A>) -> Result<bool, EffectError>;

    /// Every result the computation can produce across all observation contexts.
    fn outcomes<A: Val>(&self, m: &Self::M<A>) -> Result<Vec<A>, EffectError>;

    /// `Some(a)` exactly when the computation is observationally `pure(a)`.
    fn as_pure<A: Val>(&self, m: &Self::M<A>) -> Result<Option<A>, EffectError>;

    fn render<A: Val>(&self, m: &Self::M<A>) -> String;

    /// A finite family of computations over `dom`, used to quantify monad laws.
    fn sample<A: Val>(&self, dom: &[A]) -> Vec<Self::M<A>>;

    fn map<A: Val, B: Val, F>(&self, m: Self::M<A>, f: F) -> Self::M<B>
    where
        F: Fn(A) -> B + Send + Sync + 'static,
    {
        let eff = self.clone();
        self.bind(m, move |a| eff.pure(f(a)))
    }

    /// Sequencing that discards the first result.
    fn then<A: Val, B: Val>(&self, m: Self::M<A>, n: Self::M<B>) -> Self::M<B> {
        self.bind(m, move |_| n.clone())
    }

    fn observe(&self) -> Result<(), EffectError> {
        if self.observable() {
            Ok(())
        } else {
            Err(EffectError::Unobservable(self.name()))
        }
    }
}

/// Runs the computations left to right, collecting their results.
pub fn sequence<E: Effect, A: Val>(eff: &E, ms: Vec<E::M<A>>) -> E::M<Vec<A>> {
    let mut acc = eff.pure(Vec::new());
    for m in ms.into_iter().rev() {
        let e = eff.clone();
        let rest = acc.clone();
        acc = eff.bind(m, move |a| {
            let a = a.clone();
            e.map(rest.clone(), move |mut v: Vec<A>| {
                v.insert(0, a.clone());
                v
            })
        });
    }
    acc
}

/// Guard in a family with a zero: `pure(())` when `cond`, otherwise the zero.
pub fn guard<E: Effect>(eff: &E, cond: bool) -> Option<E::M<()>> {
    if cond {
        Some(eff.pure(()))
    } else {
        eff.zero()
    }
}
