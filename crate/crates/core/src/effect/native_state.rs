use std::sync::Arc;

use super::{Effect, EffectError, Val};

/// A computation over a native mutable cell of type `S`.
pub type StateFn<S, A> = Arc<dyn Fn(S) -> (A, S) + Send + Sync>;

/// A base monad with its own state, the target of data refinement.
/// Equality runs both computations from every declared initial state.
#[derive(Clone, Debug)]
pub struct NativeState<S> {
    states: Option<Arc<Vec<S>>>,
}

impl<S: Val> NativeState<S> {
    pub fn new(states: Vec<S>) -> Self {
        Self {
            states: Some(Arc::new(states)),
        }
    }

    pub fn opaque() -> Self {
        Self { states: None }
    }

    pub fn states(&self) -> &[S] {
        self.states.as_deref().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn get_t(&self) -> StateFn<S, S> {
        Arc::new(|s: S| (s.clone(), s))
    }

    pub fn set_t(&self, s: S) -> StateFn<S, ()> {
        Arc::new(move |_| ((), s.clone()))
    }

    pub fn modify_t(&self, f: impl Fn(S) -> S + Send + Sync + 'static) -> StateFn<S, ()> {
        Arc::new(move |s| ((), f(s)))
    }

    fn contexts(&self) -> Result<&[S], EffectError> {
        match &self.states {
            Some(s) if !s.is_empty() => Ok(s),
            _ => Err(EffectError::Unobservable(self.name())),
        }
    }
}

impl<S: Val> Effect for NativeState<S> {
    type M<A: Val> = StateFn<S, A>;

    fn name(&self) -> String {
        "state".into()
    }

    fn pure<A: Val>(&self, a: A) -> StateFn<S, A> {
        Arc::new(move |s| (a.clone(), s))
    }

    fn bind<A: Val, B: Val, K>(&self, m: StateFn<S, A>, k: K) -> StateFn<S, B>
    where
        K: Fn(A) -> StateFn<S, B> + Send + Sync + 'static,
    {
        Arc::new(move |s| {
            let (a, s) = m(s);
            k(a)(s)
        })
    }

    fn observable(&self) -> bool {
        self.states.as_ref().is_some_and(|s| !s.is_empty())
    }

    fn equal<A: Val>(&self, x: &StateFn<S, A>, y: &StateFn<S, A>) -> Result<bool, EffectError> {
        Ok(self
            .contexts()?
            .iter()
            .all(|s| x(s.clone()) == y(s.clone())))
    }

    fn outcomes<A: Val>(&self, m: &StateFn<S, A>) -> Result<Vec<A>, EffectError> {
        Ok(self.contexts()?.iter().map(|s| m(s.clone()).0).collect())
    }

    fn as_pure<A: Val>(&self, m: &StateFn<S, A>) -> Result<Option<A>, EffectError> {
        let mut found: Option<A> = None;
        for s in self.contexts()? {
            let (a, t) = m(s.clone());
            if t != *s || found.as_ref().is_some_and(|f| *f != a) {
                return Ok(None);
            }
            found = Some(a);
        }
        Ok(found)
    }

    fn render<A: Val>(&self, m: &StateFn<S, A>) -> String {
        let cells: Vec<String> = self
            .states()
            .iter()
            .map(|s| format!("{s:?}->{:?}", m(s.clone())))
            .collect();
        format!("state{{{}}}", cells.join(", "))
    }

    /// Pure results and results that overwrite the cell with each declared state.
    fn sample<A: Val>(&self, dom: &[A]) -> Vec<StateFn<S, A>> {
        let mut out = Vec::new();
        for a in dom {
            out.push(self.pure(a.clone()));
            for t in self.states() {
                let (a, t) = (a.clone(), t.clone());
                out.push(Arc::new(move |_| (a.clone(), t.clone())) as StateFn<S, A>);
            }
        }
        out
    }
}
