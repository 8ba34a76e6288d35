use super::{Effect, EffectError, Val};

/// The trivial effect: computations are plain values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Identity;

impl Effect for Identity {
    type M<A: Val> = A;

    fn name(&self) -> String {
        "identity".into()
    }

    fn pure<A: Val>(&self, a: A) -> A {
        a
    }

    fn bind<A: Val, B: Val, K>(&self, m: A, k: K) -> B
    where
        K: Fn(A) -> B + Send + Sync + 'static,
    {
        k(m)
    }

    fn equal<A: Val>(&self, x: &A, y: &A) -> Result<bool, EffectError> {
        Ok(x == y)
    }

    fn outcomes<A: Val>(&self, m: &A) -> Result<Vec<A>, EffectError> {
        Ok(vec![m.clone()])
    }

    fn as_pure<A: Val>(&self, m: &A) -> Result<Option<A>, EffectError> {
        Ok(Some(m.clone()))
    }

    fn render<A: Val>(&self, m: &A) -> String {
        format!("{m:?}")
    }

    fn sample<A: Val>(&self, dom: &[A]) -> Vec<A> {
        dom.to_vec()
    }
}
