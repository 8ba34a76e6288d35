use super::{Effect, EffectError, Val};

/// Partiality: a computation either produces a value or fails.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Failure;

impl Effect for Failure {
    type M<A: Val> = Option<A>;

    fn name(&self) -> String {
        "failure".into()
    }

    fn pure<A: Val>(&self, a: A) -> Option<A> {
        Some(a)
    }

    fn bind<A: Val, B: Val, K>(&self, m: Option<A>, k: K) -> Option<B>
    where
        K: Fn(A) -> Option<B> + Send + Sync + 'static,
    {
        m.and_then(k)
    }

    fn zero<A: Val>(&self) -> Option<Option<A>> {
        Some(None)
    }

    fn equal<A: Val>(&self, x: &Option<A>, y: &Option<A>) -> Result<bool, EffectError> {
        Ok(x == y)
    }

    fn outcomes<A: Val>(&self, m: &Option<A>) -> Result<Vec<A>, EffectError> {
        Ok(m.iter().cloned().collect())
    }

    fn as_pure<A: Val>(&self, m: &Option<A>) -> Result<Option<A>, EffectError> {
        Ok(m.clone())
    }

    fn render<A: Val>(&self, m: &Option<A>) -> String {
        match m {
            Some(a) => format!("Just {a:?}"),
            None => "Nothing".into(),
        }
    }

    fn sample<A: Val>(&self, dom: &[A]) -> Vec<Option<A>> {
        std::iter::once(None)
            .chain(dom.iter().cloned().map(Some))
            .collect()
    }
}
