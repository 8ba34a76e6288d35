use std::sync::Arc;

use super::{Effect, EffectError, Val};

/// A computation reading an environment of type `R`.
pub type ReaderFn<R, A> = Arc<dyn Fn(&R) -> A + Send + Sync>;

/// Read-only environment access. Equality is pointwise over `envs`; without
/// declared environments the family is unobservable.
#[derive(Clone, Debug)]
pub struct Reader<R> {
    envs: Option<Arc<Vec<R>>>,
}

impl<R: Val> Reader<R> {
    pub fn new(envs: Vec<R>) -> Self {
        Self {
            envs: Some(Arc::new(envs)),
        }
    }

    /// A reader family with no observation contexts.
    pub fn opaque() -> Self {
        Self { envs: None }
    }

    pub fn envs(&self) -> &[R] {
        self.envs.as_deref().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn ask(&self) -> ReaderFn<R, R> {
        Arc::new(|r: &R| r.clone())
    }

    pub fn asks<A: Val>(&self, f: impl Fn(&R) -> A + Send + Sync + 'static) -> ReaderFn<R, A> {
        Arc::new(f)
    }

    pub fn run<A: Val>(m: &ReaderFn<R, A>, env: &R) -> A {
        m(env)
    }

    fn contexts(&self) -> Result<&[R], EffectError> {
        match &self.envs {
            Some(e) if !e.is_empty() => Ok(e),
            _ => Err(EffectError::Unobservable(self.name())),
        }
    }
}

impl<R: Val> Effect for Reader<R> {
    type M<A: Val> = ReaderFn<R, A>;

    fn name(&self) -> String {
        "reader".into()
    }

    fn pure<A: Val>(&self, a: A) -> ReaderFn<R, A> {
        Arc::new(move |_| a.clone())
    }

    fn bind<A: Val, B: Val, K>(&self, m: ReaderFn<R, A>, k: K) -> ReaderFn<R, B>
    where
        K: Fn(A) -> ReaderFn<R, B> + Send + Sync + 'static,
    {
        Arc::new(move |r: &R| k(m(r))(r))
    }

    fn observable(&self) -> bool {
        self.envs.as_ref().is_some_and(|e| !e.is_empty())
    }

    fn equal<A: Val>(&self, x: &ReaderFn<R, A>, y: &ReaderFn<R, A>) -> Result<bool, EffectError> {
        Ok(self.contexts()?.iter().all(|r| x(r) == y(r)))
    }

    fn outcomes<A: Val>(&self, m: &ReaderFn<R, A>) -> Result<Vec<A>, EffectError> {
        Ok(self.contexts()?.iter().map(|r| m(r)).collect())
    }

    fn as_pure<A: Val>(&self, m: &ReaderFn<R, A>) -> Result<Option<A>, EffectError> {
        let mut vals = self.contexts()?.iter().map(|r| m(r));
        let first = vals.next().expect("contexts are non-empty");
        Ok(if vals.all(|v| v == first) {
            Some(first)
        } else {
            None
        })
    }

    fn render<A: Val>(&self, m: &ReaderFn<R, A>) -> String {
        let cells: Vec<String> = self
            .envs()
            .iter()
            .map(|r| format!("{r:?}->{:?}", m(r)))
            .collect();
        format!("reader{{{}}}", cells.join(", "))
    }

    /// Every function from the declared environments into `dom`.
    fn sample<A: Val>(&self, dom: &[A]) -> Vec<ReaderFn<R, A>> {
        let envs: Vec<R> = self.envs().to_vec();
        if envs.is_empty() || dom.is_empty() {
            return dom.iter().map(|a| self.pure(a.clone())).collect();
        }
        let total = dom.len().pow(envs.len() as u32);
        (0..total)
            .map(|mut code| {
                let mut table = Vec::with_capacity(envs.len());
                for _ in 0..envs.len() {
                    table.push(dom[code % dom.len()].clone());
                    code /= dom.len();
                }
                let envs = envs.clone();
                Arc::new(move |r: &R| {
                    let i = envs.iter().position(|e| e == r).unwrap_or(0);
                    table[i].clone()
                }) as ReaderFn<R, A>
            })
            .collect()
    }
}
