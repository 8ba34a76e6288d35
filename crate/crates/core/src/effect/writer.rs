use super::{Effect, EffectError, Val};

/// Output accumulated into a log, optionally bounded to its newest entries.
///
/// The bounded variant drops the oldest entries; truncation to the last `n`
/// entries is still a monoid, so the monad laws are unaffected.
#[derive(Clone, Debug)]
pub struct Writer<W> {
    bound: Option<usize>,
    alphabet: Vec<W>,
}

impl<W: Val> Writer<W> {
    /// An unbounded log. `alphabet` seeds the sample of computations.
    pub fn new(alphabet: Vec<W>) -> Self {
        Self {
            bound: None,
            alphabet,
        }
    }

    pub fn bounded(bound: usize, alphabet: Vec<W>) -> Self {
        Self {
            bound: Some(bound),
            alphabet,
        }
    }

    pub fn tell(&self, ws: Vec<W>) -> ((), Vec<W>) {
        ((), self.trim(ws))
    }

    fn trim(&self, mut log: Vec<W>) -> Vec<W> {
        if let Some(n) = self.bound {
            if log.len() > n {
                log.drain(..log.len() - n);
            }
        }
        log
    }

    fn append(&self, mut x: Vec<W>, y: Vec<W>) -> Vec<W> {
        x.extend(y);
        self.trim(x)
    }
}

impl<W: Val> Effect for Writer<W> {
    type M<A: Val> = (A, Vec<W>);

    fn name(&self) -> String {
        match self.bound {
            Some(n) => format!("writer(bound {n})"),
            None => "writer".into(),
        }
    }

    fn pure<A: Val>(&self, a: A) -> (A, Vec<W>) {
        (a, Vec::new())
    }

    fn bind<A: Val, B: Val, K>(&self, m: (A, Vec<W>), k: K) -> (B, Vec<W>)
    where
        K: Fn(A) -> (B, Vec<W>) + Send + Sync + 'static,
    {
        let (a, w1) = m;
        let (b, w2) = k(a);
        (b, self.append(w1, w2))
    }

    fn equal<A: Val>(&self, x: &(A, Vec<W>), y: &(A, Vec<W>)) -> Result<bool, EffectError> {
        Ok(x == y)
    }

    fn outcomes<A: Val>(&self, m: &(A, Vec<W>)) -> Result<Vec<A>, EffectError> {
        Ok(vec![m.0.clone()])
    }

    fn as_pure<A: Val>(&self, m: &(A, Vec<W>)) -> Result<Option<A>, EffectError> {
        Ok(m.1.is_empty().then(|| m.0.clone()))
    }

    fn render<A: Val>(&self, m: &(A, Vec<W>)) -> String {
        format!("({:?}, log {:?})", m.0, m.1)
    }

    fn sample<A: Val>(&self, dom: &[A]) -> Vec<(A, Vec<W>)> {
        let mut out = Vec::new();
        for a in dom {
            out.push((a.clone(), Vec::new()));
            for w in &self.alphabet {
                out.push((a.clone(), self.trim(vec![w.clone()])));
            }
        }
        out
    }
}
