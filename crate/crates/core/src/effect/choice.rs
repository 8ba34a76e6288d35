use super::{Effect, EffectError, Val};
use crate::domain::lists_up_to;

/// Nondeterminism as an ordered list of outcomes.
///
/// Equality is order-sensitive by default; `multiset` compares outcome
/// multiplicities only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Choice {
    pub multiset: bool,
}

impl Choice {
    pub fn ordered() -> Self {
        Self { multiset: false }
    }

    pub fn multiset() -> Self {
        Self { multiset: true }
    }
}

fn same_multiset<A: PartialEq>(x: &[A], y: &[A]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut used = vec![false; y.len()];
    x.iter()
        .all(|a| match (0..y.len()).find(|&j| !used[j] && y[j] == *a) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        })
}

impl Effect for Choice {
    type M<A: Val> = Vec<A>;

    fn name(&self) -> String {
        if self.multiset {
            "choice(multiset)".into()
        } else {
            "choice".into()
        }
    }

    fn pure<A: Val>(&self, a: A) -> Vec<A> {
        vec![a]
    }

    fn bind<A: Val, B: Val, K>(&self, m: Vec<A>, k: K) -> Vec<B>
    where
        K: Fn(A) -> Vec<B> + Send + Sync + 'static,
    {
        m.into_iter().flat_map(k).collect()
    }

    fn zero<A: Val>(&self) -> Option<Vec<A>> {
        Some(Vec::new())
    }

    fn equal<A: Val>(&self, x: &Vec<A>, y: &Vec<A>) -> Result<bool, EffectError> {
        Ok(if self.multiset {
            same_multiset(x, y)
        } else {
            x == y
        })
    }

    fn outcomes<A: Val>(&self, m: &Vec<A>) -> Result<Vec<A>, EffectError> {
        Ok(m.clone())
    }

    fn as_pure<A: Val>(&self, m: &Vec<A>) -> Result<Option<A>, EffectError> {
        Ok(match m.as_slice() {
            [a] => Some(a.clone()),
            _ => None,
        })
    }

    fn render<A: Val>(&self, m: &Vec<A>) -> String {
        format!("{m:?}")
    }

    fn sample<A: Val>(&self, dom: &[A]) -> Vec<Vec<A>> {
        lists_up_to(dom, 2)
    }
}
