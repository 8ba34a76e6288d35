//! Enumeration of finite functions.

use std::fmt::Debug;

use super::{sample_cells, LawError, Mode, RunConfig};
use crate::domain::FiniteDomain;

/// A family of functions `dom -> cod` stored as index tables.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSet<A, B> {
    pub dom: Vec<A>,
    pub cod: Vec<B>,
    pub tables: Vec<Vec<usize>>,
    pub mode: Mode,
}

impl<A: PartialEq + Debug, B: Clone> FunctionSet<A, B> {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Applies function `i` to `x`; `None` outside the domain.
    pub fn apply(&self, i: usize, x: &A) -> Option<B> {
        let j = self.dom.iter().position(|d| d == x)?;
        Some(self.cod[self.tables[i][j]].clone())
    }
}

/// Every function from `dom` to `cod` when there are at most `cfg.cap` of
/// them, otherwise a seeded sample (or an error when sampling is disabled).
pub fn enumerate_functions<A, B>(
    dom: &FiniteDomain<A>,
    cod: &FiniteDomain<B>,
    cfg: &RunConfig,
) -> Result<FunctionSet<A, B>, LawError>
where
    A: Clone + PartialEq + Debug,
    B: Clone + PartialEq + Debug,
{
    let dims = vec![cod.len(); dom.len()];
    let space = dims
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    let (tables, mode) = if space <= cfg.cap as u128 {
        let mut tables = Vec::with_capacity(space as usize);
        for i in 0..space as u64 {
            tables.push(super::decode(i, &dims));
        }
        (tables, Mode::Exhaustive)
    } else if let Some(s) = cfg.sampling {
        (
            sample_cells(&dims, s, "functions"),
            Mode::Sampled {
                seed: s.seed,
                requested: s.size,
            },
        )
    } else {
        return Err(LawError::DomainTooLarge {
            law: "functions".into(),
            space: space.to_string(),
            cap: cfg.cap,
        });
    };
    Ok(FunctionSet {
        dom: dom.as_slice().to_vec(),
        cod: cod.as_slice().to_vec(),
        tables,
        mode,
    })
}
