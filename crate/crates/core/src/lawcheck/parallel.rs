//! Data-parallel evaluation of assignments with a sequential fallback.

use super::LawError;

/// Positions in `0..n` where `holds` is false, in increasing order. The first
/// error in position order wins.
pub(crate) fn failing<F>(n: u64, parallel: bool, holds: F) -> Result<Vec<u64>, LawError>
where
    F: Fn(u64) -> Result<bool, LawError> + Send + Sync,
{
    let verdict = |i: u64| match holds(i) {
        Ok(true) => None,
        Ok(false) => Some(Ok(i)),
        Err(e) => Some(Err(e)),
    };
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().filter_map(verdict).collect();
    }
    let _ = parallel;
    (0..n).filter_map(verdict).collect()
}
