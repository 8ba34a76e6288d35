//! Worked bx exhibiting each effect family, the composers case study and a
//! catalogue of deliberately broken bx.

use thiserror::Error;

use crate::compose::ComposeError;

mod composers;
mod dynamic;
mod failure;
pub mod mutants;
mod nondet;
mod session;
mod signal;
mod switch;

pub use composers::{
    composers_bx, composers_scenario, composers_symlens, composers_universe, tavener_scenario,
    Composer, ComposerSet, Dates, NameNation, ScenarioReport, ScriptStep, StepReport, View,
};
pub use dynamic::{
    dynamic_bx, dynamic_io_bx, dynamic_search_bx, dynamic_space, match_io, search, DynState,
};
pub use failure::{inv_bx, partial_bx, read_some_bx, read_some_space};
pub use nondet::nondet_bx;
pub use session::{
    count_prompts, render_transcript, sync_session, SessionEnd, SessionFailure, SessionOutcome,
};
pub use signal::{alert_bx, log_bx, signal_bx};
pub use switch::switch_bx;

/// Errors raised while building examples from user-supplied parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("effect family `{0}` has no zero element")]
    NoZero(String),
    #[error("functions are not partial inverses: {0}")]
    NotPartialInverse(String),
    #[error("fix-up side condition violated: {0}")]
    SideCondition(String),
    #[error("name `{0}` appears more than once in a view")]
    KeyViolation(String),
    #[error(transparent)]
    Compose(#[from] ComposeError),
}
