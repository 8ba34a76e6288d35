//! Effectful bidirectional transformations modelled as entangled state.
//!
//! A bidirectional transformation ([`bx::Bx`]) exposes two views of a hidden
//! state through get and set operations living in a state transformer over an
//! arbitrary effect family ([`effect::Effect`]). The [`lawcheck`] module decides
//! the algebraic laws of every construct by exhaustive enumeration over finite
//! domains, falling back to seeded sampling above a configurable cap.

#![allow(clippy::type_complexity, clippy::result_large_err)]

pub mod bx;
pub mod combinators;
pub mod compose;
pub mod domain;
pub mod effect;
pub mod either;
pub mod examples;
pub mod lawcheck;
pub mod lens;
pub mod stateful;
pub mod symlens;

pub use bx::{Bx, InitBx, Space};
pub use domain::FiniteDomain;
pub use effect::{Effect, Val};
pub use either::Either;
pub use lawcheck::{LawReport, RunConfig};
pub use stateful::Stateful;
