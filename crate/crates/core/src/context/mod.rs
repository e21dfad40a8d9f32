//! Conversation context and the resolution rules that move it.
//!
//! A [`Resolver`] turns parsed sentences into a [`ResolutionOutcome`] and the
//! next [`ContextObject`]; the input context is never modified.

mod outcome;
mod resolve;
mod state;

use thiserror::Error;

pub use outcome::*;
pub use resolve::{suggest_next, IntentStep, Resolver};
pub use state::*;

use crate::ontology::OntologyError;

#[derive(Debug, Error)]
pub enum ContextError {
    #[error("corrupt context: {0}")]
    CorruptState(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown data property `{0}`")]
    UnknownProperty(String),
    #[error("message contains no sentence")]
    EmptyMessage,
    #[error(transparent)]
    Ontology(#[from] OntologyError),
}

#[cfg(test)]
mod tests;
