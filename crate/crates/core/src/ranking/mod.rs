//! Keyphrase ranking (Okapi BM25) and intent classification, both trained
//! on the synonyms corpus.

mod bm25;
mod corpus;
mod intent;

use thiserror::Error;

pub use bm25::{analyze, train_bm25, Bm25Model, Bm25Params};
pub use corpus::{Corpus, SynonymEntry, BUNDLED_CORPUS};
pub use intent::{features, train_intents, IntentModel, IntentParams, IntentScore};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankingError {
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("intent training needs at least two labels, found only `{0}`")]
    SingleLabel(String),
}

#[cfg(test)]
mod tests;
