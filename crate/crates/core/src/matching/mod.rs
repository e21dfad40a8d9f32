//! Mapping of user phrases onto ontology nodes.

mod embedding;
mod matcher;

pub use embedding::{cosine, EmbeddingError, EmbeddingTable, BUNDLED_EMBEDDINGS};
pub use matcher::{MatchConfig, MatchResult, MatchTier, NodeMatcher};
