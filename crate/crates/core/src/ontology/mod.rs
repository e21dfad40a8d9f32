//! Domain ontology: document schema, validated graph, traversal and metrics.
//!
//! The graph is built once from a JSON document and never mutated afterwards,
//! so a single instance can be shared between sessions.

mod error;
mod graph;
mod metrics;
mod model;

pub use error::{OntologyError, ValidationIssue};
pub use graph::{parse_document, AttributeHit, LabelNormalizer, Lowercase, OntologyGraph};
pub use metrics::{graph_metrics, GraphMetrics};
pub use model::*;

pub const BUNDLED_ONTOLOGY: &str = include_str!("../../data/ontology.json");

#[cfg(test)]
mod tests;
