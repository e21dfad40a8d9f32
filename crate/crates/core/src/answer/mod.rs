//! Template-based answer generation.

mod generate;
mod template;

use thiserror::Error;

pub use generate::{compose, enumerate, AnswerEnvelope, AnswerGenerator, LAST_RESORT};
pub use template::{fill, slots, TemplateSet, BUNDLED_TEMPLATES, KINDS, SLOTS};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnswerError {
    #[error("templates line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("templates line {line}: unknown kind `{kind}`")]
    UnknownKind { line: usize, kind: String },
    #[error("templates line {line}: unknown slot `{{{slot}}}`")]
    UnknownSlot { line: usize, slot: String },
    #[error("no fillable template for `{0}`")]
    NoTemplate(String),
    #[error("nothing to compose")]
    EmptyComposition,
}
