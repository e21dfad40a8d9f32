//! Engine assembly, chat sessions, transcripts, replay and the HTTP API.

mod engine;
mod http;
mod replay;
mod session;

use std::path::PathBuf;

use thiserror::Error;

pub use engine::{Engine, EngineConfig, SourcePaths, Sources, Turn};
pub use http::{router, serve};
pub use replay::{parse_script, replay_script, Expectation, ReplayReport, Script, ScriptTurn, TurnReport};
pub use session::{new_session_id, read_transcript, ChatSession, SessionStore, TranscriptEntry};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("transcript line {line}: {message}")]
    Transcript { line: usize, message: String },
    #[error("invalid script: {0}")]
    Script(String),
    #[error(transparent)]
    Ontology(#[from] crate::ontology::OntologyError),
    #[error(transparent)]
    Lexicon(#[from] crate::nlu::LexiconError),
    #[error(transparent)]
    Ranking(#[from] crate::ranking::RankingError),
    #[error(transparent)]
    Embedding(#[from] crate::matching::EmbeddingError),
    #[error(transparent)]
    Answer(#[from] crate::answer::AnswerError),
    #[error(transparent)]
    Nlu(#[from] crate::nlu::NluError),
    #[error(transparent)]
    Context(#[from] crate::context::ContextError),
}
