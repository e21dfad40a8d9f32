use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, MutexGuard};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{Engine, ServiceError};
use crate::answer::AnswerEnvelope;
use crate::context::{new_context, ContextObject, ContextSnapshot, ResolutionOutcome};
use crate::nlu::QueryObject;

/// One line of a session transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub session_id: String,
    pub message_index: u64,
    /// Milliseconds since the Unix epoch.
    pub timestamp: u64,
    pub user: String,
    #[serde(default)]
    pub queries: Vec<QueryObject>,
    pub answer: String,
    pub outcome: ResolutionOutcome,
    pub state: ContextSnapshot,
}

#[derive(Debug, Clone)]
pub struct ChatSession {
    pub id: String,
    pub context: ContextObject,
    pub turns: Vec<TranscriptEntry>,
    pub created_at: u64,
    pub updated_at: u64,
}

/// Milliseconds since the Unix epoch.
pub fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

impl ChatSession {
    pub fn new(id: impl Into<String>) -> Self {
        let now = now_millis();
        Self {
            id: id.into(),
            context: new_context(),
            turns: Vec::new(),
            created_at: now,
            updated_at: now,
        }
    }

    /// Answers one message. On error the session is left as it was.
    pub fn post(&mut self, engine: &Engine, text: &str) -> Result<&TranscriptEntry, ServiceError> {
        let turn = engine.respond(&self.context, text)?;
        self.context = turn.context;
        self.updated_at = now_millis();
        let AnswerEnvelope { answer, outcome, state } = turn.envelope;
        self.turns.push(TranscriptEntry {
            session_id: self.id.clone(),
            message_index: state.message_index,
            timestamp: self.updated_at,
            user: text.to_owned(),
            queries: turn.queries,
            answer,
            outcome,
            state,
        });
        Ok(self.turns.last().expect("just pushed"))
    }
}

impl TranscriptEntry {
    pub fn envelope(&self) -> AnswerEnvelope {
        AnswerEnvelope {
            answer: self.answer.clone(),
            outcome: self.outcome.clone(),
            state: self.state.clone(),
        }
    }
}

/// 128 random bits as lowercase hex.
pub fn new_session_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

/// Live sessions sharing one engine, optionally persisted as JSONL files.
#[derive(Debug)]
pub struct SessionStore {
    engine: Arc<Engine>,
    sessions: Mutex<HashMap<String, ChatSession>>,
    transcript_dir: Option<PathBuf>,
}

impl SessionStore {
    pub fn new(engine: Arc<Engine>) -> Self {
        Self {
            engine,
            sessions: Mutex::new(HashMap::new()),
            transcript_dir: None,
        }
    }

    /// Appends every turn to `<dir>/<session id>.jsonl`.
    pub fn with_transcripts(engine: Arc<Engine>, dir: impl Into<PathBuf>) -> Result<Self, ServiceError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| ServiceError::Io {
            path: dir.clone(),
            source,
        })?;
        Ok(Self {
            transcript_dir: Some(dir),
            ..Self::new(engine)
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    fn lock(&self) -> MutexGuard<'_, HashMap<String, ChatSession>> {
        self.sessions.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
    }

    pub fn create(&self) -> String {
        let mut sessions = self.lock();
        let id = loop {
            let id = new_session_id();
            if !sessions.contains_key(&id) {
                break id;
            }
        };
        sessions.insert(id.clone(), ChatSession::new(&id));
        log::info!("session {id} created");
        id
    }

    pub fn len(&self) -> usize {
        self.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn post_message(&self, id: &str, text: &str) -> Result<AnswerEnvelope, ServiceError> {
        let mut sessions = self.lock();
        let session = sessions
            .get_mut(id)
            .ok_or_else(|| ServiceError::UnknownSession(id.to_owned()))?;
        let entry = session.post(&self.engine, text)?;
        if let Some(dir) = &self.transcript_dir {
            append_entry(&dir.join(format!("{id}.jsonl")), entry)?;
        }
        Ok(entry.envelope())
    }

    pub fn state(&self, id: &str) -> Result<ContextSnapshot, ServiceError> {
        self.lock()
            .get(id)
            .map(|s| s.context.snapshot())
            .ok_or_else(|| ServiceError::UnknownSession(id.to_owned()))
    }

    pub fn transcript(&self, id: &str) -> Result<Vec<TranscriptEntry>, ServiceError> {
        self.lock()
            .get(id)
            .map(|s| s.turns.clone())
            .ok_or_else(|| ServiceError::UnknownSession(id.to_owned()))
    }

    /// Rebuilds a session by replaying the user messages of a transcript file.
    /// The recorded entries are kept as the session's turns. Returns the session id.
    pub fn restore(&self, path: &Path) -> Result<String, ServiceError> {
        let entries = read_transcript(path)?;
        let id = entries
            .first()
            .map(|e| e.session_id.clone())
            .or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()))
            .unwrap_or_else(new_session_id);
        let mut session = ChatSession::new(&id);
        for recorded in &entries {
            let replayed = session.post(&self.engine, &recorded.user)?;
            if replayed.answer != recorded.answer {
                log::warn!(
                    "session {id} message {}: answer differs from transcript",
                    recorded.message_index
                );
            }
        }
        if let (Some(first), Some(last)) = (entries.first(), entries.last()) {
            session.created_at = first.timestamp;
            session.updated_at = last.timestamp;
        }
        session.turns = entries;
        self.lock().insert(id.clone(), session);
        Ok(id)
    }
}

fn append_entry(path: &Path, entry: &TranscriptEntry) -> Result<(), ServiceError> {
    let io = |source| ServiceError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    let line = serde_json::to_string(entry).expect("transcript entries serialize");
    writeln!(file, "{line}").map_err(io)
}

pub fn read_transcript(path: &Path) -> Result<Vec<TranscriptEntry>, ServiceError> {
    let io = |source| ServiceError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::open(path).map_err(io)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line).map_err(|e| ServiceError::Transcript {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(entry);
    }
    Ok(out)
}
