use serde::{Deserialize, Deserializer, Serialize};

use super::{ChatSession, Engine, ServiceError};
use crate::context::{ContextSnapshot, FiredRule, OutcomeKind};

/// A scripted conversation with optional expectations per turn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Script {
    #[serde(default)]
    pub name: String,
    pub turns: Vec<ScriptTurn>,
}

/// Scripts are written either as a bare array of turns or as a named object.
#[derive(Deserialize)]
#[serde(untagged)]
enum ScriptFile {
    Turns(Vec<ScriptTurn>),
    Named(Script),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptTurn {
    pub user: String,
    #[serde(default)]
    pub expect: Expectation,
}

/// Checks on one turn. Pointer fields distinguish "absent" (not checked)
/// from `null` (must be unset).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default)]
    pub outcome_kind: Option<OutcomeKind>,
    #[serde(default)]
    pub fired_rule: Option<FiredRule>,
    /// Substrings the answer must contain: one string or a list.
    #[serde(default, deserialize_with = "one_or_many")]
    pub answer_contains: Vec<String>,
    #[serde(default, deserialize_with = "present")]
    pub curr_prod: Option<Option<String>>,
    #[serde(default, deserialize_with = "present")]
    pub curr_prod_indiv: Option<Option<String>>,
    #[serde(default, deserialize_with = "present")]
    pub curr_inode: Option<Option<String>>,
    #[serde(default, deserialize_with = "present")]
    pub curr_leaf: Option<Option<String>>,
}

fn one_or_many<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(String),
        Many(Vec<String>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(s) => vec![s],
        OneOrMany::Many(v) => v,
    })
}

fn present<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Option<String>>, D::Error> {
    Option::<String>::deserialize(d).map(Some)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurnReport {
    pub user: String,
    pub answer: String,
    pub kind: OutcomeKind,
    pub fired_rule: FiredRule,
    pub state: ContextSnapshot,
    pub failures: Vec<String>,
}

impl TurnReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayReport {
    pub name: String,
    /// Number of turns; always `pass + fail`.
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub turns: Vec<TurnReport>,
}

impl ReplayReport {
    fn new(name: String, turns: Vec<TurnReport>) -> Self {
        let pass = turns.iter().filter(|t| t.passed()).count();
        Self {
            name,
            total: turns.len(),
            pass,
            fail: turns.len() - pass,
            turns,
        }
    }

    pub fn passed(&self) -> bool {
        self.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = (usize, &str)> {
        self.turns
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.failures.iter().map(move |f| (i + 1, f.as_str())))
    }
}

pub fn parse_script(text: &str) -> Result<Script, ServiceError> {
    match serde_json::from_str(text) {
        Ok(ScriptFile::Turns(turns)) => Ok(Script {
            name: String::new(),
            turns,
        }),
        Ok(ScriptFile::Named(script)) => Ok(script),
        Err(_) => {
            // Report the error of the form the text resembles.
            let err = if text.trim_start().starts_with('[') {
                serde_json::from_str::<Vec<ScriptTurn>>(text).err()
            } else {
                serde_json::from_str::<Script>(text).err()
            };
            Err(ServiceError::Script(err.map_or_else(|| "invalid script".into(), |e| e.to_string())))
        }
    }
}

/// Plays a script in a fresh session and checks every expectation.
pub fn replay_script(engine: &Engine, script: &Script) -> Result<ReplayReport, ServiceError> {
    let mut session = ChatSession::new(format!("replay-{}", script.name));
    let mut turns = Vec::with_capacity(script.turns.len());
    for turn in &script.turns {
        let entry = session.post(engine, &turn.user)?;
        let failures = check(&turn.expect, entry.outcome.kind(), entry.outcome.fired_rule, &entry.answer, &entry.state);
        turns.push(TurnReport {
            user: turn.user.clone(),
            answer: entry.answer.clone(),
            kind: entry.outcome.kind(),
            fired_rule: entry.outcome.fired_rule,
            state: entry.state.clone(),
            failures,
        });
    }
    Ok(ReplayReport::new(script.name.clone(), turns))
}

fn check(
    expect: &Expectation,
    kind: OutcomeKind,
    rule: FiredRule,
    answer: &str,
    ctx: &ContextSnapshot,
) -> Vec<String> {
    let mut failures = Vec::new();
    if let Some(k) = expect.outcome_kind.filter(|k| *k != kind) {
        failures.push(format!("kind {} != expected {}", kind.as_str(), k.as_str()));
    }
    if let Some(r) = expect.fired_rule.filter(|r| *r != rule) {
        failures.push(format!("fired rule {rule:?} != expected {r:?}"));
    }
    for s in &expect.answer_contains {
        if !answer.contains(s.as_str()) {
            failures.push(format!("answer lacks {s:?}"));
        }
    }
    let pointers = [
        ("curr_prod", &expect.curr_prod, &ctx.curr_prod),
        ("curr_prod_indiv", &expect.curr_prod_indiv, &ctx.curr_prod_indiv),
        ("curr_inode", &expect.curr_inode, &ctx.curr_inode),
        ("curr_leaf", &expect.curr_leaf, &ctx.curr_leaf),
    ];
    for (name, want, got) in pointers {
        if let Some(want) = want {
            if want != got {
                failures.push(format!("{name} {got:?} != expected {want:?}"));
            }
        }
    }
    failures
}
