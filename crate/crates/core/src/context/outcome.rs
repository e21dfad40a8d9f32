use serde::{Deserialize, Serialize};

use crate::nlu::GreetingType;
use crate::ontology::AttributeValue;

/// Which resolution rule produced an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiredRule {
    A,
    B,
    C,
    D,
    Pronoun,
    Implicit,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    AttributeValue,
    YesNo,
    ListOptions,
    ContextSwitch,
    Clarify,
    Composite,
    NoProductPrompt,
    GreetingEcho,
    ChitchatEcho,
    Fallback,
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::AttributeValue => "attribute_value",
            OutcomeKind::YesNo => "yes_no",
            OutcomeKind::ListOptions => "list_options",
            OutcomeKind::ContextSwitch => "context_switch",
            OutcomeKind::Clarify => "clarify",
            OutcomeKind::Composite => "composite",
            OutcomeKind::NoProductPrompt => "no_product_prompt",
            OutcomeKind::GreetingEcho => "greeting_echo",
            OutcomeKind::ChitchatEcho => "chitchat_echo",
            OutcomeKind::Fallback => "fallback",
        }
    }

    /// Greetings, chit-chat and fallbacks carry no domain content.
    pub fn is_filler(self) -> bool {
        matches!(
            self,
            OutcomeKind::GreetingEcho | OutcomeKind::ChitchatEcho | OutcomeKind::Fallback
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClarifyReason {
    Ambiguous,
    NoReferent,
    UnknownAttribute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FallbackReason {
    NotUnderstood,
    AllVisited,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    AttributeValue {
        subject: String,
        property: String,
        /// Node the value is stored on; the subject or one of its ancestors.
        holder: String,
        value: AttributeValue,
    },
    YesNo {
        answer: bool,
        evidence: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        hint: Option<String>,
    },
    ListOptions {
        options: Vec<String>,
    },
    ContextSwitch {
        product: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        individual: Option<String>,
    },
    Clarify {
        reason: ClarifyReason,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        options: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        subject: Option<String>,
    },
    Composite {
        parts: Vec<ResolutionOutcome>,
    },
    NoProductPrompt {
        options: Vec<String>,
    },
    GreetingEcho {
        gtype: Option<GreetingType>,
    },
    ChitchatEcho,
    Fallback {
        reason: FallbackReason,
    },
}

impl Payload {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            Payload::AttributeValue { .. } => OutcomeKind::AttributeValue,
            Payload::YesNo { .. } => OutcomeKind::YesNo,
            Payload::ListOptions { .. } => OutcomeKind::ListOptions,
            Payload::ContextSwitch { .. } => OutcomeKind::ContextSwitch,
            Payload::Clarify { .. } => OutcomeKind::Clarify,
            Payload::Composite { .. } => OutcomeKind::Composite,
            Payload::NoProductPrompt { .. } => OutcomeKind::NoProductPrompt,
            Payload::GreetingEcho { .. } => OutcomeKind::GreetingEcho,
            Payload::ChitchatEcho => OutcomeKind::ChitchatEcho,
            Payload::Fallback { .. } => OutcomeKind::Fallback,
        }
    }
}

/// A follow-up offered after the answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Suggestion {
    Attribute { node: String, property: String },
    Product { node: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolutionOutcome {
    #[serde(flatten)]
    pub payload: Payload,
    pub fired_rule: FiredRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggestion: Option<Suggestion>,
}

impl ResolutionOutcome {
    pub fn new(payload: Payload, fired_rule: FiredRule) -> Self {
        Self {
            payload,
            fired_rule,
            suggestion: None,
        }
    }

    pub fn kind(&self) -> OutcomeKind {
        self.payload.kind()
    }

    /// Wraps several outcomes; a single outcome is returned unchanged.
    /// The composite takes the rule of its first part.
    pub fn combine(mut parts: Vec<ResolutionOutcome>) -> Option<Self> {
        match parts.len() {
            0 => None,
            1 => parts.pop(),
            _ => {
                let rule = parts[0].fired_rule;
                Some(Self::new(Payload::Composite { parts }, rule))
            }
        }
    }

    /// Sub-outcomes of a composite, or the outcome itself.
    pub fn parts(&self) -> Vec<&ResolutionOutcome> {
        match &self.payload {
            Payload::Composite { parts } => parts.iter().flat_map(|p| p.parts()).collect(),
            _ => vec![self],
        }
    }

    pub fn has_attribute_value(&self) -> bool {
        self.parts().iter().any(|p| p.kind() == OutcomeKind::AttributeValue)
    }

    /// Options offered by any list-like part.
    pub fn offered(&self) -> Vec<&str> {
        self.parts()
            .iter()
            .flat_map(|p| match &p.payload {
                Payload::ListOptions { options } | Payload::NoProductPrompt { options } => {
                    options.iter().map(String::as_str).collect()
                }
                _ => Vec::new(),
            })
            .collect()
    }
}
