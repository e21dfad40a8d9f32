use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::template::{fill, TemplateSet};
use super::AnswerError;
use crate::context::{ContextSnapshot, Payload, ResolutionOutcome, Suggestion};
use crate::nlu::QuestionType;
use crate::ontology::OntologyGraph;

/// What a client receives for one user message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnswerEnvelope {
    pub answer: String,
    pub outcome: ResolutionOutcome,
    pub state: ContextSnapshot,
}

/// Used when neither the outcome's templates nor `fallback.any` can be filled.
pub const LAST_RESORT: &str = "Das habe ich leider nicht verstanden.";

/// Renders outcomes into German text.
#[derive(Debug, Clone, Copy)]
pub struct AnswerGenerator<'a> {
    pub templates: &'a TemplateSet,
    pub graph: &'a OntologyGraph,
}

impl<'a> AnswerGenerator<'a> {
    /// Text for an outcome, followed by its suggestion if any. Never empty:
    /// a kind without a fillable template renders as `fallback.any`.
    pub fn generate(&self, outcome: &ResolutionOutcome, qtype: Option<QuestionType>) -> String {
        let mut parts = vec![self.render(outcome, qtype).unwrap_or_else(|e| {
            log::warn!("{e}; using fallback");
            self.fallback()
        })];
        if let Some(s) = &outcome.suggestion {
            match self.suggestion(s) {
                Ok(text) => parts.push(text),
                Err(e) => log::warn!("{e}; suggestion dropped"),
            }
        }
        compose(&parts).unwrap_or_else(|_| self.fallback())
    }

    fn fallback(&self) -> String {
        self.pick("fallback", None, None, &BTreeMap::new())
            .ok()
            .filter(|t| !t.trim().is_empty())
            .unwrap_or_else(|| LAST_RESORT.to_owned())
    }

    fn render(&self, outcome: &ResolutionOutcome, qtype: Option<QuestionType>) -> Result<String, AnswerError> {
        let g = self.graph;
        let kind = outcome.kind().as_str();
        let mut values: BTreeMap<&str, String> = BTreeMap::new();
        let specific: Option<String> = match &outcome.payload {
            Payload::Composite { parts } => {
                let texts = parts
                    .iter()
                    .map(|p| self.render(p, qtype))
                    .collect::<Result<Vec<_>, _>>()?;
                return compose(&texts);
            }
            Payload::AttributeValue {
                subject,
                property,
                value,
                ..
            } => {
                values.insert("subject", g.label(subject).to_owned());
                values.insert("property", self.property_label(property));
                values.insert("value", value.to_string());
                Some(property.clone())
            }
            Payload::YesNo { answer, evidence, hint } => {
                values.insert("subject", g.label(evidence).to_owned());
                if let Some(h) = hint {
                    values.insert("hint", h.clone());
                }
                Some(answer.to_string())
            }
            Payload::ListOptions { options } | Payload::NoProductPrompt { options } => {
                let plurals: Vec<String> = options.iter().map(|o| self.plural(o)).collect();
                values.insert("options", enumerate(&plurals, "und"));
                values.insert("options_or", enumerate(&plurals, "oder"));
                None
            }
            Payload::ContextSwitch { product, individual } => {
                values.insert("product", g.label(product).to_owned());
                if let Some(i) = individual {
                    values.insert("individual", g.label(i).to_owned());
                }
                Some(product.clone())
            }
            Payload::Clarify { reason, options, subject } => {
                let labels: Vec<String> = options.iter().map(|o| g.label(o).to_owned()).collect();
                if !labels.is_empty() {
                    values.insert("options", enumerate(&labels, "und"));
                    values.insert("options_or", enumerate(&labels, "oder"));
                }
                if let Some(s) = subject {
                    values.insert("subject", g.label(s).to_owned());
                }
                Some(serde_json::to_value(reason).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default())
            }
            Payload::GreetingEcho { gtype } => gtype
                .and_then(|t| serde_json::to_value(t).ok())
                .and_then(|v| v.as_str().map(str::to_owned)),
            Payload::ChitchatEcho => None,
            Payload::Fallback { reason } => {
                serde_json::to_value(reason).ok().and_then(|v| v.as_str().map(str::to_owned))
            }
        };
        self.pick(kind, specific.as_deref(), qtype, &values)
    }

    fn suggestion(&self, s: &Suggestion) -> Result<String, AnswerError> {
        let mut values = BTreeMap::new();
        let specific = match s {
            Suggestion::Attribute { node, property } => {
                values.insert("subject", self.graph.label(node).to_owned());
                values.insert("property", self.property_label(property));
                property.clone()
            }
            Suggestion::Product { node } => {
                values.insert("product", self.graph.label(node).to_owned());
                "product".to_owned()
            }
        };
        self.pick("suggest", Some(&specific), None, &values)
    }

    /// First fillable pattern, trying `specific.qtype`, `specific`, `qtype`, `any`.
    fn pick(
        &self,
        kind: &str,
        specific: Option<&str>,
        qtype: Option<QuestionType>,
        values: &BTreeMap<&str, String>,
    ) -> Result<String, AnswerError> {
        let qtype = qtype.map(|q| q.as_str());
        let mut qualifiers: Vec<String> = Vec::new();
        if let Some(s) = specific {
            if let Some(q) = qtype {
                qualifiers.push(format!("{s}.{q}"));
            }
            qualifiers.push(s.to_owned());
        }
        if let Some(q) = qtype {
            qualifiers.push(q.to_owned());
        }
        qualifiers.push("any".to_owned());
        qualifiers
            .iter()
            .flat_map(|q| self.templates.patterns(kind, q))
            .find_map(|p| fill(p, values))
            .ok_or_else(|| AnswerError::NoTemplate(kind.to_owned()))
    }

    fn property_label(&self, id: &str) -> String {
        self.graph
            .data_property(id)
            .map(|p| p.label.clone())
            .unwrap_or_else(|| id.to_owned())
    }

    fn plural(&self, id: &str) -> String {
        match self.graph.class(id) {
            Some(c) => c.plural_label().to_owned(),
            None => self.graph.label(id).to_owned(),
        }
    }
}

/// `a`, `a und b`, `a, b und c`.
pub fn enumerate(items: &[String], conjunction: &str) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} {conjunction} {last}", init.join(", ")),
    }
}

/// Joins answer fragments with single spaces.
pub fn compose(parts: &[String]) -> Result<String, AnswerError> {
    let parts: Vec<&str> = parts.iter().map(|p| p.trim()).filter(|p| !p.is_empty()).collect();
    if parts.is_empty() {
        return Err(AnswerError::EmptyComposition);
    }
    Ok(parts.join(" "))
}
