use std::collections::BTreeMap;

use super::AnswerError;

pub const BUNDLED_TEMPLATES: &str = include_str!("../../data/templates.txt");

/// Outcome kinds (plus `suggest`) that templates may be written for.
pub const KINDS: &[&str] = &[
    "attribute_value",
    "yes_no",
    "list_options",
    "context_switch",
    "clarify",
    "no_product_prompt",
    "greeting_echo",
    "chitchat_echo",
    "fallback",
    "suggest",
];

pub const SLOTS: &[&str] = &[
    "value",
    "subject",
    "property",
    "hint",
    "options",
    "options_or",
    "individual",
    "product",
];

/// Answer patterns keyed by `(kind, qualifier)`, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TemplateSet {
    patterns: BTreeMap<(String, String), Vec<String>>,
}

impl TemplateSet {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_TEMPLATES).expect("bundled templates are valid")
    }

    pub fn parse(text: &str) -> Result<Self, AnswerError> {
        let mut patterns: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, pattern) = trimmed.split_once('=').ok_or(AnswerError::Syntax {
                line,
                message: "expected `kind.qualifier = pattern`".into(),
            })?;
            let (kind, qualifier) = key.trim().split_once('.').ok_or(AnswerError::Syntax {
                line,
                message: format!("key `{}` has no qualifier", key.trim()),
            })?;
            if !KINDS.contains(&kind) {
                return Err(AnswerError::UnknownKind {
                    line,
                    kind: kind.to_owned(),
                });
            }
            let pattern = pattern.trim();
            for slot in slots(pattern).map_err(|message| AnswerError::Syntax { line, message })? {
                if !SLOTS.contains(&slot) {
                    return Err(AnswerError::UnknownSlot {
                        line,
                        slot: slot.to_owned(),
                    });
                }
            }
            patterns
                .entry((kind.to_owned(), qualifier.to_owned()))
                .or_default()
                .push(pattern.to_owned());
        }
        Ok(Self { patterns })
    }

    pub fn patterns(&self, kind: &str, qualifier: &str) -> &[String] {
        self.patterns
            .get(&(kind.to_owned(), qualifier.to_owned()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.patterns.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// Slot names referenced by a pattern.
pub fn slots(pattern: &str) -> Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut rest = pattern;
    while let Some(open) = rest.find('{') {
        let after = &rest[open + 1..];
        let close = after.find('}').ok_or_else(|| "unclosed `{`".to_owned())?;
        out.push(&after[..close]);
        rest = &after[close + 1..];
    }
    Ok(out)
}

/// Substitutes every slot; `None` when some slot has no value.
pub fn fill(pattern: &str, values: &BTreeMap<&str, String>) -> Option<String> {
    let mut out = String::with_capacity(pattern.len());
    let mut rest = pattern;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        let close = after.find('}')?;
        out.push_str(values.get(&after[..close])?);
        rest = &after[close + 1..];
    }
    out.push_str(rest);
    Some(out)
}
