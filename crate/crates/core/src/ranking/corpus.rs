use serde::Serialize;

use super::RankingError;

pub const BUNDLED_CORPUS: &str = include_str!("../../data/corpus.txt");

/// One annotated question of the synonyms corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynonymEntry {
    pub entry_id: usize,
    pub canonical_question: String,
    pub paraphrases: Vec<String>,
    pub gold_keyphrases: Vec<String>,
    pub intent_label: String,
    /// Product class the intent refers to, if any.
    pub product: Option<String>,
}

impl SynonymEntry {
    /// Canonical question followed by every paraphrase.
    pub fn questions(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.canonical_question.as_str()).chain(self.paraphrases.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Corpus {
    pub entries: Vec<SynonymEntry>,
}

impl Corpus {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_CORPUS).expect("bundled corpus is well-formed")
    }

    /// Blocks are separated by blank lines; lines starting with `//` are ignored.
    pub fn parse(text: &str) -> Result<Self, RankingError> {
        let mut entries = Vec::new();
        let mut block: Vec<(usize, &str)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.starts_with("//") {
                continue;
            }
            if trimmed.is_empty() {
                if !block.is_empty() {
                    entries.push(parse_block(entries.len(), &block)?);
                    block.clear();
                }
                continue;
            }
            block.push((line_no, trimmed));
        }
        if !block.is_empty() {
            entries.push(parse_block(entries.len(), &block)?);
        }
        Ok(Corpus { entries })
    }

    pub fn product_for(&self, intent: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.intent_label == intent)
            .and_then(|e| e.product.as_deref())
    }

    pub fn labels(&self) -> Vec<String> {
        let mut labels: Vec<String> = self.entries.iter().map(|e| e.intent_label.clone()).collect();
        labels.sort();
        labels.dedup();
        labels
    }

    /// (question, intent) pairs used to train the intent classifier.
    pub fn labeled_questions(&self) -> Vec<(String, String)> {
        self.entries
            .iter()
            .flat_map(|e| e.questions().map(move |q| (q.to_owned(), e.intent_label.clone())))
            .collect()
    }
}

fn parse_block(entry_id: usize, block: &[(usize, &str)]) -> Result<SynonymEntry, RankingError> {
    let (first_line, canonical) = block[0];
    let mut intent = None;
    let mut product = None;
    let mut keyphrases = None;
    let mut paraphrases = Vec::new();
    for &(line, text) in &block[1..] {
        if let Some(v) = text.strip_prefix("intent:") {
            intent = Some(v.trim().to_owned());
        } else if let Some(v) = text.strip_prefix("product:") {
            product = Some(v.trim().to_owned());
        } else if let Some(v) = text.strip_prefix("keyphrases:") {
            keyphrases = Some(
                v.split(',')
                    .map(str::trim)
                    .filter(|k| !k.is_empty())
                    .map(str::to_owned)
                    .collect::<Vec<_>>(),
            );
        } else if intent.is_none() {
            return Err(RankingError::Corpus {
                line,
                message: "expected `intent:` after the canonical question".into(),
            });
        } else {
            paraphrases.push(text.to_owned());
        }
    }
    let intent_label = intent
        .filter(|i| !i.is_empty())
        .ok_or_else(|| RankingError::Corpus {
            line: first_line,
            message: "block has no `intent:` line".into(),
        })?;
    Ok(SynonymEntry {
        entry_id,
        canonical_question: canonical.to_owned(),
        paraphrases,
        gold_keyphrases: keyphrases.unwrap_or_default(),
        intent_label,
        product: product.filter(|p| !p.is_empty()),
    })
}
