use serde::{Deserialize, Serialize};

use super::embedding::EmbeddingTable;
use crate::nlu::{lemmatize, normalize, split_compound, Lexicon};
use crate::ontology::OntologyGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchTier {
    Exact,
    Lemma,
    Synonym,
    Compound,
    Embedding,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub node_id: String,
    pub tier: MatchTier,
    pub score: f64,
    pub matched_lemma: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchConfig {
    /// Minimum cosine for an embedding match.
    pub tau: f64,
    /// Two embedding matches closer than this are ambiguous.
    pub epsilon: f64,
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self { tau: 0.65, epsilon: 0.05 }
    }
}

#[derive(Debug, Clone)]
struct NodeEntry {
    id: String,
    exact: String,
    lemma: String,
    synonyms: Vec<String>,
    head_forms: Vec<String>,
}

/// Precomputed label forms of every node, for tiered phrase matching.
#[derive(Debug, Clone)]
pub struct NodeMatcher {
    entries: Vec<NodeEntry>,
    config: MatchConfig,
}

fn lemma_key(text: &str, lexicon: &Lexicon) -> String {
    normalize(text, lexicon)
        .split(' ')
        .filter(|w| !w.is_empty())
        .map(|w| lemmatize(w, lexicon))
        .collect::<Vec<_>>()
        .join(" ")
}

fn last_word(text: &str) -> &str {
    text.rsplit(' ').next().unwrap_or(text)
}

impl NodeMatcher {
    pub fn new(graph: &OntologyGraph, lexicon: &Lexicon, config: MatchConfig) -> Self {
        let mut entries = Vec::new();
        let nodes = graph
            .classes()
            .map(|c| (c.id.as_str(), c.label.as_str(), c.synonyms.as_slice()))
            .chain(graph.individuals().map(|i| (i.id.as_str(), i.label.as_str(), &[][..])));
        for (id, label, synonyms) in nodes {
            let exact = normalize(label, lexicon);
            let lemma = lemma_key(label, lexicon);
            let mut syn = Vec::new();
            for s in synonyms {
                for k in [normalize(s, lexicon), lemma_key(s, lexicon)] {
                    if !syn.contains(&k) {
                        syn.push(k);
                    }
                }
            }
            let mut head_forms = vec![last_word(&exact).to_owned()];
            let head_lemma = last_word(&lemma).to_owned();
            if !head_forms.contains(&head_lemma) {
                head_forms.push(head_lemma);
            }
            entries.push(NodeEntry {
                id: id.to_owned(),
                exact,
                lemma,
                synonyms: syn,
                head_forms,
            });
        }
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        Self { entries, config }
    }

    pub fn config(&self) -> MatchConfig {
        self.config
    }

    /// Tiers exact, lemma, synonym, compound head, embedding; the first non-empty tier wins.
    pub fn match_phrase(&self, phrase: &str, lexicon: &Lexicon, table: Option<&EmbeddingTable>) -> Vec<MatchResult> {
        let folded = normalize(phrase, lexicon);
        if folded.is_empty() {
            return Vec::new();
        }
        let lemma = lemma_key(phrase, lexicon);
        let direct = self.symbolic(&folded, &lemma);
        if !direct.is_empty() {
            return direct;
        }

        let head_word = last_word(&folded);
        let parts = split_compound(&lemmatize(head_word, lexicon), lexicon);
        if parts.len() > 1 {
            let head = parts.last().expect("non-empty split");
            let hits: Vec<MatchResult> = self
                .symbolic(head, &lemmatize(head, lexicon))
                .into_iter()
                .map(|r| MatchResult {
                    tier: MatchTier::Compound,
                    matched_lemma: head.clone(),
                    ..r
                })
                .collect();
            if !hits.is_empty() {
                return hits;
            }
        }

        match table {
            Some(table) => self.by_embedding(head_word, lexicon, table, self.config.tau),
            None => Vec::new(),
        }
    }

    fn symbolic(&self, folded: &str, lemma: &str) -> Vec<MatchResult> {
        type Pred<'p> = &'p dyn Fn(&NodeEntry) -> bool;
        let tiers: [(MatchTier, Pred); 3] = [
            (MatchTier::Exact, &|e: &NodeEntry| e.exact == folded),
            (MatchTier::Lemma, &|e: &NodeEntry| e.lemma == lemma),
            (MatchTier::Synonym, &|e: &NodeEntry| {
                e.synonyms.iter().any(|s| s == folded || s == lemma)
            }),
        ];
        for (tier, pred) in tiers {
            let hits: Vec<MatchResult> = self
                .entries
                .iter()
                .filter(|e| pred(e))
                .map(|e| MatchResult {
                    node_id: e.id.clone(),
                    tier,
                    score: 1.0,
                    matched_lemma: lemma.to_owned(),
                })
                .collect();
            if !hits.is_empty() {
                return hits;
            }
        }
        Vec::new()
    }

    /// Embedding tier with an explicit threshold.
    pub fn by_embedding(&self, word: &str, lexicon: &Lexicon, table: &EmbeddingTable, tau: f64) -> Vec<MatchResult> {
        let lemma = lemmatize(word, lexicon);
        let Some((query_form, _)) = [word, lemma.as_str()]
            .into_iter()
            .find_map(|w| table.get(w).map(|v| (w, v)))
        else {
            return Vec::new();
        };
        let mut hits: Vec<MatchResult> = self
            .entries
            .iter()
            .filter_map(|e| {
                let best = e
                    .head_forms
                    .iter()
                    .filter_map(|h| table.similarity(query_form, h))
                    .fold(f64::NEG_INFINITY, f64::max);
                (best >= tau).then(|| MatchResult {
                    node_id: e.id.clone(),
                    tier: MatchTier::Embedding,
                    score: best.min(1.0),
                    matched_lemma: query_form.to_owned(),
                })
            })
            .collect();
        hits.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.node_id.cmp(&b.node_id)));
        hits
    }

    /// True when the best two embedding candidates are within epsilon of each other.
    pub fn is_ambiguous(&self, results: &[MatchResult]) -> bool {
        match results {
            [a, b, ..] if a.tier == MatchTier::Embedding => a.score - b.score < self.config.epsilon,
            _ => false,
        }
    }
}
