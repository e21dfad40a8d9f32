use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Corpus, RankingError};
use crate::nlu::{lemmatize, normalize_word, tokenize, Lexicon};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
    /// Maximum number of ranked candidates kept.
    pub top_k: usize,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self {
            k1: 1.5,
            b: 0.75,
            top_k: 5,
        }
    }
}

/// Okapi BM25 over a fixed document collection.
#[derive(Debug, Clone)]
pub struct Bm25Model {
    doc_term_freqs: Vec<HashMap<String, usize>>,
    doc_lengths: Vec<usize>,
    avg_doc_length: f64,
    doc_freqs: HashMap<String, usize>,
    params: Bm25Params,
}

/// Lemmas of the word tokens of `text`.
pub fn analyze(text: &str, lexicon: &Lexicon) -> Vec<String> {
    tokenize(text)
        .iter()
        .filter(|t| t.chars().any(char::is_alphanumeric))
        .map(|t| lemmatize(&normalize_word(t, lexicon), lexicon))
        .collect()
}

/// One document per entry: canonical question, paraphrases and gold keyphrases.
pub fn train_bm25(corpus: &Corpus, lexicon: &Lexicon, params: Bm25Params) -> Result<Bm25Model, RankingError> {
    let docs = corpus
        .entries
        .iter()
        .map(|e| {
            e.questions()
                .chain(e.gold_keyphrases.iter().map(String::as_str))
                .flat_map(|t| analyze(t, lexicon))
                .collect()
        })
        .collect();
    Bm25Model::from_documents(docs, params)
}

impl Bm25Model {
    pub fn from_documents(docs: Vec<Vec<String>>, params: Bm25Params) -> Result<Self, RankingError> {
        if docs.is_empty() {
            return Err(RankingError::EmptyCorpus);
        }
        let mut doc_term_freqs = Vec::with_capacity(docs.len());
        let mut doc_lengths = Vec::with_capacity(docs.len());
        let mut doc_freqs: HashMap<String, usize> = HashMap::new();
        for doc in docs {
            let mut tf: HashMap<String, usize> = HashMap::new();
            for term in &doc {
                *tf.entry(term.clone()).or_default() += 1;
            }
            for term in tf.keys() {
                *doc_freqs.entry(term.clone()).or_default() += 1;
            }
            doc_lengths.push(doc.len());
            doc_term_freqs.push(tf);
        }
        let total: usize = doc_lengths.iter().sum();
        let avg_doc_length = (total as f64 / doc_lengths.len() as f64).max(f64::MIN_POSITIVE);
        Ok(Self {
            doc_term_freqs,
            doc_lengths,
            avg_doc_length,
            doc_freqs,
            params,
        })
    }

    pub fn num_docs(&self) -> usize {
        self.doc_lengths.len()
    }

    pub fn avg_doc_length(&self) -> f64 {
        self.avg_doc_length
    }

    pub fn params(&self) -> Bm25Params {
        self.params
    }

    pub fn idf(&self, term: &str) -> f64 {
        let n = self.num_docs() as f64;
        let df = self.doc_freqs.get(term).copied().unwrap_or(0) as f64;
        ((n - df + 0.5) / (df + 0.5) + 1.0).ln()
    }

    /// Vocabulary in sorted order.
    pub fn terms(&self) -> Vec<&str> {
        let mut t: Vec<&str> = self.doc_freqs.keys().map(String::as_str).collect();
        t.sort_unstable();
        t
    }

    pub fn score_doc(&self, terms: &[String], doc: usize) -> f64 {
        let Bm25Params { k1, b, .. } = self.params;
        let tf_map = &self.doc_term_freqs[doc];
        let norm = k1 * (1.0 - b + b * self.doc_lengths[doc] as f64 / self.avg_doc_length);
        let unique: BTreeSet<&String> = terms.iter().collect();
        unique
            .into_iter()
            .map(|t| {
                let tf = tf_map.get(t).copied().unwrap_or(0) as f64;
                if tf == 0.0 {
                    0.0
                } else {
                    self.idf(t) * tf * (k1 + 1.0) / (tf + norm)
                }
            })
            .sum()
    }

    /// Best score of `terms` over all documents.
    pub fn score(&self, terms: &[String]) -> f64 {
        (0..self.num_docs())
            .map(|d| self.score_doc(terms, d))
            .fold(0.0, f64::max)
    }

    /// Scores, filters (score > 0), orders (descending, ties by text) and truncates.
    pub fn rank(&self, candidates: &[(String, Vec<String>)]) -> Vec<(String, f64)> {
        let mut scored: Vec<(String, f64)> = candidates
            .iter()
            .map(|(text, terms)| (text.clone(), self.score(terms)))
            .filter(|(_, s)| *s > 0.0)
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        scored.dedup_by(|a, b| a.0 == b.0);
        scored.truncate(self.params.top_k);
        scored
    }

    pub fn rank_keyphrases(&self, candidates: &[String], lexicon: &Lexicon) -> Vec<(String, f64)> {
        let analyzed: Vec<(String, Vec<String>)> = candidates
            .iter()
            .map(|c| (c.clone(), analyze(c, lexicon)))
            .collect();
        self.rank(&analyzed)
    }
}
