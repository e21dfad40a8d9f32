use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Corpus, RankingError};
use crate::nlu::{lemmatize, normalize_word, tokenize, Lexicon};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntentParams {
    pub epochs: usize,
    pub seed: u64,
    pub min_n: usize,
    pub max_n: usize,
}

impl Default for IntentParams {
    fn default() -> Self {
        Self {
            epochs: 10,
            seed: 0x5EED,
            min_n: 3,
            max_n: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntentScore {
    pub label: String,
    pub confidence: f64,
}

/// Averaged multiclass perceptron over character n-grams and lemma unigrams.
#[derive(Debug, Clone, PartialEq)]
pub struct IntentModel {
    labels: Vec<String>,
    weights: BTreeMap<String, Vec<f64>>,
    params: IntentParams,
}

/// Sparse binary features of `text`: `w:<lemma>` plus `c:<n-gram>` over `<lemma>`.
pub fn features(text: &str, lexicon: &Lexicon, params: &IntentParams) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for raw in tokenize(text) {
        if !raw.chars().any(char::is_alphanumeric) {
            continue;
        }
        let lemma = lemmatize(&normalize_word(&raw, lexicon), lexicon);
        let marked: Vec<char> = format!("<{lemma}>").chars().collect();
        for n in params.min_n..=params.max_n {
            for window in marked.windows(n) {
                out.insert(format!("c:{}", window.iter().collect::<String>()));
            }
        }
        out.insert(format!("w:{lemma}"));
    }
    out
}

pub fn train_intents(corpus: &Corpus, lexicon: &Lexicon, params: IntentParams) -> Result<IntentModel, RankingError> {
    IntentModel::train(&corpus.labeled_questions(), lexicon, params)
}

impl IntentModel {
    pub fn train(
        examples: &[(String, String)],
        lexicon: &Lexicon,
        params: IntentParams,
    ) -> Result<Self, RankingError> {
        if examples.is_empty() {
            return Err(RankingError::EmptyCorpus);
        }
        let labels: Vec<String> = examples
            .iter()
            .map(|(_, l)| l.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if labels.len() < 2 {
            return Err(RankingError::SingleLabel(labels[0].clone()));
        }
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let data: Vec<(Vec<String>, usize)> = examples
            .iter()
            .map(|(text, label)| (features(text, lexicon, &params).into_iter().collect(), index[label.as_str()]))
            .collect();

        let k = labels.len();
        let mut weights: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut totals: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut step = 1.0f64;
        for _ in 0..params.epochs {
            order.shuffle(&mut rng);
            for &i in &order {
                let (feats, gold) = &data[i];
                let predicted = argmax(&raw_scores(&weights, feats, k));
                if predicted != *gold {
                    for f in feats {
                        let w = weights.entry(f.clone()).or_insert_with(|| vec![0.0; k]);
                        w[*gold] += 1.0;
                        w[predicted] -= 1.0;
                        let t = totals.entry(f.clone()).or_insert_with(|| vec![0.0; k]);
                        t[*gold] += step;
                        t[predicted] -= step;
                    }
                }
                step += 1.0;
            }
        }
        for (f, w) in weights.iter_mut() {
            if let Some(t) = totals.get(f) {
                for (wi, ti) in w.iter_mut().zip(t) {
                    *wi -= ti / step;
                }
            }
        }
        weights.retain(|_, w| w.iter().any(|x| *x != 0.0));
        Ok(Self { labels, weights, params })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &BTreeMap<String, Vec<f64>> {
        &self.weights
    }

    /// Softmax distribution over every label, best first (ties by label).
    pub fn distribution(&self, text: &str, lexicon: &Lexicon) -> Vec<IntentScore> {
        let feats: Vec<String> = features(text, lexicon, &self.params).into_iter().collect();
        let scores = raw_scores(&self.weights, &feats, self.labels.len());
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
        let sum: f64 = exps.iter().sum();
        let mut out: Vec<IntentScore> = self
            .labels
            .iter()
            .zip(exps)
            .map(|(label, e)| IntentScore {
                label: label.clone(),
                confidence: e / sum,
            })
            .collect();
        out.sort_by(|a, b| b.confidence.total_cmp(&a.confidence).then_with(|| a.label.cmp(&b.label)));
        out
    }

    /// Labels whose confidence reaches `threshold`, best first.
    pub fn classify(&self, text: &str, lexicon: &Lexicon, threshold: f64) -> Vec<IntentScore> {
        self.distribution(text, lexicon)
            .into_iter()
            .filter(|s| s.confidence >= threshold)
            .collect()
    }

    /// Highest-scoring label regardless of confidence.
    pub fn top_label(&self, text: &str, lexicon: &Lexicon) -> &str {
        let best = &self.distribution(text, lexicon)[0].label;
        self.labels.iter().find(|l| *l == best).expect("label from model")
    }
}

fn raw_scores(weights: &BTreeMap<String, Vec<f64>>, feats: &[String], k: usize) -> Vec<f64> {
    let mut scores = vec![0.0; k];
    for f in feats {
        if let Some(w) = weights.get(f) {
            for (s, wi) in scores.iter_mut().zip(w) {
                *s += wi;
            }
        }
    }
    scores
}

fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}
