use super::*;
use crate::nlu::Lexicon;

fn terms(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_owned).collect()
}

/// Direct BM25: recount df, lengths and tf from scratch for each query.
fn reference_score(docs: &[Vec<String>], query: &[String], k1: f64, b: f64) -> f64 {
    let n = docs.len() as f64;
    let avg = docs.iter().map(Vec::len).sum::<usize>() as f64 / n;
    let mut q: Vec<&String> = query.iter().collect();
    q.sort();
    q.dedup();
    let mut best = 0.0f64;
    for d in docs {
        let mut s = 0.0;
        for t in &q {
            let df = docs.iter().filter(|x| x.contains(t)).count() as f64;
            let idf = ((n - df + 0.5) / (df + 0.5) + 1.0).ln();
            let tf = d.iter().filter(|x| x == t).count() as f64;
            if tf > 0.0 {
                s += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * d.len() as f64 / avg));
            }
        }
        best = best.max(s);
    }
    best
}

#[test]
fn bundled_corpus_parses() {
    let c = Corpus::bundled();
    assert_eq!(c.entries.len(), 20);
    assert_eq!(c.labels().len(), 20);
    assert_eq!(c.product_for("finance_house_construction"), Some("Hypothek"));
    assert_eq!(c.product_for("send_document"), None);
    let first = &c.entries[0];
    assert_eq!(first.intent_label, "increase_credit");
    assert!(first.gold_keyphrases.contains(&"Krediterhöhung".to_owned()));
}

#[test]
fn corpus_block_without_intent_is_rejected() {
    let err = Corpus::parse("Frage?\nkeyphrases: a\n").unwrap_err();
    assert!(matches!(err, RankingError::Corpus { .. }));
}

#[test]
fn idf_edge_cases() {
    let m = Bm25Model::from_documents(vec![terms("kredit")], Bm25Params::default()).unwrap();
    // N = 1, df = 1: (1 - 1 + 0.5) / (1 + 0.5) + 1
    assert!((m.idf("kredit") - (0.5f64 / 1.5 + 1.0).ln()).abs() < 1e-12);
    assert!((m.idf("absent") - (1.5f64 / 0.5 + 1.0).ln()).abs() < 1e-12);
    assert_eq!(
        Bm25Model::from_documents(vec![], Bm25Params::default()).unwrap_err(),
        RankingError::EmptyCorpus
    );
}

#[test]
fn bundled_idf_table_matches_recount() {
    let lex = Lexicon::bundled();
    let corpus = Corpus::bundled();
    let m = train_bm25(&corpus, &lex, Bm25Params::default()).unwrap();
    let docs: Vec<BTreeSetOf> = corpus
        .entries
        .iter()
        .map(|e| {
            let mut text = vec![e.canonical_question.clone()];
            text.extend(e.paraphrases.clone());
            text.extend(e.gold_keyphrases.clone());
            text.iter().flat_map(|t| analyze(t, &lex)).collect()
        })
        .collect();
    let n = docs.len() as f64;
    for term in m.terms() {
        let df = docs.iter().filter(|d| d.contains(term)).count() as f64;
        let expected = ((n - df + 0.5) / (df + 0.5) + 1.0).ln();
        assert!((m.idf(term) - expected).abs() < 1e-12, "{term}");
    }
}

type BTreeSetOf = std::collections::BTreeSet<String>;

#[test]
fn ranks_corpus_keyphrase_and_drops_unknown() {
    let lex = Lexicon::bundled();
    let m = train_bm25(&Corpus::bundled(), &lex, Bm25Params::default()).unwrap();
    let ranked = m.rank_keyphrases(&["hallo".into(), "kredit erhöhen".into()], &lex);
    assert_eq!(ranked.len(), 1);
    assert_eq!(ranked[0].0, "kredit erhöhen");
    assert!(m.rank_keyphrases(&[], &lex).is_empty());
}

#[test]
fn rank_keeps_top_five_in_order() {
    let docs = vec![terms("a b c d e f g"), terms("a a b")];
    let m = Bm25Model::from_documents(docs, Bm25Params::default()).unwrap();
    let cands: Vec<(String, Vec<String>)> = ["a", "b", "c", "d", "e", "f", "g", "z"]
        .iter()
        .map(|t| (t.to_string(), terms(t)))
        .collect();
    let ranked = m.rank(&cands);
    assert_eq!(ranked.len(), 5);
    for w in ranked.windows(2) {
        assert!(w[0].1 > w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0));
    }
}

#[test]
fn intent_for_document_request() {
    let lex = Lexicon::bundled();
    let model = train_intents(&Corpus::bundled(), &lex, IntentParams::default()).unwrap();
    let got = model.classify("Können Sie mir Unterlagen zukommen lassen?", &lex, 0.3);
    assert_eq!(got[0].label, "send_document");
}

#[test]
fn intent_for_house_construction_maps_to_mortgage() {
    let lex = Lexicon::bundled();
    let corpus = Corpus::bundled();
    let model = train_intents(&corpus, &lex, IntentParams::default()).unwrap();
    let got = model.classify("Ich möchte meinen Hausbau finanzieren.", &lex, 0.3);
    assert_eq!(corpus.product_for(&got[0].label), Some("Hypothek"));
}

#[test]
fn empty_text_has_no_confident_intent() {
    let lex = Lexicon::bundled();
    let model = train_intents(&Corpus::bundled(), &lex, IntentParams::default()).unwrap();
    assert!(model.classify("", &lex, 0.3).is_empty());
}

#[test]
fn single_label_corpus_is_rejected() {
    let lex = Lexicon::bundled();
    let err = IntentModel::train(
        &[("a".into(), "x".into()), ("b".into(), "x".into())],
        &lex,
        IntentParams::default(),
    )
    .unwrap_err();
    assert_eq!(err, RankingError::SingleLabel("x".into()));
}

#[test]
fn training_is_deterministic() {
    let lex = Lexicon::bundled();
    let a = train_intents(&Corpus::bundled(), &lex, IntentParams::default()).unwrap();
    let b = train_intents(&Corpus::bundled(), &lex, IntentParams::default()).unwrap();
    assert_eq!(a.weights(), b.weights());
}

#[test]
fn confidences_sum_to_one() {
    let lex = Lexicon::bundled();
    let model = train_intents(&Corpus::bundled(), &lex, IntentParams::default()).unwrap();
    for text in ["Wo ist der nächste Geldautomat?", "xyz", "Kredit"] {
        let sum: f64 = model.distribution(text, &lex).iter().map(|s| s.confidence).sum();
        assert!((1.0 - 1e-9..=1.0 + 1e-9).contains(&sum));
    }
}

mod props {
    use proptest::prelude::*;

    use super::*;

    fn doc_strategy() -> impl Strategy<Value = Vec<String>> {
        proptest::collection::vec("[a-f]", 1..12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn scores_match_reference(
            docs in proptest::collection::vec(doc_strategy(), 1..8),
            query in proptest::collection::vec("[a-h]", 1..5),
        ) {
            let m = Bm25Model::from_documents(docs.clone(), Bm25Params::default()).unwrap();
            let got = m.score(&query);
            let want = reference_score(&docs, &query, 1.5, 0.75);
            prop_assert!((got - want).abs() < 1e-9, "{} vs {}", got, want);
        }

        #[test]
        fn ranking_is_deterministic_subset(
            docs in proptest::collection::vec(doc_strategy(), 1..6),
            cands in proptest::collection::vec("[a-h]( [a-h]){0,2}", 0..8),
        ) {
            let m = Bm25Model::from_documents(docs, Bm25Params::default()).unwrap();
            let input: Vec<(String, Vec<String>)> = cands.iter().map(|c| (c.clone(), terms(c))).collect();
            let a = m.rank(&input);
            let b = m.rank(&input);
            prop_assert_eq!(&a, &b);
            prop_assert!(a.len() <= 5);
            for (text, score) in &a {
                prop_assert!(cands.contains(text));
                prop_assert!(*score > 0.0);
            }
        }
    }
}
