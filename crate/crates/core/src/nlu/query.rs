use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::annotate::*;
use super::lexicon::{GreetingType, Lexicon, PosTag};
use super::text::segment;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NluError {
    #[error("empty message")]
    EmptyMessage,
}

/// Semantic and syntactic parse of one user sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryObject {
    pub sentence: String,
    pub sentence_type: SentenceType,
    pub type_attr: TypeAttr,
    pub qtype: Option<QuestionType>,
    pub qword: Option<String>,
    pub agent: Option<Agent>,
    pub intents: Vec<String>,
    pub kphrases: Vec<String>,
    pub noun_phrases: Vec<String>,
    pub verb_phrases: Vec<String>,
    pub pos_tags: String,
    pub length: usize,
    pub is_uninformative: bool,
    pub gtype: Option<GreetingType>,
    pub tokens: Vec<Token>,
}

impl QueryObject {
    pub fn is_small_talk(&self) -> bool {
        matches!(self.sentence_type, SentenceType::Greeting | SentenceType::Chitchat)
    }

    pub fn has_demonstrative(&self) -> bool {
        self.tokens
            .iter()
            .any(|t| t.pos == PosTag::PronounDemonstrative)
    }

    pub fn noun_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.pos == PosTag::Noun)
    }

    /// Lemmas of full verbs, in sentence order.
    pub fn main_verbs(&self) -> impl Iterator<Item = &str> {
        self.tokens
            .iter()
            .filter(|t| t.pos == PosTag::Verb)
            .map(|t| t.lemma.as_str())
    }
}

/// Ranking and matching services consulted while building a query.
pub trait QueryAnalyzer {
    fn rank_keyphrases(&self, candidates: &[String]) -> Vec<String>;
    fn classify_intents(&self, sentence: &str) -> Vec<String>;
    fn is_matchable(&self, noun_phrase: &str) -> bool;
}

/// An analyzer that ranks nothing and matches nothing.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoAnalysis;

impl QueryAnalyzer for NoAnalysis {
    fn rank_keyphrases(&self, _: &[String]) -> Vec<String> {
        Vec::new()
    }

    fn classify_intents(&self, _: &str) -> Vec<String> {
        Vec::new()
    }

    fn is_matchable(&self, _: &str) -> bool {
        false
    }
}

/// Parses one sentence without segmentation.
pub fn parse_sentence(sentence: &str, lexicon: &Lexicon, analyzer: &dyn QueryAnalyzer) -> QueryObject {
    let tokens = annotate(sentence, lexicon);
    let length = tokens.iter().filter(|t| t.is_word()).count();
    let class = classify_sentence(&tokens, lexicon);
    let phrases = extract_phrases(&tokens);
    let small_talk = matches!(class.sentence_type, SentenceType::Greeting | SentenceType::Chitchat);
    let (kphrases, intents) = if small_talk {
        (Vec::new(), Vec::new())
    } else {
        (
            analyzer.rank_keyphrases(&phrases.candidates),
            analyzer.classify_intents(sentence),
        )
    };
    let is_uninformative = small_talk
        || (kphrases.is_empty() && !phrases.noun_phrases.iter().any(|np| analyzer.is_matchable(np)));
    QueryObject {
        sentence: sentence.to_owned(),
        sentence_type: class.sentence_type,
        type_attr: class.type_attr,
        qtype: class.qtype,
        qword: class.qword,
        agent: class.agent,
        intents,
        kphrases: if is_uninformative { Vec::new() } else { kphrases },
        noun_phrases: phrases.noun_phrases,
        verb_phrases: phrases.verb_phrases,
        pos_tags: pos_string(&tokens),
        length,
        is_uninformative,
        gtype: class.gtype,
        tokens,
    }
}

/// One query object per sentence of the message.
pub fn build_query(
    text: &str,
    lexicon: &Lexicon,
    analyzer: &dyn QueryAnalyzer,
) -> Result<Vec<QueryObject>, NluError> {
    let sentences = segment(text);
    if sentences.is_empty() {
        return Err(NluError::EmptyMessage);
    }
    Ok(sentences
        .iter()
        .map(|s| parse_sentence(s, lexicon, analyzer))
        .collect())
}
