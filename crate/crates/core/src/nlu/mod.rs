//! German text analysis: normalization, tokenization, lemmatization,
//! compound splitting, sentence typing and phrase extraction.
//!
//! Everything is driven by a [`Lexicon`]; no statistical tagger is involved.

mod annotate;
mod lexicon;
mod morph;
mod query;
mod text;

pub use annotate::{
    annotate, classify_sentence, extract_phrases, Agent, Classification, Phrases, QuestionType,
    SentenceType, Token, TypeAttr,
};
pub use lexicon::{
    GreetingType, Lexicon, LexiconError, PosTag, PronounKind, SeparableVerb, BUNDLED_LEXICON,
};
pub use morph::{fallback_lemma, lemmatize, reassembles, split_compound};
pub use query::{build_query, parse_sentence, NluError, NoAnalysis, QueryAnalyzer, QueryObject};
pub use text::{normalize, normalize_word, segment, tokenize};
