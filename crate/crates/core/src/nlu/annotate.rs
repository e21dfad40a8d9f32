use serde::{Deserialize, Serialize};

use super::lexicon::{GreetingType, Lexicon, PosTag, PronounKind};
use super::morph::{lemmatize, split_compound};
use super::text::{is_number, is_punct, normalize_word};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    pub lemma: String,
    pub pos: PosTag,
    /// Constituents of the lemma; a single element when it is not a compound.
    pub compound_parts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pronoun: Option<PronounKind>,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.pos != PosTag::Punct
    }

    pub fn head(&self) -> &str {
        self.compound_parts.last().map(String::as_str).unwrap_or(&self.lemma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SentenceType {
    Greeting,
    Chitchat,
    Action,
    Ordinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeAttr {
    Question,
    Statement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionType {
    YesnoQ,
    WhQ,
    Misc,
}

impl QuestionType {
    pub fn as_str(self) -> &'static str {
        match self {
            QuestionType::YesnoQ => "yesno_q",
            QuestionType::WhQ => "wh_q",
            QuestionType::Misc => "misc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Agent {
    #[serde(rename = "1st")]
    First,
    #[serde(rename = "2nd")]
    Second,
    #[serde(rename = "3rd")]
    Third,
    #[serde(rename = "no")]
    No,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub sentence_type: SentenceType,
    pub type_attr: TypeAttr,
    pub qtype: Option<QuestionType>,
    pub qword: Option<String>,
    pub agent: Option<Agent>,
    pub gtype: Option<GreetingType>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Phrases {
    pub noun_phrases: Vec<String>,
    pub verb_phrases: Vec<String>,
    pub candidates: Vec<String>,
}

/// Tokenized, normalized, lemmatized and tagged sentence.
pub fn annotate(sentence: &str, lexicon: &Lexicon) -> Vec<Token> {
    let surfaces = super::text::tokenize(sentence);
    let mut tokens: Vec<Token> = surfaces
        .iter()
        .enumerate()
        .map(|(i, s)| base_token(s, i, lexicon))
        .collect();
    mark_demonstratives(&mut tokens, lexicon);
    join_separable(&mut tokens, lexicon);
    for t in &mut tokens {
        t.compound_parts = if t.pos == PosTag::Noun {
            split_compound(&t.lemma, lexicon)
        } else {
            vec![t.lemma.clone()]
        };
    }
    tokens
}

fn base_token(surface: &str, index: usize, lexicon: &Lexicon) -> Token {
    let normalized = normalize_word(surface, lexicon);
    if is_punct(surface) {
        return token(surface, &normalized, &normalized, PosTag::Punct, None);
    }
    if is_number(surface) {
        return token(surface, &normalized, &normalized, PosTag::Number, None);
    }
    let lemma = lemmatize(&normalized, lexicon);
    let capitalized = surface.chars().next().is_some_and(char::is_uppercase);
    let pos = lexicon
        .tag(&lemma)
        .or_else(|| lexicon.tag(&normalized))
        .unwrap_or(if capitalized && index > 0 {
            PosTag::Noun
        } else {
            PosTag::Other
        });
    let pronoun = lexicon.pronoun_kind(&normalized);
    token(surface, &normalized, &lemma, pos, pronoun)
}

fn token(surface: &str, normalized: &str, lemma: &str, pos: PosTag, pronoun: Option<PronounKind>) -> Token {
    Token {
        surface: surface.to_owned(),
        normalized: normalized.to_owned(),
        lemma: lemma.to_owned(),
        pos,
        compound_parts: vec![lemma.to_owned()],
        pronoun,
    }
}

/// Articles not followed by a nominal are substituting demonstratives ("Was kostet die?").
fn mark_demonstratives(tokens: &mut [Token], lexicon: &Lexicon) {
    for i in 0..tokens.len() {
        if lexicon.pronoun_kind(&tokens[i].normalized) != Some(PronounKind::Demonstrative) {
            continue;
        }
        if !matches!(tokens[i].pos, PosTag::Determiner | PosTag::Other) {
            continue;
        }
        let next = tokens.get(i + 1).map(|t| t.pos);
        let attributive = matches!(next, Some(PosTag::Noun | PosTag::Adjective | PosTag::Number));
        if !attributive {
            tokens[i].pos = PosTag::PronounDemonstrative;
        }
    }
}

/// Joins a separable verb stem with its particle at the end of the clause.
fn join_separable(tokens: &mut [Token], lexicon: &Lexicon) {
    let clause_end = |i: usize, tokens: &[Token]| {
        tokens
            .get(i + 1)
            .is_none_or(|t| t.pos == PosTag::Punct)
    };
    for i in 0..tokens.len() {
        if !tokens[i].pos.is_verbal() {
            continue;
        }
        let Some(sep) = lexicon
            .separable()
            .iter()
            .find(|s| s.stem == tokens[i].lemma)
        else {
            continue;
        };
        let particle = (i + 1..tokens.len())
            .take_while(|&j| tokens[j].normalized != ",")
            .find(|&j| tokens[j].normalized == sep.particle && clause_end(j, tokens));
        if let Some(j) = particle {
            tokens[i].lemma = sep.lemma.clone();
            tokens[i].pos = lexicon.tag(&sep.lemma).unwrap_or(PosTag::Verb);
            tokens[j].pos = PosTag::Other;
        }
    }
}

pub fn pos_string(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| t.pos.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn matches_phrase(words: &[&Token], phrases: &[Vec<String>]) -> bool {
    let surfaces: Vec<&str> = words.iter().map(|t| t.normalized.as_str()).collect();
    let lemmas: Vec<&str> = words.iter().map(|t| t.lemma.as_str()).collect();
    phrases.iter().any(|p| {
        let p: Vec<&str> = p.iter().map(String::as_str).collect();
        p == surfaces || p == lemmas
    })
}

/// Index of the token opening the main clause, skipping a leading
/// verbless fragment such as "Hallo," or "Falls ja,".
fn clause_start(tokens: &[Token]) -> usize {
    let Some(comma) = tokens.iter().take(4).position(|t| t.normalized == ",") else {
        return 0;
    };
    let verbless = tokens[..comma].iter().all(|t| !t.pos.is_verbal());
    if verbless && comma + 1 < tokens.len() {
        comma + 1
    } else {
        0
    }
}

pub fn classify_sentence(tokens: &[Token], lexicon: &Lexicon) -> Classification {
    let words: Vec<&Token> = tokens.iter().filter(|t| t.is_word()).collect();

    let greeting = lexicon
        .greetings()
        .iter()
        .find(|(p, _)| matches_phrase(&words, std::slice::from_ref(p)))
        .map(|(_, g)| *g);
    if let Some(gtype) = greeting {
        return Classification {
            sentence_type: SentenceType::Greeting,
            type_attr: TypeAttr::Statement,
            qtype: None,
            qword: None,
            agent: None,
            gtype: Some(gtype),
        };
    }

    let sentence_type = if matches_phrase(&words, lexicon.chitchat()) {
        SentenceType::Chitchat
    } else if words.iter().any(|t| lexicon.is_action_verb(&t.lemma)) {
        SentenceType::Action
    } else {
        SentenceType::Ordinary
    };

    let start = clause_start(tokens);
    let opener = tokens[start..].iter().find(|t| t.is_word());
    let wh_opener = opener.filter(|t| lexicon.is_question_word(&t.normalized));
    let verb_opener = opener.filter(|t| t.pos.is_verbal());
    let ends_with_q = tokens.last().is_some_and(|t| t.normalized.contains('?'));

    let question = ends_with_q || wh_opener.is_some() || verb_opener.is_some();
    let (type_attr, qtype, qword) = if question {
        let (qtype, qword) = match (wh_opener, verb_opener) {
            (Some(t), _) => (QuestionType::WhQ, Some(t.normalized.clone())),
            (None, Some(t)) => (QuestionType::YesnoQ, Some(t.normalized.clone())),
            _ => (QuestionType::Misc, None),
        };
        (TypeAttr::Question, Some(qtype), qword)
    } else {
        (TypeAttr::Statement, None, None)
    };

    Classification {
        sentence_type,
        type_attr,
        qtype,
        qword,
        agent: Some(detect_agent(&words, type_attr)),
        gtype: None,
    }
}

fn detect_agent(words: &[&Token], type_attr: TypeAttr) -> Agent {
    for t in words {
        match t.normalized.as_str() {
            "ich" | "wir" => return Agent::First,
            "du" | "ihr" if t.pos == PosTag::PronounPersonal => return Agent::Second,
            "du" => return Agent::Second,
            "sie" if t.surface.starts_with('S') => return Agent::Second,
            "sie" | "er" | "es" | "man" => return Agent::Third,
            _ => {}
        }
    }
    if type_attr == TypeAttr::Statement && words.iter().any(|t| t.pos == PosTag::Noun) {
        Agent::Third
    } else {
        Agent::No
    }
}

/// Noun phrases (normalized surfaces of consecutive nouns), verb phrases
/// (lemmas of consecutive full verbs) and keyphrase candidates.
pub fn extract_phrases(tokens: &[Token]) -> Phrases {
    let spans = |pred: &dyn Fn(&Token) -> bool| {
        let mut out: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            if pred(&tokens[i]) {
                let start = i;
                while i < tokens.len() && pred(&tokens[i]) {
                    i += 1;
                }
                out.push((start, i));
            } else {
                i += 1;
            }
        }
        out
    };
    let np_spans = spans(&|t: &Token| t.pos == PosTag::Noun);
    let vp_spans = spans(&|t: &Token| t.pos == PosTag::Verb);
    let text = |(s, e): (usize, usize), lemma: bool| {
        tokens[s..e]
            .iter()
            .map(|t| if lemma { t.lemma.as_str() } else { t.normalized.as_str() })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let noun_phrases: Vec<String> = np_spans.iter().map(|&s| text(s, false)).collect();
    let verb_phrases: Vec<String> = vp_spans.iter().map(|&s| text(s, true)).collect();

    let mut candidates: Vec<String> = Vec::new();
    for np in &noun_phrases {
        if !candidates.contains(np) {
            candidates.push(np.clone());
        }
    }
    for (np_span, np) in np_spans.iter().zip(&noun_phrases) {
        let following = vp_spans
            .iter()
            .position(|vp| vp.0 >= np_span.1)
            .map(|k| &verb_phrases[k]);
        if let Some(vp) = following {
            let joined = format!("{np} {vp}");
            if !candidates.contains(&joined) {
                candidates.push(joined);
            }
        }
    }
    Phrases {
        noun_phrases,
        verb_phrases,
        candidates,
    }
}
