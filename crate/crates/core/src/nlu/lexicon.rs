use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ontology::{LabelNormalizer, OntologyDocument};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("lexicon line {line}: record before any section header")]
    NoSection { line: usize },
    #[error("lexicon line {line}: unknown section `{name}`")]
    UnknownSection { line: usize, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PosTag {
    Noun,
    Verb,
    Auxiliary,
    PronounDemonstrative,
    PronounInterrogative,
    PronounPersonal,
    Determiner,
    Adjective,
    Preposition,
    Number,
    Punct,
    Other,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "noun",
            PosTag::Verb => "verb",
            PosTag::Auxiliary => "auxiliary",
            PosTag::PronounDemonstrative => "pronoun-demonstrative",
            PosTag::PronounInterrogative => "pronoun-interrogative",
            PosTag::PronounPersonal => "pronoun-personal",
            PosTag::Determiner => "determiner",
            PosTag::Adjective => "adjective",
            PosTag::Preposition => "preposition",
            PosTag::Number => "number",
            PosTag::Punct => "punct",
            PosTag::Other => "other",
        }
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, PosTag::Verb | PosTag::Auxiliary)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "noun" => PosTag::Noun,
            "verb" => PosTag::Verb,
            "auxiliary" => PosTag::Auxiliary,
            "pronoun-demonstrative" => PosTag::PronounDemonstrative,
            "pronoun-interrogative" => PosTag::PronounInterrogative,
            "pronoun-personal" => PosTag::PronounPersonal,
            "determiner" => PosTag::Determiner,
            "adjective" => PosTag::Adjective,
            "preposition" => PosTag::Preposition,
            "number" => PosTag::Number,
            "other" => PosTag::Other,
            other => return Err(format!("unknown tag `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PronounKind {
    Demonstrative,
    Interrogative,
    Personal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GreetingType {
    Opening,
    Closing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparableVerb {
    pub stem: String,
    pub particle: String,
    pub lemma: String,
}

/// Lookup tables driving every NLU step.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    lemmas: HashMap<String, String>,
    pos: HashMap<String, PosTag>,
    heads: BTreeSet<String>,
    pronouns: HashMap<String, PronounKind>,
    question_words: HashSet<String>,
    greetings: Vec<(Vec<String>, GreetingType)>,
    chitchat: Vec<Vec<String>>,
    action_verbs: HashSet<String>,
    separable: Vec<SeparableVerb>,
    umlauts: Vec<(char, char)>,
    linking: Vec<String>,
    known: HashSet<String>,
}

pub const BUNDLED_LEXICON: &str = include_str!("../../data/lexicon.tsv");

#[derive(Clone, Copy)]
enum Section {
    Lemma,
    Pos,
    Heads,
    Pronouns,
    Qwords,
    Greetings,
    Chitchat,
    ActionVerbs,
    Separable,
    Umlauts,
    Linking,
}

impl Lexicon {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_LEXICON).expect("bundled lexicon is well-formed")
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::default();
        let mut section = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with("//") {
                continue;
            }
            if let Some(name) = trimmed.strip_prefix('#') {
                section = Some(match name {
                    "lemma" => Section::Lemma,
                    "pos" => Section::Pos,
                    "heads" => Section::Heads,
                    "pronouns" => Section::Pronouns,
                    "qwords" => Section::Qwords,
                    "greetings" => Section::Greetings,
                    "chitchat" => Section::Chitchat,
                    "actionverbs" => Section::ActionVerbs,
                    "separable" => Section::Separable,
                    "umlauts" => Section::Umlauts,
                    "linking" => Section::Linking,
                    other => {
                        return Err(LexiconError::UnknownSection {
                            line,
                            name: other.to_owned(),
                        })
                    }
                });
                continue;
            }
            let Some(section) = section else {
                return Err(LexiconError::NoSection { line });
            };
            let fields: Vec<String> = trimmed.split('\t').map(|f| f.trim().to_lowercase()).collect();
            let syntax = |message: &str| LexiconError::Syntax {
                line,
                message: message.to_owned(),
            };
            match section {
                Section::Lemma => {
                    let [surface, lemma] = two(&fields).ok_or_else(|| syntax("expected surface<TAB>lemma"))?;
                    lex.lemmas.insert(surface, lemma);
                }
                Section::Pos => {
                    let [lemma, tag] = two(&fields).ok_or_else(|| syntax("expected lemma<TAB>tag"))?;
                    let tag = tag.parse::<PosTag>().map_err(|m| syntax(&m))?;
                    lex.pos.insert(lemma, tag);
                }
                Section::Heads => {
                    lex.heads.insert(one(&fields).ok_or_else(|| syntax("expected one head noun"))?);
                }
                Section::Pronouns => {
                    let [surface, kind] = two(&fields).ok_or_else(|| syntax("expected surface<TAB>kind"))?;
                    let kind = match kind.as_str() {
                        "demonstrative" => PronounKind::Demonstrative,
                        "interrogative" => PronounKind::Interrogative,
                        "personal" => PronounKind::Personal,
                        _ => return Err(syntax("pronoun kind must be demonstrative, interrogative or personal")),
                    };
                    lex.pronouns.insert(surface, kind);
                }
                Section::Qwords => {
                    lex.question_words
                        .insert(one(&fields).ok_or_else(|| syntax("expected one question word"))?);
                }
                Section::Greetings => {
                    let (phrase, gtype) = match fields.as_slice() {
                        [p] => (p, GreetingType::Opening),
                        [p, g] if g == "opening" => (p, GreetingType::Opening),
                        [p, g] if g == "closing" => (p, GreetingType::Closing),
                        _ => return Err(syntax("expected phrase[<TAB>opening|closing]")),
                    };
                    lex.greetings.push((words(phrase), gtype));
                }
                Section::Chitchat => {
                    lex.chitchat.push(words(&one(&fields).ok_or_else(|| syntax("expected one phrase"))?));
                }
                Section::ActionVerbs => {
                    lex.action_verbs
                        .insert(one(&fields).ok_or_else(|| syntax("expected one verb lemma"))?);
                }
                Section::Separable => match fields.as_slice() {
                    [stem, particle, lemma] => lex.separable.push(SeparableVerb {
                        stem: stem.clone(),
                        particle: particle.clone(),
                        lemma: lemma.clone(),
                    }),
                    _ => return Err(syntax("expected stem<TAB>particle<TAB>lemma")),
                },
                Section::Umlauts => {
                    let [plain, umlaut] = two(&fields).ok_or_else(|| syntax("expected plain<TAB>umlaut"))?;
                    match (single_char(&plain), single_char(&umlaut)) {
                        (Some(p), Some(u)) => lex.umlauts.push((p, u)),
                        _ => return Err(syntax("umlaut entries are single characters")),
                    }
                }
                Section::Linking => {
                    lex.linking.push(one(&fields).ok_or_else(|| syntax("expected one linking element"))?);
                }
            }
        }
        if !lex.linking.iter().any(String::is_empty) {
            lex.linking.push(String::new());
        }
        lex.rebuild_known();
        Ok(lex)
    }

    fn rebuild_known(&mut self) {
        let mut known: HashSet<String> = HashSet::new();
        known.extend(self.lemmas.keys().cloned());
        known.extend(self.lemmas.values().cloned());
        known.extend(self.pos.keys().cloned());
        known.extend(self.heads.iter().cloned());
        known.extend(self.pronouns.keys().cloned());
        known.extend(self.question_words.iter().cloned());
        known.extend(self.action_verbs.iter().cloned());
        for (phrase, _) in &self.greetings {
            known.extend(phrase.iter().cloned());
        }
        for phrase in &self.chitchat {
            known.extend(phrase.iter().cloned());
        }
        for s in &self.separable {
            known.insert(s.stem.clone());
            known.insert(s.particle.clone());
            known.insert(s.lemma.clone());
        }
        self.known = known;
    }

    /// Registers a domain word (e.g. an ontology label) unless the lexicon already tags it.
    pub fn add_word(&mut self, surface: &str, lemma: &str, tag: PosTag, head: bool) {
        let surface = surface.to_lowercase();
        let lemma = lemma.to_lowercase();
        if surface != lemma {
            self.lemmas.entry(surface.clone()).or_insert_with(|| lemma.clone());
        }
        self.pos.entry(lemma.clone()).or_insert(tag);
        if head && tag == PosTag::Noun && lemma.chars().count() >= 3 {
            self.heads.insert(lemma.clone());
        }
        self.known.insert(surface);
        self.known.insert(lemma);
    }

    /// Registers every word of the ontology's labels and synonyms as a noun
    /// and compound head, and plural forms as inflections of their label.
    /// Words that already carry a tag keep it.
    pub fn learn_labels<'a>(&mut self, doc: &'a OntologyDocument) {
        let mut labels: Vec<&'a str> = Vec::new();
        let or_id = |label: &'a str, id: &'a str| if label.is_empty() { id } else { label };
        for c in &doc.classes {
            labels.push(or_id(&c.label, &c.id));
            labels.extend(c.synonyms.iter().map(String::as_str));
        }
        for i in &doc.individuals {
            labels.push(or_id(&i.label, &i.id));
        }
        for p in &doc.data_properties {
            labels.push(or_id(&p.label, &p.id));
            labels.extend(p.synonyms.iter().map(String::as_str));
        }
        for label in labels {
            for word in label.split_whitespace() {
                let word = super::text::normalize_word(word, self);
                if word.is_empty() || super::text::is_number(&word) {
                    continue;
                }
                let lemma = super::morph::lemmatize(&word, self);
                match self.tag(&lemma) {
                    Some(PosTag::Noun) => self.add_word(&word, &lemma, PosTag::Noun, true),
                    Some(_) => {}
                    None => self.add_word(&word, &word, PosTag::Noun, true),
                }
            }
        }
        for c in &doc.classes {
            if let Some(plural) = &c.plural {
                if !plural.contains(' ') && !c.label.contains(' ') {
                    let label = super::text::normalize_word(&c.label, self);
                    let plural = super::text::normalize_word(plural, self);
                    if self.lemma_entry(&plural).is_none() && self.tag(&plural).is_none() {
                        self.add_word(&plural, &label, PosTag::Noun, false);
                    }
                }
            }
        }
    }

    pub fn lemma_entry(&self, surface: &str) -> Option<&str> {
        self.lemmas.get(surface).map(String::as_str)
    }

    pub fn tag(&self, lemma: &str) -> Option<PosTag> {
        self.pos.get(lemma).copied()
    }

    pub fn is_known(&self, word: &str) -> bool {
        self.known.contains(word)
    }

    pub fn heads(&self) -> &BTreeSet<String> {
        &self.heads
    }

    pub fn is_head(&self, word: &str) -> bool {
        self.heads.contains(word)
    }

    pub fn pronoun_kind(&self, surface: &str) -> Option<PronounKind> {
        self.pronouns.get(surface).copied()
    }

    pub fn is_question_word(&self, surface: &str) -> bool {
        self.question_words.contains(surface)
    }

    pub fn greetings(&self) -> &[(Vec<String>, GreetingType)] {
        &self.greetings
    }

    pub fn chitchat(&self) -> &[Vec<String>] {
        &self.chitchat
    }

    pub fn is_action_verb(&self, lemma: &str) -> bool {
        self.action_verbs.contains(lemma)
    }

    pub fn separable(&self) -> &[SeparableVerb] {
        &self.separable
    }

    pub fn umlauts(&self) -> &[(char, char)] {
        &self.umlauts
    }

    /// Linking elements in trial order, always ending with the empty element.
    pub fn linking(&self) -> &[String] {
        &self.linking
    }

    /// Lemmas tagged as nouns.
    pub fn nouns(&self) -> impl Iterator<Item = &str> {
        self.pos
            .iter()
            .filter(|(_, t)| **t == PosTag::Noun)
            .map(|(l, _)| l.as_str())
    }
}

/// Keys a label under its case-folded form and the lemma of each word.
impl LabelNormalizer for Lexicon {
    fn keys(&self, surface: &str) -> Vec<String> {
        let folded = super::text::normalize(surface, self);
        let lemmas: Vec<String> = folded
            .split(' ')
            .filter(|w| !w.is_empty())
            .map(|w| super::morph::lemmatize(w, self))
            .collect();
        let mut keys = vec![folded];
        let joined = lemmas.join(" ");
        if !keys.contains(&joined) {
            keys.push(joined);
        }
        keys
    }
}

fn one(fields: &[String]) -> Option<String> {
    match fields {
        [a] if !a.is_empty() => Some(a.clone()),
        _ => None,
    }
}

fn two(fields: &[String]) -> Option<[String; 2]> {
    match fields {
        [a, b] if !a.is_empty() && !b.is_empty() => Some([a.clone(), b.clone()]),
        _ => None,
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    let c = chars.next()?;
    chars.next().is_none().then_some(c)
}

fn words(phrase: &str) -> Vec<String> {
    phrase.split_whitespace().map(str::to_owned).collect()
}
