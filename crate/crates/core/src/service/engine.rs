use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ServiceError;
use crate::answer::{AnswerEnvelope, AnswerGenerator, TemplateSet, BUNDLED_TEMPLATES};
use crate::context::{ContextObject, Resolver};
use crate::matching::{EmbeddingTable, MatchConfig, NodeMatcher, BUNDLED_EMBEDDINGS};
use crate::nlu::{build_query, Lexicon, QueryAnalyzer, QueryObject, BUNDLED_LEXICON};
use crate::ontology::{parse_document, OntologyGraph, BUNDLED_ONTOLOGY};
use crate::ranking::{Bm25Model, Bm25Params, Corpus, IntentModel, IntentParams, BUNDLED_CORPUS};

/// Tunable parameters of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    pub matching: MatchConfig,
    pub intent_threshold: f64,
    pub bm25: Bm25Params,
    pub intent: IntentParams,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            matching: MatchConfig::default(),
            intent_threshold: 0.3,
            bm25: Bm25Params::default(),
            intent: IntentParams::default(),
        }
    }
}

/// Raw text of every data file the engine is built from.
#[derive(Debug, Clone)]
pub struct Sources {
    pub ontology: String,
    pub lexicon: String,
    pub corpus: String,
    pub templates: String,
    /// Without embeddings the matcher stops after the compound tier.
    pub embeddings: Option<String>,
}

/// Optional file overrides; `None` selects the bundled data.
#[derive(Debug, Clone, Default)]
pub struct SourcePaths {
    pub ontology: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub templates: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
}

fn read_or(path: Option<&Path>, bundled: &str) -> Result<String, ServiceError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|source| ServiceError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => Ok(bundled.to_owned()),
    }
}

impl Sources {
    pub fn bundled() -> Self {
        Self {
            ontology: BUNDLED_ONTOLOGY.to_owned(),
            lexicon: BUNDLED_LEXICON.to_owned(),
            corpus: BUNDLED_CORPUS.to_owned(),
            templates: BUNDLED_TEMPLATES.to_owned(),
            embeddings: Some(BUNDLED_EMBEDDINGS.to_owned()),
        }
    }

    pub fn load(paths: &SourcePaths) -> Result<Self, ServiceError> {
        Ok(Self {
            ontology: read_or(paths.ontology.as_deref(), BUNDLED_ONTOLOGY)?,
            lexicon: read_or(paths.lexicon.as_deref(), BUNDLED_LEXICON)?,
            corpus: read_or(paths.corpus.as_deref(), BUNDLED_CORPUS)?,
            templates: read_or(paths.templates.as_deref(), BUNDLED_TEMPLATES)?,
            embeddings: Some(read_or(paths.embeddings.as_deref(), BUNDLED_EMBEDDINGS)?),
        })
    }
}

/// One resolved user message.
#[derive(Debug, Clone)]
pub struct Turn {
    pub queries: Vec<QueryObject>,
    pub envelope: AnswerEnvelope,
    pub context: ContextObject,
}

/// Everything needed to answer messages; immutable and shareable across sessions.
#[derive(Debug)]
pub struct Engine {
    config: EngineConfig,
    lexicon: Lexicon,
    graph: OntologyGraph,
    matcher: NodeMatcher,
    embeddings: Option<EmbeddingTable>,
    corpus: Corpus,
    bm25: Bm25Model,
    intents: IntentModel,
    intent_products: BTreeMap<String, String>,
    templates: TemplateSet,
}

impl Engine {
    pub fn bundled() -> Result<Self, ServiceError> {
        Self::build(&Sources::bundled(), EngineConfig::default())
    }

    pub fn build(sources: &Sources, config: EngineConfig) -> Result<Self, ServiceError> {
        let mut lexicon = Lexicon::parse(&sources.lexicon)?;
        let doc = parse_document(&sources.ontology)?;
        lexicon.learn_labels(&doc);
        let graph = OntologyGraph::from_document(doc, &lexicon)?;
        let matcher = NodeMatcher::new(&graph, &lexicon, config.matching);
        let embeddings = sources
            .embeddings
            .as_deref()
            .map(EmbeddingTable::parse)
            .transpose()?;
        let corpus = Corpus::parse(&sources.corpus)?;
        let bm25 = crate::ranking::train_bm25(&corpus, &lexicon, config.bm25)?;
        let intents = crate::ranking::train_intents(&corpus, &lexicon, config.intent)?;
        let intent_products = corpus
            .entries
            .iter()
            .filter_map(|e| Some((e.intent_label.clone(), e.product.clone()?)))
            .filter(|(_, p)| {
                let known = graph.is_offering(p);
                if !known {
                    log::warn!("corpus maps an intent to `{p}`, which is not an offering");
                }
                known
            })
            .collect();
        let templates = TemplateSet::parse(&sources.templates)?;
        log::info!(
            "engine ready: {} nodes, {} corpus entries, {} templates",
            graph.node_count(),
            corpus.entries.len(),
            templates.len()
        );
        Ok(Self {
            config,
            lexicon,
            graph,
            matcher,
            embeddings,
            corpus,
            bm25,
            intents,
            intent_products,
            templates,
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn graph(&self) -> &OntologyGraph {
        &self.graph
    }

    pub fn matcher(&self) -> &NodeMatcher {
        &self.matcher
    }

    pub fn embeddings(&self) -> Option<&EmbeddingTable> {
        self.embeddings.as_ref()
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn bm25(&self) -> &Bm25Model {
        &self.bm25
    }

    pub fn intents(&self) -> &IntentModel {
        &self.intents
    }

    pub fn templates(&self) -> &TemplateSet {
        &self.templates
    }

    pub fn resolver(&self) -> Resolver<'_> {
        Resolver {
            graph: &self.graph,
            lexicon: &self.lexicon,
            matcher: &self.matcher,
            embeddings: self.embeddings.as_ref(),
            intent_products: &self.intent_products,
        }
    }

    pub fn generator(&self) -> AnswerGenerator<'_> {
        AnswerGenerator {
            templates: &self.templates,
            graph: &self.graph,
        }
    }

    pub fn parse(&self, text: &str) -> Result<Vec<QueryObject>, ServiceError> {
        Ok(build_query(text, &self.lexicon, self)?)
    }

    /// Parses, resolves and renders one message. `ctx` is left untouched.
    pub fn respond(&self, ctx: &ContextObject, text: &str) -> Result<Turn, ServiceError> {
        let queries = self.parse(text)?;
        let (outcome, context) = self.resolver().resolve_message(ctx, &queries)?;
        let qtype = queries
            .iter()
            .find(|q| !q.is_small_talk())
            .or(queries.first())
            .and_then(|q| q.qtype);
        let answer = self.generator().generate(&outcome, qtype);
        Ok(Turn {
            envelope: AnswerEnvelope {
                answer,
                outcome,
                state: context.snapshot(),
            },
            queries,
            context,
        })
    }
}

impl QueryAnalyzer for Engine {
    fn rank_keyphrases(&self, candidates: &[String]) -> Vec<String> {
        self.bm25
            .rank_keyphrases(candidates, &self.lexicon)
            .into_iter()
            .map(|(phrase, _)| phrase)
            .collect()
    }

    fn classify_intents(&self, sentence: &str) -> Vec<String> {
        self.intents
            .classify(sentence, &self.lexicon, self.config.intent_threshold)
            .into_iter()
            .map(|s| s.label)
            .collect()
    }

    fn is_matchable(&self, noun_phrase: &str) -> bool {
        !self
            .matcher
            .match_phrase(noun_phrase, &self.lexicon, self.embeddings.as_ref())
            .is_empty()
    }
}
