use std::collections::{BTreeMap, HashSet};

use super::outcome::*;
use super::state::{ContextObject, EoiRole};
use super::ContextError;
use crate::matching::{EmbeddingTable, MatchResult, MatchTier, NodeMatcher};
use crate::nlu::{Lexicon, PosTag, QueryObject, SentenceType};
use crate::ontology::{ClassKind, OntologyGraph};

/// Lookup key shared by all hint-like data properties.
const HINT_KEY: &str = "hinweis";

/// Read-only resources consulted while resolving queries.
#[derive(Clone, Copy)]
pub struct Resolver<'a> {
    pub graph: &'a OntologyGraph,
    pub lexicon: &'a Lexicon,
    pub matcher: &'a NodeMatcher,
    pub embeddings: Option<&'a EmbeddingTable>,
    /// Intent label to product class.
    pub intent_products: &'a BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Individual,
    Offering,
    Root,
    Other,
}

/// A noun span that matched at least one node.
#[derive(Debug, Clone)]
struct Mention {
    start: usize,
    end: usize,
    results: Vec<MatchResult>,
    /// Modifier of a compound whose head matched, e.g. `internet` in `internetbestellung`.
    modifier: Option<String>,
    ambiguous: bool,
}

impl Mention {
    fn node(&self) -> &str {
        &self.results[0].node_id
    }

    fn covers(&self, index: usize) -> bool {
        (self.start..self.end).contains(&index)
    }
}

/// One step of a query's resolution plan: an attribute word and the data
/// properties it names, or `None` for a query that asks no attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntentStep {
    pub attribute: Option<String>,
    pub properties: Vec<String>,
}

impl<'a> Resolver<'a> {
    /// Resolves a single-sentence message.
    pub fn resolve(
        &self,
        ctx: &ContextObject,
        query: &QueryObject,
    ) -> Result<(ResolutionOutcome, ContextObject), ContextError> {
        self.resolve_message(ctx, std::slice::from_ref(query))
    }

    /// Resolves every sentence of one message against a copy of `ctx`.
    /// The message index advances once; greetings, chit-chat and fallbacks
    /// are dropped when a sentence produced domain content.
    pub fn resolve_message(
        &self,
        ctx: &ContextObject,
        queries: &[QueryObject],
    ) -> Result<(ResolutionOutcome, ContextObject), ContextError> {
        if queries.is_empty() {
            return Err(ContextError::EmptyMessage);
        }
        ctx.validate(self.graph)?;
        let mut next = ctx.clone();
        next.message_index += 1;
        let mut outcomes = Vec::with_capacity(queries.len());
        for q in queries {
            outcomes.push(self.resolve_query(&mut next, q)?);
        }
        if outcomes.iter().any(|o| !o.kind().is_filler()) {
            outcomes.retain(|o| !o.kind().is_filler());
        }
        let mut outcome = ResolutionOutcome::combine(outcomes).expect("at least one query");
        if outcome.suggestion.is_none() {
            outcome.suggestion = outcome
                .parts()
                .iter()
                .find_map(|p| p.suggestion.clone());
        }
        if outcome.suggestion.is_none() && outcome.has_attribute_value() {
            outcome.suggestion = suggest_next(&next, self.graph);
        }
        Ok((outcome, next))
    }

    fn resolve_query(&self, ctx: &mut ContextObject, q: &QueryObject) -> Result<ResolutionOutcome, ContextError> {
        match q.sentence_type {
            SentenceType::Greeting => {
                return Ok(ResolutionOutcome::new(
                    Payload::GreetingEcho { gtype: q.gtype },
                    FiredRule::None,
                ))
            }
            SentenceType::Chitchat => {
                return Ok(ResolutionOutcome::new(Payload::ChitchatEcho, FiredRule::None))
            }
            SentenceType::Action | SentenceType::Ordinary => {}
        }

        let mentions = self.mentions(q);
        let keys = self.attribute_keys(q, &mentions);
        let clear: Vec<&Mention> = mentions.iter().filter(|m| !m.ambiguous).collect();
        let with_role = |role: Role| clear.iter().filter(move |m| self.role(m.node()) == role);

        if let Some(m) = with_role(Role::Individual).next() {
            return self.rule_a(ctx, m.node(), &keys);
        }
        if let Some(m) = with_role(Role::Offering).next() {
            let other = with_role(Role::Offering)
                .map(|m| m.node())
                .find(|n| *n != m.node() && !self.graph.is_a(m.node(), n) && !self.graph.is_a(n, m.node()));
            let mut out = self.rule_b(ctx, m.node(), &keys, FiredRule::B)?;
            if let Some(other) = other {
                if self.graph.is_available(other) && !ctx.visited_nodes.contains(other) {
                    out.suggestion = Some(Suggestion::Product { node: other.to_owned() });
                }
            }
            return Ok(out);
        }
        if let Some(m) = with_role(Role::Root).next() {
            return Ok(self.root_listing(ctx, m.node()));
        }
        if let Some(m) = mentions.iter().find(|m| m.ambiguous) {
            return Ok(ResolutionOutcome::new(
                Payload::Clarify {
                    reason: ClarifyReason::Ambiguous,
                    options: ambiguous_options(m, self.matcher.config().epsilon),
                    subject: None,
                },
                FiredRule::None,
            ));
        }

        let has_verb = q.tokens.iter().any(|t| t.pos.is_verbal());
        if q.noun_phrases.is_empty() && q.has_demonstrative() && has_verb {
            if let Some(referent) = self.referent(ctx) {
                return self.answer_about(ctx, &referent, &keys, FiredRule::Pronoun);
            }
        }

        let others: Vec<&Mention> = with_role(Role::Other).copied().collect();
        if let Some(out) = self.implicit(ctx, &others, &keys)? {
            return Ok(out);
        }

        if !q.is_uninformative {
            if let Some(product) = self.intent_product(q) {
                return self.rule_b(ctx, &product, &keys, FiredRule::D);
            }
        }

        if ctx.is_empty() {
            return Ok(self.no_product_prompt(ctx));
        }
        Ok(fallback(FallbackReason::NotUnderstood))
    }

    /// Resolves a demonstrative pronoun to the most specific product in focus,
    /// falling back to the latest entity of interest.
    pub fn resolve_pronoun(
        &self,
        ctx: &ContextObject,
        query: &QueryObject,
    ) -> Result<(ResolutionOutcome, ContextObject), ContextError> {
        ctx.validate(self.graph)?;
        let mut next = ctx.clone();
        let Some(referent) = self.referent(&next) else {
            return Ok((
                ResolutionOutcome::new(
                    Payload::Clarify {
                        reason: ClarifyReason::NoReferent,
                        options: Vec::new(),
                        subject: None,
                    },
                    FiredRule::Pronoun,
                ),
                next,
            ));
        };
        let keys = self.attribute_keys(query, &[]);
        let out = self.answer_about(&mut next, &referent, &keys, FiredRule::Pronoun)?;
        Ok((out, next))
    }

    /// Resolves a phrase that names no product against the current focus.
    /// Returns `None` when nothing in the phrase can be placed.
    pub fn resolve_implicit(
        &self,
        ctx: &ContextObject,
        query: &QueryObject,
    ) -> Result<Option<(ResolutionOutcome, ContextObject)>, ContextError> {
        ctx.validate(self.graph)?;
        let mut next = ctx.clone();
        let mentions = self.mentions(query);
        let keys = self.attribute_keys(query, &mentions);
        let others: Vec<&Mention> = mentions
            .iter()
            .filter(|m| !m.ambiguous && self.role(m.node()) == Role::Other)
            .collect();
        Ok(self.implicit(&mut next, &others, &keys)?.map(|out| (out, next)))
    }

    /// Splits a query into attribute fetches executed left to right: main
    /// verbs first, then nouns that name no node. A query without attribute
    /// words is a single step.
    pub fn split_intents(&self, query: &QueryObject) -> Vec<IntentStep> {
        let steps = self.attribute_keys(query, &self.mentions(query));
        if steps.is_empty() {
            return vec![IntentStep {
                attribute: None,
                properties: Vec::new(),
            }];
        }
        steps
    }

    // ---- rules ------------------------------------------------------------

    fn rule_a(&self, ctx: &mut ContextObject, indiv: &str, keys: &[IntentStep]) -> Result<ResolutionOutcome, ContextError> {
        let class = self
            .graph
            .class_of(indiv)
            .ok_or_else(|| ContextError::UnknownNode(indiv.to_owned()))?
            .to_owned();
        if ctx.curr_prod_indiv.as_deref() != Some(indiv) {
            ctx.curr_inode = None;
            ctx.curr_leaf = None;
        }
        self.focus_product(ctx, &class, Some(indiv))?;
        if keys.is_empty() {
            return Ok(ResolutionOutcome::new(
                Payload::ContextSwitch {
                    product: class,
                    individual: Some(indiv.to_owned()),
                },
                FiredRule::A,
            ));
        }
        self.answer_about(ctx, indiv, keys, FiredRule::A)
    }

    /// Product-class rule, shared by the intent rule.
    fn rule_b(
        &self,
        ctx: &mut ContextObject,
        class: &str,
        keys: &[IntentStep],
        rule: FiredRule,
    ) -> Result<ResolutionOutcome, ContextError> {
        let graph = self.graph;
        if let Some(indiv) = ctx.curr_prod_indiv.clone().filter(|i| graph.is_instance_of(i, class)) {
            ctx.mark_visited(graph, class)?;
            if keys.is_empty() {
                return Ok(ResolutionOutcome::new(
                    Payload::ContextSwitch {
                        product: ctx.curr_prod.clone().unwrap_or_else(|| class.to_owned()),
                        individual: Some(indiv),
                    },
                    rule,
                ));
            }
            return self.answer_about(ctx, &indiv, keys, rule);
        }

        if !graph.is_available(class) {
            return Ok(ResolutionOutcome::new(
                Payload::YesNo {
                    answer: false,
                    evidence: class.to_owned(),
                    hint: self.hint(class),
                },
                rule,
            ));
        }

        let direct = graph.individuals_of(class, false)?;
        let indiv = match direct.as_slice() {
            [only] => Some(only.clone()),
            _ => None,
        };
        ctx.curr_inode = None;
        ctx.curr_leaf = None;
        self.focus_product(ctx, class, indiv.as_deref())?;
        let switch = ResolutionOutcome::new(
            Payload::ContextSwitch {
                product: class.to_owned(),
                individual: indiv.clone(),
            },
            rule,
        );

        if !keys.is_empty() {
            let subjects = match (&indiv, direct.len()) {
                (Some(i), _) => vec![i.clone()],
                (None, n) if n > 1 => direct.clone(),
                _ => vec![class.to_owned()],
            };
            let mut parts = vec![switch];
            let mut answers = Vec::new();
            for s in &subjects {
                answers.extend(self.fetch_all(ctx, s, keys, rule)?);
            }
            if answers.is_empty() && indiv.is_none() {
                for s in graph.individuals_of(class, true)? {
                    answers.extend(self.fetch_all(ctx, &s, keys, rule)?);
                }
            }
            if answers.is_empty() {
                answers.push(unknown_attribute(class, rule));
            }
            parts.extend(answers);
            return Ok(ResolutionOutcome::combine(parts).expect("non-empty"));
        }

        if indiv.is_some() {
            return Ok(switch);
        }
        let options: Vec<String> = graph
            .direct_children(class)
            .iter()
            .filter(|c| graph.is_offering(c) && graph.is_available(c))
            .chain(direct.iter())
            .filter(|n| !ctx.visited_nodes.contains(*n))
            .cloned()
            .collect();
        if options.is_empty() {
            return Ok(switch);
        }
        Ok(ResolutionOutcome::new(Payload::ListOptions { options }, rule))
    }

    fn root_listing(&self, ctx: &ContextObject, root: &str) -> ResolutionOutcome {
        let graph = self.graph;
        let options: Vec<String> = graph
            .direct_children(root)
            .iter()
            .filter(|c| graph.is_offering(c) && graph.is_available(c) && !ctx.visited_nodes.contains(*c))
            .cloned()
            .collect();
        if options.is_empty() {
            let mut out = fallback(FallbackReason::AllVisited);
            out.fired_rule = FiredRule::C;
            return out;
        }
        ResolutionOutcome::new(Payload::ListOptions { options }, FiredRule::C)
    }

    fn no_product_prompt(&self, ctx: &ContextObject) -> ResolutionOutcome {
        let options: Vec<String> = self
            .graph
            .top_level_offerings()
            .into_iter()
            .filter(|o| !ctx.visited_nodes.contains(o))
            .collect();
        if options.is_empty() {
            let mut out = fallback(FallbackReason::AllVisited);
            out.fired_rule = FiredRule::C;
            return out;
        }
        ResolutionOutcome::new(Payload::NoProductPrompt { options }, FiredRule::C)
    }

    fn implicit(
        &self,
        ctx: &mut ContextObject,
        mentions: &[&Mention],
        keys: &[IntentStep],
    ) -> Result<Option<ResolutionOutcome>, ContextError> {
        if let Some(m) = mentions.first() {
            let candidates: HashSet<&str> = m.results.iter().map(|r| r.node_id.as_str()).collect();
            if let (MatchTier::Compound, Some(modifier)) = (m.results[0].tier, &m.modifier) {
                return self.implicit_compound(ctx, &candidates, modifier, keys).map(Some);
            }
            if let Some(node) = self.locate(ctx, &candidates)? {
                self.place(ctx, &node);
                return self.answer_located(ctx, &node, keys, true).map(Some);
            }
        }
        if keys.is_empty() {
            return Ok(None);
        }
        let referents: Vec<String> = [&ctx.curr_leaf, &ctx.curr_inode, &ctx.curr_prod_indiv, &ctx.curr_prod]
            .into_iter()
            .flatten()
            .cloned()
            .collect();
        for r in referents {
            let answers = self.fetch_with_members(ctx, &r, keys, FiredRule::Implicit)?;
            if !answers.is_empty() {
                return Ok(ResolutionOutcome::combine(answers));
            }
        }
        Ok(None)
    }

    fn implicit_compound(
        &self,
        ctx: &mut ContextObject,
        heads: &HashSet<&str>,
        modifier: &str,
        keys: &[IntentStep],
    ) -> Result<ResolutionOutcome, ContextError> {
        let graph = self.graph;
        let none = HashSet::new();
        let head = match &ctx.curr_prod {
            Some(base) => graph.bfs_find(base, &none, |n| heads.contains(n))?,
            None => {
                let mut sorted: Vec<&str> = heads.iter().copied().collect();
                sorted.sort();
                sorted.first().map(|s| s.to_string())
            }
        };
        let Some(head) = head else {
            return Ok(fallback(FallbackReason::NotUnderstood));
        };
        let skip = HashSet::from([head.clone()]);
        let folded = crate::nlu::normalize(modifier, self.lexicon);
        let lemma = crate::nlu::lemmatize(&folded, self.lexicon);
        let leaf = graph.bfs_find(&head, &skip, |n| {
            graph.keys_of(n).iter().any(|k| *k == folded || *k == lemma)
        })?;
        ctx.curr_inode = Some(head.clone());
        ctx.record(&head, EoiRole::Attribute);
        match leaf {
            Some(leaf) => {
                ctx.curr_leaf = Some(leaf.clone());
                ctx.record(&leaf, EoiRole::Leaf);
                self.answer_located(ctx, &leaf, keys, true)
            }
            None => {
                ctx.curr_leaf = None;
                Ok(ResolutionOutcome::new(
                    Payload::YesNo {
                        answer: false,
                        evidence: head,
                        hint: None,
                    },
                    FiredRule::Implicit,
                ))
            }
        }
    }

    /// Finds a matched node near the current focus: among the children of the
    /// inner node, below it, below the product, then a unique global match.
    fn locate(&self, ctx: &ContextObject, candidates: &HashSet<&str>) -> Result<Option<String>, ContextError> {
        let graph = self.graph;
        let none = HashSet::new();
        if let Some(inode) = &ctx.curr_inode {
            if let Some(n) = graph
                .search_successors(inode)
                .into_iter()
                .find(|n| candidates.contains(n.as_str()))
            {
                return Ok(Some(n));
            }
            if let Some(n) = graph.bfs_find(inode, &none, |n| candidates.contains(n))? {
                return Ok(Some(n));
            }
        }
        if let Some(prod) = &ctx.curr_prod {
            if let Some(n) = graph.bfs_find(prod, &none, |n| candidates.contains(n))? {
                return Ok(Some(n));
            }
        }
        let mut global: Vec<&str> = candidates
            .iter()
            .copied()
            .filter(|n| self.is_attribute_like(n))
            .collect();
        global.sort();
        Ok(match global.as_slice() {
            [only] => Some(only.to_string()),
            _ => None,
        })
    }

    /// A node under an attribute concept becomes the leaf; anything else the inner node.
    fn place(&self, ctx: &mut ContextObject, node: &str) {
        match self.attribute_parent(node) {
            Some(parent) => {
                ctx.curr_inode = Some(parent.clone());
                ctx.curr_leaf = Some(node.to_owned());
                ctx.record(&parent, EoiRole::Attribute);
                ctx.record(node, EoiRole::Leaf);
            }
            None => {
                ctx.curr_inode = Some(node.to_owned());
                ctx.curr_leaf = None;
                ctx.record(node, EoiRole::Attribute);
            }
        }
    }

    // ---- answers ----------------------------------------------------------

    fn answer_located(
        &self,
        ctx: &mut ContextObject,
        node: &str,
        keys: &[IntentStep],
        affirm: bool,
    ) -> Result<ResolutionOutcome, ContextError> {
        if !keys.is_empty() {
            let answers = self.fetch_all(ctx, node, keys, FiredRule::Implicit)?;
            if let Some(out) = ResolutionOutcome::combine(answers) {
                return Ok(out);
            }
        }
        Ok(ResolutionOutcome::new(
            Payload::YesNo {
                answer: affirm,
                evidence: node.to_owned(),
                hint: self.hint(node),
            },
            FiredRule::Implicit,
        ))
    }

    fn answer_about(
        &self,
        ctx: &mut ContextObject,
        node: &str,
        keys: &[IntentStep],
        rule: FiredRule,
    ) -> Result<ResolutionOutcome, ContextError> {
        let answers = if keys.is_empty() {
            Vec::new()
        } else {
            self.fetch_with_members(ctx, node, keys, rule)?
        };
        Ok(ResolutionOutcome::combine(answers).unwrap_or_else(|| unknown_attribute(node, rule)))
    }

    /// Fetches on the node, or on each individual of a class that holds no value itself.
    fn fetch_with_members(
        &self,
        ctx: &mut ContextObject,
        node: &str,
        keys: &[IntentStep],
        rule: FiredRule,
    ) -> Result<Vec<ResolutionOutcome>, ContextError> {
        let answers = self.fetch_all(ctx, node, keys, rule)?;
        if !answers.is_empty() || self.graph.class(node).is_none() {
            return Ok(answers);
        }
        let mut answers = Vec::new();
        for indiv in self.graph.individuals_of(node, true)? {
            answers.extend(self.fetch_all(ctx, &indiv, keys, rule)?);
        }
        Ok(answers)
    }

    fn fetch_all(
        &self,
        ctx: &mut ContextObject,
        node: &str,
        keys: &[IntentStep],
        rule: FiredRule,
    ) -> Result<Vec<ResolutionOutcome>, ContextError> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for key in keys {
            let Some(hit) = key
                .properties
                .iter()
                .find_map(|p| self.graph.lookup_property(node, p))
            else {
                continue;
            };
            if !seen.insert(hit.property.clone()) {
                continue;
            }
            ctx.mark_used(self.graph, node, &hit.property)?;
            ctx.mark_visited(self.graph, node)?;
            out.push(ResolutionOutcome::new(
                Payload::AttributeValue {
                    subject: node.to_owned(),
                    property: hit.property,
                    holder: hit.holder,
                    value: hit.value,
                },
                rule,
            ));
        }
        Ok(out)
    }

    fn hint(&self, node: &str) -> Option<String> {
        self.graph
            .lookup_attribute(node, HINT_KEY)
            .ok()
            .flatten()
            .map(|hit| hit.value.to_string())
    }

    // ---- helpers ----------------------------------------------------------

    fn focus_product(&self, ctx: &mut ContextObject, class: &str, indiv: Option<&str>) -> Result<(), ContextError> {
        ctx.curr_prod = Some(class.to_owned());
        ctx.curr_prod_indiv = indiv.map(str::to_owned);
        ctx.mark_visited(self.graph, class)?;
        ctx.record(class, EoiRole::Product);
        if let Some(i) = indiv {
            ctx.mark_visited(self.graph, i)?;
            ctx.record(i, EoiRole::Individual);
        }
        Ok(())
    }

    fn referent(&self, ctx: &ContextObject) -> Option<String> {
        ctx.curr_prod_indiv
            .clone()
            .or_else(|| ctx.curr_prod.clone())
            .or_else(|| ctx.last_entity().map(|e| e.node_id.clone()))
            .filter(|n| self.graph.contains(n))
    }

    fn intent_product(&self, q: &QueryObject) -> Option<String> {
        let intent = q.intents.first()?;
        let product = self.intent_products.get(intent)?;
        self.graph.is_offering(product).then(|| product.clone())
    }

    fn role(&self, node: &str) -> Role {
        let graph = self.graph;
        if graph.is_root(node) {
            Role::Root
        } else if let Some(class) = graph.class_of(node) {
            if graph.is_offering(class) {
                Role::Individual
            } else {
                Role::Other
            }
        } else if graph.is_offering(node) {
            Role::Offering
        } else {
            Role::Other
        }
    }

    fn is_attribute_concept(&self, class: &str) -> bool {
        self.graph
            .class(class)
            .is_some_and(|c| c.kind == ClassKind::AttributeConcept)
    }

    fn attribute_parent(&self, node: &str) -> Option<String> {
        if let Some(class) = self.graph.class_of(node) {
            return self.is_attribute_concept(class).then(|| class.to_owned());
        }
        let mut parents = self.graph.class(node)?.parents.clone();
        parents.sort();
        parents.into_iter().find(|p| self.is_attribute_concept(p))
    }

    /// Attribute concepts and anything below one.
    fn is_attribute_like(&self, node: &str) -> bool {
        let class = self.graph.class_of(node).unwrap_or(node);
        self.is_attribute_concept(class)
            || self
                .graph
                .ancestors(class)
                .iter()
                .any(|a| self.is_attribute_concept(a))
    }

    fn mentions(&self, q: &QueryObject) -> Vec<Mention> {
        let mut out = Vec::new();
        for (start, end) in noun_spans(q) {
            let words: Vec<&str> = q.tokens[start..end].iter().map(|t| t.normalized.as_str()).collect();
            let whole = self.mention(q, start, end, &words.join(" "));
            match whole {
                Some(m) => out.push(m),
                None if end - start > 1 => {
                    for i in start..end {
                        out.extend(self.mention(q, i, i + 1, &q.tokens[i].normalized));
                    }
                }
                None => {}
            }
        }
        out
    }

    fn mention(&self, q: &QueryObject, start: usize, end: usize, phrase: &str) -> Option<Mention> {
        let results = self.matcher.match_phrase(phrase, self.lexicon, self.embeddings);
        if results.is_empty() {
            return None;
        }
        let modifier = (results[0].tier == MatchTier::Compound)
            .then(|| {
                let parts = &q.tokens[end - 1].compound_parts;
                (parts.len() > 1).then(|| parts[..parts.len() - 1].concat())
            })
            .flatten();
        let ambiguous = self.matcher.is_ambiguous(&results);
        Some(Mention {
            start,
            end,
            results,
            modifier,
            ambiguous,
        })
    }

    /// Verb lemmas first, then nouns outside node mentions (lemma, surface,
    /// compound head); only words naming a data property are kept.
    fn attribute_keys(&self, q: &QueryObject, mentions: &[Mention]) -> Vec<IntentStep> {
        let mut out: Vec<IntentStep> = Vec::new();
        let mut push = |word: &str, forms: &[&str]| {
            let properties: Vec<String> = forms
                .iter()
                .map(|f| self.graph.properties_with_key(f))
                .find(|ps| !ps.is_empty())
                .map(|ps| ps.into_iter().map(|p| p.id.clone()).collect())
                .unwrap_or_default();
            if !properties.is_empty() && !out.iter().any(|k| k.properties == properties) {
                out.push(IntentStep {
                    attribute: Some(word.to_owned()),
                    properties,
                });
            }
        };
        for verb in q.main_verbs() {
            push(verb, &[verb]);
        }
        for (i, t) in q.tokens.iter().enumerate() {
            if t.pos != PosTag::Noun || mentions.iter().any(|m| m.covers(i)) {
                continue;
            }
            push(&t.lemma, &[&t.lemma, &t.normalized, t.head()]);
        }
        out
    }
}

/// Next unused data property of the product in focus, hints excluded.
pub fn suggest_next(ctx: &ContextObject, graph: &OntologyGraph) -> Option<Suggestion> {
    let target = ctx.curr_prod_indiv.as_ref().or(ctx.curr_prod.as_ref())?;
    graph
        .available_properties(target)
        .into_iter()
        .find(|p| !graph.property_keys(p).iter().any(|k| k == HINT_KEY) && !ctx.is_used(target, p))
        .map(|property| Suggestion::Attribute {
            node: target.clone(),
            property,
        })
}

fn noun_spans(q: &QueryObject) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = None;
    for (i, t) in q.tokens.iter().enumerate() {
        match (t.pos == PosTag::Noun, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                spans.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        spans.push((s, q.tokens.len()));
    }
    spans
}

fn ambiguous_options(m: &Mention, epsilon: f64) -> Vec<String> {
    let best = m.results[0].score;
    m.results
        .iter()
        .take_while(|r| best - r.score < epsilon)
        .map(|r| r.node_id.clone())
        .collect()
}

fn unknown_attribute(subject: &str, rule: FiredRule) -> ResolutionOutcome {
    ResolutionOutcome::new(
        Payload::Clarify {
            reason: ClarifyReason::UnknownAttribute,
            options: Vec::new(),
            subject: Some(subject.to_owned()),
        },
        rule,
    )
}

fn fallback(reason: FallbackReason) -> ResolutionOutcome {
    ResolutionOutcome::new(Payload::Fallback { reason }, FiredRule::None)
}
