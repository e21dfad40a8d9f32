use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ContextError;
use crate::ontology::OntologyGraph;

/// Maximum number of remembered entities of interest.
pub const EOI_HISTORY_LIMIT: usize = 50;

/// Why an entity entered the conversation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EoiRole {
    Product,
    Individual,
    Attribute,
    Leaf,
}

/// An entity of interest mentioned or resolved in a given message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityOfInterest {
    pub node_id: String,
    pub role: EoiRole,
    pub message_index: u64,
}

/// Conversation state: four pointers into the ontology plus cycle bookkeeping.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextObject {
    pub curr_prod: Option<String>,
    pub curr_prod_indiv: Option<String>,
    pub curr_inode: Option<String>,
    pub curr_leaf: Option<String>,
    pub message_index: u64,
    pub visited_nodes: BTreeSet<String>,
    /// `(node, data property)` pairs whose value was already given.
    pub used_edges: BTreeSet<(String, String)>,
    #[serde(default)]
    pub eoi_history: Vec<EntityOfInterest>,
}

/// The externally visible part of a [`ContextObject`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSnapshot {
    pub curr_prod: Option<String>,
    pub curr_prod_indiv: Option<String>,
    pub curr_inode: Option<String>,
    pub curr_leaf: Option<String>,
    pub message_index: u64,
    pub visited_nodes: Vec<String>,
    pub used_edges: Vec<(String, String)>,
}

pub fn new_context() -> ContextObject {
    ContextObject::default()
}

impl ContextObject {
    pub fn snapshot(&self) -> ContextSnapshot {
        ContextSnapshot {
            curr_prod: self.curr_prod.clone(),
            curr_prod_indiv: self.curr_prod_indiv.clone(),
            curr_inode: self.curr_inode.clone(),
            curr_leaf: self.curr_leaf.clone(),
            message_index: self.message_index,
            visited_nodes: self.visited_nodes.iter().cloned().collect(),
            used_edges: self.used_edges.iter().cloned().collect(),
        }
    }

    /// No product, individual or inner node is in focus.
    pub fn is_empty(&self) -> bool {
        self.curr_prod.is_none() && self.curr_prod_indiv.is_none() && self.curr_inode.is_none()
    }

    pub fn pointers(&self) -> [(&'static str, Option<&str>); 4] {
        [
            ("curr_prod", self.curr_prod.as_deref()),
            ("curr_prod_indiv", self.curr_prod_indiv.as_deref()),
            ("curr_inode", self.curr_inode.as_deref()),
            ("curr_leaf", self.curr_leaf.as_deref()),
        ]
    }

    pub fn mark_visited(&mut self, graph: &OntologyGraph, node: &str) -> Result<(), ContextError> {
        if !graph.contains(node) {
            return Err(ContextError::UnknownNode(node.to_owned()));
        }
        self.visited_nodes.insert(node.to_owned());
        Ok(())
    }

    pub fn mark_used(&mut self, graph: &OntologyGraph, node: &str, property: &str) -> Result<(), ContextError> {
        if !graph.contains(node) {
            return Err(ContextError::UnknownNode(node.to_owned()));
        }
        if graph.data_property(property).is_none() {
            return Err(ContextError::UnknownProperty(property.to_owned()));
        }
        self.used_edges.insert((node.to_owned(), property.to_owned()));
        Ok(())
    }

    pub fn is_used(&self, node: &str, property: &str) -> bool {
        self.used_edges.contains(&(node.to_owned(), property.to_owned()))
    }

    pub(crate) fn record(&mut self, node: &str, role: EoiRole) {
        self.eoi_history.push(EntityOfInterest {
            node_id: node.to_owned(),
            role,
            message_index: self.message_index,
        });
        if self.eoi_history.len() > EOI_HISTORY_LIMIT {
            let excess = self.eoi_history.len() - EOI_HISTORY_LIMIT;
            self.eoi_history.drain(..excess);
        }
    }

    /// Most recently recorded entity still present in the graph.
    pub fn last_entity(&self) -> Option<&EntityOfInterest> {
        self.eoi_history.last()
    }

    /// Checks that every pointer names a node and that the product pointers agree.
    pub fn validate(&self, graph: &OntologyGraph) -> Result<(), ContextError> {
        for (field, value) in self.pointers() {
            if let Some(id) = value {
                if !graph.contains(id) {
                    return Err(ContextError::CorruptState(format!("{field} names unknown node {id}")));
                }
            }
        }
        if let Some(indiv) = &self.curr_prod_indiv {
            if graph.individual(indiv).is_none() {
                return Err(ContextError::CorruptState(format!("{indiv} is not an individual")));
            }
            if self.curr_prod.as_deref() != graph.class_of(indiv) {
                return Err(ContextError::CorruptState(format!(
                    "curr_prod does not match the class of {indiv}"
                )));
            }
        }
        if self.curr_leaf.is_some() && self.curr_inode.is_none() {
            return Err(ContextError::CorruptState("curr_leaf set without curr_inode".into()));
        }
        Ok(())
    }
}
