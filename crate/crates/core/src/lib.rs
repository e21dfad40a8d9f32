//! Ontology-driven dialogue management for German banking chatbots.

pub mod answer;
pub mod context;
pub mod matching;
pub mod nlu;
pub mod ontology;
pub mod ranking;
pub mod service;
