use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::graph::OntologyGraph;

/// Degree statistics over the class graph.
///
/// Nodes are classes. Directed degrees count object-property edges only;
/// the undirected average uses the distinct class pairs joined by an object
/// property or a subclass edge, with self-loops left out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphMetrics {
    pub node_count: usize,
    pub directed_edges: usize,
    pub undirected_edges: usize,
    pub avg_degree: f64,
    pub max_out_degree: usize,
    pub max_in_degree: usize,
}

pub fn graph_metrics(graph: &OntologyGraph) -> GraphMetrics {
    let mut out_deg: BTreeMap<&str, usize> = BTreeMap::new();
    let mut in_deg: BTreeMap<&str, usize> = BTreeMap::new();
    let mut pairs: BTreeSet<(&str, &str)> = BTreeSet::new();
    let mut directed = 0;

    for p in graph.object_properties() {
        directed += 1;
        *out_deg.entry(&p.domain_class).or_default() += 1;
        *in_deg.entry(&p.range_class).or_default() += 1;
        add_pair(&mut pairs, &p.domain_class, &p.range_class);
    }
    for c in graph.classes() {
        for parent in &c.parents {
            add_pair(&mut pairs, &c.id, parent);
        }
    }

    let node_count = graph.classes().count();
    let avg_degree = if node_count == 0 {
        0.0
    } else {
        2.0 * pairs.len() as f64 / node_count as f64
    };
    GraphMetrics {
        node_count,
        directed_edges: directed,
        undirected_edges: pairs.len(),
        avg_degree,
        max_out_degree: out_deg.values().copied().max().unwrap_or(0),
        max_in_degree: in_deg.values().copied().max().unwrap_or(0),
    }
}

fn add_pair<'a>(pairs: &mut BTreeSet<(&'a str, &'a str)>, a: &'a str, b: &'a str) {
    if a != b {
        pairs.insert(if a < b { (a, b) } else { (b, a) });
    }
}
