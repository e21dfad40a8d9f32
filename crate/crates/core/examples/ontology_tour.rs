//! Loads the bundled ontology and walks its hierarchy.
//!
//! `cargo run --example ontology_tour`

use std::collections::HashSet;

use ontodm::ontology::{graph_metrics, Lowercase, OntologyGraph, BUNDLED_ONTOLOGY};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graph = OntologyGraph::from_json_with(BUNDLED_ONTOLOGY, &Lowercase)?;
    println!("{} nodes", graph.node_count());
    println!("offerings: {:?}", graph.top_level_offerings());
    println!("subclasses of Konto: {:?}", graph.subclasses("Konto", true)?);
    println!("individuals of Konto: {:?}", graph.individuals_of("Konto", true)?);

    let hit = graph.bfs_under("Kredit", "internet", &HashSet::new())?;
    println!("bfs from Kredit for `internet`: {hit:?}");

    if let Some(zins) = graph.lookup_property("4Kredit", "zins") {
        println!("4Kredit zins: {zins:?}");
    }
    println!("{}", serde_json::to_string_pretty(&graph_metrics(&graph))?);
    Ok(())
}
