//! Maps phrases onto ontology nodes through the matching tiers.
//!
//! `cargo run --example match_nodes`

use ontodm::service::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::bundled()?;
    for phrase in ["Kreditkarte", "Kredite", "Zinssatz", "Internetbestellung", "Darlehen", "Wetter"] {
        let results = engine.matcher().match_phrase(phrase, engine.lexicon(), engine.embeddings());
        let shown: Vec<String> = results
            .iter()
            .map(|r| format!("{} ({:?}, {:.2})", r.node_id, r.tier, r.score))
            .collect();
        println!("{phrase:20} {}", if shown.is_empty() { "-".into() } else { shown.join(", ") });
    }
    Ok(())
}
