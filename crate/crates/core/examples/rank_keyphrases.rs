//! Ranks keyphrase candidates with BM25 and classifies intents.
//!
//! `cargo run --example rank_keyphrases`

use ontodm::service::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::bundled()?;
    let candidates: Vec<String> = ["Kredit erhöhen", "Formulare", "Krediterhöhung", "Wetter"]
        .map(String::from)
        .to_vec();
    for (phrase, score) in engine.bm25().rank_keyphrases(&candidates, engine.lexicon()) {
        println!("{score:8.4}  {phrase}");
    }
    for question in ["Wie kann ich meinen Kredit aufstocken?", "Wo ist der nächste Geldautomat?"] {
        let best = &engine.intents().distribution(question, engine.lexicon())[0];
        println!("{question} -> {} ({:.2})", best.label, best.confidence);
    }
    Ok(())
}
