//! Parses German sentences into query objects.
//!
//! `cargo run --example parse_query -- "Was kostet eine Kreditkarte?"`

use ontodm::nlu::split_compound;
use ontodm::service::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::bundled()?;
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "Ich möchte meinen Hausbau finanzieren. Kannst du mir bitte helfen?".into());
    for q in engine.parse(&text)? {
        println!("{}", q.sentence);
        println!("  type       {:?} / {:?} / {:?}", q.sentence_type, q.type_attr, q.qtype);
        println!("  nouns      {:?}", q.noun_phrases);
        println!("  verbs      {:?}", q.verb_phrases);
        println!("  keyphrases {:?}", q.kphrases);
        println!("  intents    {:?}", q.intents);
        println!("  pos        {}", q.pos_tags);
    }
    for word in ["internetbestellung", "zahlungsverkehrsraum", "kredit"] {
        println!("{word} -> {:?}", split_compound(word, engine.lexicon()));
    }
    Ok(())
}
