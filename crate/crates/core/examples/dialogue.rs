//! Runs a short conversation and prints the context after each turn.
//!
//! `cargo run --example dialogue`

use ontodm::context::new_context;
use ontodm::service::Engine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::bundled()?;
    let mut ctx = new_context();
    for text in [
        "Hallo",
        "Was ist der Zinssatz bei 4Kredit?",
        "Was kostet der Kredit?",
        "Ist eine Internetbestellung möglich?",
        "Am Telefon?",
        "Was kostet eine Kreditkarte?",
        "Welche anderen Produkte haben Sie?",
    ] {
        let turn = engine.respond(&ctx, text)?;
        let o = &turn.envelope.outcome;
        println!("> {text}");
        println!("< {}", turn.envelope.answer);
        println!(
            "  {} via {:?}; prod={:?} indiv={:?} inode={:?} leaf={:?}",
            o.kind().as_str(),
            o.fired_rule,
            turn.context.curr_prod,
            turn.context.curr_prod_indiv,
            turn.context.curr_inode,
            turn.context.curr_leaf
        );
        ctx = turn.context;
    }
    Ok(())
}
