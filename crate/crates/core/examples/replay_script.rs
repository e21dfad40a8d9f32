//! Replays a scripted conversation and checks its expectations.
//!
//! `cargo run --example replay_script`

use ontodm::service::{parse_script, replay_script, Engine};

const SCRIPT: &str = r#"[
  {"user": "Was ist der Zinssatz bei 4Kredit?",
   "expect": {"curr_prod": "Kredit", "curr_prod_indiv": "4Kredit",
              "outcome_kind": "attribute_value", "answer_contains": "0.23"}},
  {"user": "Was kostet eine Kreditkarte?",
   "expect": {"curr_prod": "Kreditkarte", "answer_contains": "80 Euro"}}
]"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::bundled()?;
    let report = replay_script(&engine, &parse_script(SCRIPT)?)?;
    for t in &report.turns {
        let mark = if t.passed() { "ok  " } else { "FAIL" };
        println!("{mark} {} -> {}", t.user, t.answer);
        for f in &t.failures {
            println!("     {f}");
        }
    }
    println!("{} turns, {} pass, {} fail", report.total, report.pass, report.fail);
    Ok(())
}
