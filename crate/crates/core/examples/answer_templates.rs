//! Renders hand-built outcomes with a custom template set.
//!
//! `cargo run --example answer_templates`

use ontodm::answer::{AnswerGenerator, TemplateSet};
use ontodm::context::{FiredRule, Payload, ResolutionOutcome};
use ontodm::service::Engine;

const TEMPLATES: &str = "\
list_options.any = Zur Auswahl stehen {options}.
yes_no.true = Ja, {hint}
yes_no.true = Ja.
fallback.any = Wie bitte?
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = Engine::bundled()?;
    let templates = TemplateSet::parse(TEMPLATES)?;
    let generator = AnswerGenerator {
        templates: &templates,
        graph: engine.graph(),
    };
    let outcomes = [
        Payload::ListOptions {
            options: vec!["Girokonto".into(), "Sparkonto".into(), "Kreditkarte".into()],
        },
        Payload::YesNo {
            answer: true,
            evidence: "Telefon".into(),
            hint: None,
        },
        Payload::ChitchatEcho,
    ];
    for payload in outcomes {
        let outcome = ResolutionOutcome::new(payload, FiredRule::None);
        println!("{:16} {}", outcome.kind().as_str(), generator.generate(&outcome, None));
    }
    Ok(())
}
