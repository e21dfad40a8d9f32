use std::sync::OnceLock;

use super::*;
use crate::service::Engine;

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| Engine::bundled().unwrap())
}

/// Runs a dialogue and returns `(answer, outcome, context)` per turn.
fn dialogue(messages: &[&str]) -> Vec<(String, ResolutionOutcome, ContextObject)> {
    let e = engine();
    let mut ctx = new_context();
    let mut out = Vec::new();
    for m in messages {
        let turn = e.respond(&ctx, m).unwrap();
        ctx = turn.context.clone();
        out.push((turn.envelope.answer, turn.envelope.outcome, turn.context));
    }
    out
}

fn at(ctx: &ContextObject) -> [Option<&str>; 4] {
    [
        ctx.curr_prod.as_deref(),
        ctx.curr_prod_indiv.as_deref(),
        ctx.curr_inode.as_deref(),
        ctx.curr_leaf.as_deref(),
    ]
}

fn query(text: &str) -> crate::nlu::QueryObject {
    engine().parse(text).unwrap().remove(0)
}

#[test]
fn class_mention_lists_subclasses() {
    let d = dialogue(&["Ich interesse für mich für ein Konto"]);
    let (_, o, c) = &d[0];
    assert_eq!(o.kind(), OutcomeKind::ListOptions);
    assert_eq!(o.offered(), ["Girokonto", "Sparkonto"]);
    assert_eq!(at(c), [Some("Konto"), None, None, None]);
}

#[test]
fn subclass_with_several_individuals_fetches_each() {
    let d = dialogue(&["Ich interesse für mich für ein Konto", "Was kostet das Girokonto?"]);
    let (a, o, c) = &d[1];
    assert!(a.contains("60 Euro") && a.contains("kostenlos"), "{a}");
    assert_eq!(o.parts()[0].kind(), OutcomeKind::ContextSwitch);
    assert_eq!(c.curr_prod.as_deref(), Some("Girokonto"));
    assert!(c.is_used("Superkonto", "kosten") && c.is_used("Standard4Konto", "kosten"));
}

#[test]
fn unavailable_product_is_denied_without_switch() {
    let d = dialogue(&["Bieten Sie Leasing an?"]);
    let (a, o, c) = &d[0];
    assert_eq!(a, "Nein, wir bieten nur Privatkredite an.");
    assert_eq!((o.kind(), o.fired_rule), (OutcomeKind::YesNo, FiredRule::B));
    assert_eq!(at(c), [None; 4]);
}

#[test]
fn individual_rule_then_class_rule_without_change_then_switch() {
    let d = dialogue(&[
        "Was ist der Zinssatz bei 4Kredit?",
        "Was kostet der Kredit?",
        "Was kostet eine Kreditkarte?",
    ]);
    assert!(d[0].0.contains("0.23"));
    assert_eq!(d[0].1.fired_rule, FiredRule::A);
    assert_eq!(at(&d[0].2), [Some("Kredit"), Some("4Kredit"), None, None]);

    assert_eq!(d[1].1.fired_rule, FiredRule::B);
    assert_eq!(d[1].1.kind(), OutcomeKind::AttributeValue);
    assert_eq!(at(&d[1].2), at(&d[0].2));

    assert_eq!(d[2].1.kind(), OutcomeKind::Composite);
    assert_eq!(d[2].1.parts()[0].kind(), OutcomeKind::ContextSwitch);
    assert_eq!(at(&d[2].2), [Some("Kreditkarte"), Some("Mastercard"), None, None]);
}

#[test]
fn greeting_with_pronoun_and_empty_context_prompts_for_product() {
    let d = dialogue(&["Hallo, was kostet das?"]);
    assert_eq!((d[0].1.kind(), d[0].1.fired_rule), (OutcomeKind::NoProductPrompt, FiredRule::C));
}

#[test]
fn intent_rule_maps_to_product() {
    let d = dialogue(&["Ich möchte meinen Hausbau finanzieren. Kannst du mir bitte helfen?"]);
    let (_, o, c) = &d[0];
    assert_eq!((o.kind(), o.fired_rule), (OutcomeKind::ContextSwitch, FiredRule::D));
    assert_eq!(c.curr_prod.as_deref(), Some("Hypothek"));
    assert_eq!(c.message_index, 1);
}

#[test]
fn pronoun_resolves_to_individual() {
    let d = dialogue(&["Ich möchte eine Kreditkarte bestellen.", "Was kostet die?"]);
    assert_eq!(d[0].2.curr_prod_indiv.as_deref(), Some("Mastercard"));
    assert_eq!(d[1].1.fired_rule, FiredRule::Pronoun);
    assert!(d[1].0.contains("80 Euro"));
}

#[test]
fn compound_and_bare_phrases_walk_the_ordering_subtree() {
    let d = dialogue(&[
        "Kann ich einen Kredit aufnehmen?",
        "Ist eine Internetbestellung möglich?",
        "Am Telefon?",
    ]);
    assert_eq!(d[0].2.curr_prod_indiv.as_deref(), Some("4Kredit"));
    assert!(d[1].0.starts_with("Ja"));
    assert_eq!(at(&d[1].2)[2..], [Some("Bestellung"), Some("Internet")]);
    match &d[2].1.payload {
        Payload::YesNo { answer, evidence, .. } => assert!(*answer && evidence == "Telefon"),
        other => panic!("{other:?}"),
    }
    assert_eq!(at(&d[2].2)[2..], [Some("Bestellung"), Some("Telefon")]);
}

#[test]
fn unknown_compound_head_under_product_falls_back() {
    let e = engine();
    let ctx = dialogue(&["Ich brauche einen Kredit."]).remove(0).2;
    let q = query("Ist eine Standortbestellung möglich?");
    let (o, next) = e.resolver().resolve(&ctx, &q).unwrap();
    assert_ne!(o.kind(), OutcomeKind::Fallback);
    assert_eq!(next.curr_inode.as_deref(), Some("Bestellung"));
    assert_eq!(next.curr_leaf, None);
    match o.payload {
        Payload::YesNo { answer, .. } => assert!(!answer),
        other => panic!("{other:?}"),
    }

    let mut geld = new_context();
    geld.curr_prod = Some("Geldautomat".into());
    let (o, _) = e.resolver().resolve(&geld, &query("Ist eine Internetbestellung möglich?")).unwrap();
    assert_eq!(o.kind(), OutcomeKind::Fallback);
}

#[test]
fn two_attribute_words_give_composite() {
    let d = dialogue(&["Was kostet eine Kredit und zu welcher Laufzeit?"]);
    let kinds: Vec<OutcomeKind> = d[0].1.parts().iter().map(|p| p.kind()).collect();
    assert_eq!(
        kinds,
        [OutcomeKind::ContextSwitch, OutcomeKind::AttributeValue, OutcomeKind::AttributeValue]
    );
}

#[test]
fn multi_sentence_message_resolves_each_sentence_once() {
    let d = dialogue(&[
        "Sind meine Unterlagen schon bei Ihnen eingegangen? Falls ja, wo erfahre ich den aktuellen Bearbeitungsstand?",
    ]);
    let (_, o, c) = &d[0];
    assert_eq!(c.message_index, 1);
    assert_eq!(c.curr_inode.as_deref(), Some("Unterlagen"));
    assert!(c.is_used("Unterlagen", "eingang") && c.is_used("Unterlagen", "bearbeitungsstand"));
    assert_eq!(o.kind(), OutcomeKind::Composite);
}

#[test]
fn listing_skips_visited_offerings() {
    let d = dialogue(&["Was bieten Sie an?", "Was kostet der Kredit?", "Welche anderen Produkte haben Sie?"]);
    assert_eq!(d[0].1.kind(), OutcomeKind::NoProductPrompt);
    assert!(d[1].2.visited_nodes.contains("Kredit"));
    assert_eq!(d[2].1.offered(), ["Konto", "Kreditkarte"]);
}

#[test]
fn attribute_word_uses_context_and_suggests_next_property() {
    let d = dialogue(&["Ich brauche einen Kredit.", "Was ist die Laufzeit?"]);
    assert_eq!(d[0].0, "Wir bieten Ihnen 4Kredit an.");
    assert!(d[1].0.contains("12 bis 84"));
    assert!(d[1].0.ends_with("Wie hoch ist Dein Kreditwunsch?"));
    assert!(d[1].2.is_used("4Kredit", "laufzeit"));
    assert_eq!(
        d[1].1.suggestion,
        Some(Suggestion::Attribute {
            node: "4Kredit".into(),
            property: "betrag".into()
        })
    );
}

#[test]
fn greeting_changes_nothing_but_the_index() {
    let e = engine();
    let ctx = dialogue(&["Ich brauche einen Kredit."]).remove(0).2;
    let (o, next) = e.resolver().resolve(&ctx, &query("Hallo")).unwrap();
    assert_eq!(o.kind(), OutcomeKind::GreetingEcho);
    let mut expected = ctx.clone();
    expected.message_index += 1;
    assert_eq!(next, expected);
}

#[test]
fn resolve_leaves_input_untouched_and_rejects_corrupt_state() {
    let e = engine();
    let ctx = new_context();
    let before = ctx.clone();
    let _ = e.resolver().resolve(&ctx, &query("Was kostet eine Kreditkarte?")).unwrap();
    assert_eq!(ctx, before);

    let mut bad = new_context();
    bad.curr_prod = Some("Bausparvertrag".into());
    assert!(matches!(
        e.resolver().resolve(&bad, &query("Hallo")),
        Err(ContextError::CorruptState(_))
    ));
    let mut mismatched = new_context();
    mismatched.curr_prod = Some("Konto".into());
    mismatched.curr_prod_indiv = Some("4Kredit".into());
    assert!(mismatched.validate(e.graph()).is_err());
    assert!(matches!(
        e.resolver().resolve_message(&ctx, &[]),
        Err(ContextError::EmptyMessage)
    ));
}

#[test]
fn pronoun_without_referent_asks_back() {
    let e = engine();
    let (o, _) = e.resolver().resolve_pronoun(&new_context(), &query("Was kostet das?")).unwrap();
    match o.payload {
        Payload::Clarify { reason, .. } => assert_eq!(reason, ClarifyReason::NoReferent),
        other => panic!("{other:?}"),
    }
}

#[test]
fn implicit_places_node_under_attribute_concept_as_leaf() {
    let e = engine();
    let mut ctx = new_context();
    ctx.curr_prod = Some("Kredit".into());
    let (_, next) = e
        .resolver()
        .resolve_implicit(&ctx, &query("Geht das in der Filiale?"))
        .unwrap()
        .unwrap();
    assert_eq!(at(&next)[2..], [Some("Bestellung"), Some("Filiale")]);
    assert!(e
        .resolver()
        .resolve_implicit(&new_context(), &query("Was ist mit dem Wetter?"))
        .unwrap()
        .is_none());
}

#[test]
fn exhausted_listing_falls_back() {
    let e = engine();
    let mut ctx = new_context();
    for n in e.graph().top_level_offerings() {
        ctx.mark_visited(e.graph(), &n).unwrap();
    }
    let (o, _) = e.resolver().resolve(&ctx, &query("Welche Produkte haben Sie?")).unwrap();
    assert_eq!(o.kind(), OutcomeKind::Fallback);
    let (o, _) = e.resolver().resolve(&ctx, &query("Was kostet das?")).unwrap();
    assert_eq!(o.kind(), OutcomeKind::Fallback);
}

#[test]
fn mark_helpers_reject_unknown_ids() {
    let g = engine().graph();
    let mut ctx = new_context();
    assert!(matches!(ctx.mark_visited(g, "Nope"), Err(ContextError::UnknownNode(_))));
    assert!(matches!(ctx.mark_used(g, "4Kredit", "nope"), Err(ContextError::UnknownProperty(_))));
    ctx.mark_used(g, "4Kredit", "zins").unwrap();
    assert!(ctx.is_used("4Kredit", "zins"));
}

#[test]
fn eoi_history_is_capped() {
    let mut ctx = new_context();
    for i in 0..(EOI_HISTORY_LIMIT + 7) {
        ctx.message_index = i as u64;
        ctx.record("Kredit", EoiRole::Product);
    }
    assert_eq!(ctx.eoi_history.len(), EOI_HISTORY_LIMIT);
    assert_eq!(ctx.eoi_history[0].message_index, 7);
}

#[test]
fn suggestion_skips_hints_and_used_properties() {
    let g = engine().graph();
    let mut ctx = new_context();
    assert_eq!(suggest_next(&ctx, g), None);
    ctx.curr_prod = Some("Kredit".into());
    ctx.curr_prod_indiv = Some("4Kredit".into());
    for p in ["betrag", "kosten", "laufzeit", "zins"] {
        ctx.mark_used(g, "4Kredit", p).unwrap();
    }
    assert_eq!(suggest_next(&ctx, g), None);
}

#[test]
fn combine_never_wraps_a_single_outcome() {
    let one = ResolutionOutcome::new(Payload::ChitchatEcho, FiredRule::None);
    assert_eq!(ResolutionOutcome::combine(vec![one.clone()]), Some(one.clone()));
    assert_eq!(ResolutionOutcome::combine(vec![]), None);
    let two = ResolutionOutcome::combine(vec![
        ResolutionOutcome::new(Payload::ListOptions { options: vec![] }, FiredRule::C),
        one,
    ])
    .unwrap();
    assert_eq!((two.kind(), two.fired_rule), (OutcomeKind::Composite, FiredRule::C));
}

#[test]
fn snapshot_serializes_expected_fields() {
    let ctx = dialogue(&["Was kostet der Kredit?"]).remove(0).2;
    let v = serde_json::to_value(ctx.snapshot()).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "curr_inode",
            "curr_leaf",
            "curr_prod",
            "curr_prod_indiv",
            "message_index",
            "used_edges",
            "visited_nodes"
        ]
    );
    assert_eq!(v["used_edges"][0], serde_json::json!(["4Kredit", "kosten"]));
}

#[test]
fn outcome_json_is_flat_and_tagged() {
    let o = dialogue(&["Bieten Sie Leasing an?"]).remove(0).1;
    let v = serde_json::to_value(&o).unwrap();
    assert_eq!(v["kind"], "yes_no");
    assert_eq!(v["fired_rule"], "b");
    assert_eq!(v["answer"], false);
}

mod properties {
    use proptest::prelude::*;

    use super::*;

    const PHRASES: &[&str] = &[
        "Hallo",
        "Was kostet das?",
        "Was kostet der Kredit?",
        "Ich interesse mich für ein Konto",
        "Was kostet das Girokonto?",
        "Welche anderen Produkte haben Sie?",
        "Bieten Sie Leasing an?",
        "Was ist die Laufzeit?",
        "Ist eine Internetbestellung möglich?",
        "Am Telefon?",
        "Was ist der Zinssatz bei 4Kredit?",
        "Ich möchte meinen Hausbau finanzieren.",
        "Wo ist der nächste Geldautomat?",
        "Sind meine Unterlagen schon eingegangen?",
        "Danke",
        "Das Mädchen ist schön.",
        "Ich möchte eine Kreditkarte bestellen.",
        "Welche Dienstleistungen bieten Sie an?",
    ];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn transitions_keep_invariants(picks in proptest::collection::vec(0..PHRASES.len(), 1..8)) {
            let e = engine();
            let g = e.graph();
            let mut ctx = new_context();
            for p in picks {
                let (o, next) = e.resolver().resolve_message(&ctx, &e.parse(PHRASES[p]).unwrap()).unwrap();
                prop_assert!(next.validate(g).is_ok());
                prop_assert_eq!(next.message_index, ctx.message_index + 1);
                prop_assert!(ctx.visited_nodes.is_subset(&next.visited_nodes));
                prop_assert!(ctx.used_edges.is_subset(&next.used_edges));
                for offered in o.offered() {
                    prop_assert!(!ctx.visited_nodes.contains(offered), "{} offered again", offered);
                }
                if let Payload::Composite { parts } = &o.payload {
                    prop_assert!(parts.len() >= 2);
                }
                if let Some(Suggestion::Attribute { node, property }) = &o.suggestion {
                    prop_assert!(!next.is_used(node, property));
                }
                prop_assert!(!e.generator().generate(&o, None).is_empty());
                ctx = next;
            }
        }
    }
}
