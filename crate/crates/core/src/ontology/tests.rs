use std::collections::{BTreeSet, HashSet};

use super::*;

const SAMPLE: &str = include_str!("../../data/ontology.json");

fn sample() -> OntologyGraph {
    OntologyGraph::from_json(SAMPLE).expect("sample ontology loads")
}

fn doc(text: &str) -> Result<OntologyGraph, OntologyError> {
    OntologyGraph::from_json(text)
}

#[test]
fn sample_has_mastercard_under_kreditkarte() {
    let g = sample();
    assert_eq!(g.individuals_of("Kreditkarte", false).unwrap(), vec!["Mastercard"]);
}

#[test]
fn empty_document_is_valid() {
    let g = doc(r#"{"classes":[],"individuals":[]}"#).unwrap();
    assert_eq!(g.node_count(), 0);
}

#[test]
fn two_class_cycle_is_rejected() {
    let err = doc(
        r#"{"classes":[{"id":"A","parents":["B"],"kind":"concept"},{"id":"B","parents":["A"],"kind":"concept"}]}"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("subclass cycle"), "{err}");
}

#[test]
fn every_violation_is_listed() {
    let err = doc(
        r#"{"classes":[{"id":"A","parents":["Nope"],"kind":"concept"},{"id":"A","kind":"concept"}],
            "individuals":[{"id":"i","class":"Ghost"}]}"#,
    )
    .unwrap_err();
    let OntologyError::Validation(issues) = err else {
        panic!("expected validation error");
    };
    assert_eq!(issues.len(), 3, "{issues:?}");
}

#[test]
fn unknown_keys_are_rejected_with_position() {
    let err = doc(r#"{"classes":[{"id":"A","kind":"concept","lable":"x"}]}"#).unwrap_err();
    match err {
        OntologyError::Parse { line, message, .. } => {
            assert_eq!(line, 1);
            assert!(message.contains("lable"));
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn product_outside_roots_is_rejected() {
    let err = doc(r#"{"classes":[{"id":"X","kind":"product"}]}"#).unwrap_err();
    assert!(err.to_string().contains("not below"), "{err}");
}

#[test]
fn attribute_outside_domain_is_rejected() {
    let err = doc(
        r#"{"classes":[{"id":"Finanzprodukt","kind":"concept"},{"id":"Other","kind":"concept"}],
            "individuals":[{"id":"i","class":"Other","attributes":{"kosten":{"value":1}}}],
            "data_properties":[{"id":"kosten","domain":"Finanzprodukt"}]}"#,
    )
    .unwrap_err();
    assert!(err.to_string().contains("outside"), "{err}");
}

#[test]
fn direct_subclasses_of_konto() {
    let g = sample();
    assert_eq!(g.subclasses("Konto", true).unwrap(), vec!["Girokonto", "Sparkonto"]);
    assert!(g.subclasses("Girokonto", true).unwrap().is_empty());
    assert!(matches!(g.subclasses("Nope", true), Err(OntologyError::UnknownClass(_))));
}

#[test]
fn transitive_subclasses_match_join_closure() {
    let g = sample();
    // Repeatedly join the (child, parent) table until no new descendant appears.
    let edges: Vec<(String, String)> = g
        .classes()
        .flat_map(|c| c.parents.iter().map(move |p| (c.id.clone(), p.clone())))
        .collect();
    let mut closure: BTreeSet<String> = BTreeSet::from(["Finanzprodukt".to_owned()]);
    loop {
        let before = closure.len();
        for (child, parent) in &edges {
            if closure.contains(parent) {
                closure.insert(child.clone());
            }
        }
        if closure.len() == before {
            break;
        }
    }
    closure.remove("Finanzprodukt");
    let got = g.subclasses("Finanzprodukt", false).unwrap();
    assert_eq!(got, closure.into_iter().collect::<Vec<_>>());
}

#[test]
fn individuals_of_girokonto() {
    let g = sample();
    assert_eq!(
        g.individuals_of("Girokonto", false).unwrap(),
        vec!["Standard4Konto", "Superkonto"]
    );
    assert!(g.individuals_of("Leasing", false).unwrap().is_empty());
    assert_eq!(g.individuals_of("Konto", false).unwrap().len(), 0);
    assert_eq!(g.individuals_of("Konto", true).unwrap().len(), 3);
}

#[test]
fn every_individual_is_listed_under_its_class() {
    let g = sample();
    for i in g.individuals() {
        assert!(g.individuals_of(&i.class_id, false).unwrap().contains(&i.id));
    }
}

#[test]
fn bfs_finds_internet_under_bestellung() {
    let g = sample();
    let hit = g.bfs_under("Bestellung", "internet", &HashSet::new()).unwrap();
    assert_eq!(hit.as_deref(), Some("Internet"));
}

#[test]
fn bfs_hits_root_at_depth_zero() {
    let g = sample();
    let hit = g.bfs_under("Kredit", "kredit", &HashSet::new()).unwrap();
    assert_eq!(hit.as_deref(), Some("Kredit"));
}

#[test]
fn bfs_respects_skip_set() {
    let g = sample();
    let skip = HashSet::from(["Internet".to_owned()]);
    assert_eq!(g.bfs_under("Kredit", "telefon", &skip).unwrap().as_deref(), Some("Telefon"));
    assert_eq!(g.bfs_under("Kredit", "internet", &skip).unwrap(), None);
    assert!(matches!(
        g.bfs_under("Nope", "x", &HashSet::new()),
        Err(OntologyError::UnknownNode(_))
    ));
}

#[test]
fn bfs_matches_synonyms() {
    let g = sample();
    let hit = g.bfs_under("Finanzprodukt", "karte", &HashSet::new()).unwrap();
    assert_eq!(hit.as_deref(), Some("Kreditkarte"));
}

#[test]
fn lookup_on_individual_and_class_default() {
    let g = sample();
    let hit = g.lookup_attribute("Mastercard", "kosten").unwrap().unwrap();
    assert_eq!(hit.value.to_string(), "80 Euro jährlich");
    assert_eq!(hit.holder, "Mastercard");

    let hit = g.lookup_attribute("4Kredit", "zins").unwrap().unwrap();
    assert_eq!(hit.value.value, Literal::Number(0.23));
    assert_eq!(hit.value.to_string(), "0.23 %");

    assert!(g.lookup_attribute("Mastercard", "nonexistent").unwrap().is_none());

    let hit = g.lookup_attribute("Kreditkarte", "kosten").unwrap().unwrap();
    assert_eq!(hit.holder, "Kreditkarte");
}

#[test]
fn lookup_matches_property_synonyms() {
    let g = sample();
    let hit = g.lookup_attribute("4Kredit", "zinssatz").unwrap().unwrap();
    assert_eq!(hit.property, "zins");
}

#[test]
fn lookup_inherits_from_ancestor() {
    let g = doc(
        r#"{"classes":[{"id":"Finanzprodukt","kind":"concept","attributes":{"kosten":{"value":"gratis"}}},
                       {"id":"K","parents":["Finanzprodukt"],"kind":"product"}],
            "individuals":[{"id":"k1","class":"K"}],
            "data_properties":[{"id":"kosten","domain":"Finanzprodukt"}]}"#,
    )
    .unwrap();
    let hit = g.lookup_attribute("k1", "kosten").unwrap().unwrap();
    assert_eq!(hit.holder, "Finanzprodukt");
}

#[test]
fn ancestors_are_nearest_first() {
    let g = sample();
    assert_eq!(g.ancestors("Hypothek"), vec!["Kredit", "Finanzprodukt"]);
}

#[test]
fn topological_order_covers_all_classes() {
    let g = sample();
    let order = g.topological_order();
    assert_eq!(order.len(), g.classes().count());
    let pos = |id: &str| order.iter().position(|o| o == id).unwrap();
    for c in g.classes() {
        for p in &c.parents {
            assert!(pos(p) < pos(&c.id));
        }
    }
}

#[test]
fn document_round_trip_preserves_entities() {
    let g = sample();
    let text = serde_json::to_string(&g.to_document()).unwrap();
    let again = OntologyGraph::from_json(&text).unwrap();
    assert_eq!(g.to_document(), again.to_document());
}

#[test]
fn metrics_small_cases() {
    let single = doc(r#"{"classes":[{"id":"A","kind":"concept"}]}"#).unwrap();
    let m = graph_metrics(&single);
    assert_eq!((m.avg_degree, m.max_out_degree, m.max_in_degree), (0.0, 0, 0));

    let pair = doc(
        r#"{"classes":[{"id":"A","kind":"concept"},{"id":"B","kind":"concept"}],
            "object_properties":[{"id":"r","domain":"A","range":"B"}]}"#,
    )
    .unwrap();
    let m = graph_metrics(&pair);
    assert_eq!(m.avg_degree, 1.0);
    assert_eq!((m.max_out_degree, m.max_in_degree), (1, 1));
}

#[test]
fn sample_metrics_by_hand() {
    let m = graph_metrics(&sample());
    // Bank has two outgoing relations; Bestellung receives three.
    assert_eq!(m.max_out_degree, 2);
    assert_eq!(m.max_in_degree, 3);
    assert_eq!(m.directed_edges, 7);
}

#[test]
fn top_level_offerings_skip_empty_products() {
    let g = sample();
    assert_eq!(
        g.top_level_offerings(),
        vec!["Geldautomat", "Konto", "Kredit", "Kreditkarte"]
    );
}
