//! Random ontologies and utterances shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ontodm::ontology::{
    AttributeValue, ClassKind, DataProperty, Individual, Literal, ObjectProperty, OntologyClass, OntologyDocument,
    DEFAULT_PRODUCT_ROOT, DEFAULT_SERVICE_ROOT,
};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const CLASS_WORDS: &[&str] = &[
    "Kredit", "Konto", "Karte", "Kreditkarte", "Girokonto", "Sparkonto", "Hypothek", "Leasing", "Bestellung",
    "Internet", "Telefon", "Filiale", "Unterlagen", "Geldautomat", "Depot", "Fonds", "Versicherung", "Beratung",
    "Bausparvertrag", "Tagesgeld", "Festgeld", "Aktie", "Anleihe", "Kundenservice", "Zahlung", "Verkehr",
];

const INDIVIDUAL_WORDS: &[&str] = &[
    "4Kredit", "Mastercard", "Visa", "Superkonto", "Standard4Konto", "4Sparkonto", "4Hypothek", "Goldkarte",
    "Basiskonto", "Junior", "Premium", "Classic", "Tiergarten", "Mitte",
];

const PROPERTY_WORDS: &[(&str, &[&str])] = &[
    ("zins", &["Zinssatz", "Zinsen"]),
    ("kosten", &["Gebühr", "Preis"]),
    ("laufzeit", &[]),
    ("betrag", &["Kreditwunsch"]),
    ("hinweis", &[]),
    ("standort", &["Adresse"]),
    ("eingang", &["Eingang"]),
    ("limit", &["Rahmen"]),
];

const UNITS: &[&str] = &["%", "Euro", "Monate", "Euro jährlich"];

/// A valid ontology with at most `max_nodes` classes and individuals.
///
/// Subclass edges only point to earlier classes, so the hierarchy is acyclic;
/// offering kinds are only given to classes below one of the two roots.
pub fn random_document(rng: &mut TestRng, max_nodes: usize) -> OntologyDocument {
    let max_nodes = max_nodes.max(2);
    let mut ids: BTreeSet<String> = BTreeSet::new();
    let fresh = |base: &str, ids: &mut BTreeSet<String>| {
        let mut id = base.to_owned();
        let mut n = 2;
        while !ids.insert(id.clone()) {
            id = format!("{base}{n}");
            n += 1;
        }
        id
    };

    let mut classes: Vec<OntologyClass> = Vec::new();
    // ancestors (inclusive) per class, in insertion order
    let mut lineage: Vec<BTreeSet<String>> = Vec::new();
    let mut under_root: Vec<bool> = Vec::new();
    for root in [DEFAULT_PRODUCT_ROOT, DEFAULT_SERVICE_ROOT] {
        let id = fresh(root, &mut ids);
        classes.push(class(&id, Vec::new(), ClassKind::Concept));
        lineage.push(BTreeSet::from([id]));
        under_root.push(true);
    }

    let total = rng.random_range(2..=max_nodes);
    let n_classes = rng.random_range(2..=total);
    let n_individuals = total - n_classes;

    while classes.len() < n_classes {
        let label = *CLASS_WORDS.choose(rng).expect("non-empty");
        let id = fresh(label, &mut ids);
        let mut parents = Vec::new();
        if rng.random_bool(0.85) {
            parents.push(classes[rng.random_range(0..classes.len())].id.clone());
            if rng.random_bool(0.1) {
                let extra = classes[rng.random_range(0..classes.len())].id.clone();
                if !parents.contains(&extra) {
                    parents.push(extra);
                }
            }
        }
        let mut lin: BTreeSet<String> = BTreeSet::from([id.clone()]);
        let mut rooted = false;
        for p in &parents {
            let idx = classes.iter().position(|c| &c.id == p).expect("parent exists");
            lin.extend(lineage[idx].iter().cloned());
            rooted |= under_root[idx];
        }
        let kind = if rooted {
            *[ClassKind::Product, ClassKind::Product, ClassKind::Service, ClassKind::Concept, ClassKind::AttributeConcept]
                .choose(rng)
                .expect("non-empty")
        } else {
            *[ClassKind::Concept, ClassKind::AttributeConcept].choose(rng).expect("non-empty")
        };
        let mut c = class(&id, parents, kind);
        if id != label {
            c.label = label.to_owned();
        }
        if rng.random_bool(0.2) {
            c.synonyms.push(CLASS_WORDS.choose(rng).expect("non-empty").to_string());
        }
        classes.push(c);
        lineage.push(lin);
        under_root.push(rooted);
    }

    let mut individuals: Vec<Individual> = Vec::new();
    for _ in 0..n_individuals {
        let label = *INDIVIDUAL_WORDS.choose(rng).expect("non-empty");
        let id = fresh(label, &mut ids);
        individuals.push(Individual {
            label: if id == label { String::new() } else { label.to_owned() },
            id,
            class_id: classes[rng.random_range(0..classes.len())].id.clone(),
            attributes: BTreeMap::new(),
        });
    }

    let mut data_properties = Vec::new();
    for (pid, synonyms) in PROPERTY_WORDS {
        if rng.random_bool(0.6) {
            data_properties.push(DataProperty {
                id: pid.to_string(),
                label: String::new(),
                domain_class: classes[rng.random_range(0..classes.len())].id.clone(),
                synonyms: synonyms.iter().map(|s| s.to_string()).collect(),
            });
        }
    }

    let lineage_of = |class_id: &str| -> &BTreeSet<String> {
        let idx = classes.iter().position(|c| c.id == class_id).expect("class exists");
        &lineage[idx]
    };
    let mut class_attrs: Vec<BTreeMap<String, AttributeValue>> = vec![BTreeMap::new(); classes.len()];
    for (lin, attrs) in lineage.iter().zip(class_attrs.iter_mut()) {
        for p in &data_properties {
            if lin.contains(&p.domain_class) && rng.random_bool(0.25) {
                attrs.insert(p.id.clone(), random_value(rng));
            }
        }
    }
    for ind in &mut individuals {
        let lin = lineage_of(&ind.class_id).clone();
        for p in &data_properties {
            if lin.contains(&p.domain_class) && rng.random_bool(0.5) {
                ind.attributes.insert(p.id.clone(), random_value(rng));
            }
        }
    }
    for (c, attrs) in classes.iter_mut().zip(class_attrs) {
        c.attributes = attrs;
    }

    let mut object_properties = Vec::new();
    for n in 0..rng.random_range(0..=8usize) {
        let domain = classes[rng.random_range(0..classes.len())].id.clone();
        let range = classes[rng.random_range(0..classes.len())].id.clone();
        object_properties.push(ObjectProperty {
            id: format!("rel{n}"),
            label: ["bestellen", "anbieten", "einreichen"].choose(rng).expect("non-empty").to_string(),
            domain_class: domain,
            range_class: range,
        });
    }

    OntologyDocument {
        classes,
        individuals,
        object_properties,
        data_properties,
        product_root: None,
        service_root: None,
    }
}

fn class(id: &str, parents: Vec<String>, kind: ClassKind) -> OntologyClass {
    OntologyClass {
        id: id.to_owned(),
        label: String::new(),
        parents,
        kind,
        synonyms: Vec::new(),
        plural: None,
        attributes: BTreeMap::new(),
    }
}

fn random_value(rng: &mut TestRng) -> AttributeValue {
    match rng.random_range(0..3) {
        0 => AttributeValue::number(
            (rng.random_range(0..10_000) as f64) / 100.0,
            Some(UNITS.choose(rng).expect("non-empty")),
        ),
        1 => AttributeValue {
            value: Literal::Boolean(rng.random_bool(0.5)),
            unit: None,
        },
        _ => AttributeValue::text(["kostenlos", "12 bis 84 Monate", "telefonisch", "online"].choose(rng).expect("non-empty").to_string()),
    }
}

const FIXED_UTTERANCES: &[&str] = &[
    "Hallo",
    "Danke",
    "Was kostet das?",
    "Was kostet die?",
    "Welche anderen Produkte haben Sie?",
    "Was bieten Sie an?",
    "Am Telefon?",
    "Ist eine Internetbestellung möglich?",
    "Ich möchte meinen Hausbau finanzieren.",
    "Was ist die Laufzeit?",
    "Wie hoch sind die Zinsen?",
    "Das Mädchen ist schön.",
    "Sind meine Unterlagen schon eingegangen? Falls ja, wo erfahre ich den Bearbeitungsstand?",
    "Tschüss",
];

/// A German utterance built from the node and property labels of `doc`.
pub fn random_utterance(rng: &mut TestRng, doc: &OntologyDocument) -> String {
    let mut names: Vec<String> = doc
        .classes
        .iter()
        .map(|c| if c.label.is_empty() { c.id.clone() } else { c.label.clone() })
        .chain(doc.individuals.iter().map(|i| if i.label.is_empty() { i.id.clone() } else { i.label.clone() }))
        .collect();
    names.push("Kredit".into());
    let mut props: Vec<String> = doc
        .data_properties
        .iter()
        .flat_map(|p| std::iter::once(p.id.clone()).chain(p.synonyms.iter().cloned()))
        .collect();
    props.push("Laufzeit".into());
    let x = names.choose(rng).expect("non-empty").clone();
    let y = names.choose(rng).expect("non-empty").clone();
    let p = capitalize(props.choose(rng).expect("non-empty"));
    match rng.random_range(0..14) {
        0 => format!("Was kostet {x}?"),
        1 => format!("Was ist der {p} bei {x}?"),
        2 => format!("Bieten Sie {x} an?"),
        3 => format!("Ich interessiere mich für {x}"),
        4 => format!("Ist eine {x}{} möglich?", y.to_lowercase()),
        5 => format!("Am {x}?"),
        6 => format!("Was kostet {x} und zu welcher {p}?"),
        7 => format!("Wie hoch ist der {p}?"),
        8 => format!("Ich brauche einen {x}."),
        9 => format!("{x} oder {y}?"),
        10 => format!("Hallo, was ist mit {x}? Und {y}?"),
        11 => {
            let len = rng.random_range(1..12);
            (0..len)
                .map(|_| rng.random_range(b'a'..=b'z') as char)
                .collect::<String>()
        }
        _ => FIXED_UTTERANCES.choose(rng).expect("non-empty").to_string(),
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}
