use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Role a class plays in the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Product,
    Service,
    Concept,
    AttributeConcept,
}

impl ClassKind {
    pub fn is_offering(self) -> bool {
        matches!(self, ClassKind::Product | ClassKind::Service)
    }
}

/// A literal stored under a data property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Boolean(bool),
    Number(f64),
    Text(String),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Boolean(true) => f.write_str("ja"),
            Literal::Boolean(false) => f.write_str("nein"),
            Literal::Number(n) => write!(f, "{n}"),
            Literal::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttributeValue {
    pub value: Literal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

impl AttributeValue {
    pub fn text(value: impl Into<String>) -> Self {
        Self {
            value: Literal::Text(value.into()),
            unit: None,
        }
    }

    pub fn number(value: f64, unit: Option<&str>) -> Self {
        Self {
            value: Literal::Number(value),
            unit: unit.map(str::to_owned),
        }
    }
}

/// Renders value and unit as surface text, e.g. `0.23 %` or `80 Euro jährlich`.
impl fmt::Display for AttributeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unit {
            Some(unit) => write!(f, "{} {}", self.value, unit),
            None => write!(f, "{}", self.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OntologyClass {
    pub id: String,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub parents: Vec<String>,
    pub kind: ClassKind,
    #[serde(default)]
    pub synonyms: Vec<String>,
    /// Plural surface form used when the class is offered in a list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plural: Option<String>,
    /// Class-level defaults, inherited by individuals and subclasses.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, AttributeValue>,
}

impl OntologyClass {
    pub fn plural_label(&self) -> &str {
        self.plural.as_deref().unwrap_or(&self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Individual {
    pub id: String,
    #[serde(default)]
    pub label: String,
    #[serde(rename = "class")]
    pub class_id: String,
    #[serde(default)]
    pub attributes: BTreeMap<String, AttributeValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectProperty {
    pub id: String,
    #[serde(default)]
    pub label: String,
    #[serde(rename = "domain")]
    pub domain_class: String,
    #[serde(rename = "range")]
    pub range_class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataProperty {
    pub id: String,
    #[serde(default)]
    pub label: String,
    #[serde(rename = "domain")]
    pub domain_class: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub synonyms: Vec<String>,
}

/// The on-disk JSON form of an ontology.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OntologyDocument {
    #[serde(default)]
    pub classes: Vec<OntologyClass>,
    #[serde(default)]
    pub individuals: Vec<Individual>,
    #[serde(default)]
    pub object_properties: Vec<ObjectProperty>,
    #[serde(default)]
    pub data_properties: Vec<DataProperty>,
    /// Designated root of all product classes; defaults to `Finanzprodukt`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_root: Option<String>,
    /// Designated root of all service classes; defaults to `Dienstleistung`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub service_root: Option<String>,
}

pub const DEFAULT_PRODUCT_ROOT: &str = "Finanzprodukt";
pub const DEFAULT_SERVICE_ROOT: &str = "Dienstleistung";

/// Borrowed view of any addressable node.
#[derive(Debug, Clone, Copy)]
pub enum NodeRef<'a> {
    Class(&'a OntologyClass),
    Individual(&'a Individual),
}

impl<'a> NodeRef<'a> {
    pub fn id(&self) -> &'a str {
        match self {
            NodeRef::Class(c) => &c.id,
            NodeRef::Individual(i) => &i.id,
        }
    }

    pub fn label(&self) -> &'a str {
        match self {
            NodeRef::Class(c) => &c.label,
            NodeRef::Individual(i) => &i.label,
        }
    }

    pub fn attributes(&self) -> &'a BTreeMap<String, AttributeValue> {
        match self {
            NodeRef::Class(c) => &c.attributes,
            NodeRef::Individual(i) => &i.attributes,
        }
    }

    pub fn is_individual(&self) -> bool {
        matches!(self, NodeRef::Individual(_))
    }
}
