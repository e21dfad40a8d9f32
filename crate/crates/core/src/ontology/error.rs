use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OntologyError {
    #[error("ontology parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ontology is invalid:\n{}", render_issues(.0))]
    Validation(Vec<ValidationIssue>),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
}

/// A single violated invariant found during validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    DuplicateId(String),
    DanglingReference {
        from: String,
        field: &'static str,
        target: String,
    },
    SubclassCycle(Vec<String>),
    OfferingOutsideRoots(String),
    AttributeOutsideDomain { owner: String, property: String },
    NonFiniteNumber { owner: String, property: String },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            ValidationIssue::DanglingReference { from, field, target } => {
                write!(f, "dangling id `{target}` in `{from}`.{field}")
            }
            ValidationIssue::SubclassCycle(path) => {
                write!(f, "subclass cycle through {}", path.join(" -> "))
            }
            ValidationIssue::OfferingOutsideRoots(id) => {
                write!(f, "product/service class `{id}` is not below the product or service root")
            }
            ValidationIssue::AttributeOutsideDomain { owner, property } => {
                write!(f, "`{owner}` sets `{property}` outside that property's domain")
            }
            ValidationIssue::NonFiniteNumber { owner, property } => {
                write!(f, "`{owner}`.`{property}` is not a finite number")
            }
        }
    }
}

fn render_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  - {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}
