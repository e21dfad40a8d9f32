use std::collections::HashMap;

use thiserror::Error;

pub const BUNDLED_EMBEDDINGS: &str = include_str!("../../data/embeddings.txt");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("embedding header must be `<count> <dimension>`")]
    Header,
    #[error("embedding line {line}: expected {expected} components, found {found}")]
    Dimension {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("embedding line {line}: `{field}` is not a number")]
    NotNumeric { line: usize, field: String },
    #[error("embedding line {line}: zero vector cannot be normalized")]
    ZeroVector { line: usize },
    #[error("vectors have different dimensions ({0} vs {1})")]
    Mismatch(usize, usize),
}

/// Word vectors, unit-normalized at load.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_EMBEDDINGS).expect("bundled embeddings are well-formed")
    }

    pub fn parse(text: &str) -> Result<Self, EmbeddingError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(EmbeddingError::Header)?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|f| f.parse().map_err(|_| EmbeddingError::Header))
            .collect::<Result<_, _>>()?;
        let [_, dimension] = dims[..] else {
            return Err(EmbeddingError::Header);
        };
        if dimension == 0 {
            return Err(EmbeddingError::Header);
        }
        let mut vectors = HashMap::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let mut fields = line.split_whitespace();
            let word = fields.next().expect("non-empty line").to_lowercase();
            let values: Vec<f64> = fields
                .map(|f| {
                    f.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| EmbeddingError::NotNumeric {
                            line: line_no,
                            field: f.to_owned(),
                        })
                })
                .collect::<Result<_, _>>()?;
            if values.len() != dimension {
                return Err(EmbeddingError::Dimension {
                    line: line_no,
                    expected: dimension,
                    found: values.len(),
                });
            }
            let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(EmbeddingError::ZeroVector { line: line_no });
            }
            let unit = values.iter().map(|v| v / norm).collect();
            if vectors.insert(word.clone(), unit).is_some() {
                log::warn!("duplicate embedding for `{word}` on line {line_no}; keeping the later one");
            }
        }
        Ok(Self { dimension, vectors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    /// Cosine of two stored words, if both are present.
    pub fn similarity(&self, a: &str, b: &str) -> Option<f64> {
        let (u, v) = (self.get(a)?, self.get(b)?);
        Some(u.iter().zip(v).map(|(x, y)| x * y).sum())
    }
}

pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, EmbeddingError> {
    if u.len() != v.len() {
        return Err(EmbeddingError::Mismatch(u.len(), v.len()));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}
