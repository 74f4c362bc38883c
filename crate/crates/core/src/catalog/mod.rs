//! Data-driven catalog of the fifty four-dimensional subalgebras and their
//! published invariants.
//!
//! The catalog is data, not code: a reviewed JSON file whose entries carry a
//! parameter domain, four generator coefficient vectors over the twelve
//! basis generators, and four invariant expressions (the density is an
//! implicit fifth invariant of every entry). Transcription errors surface as
//! verification failures, which is the point of the tool.

mod sample;
mod verify;

pub use sample::sample_parameters;
pub use verify::{
    verify_closure, verify_independence, verify_invariants, CatalogPolicy, EntryCheck,
};

use crate::expr::{parse, Expr, Rat};
use crate::lie::DIM;
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::Path;
use thiserror::Error;

pub const CATALOG_SIZE: usize = 50;

/// Target of a sum-of-squares equality: the constant one or a binary switch
/// parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumSqTarget {
    One,
    Binary(String),
}

/// Admissible values for an entry's parameters: equality constraints
/// (sums of squares, binary switches) plus strict inequations.
#[derive(Debug, Clone, Default)]
pub struct ParameterDomain {
    pub names: Vec<String>,
    pub sum_squares: Vec<(Vec<String>, SumSqTarget)>,
    pub binary: Vec<String>,
    pub nonzero: BTreeSet<String>,
    pub not_equal: Vec<(String, Rat)>,
    pub not_all_zero: Vec<Vec<String>>,
}

/// One subalgebra: four generator coefficient vectors in the
/// `(X1 .. X11, Y1)` basis, with entries depending on the parameters.
#[derive(Debug, Clone)]
pub struct SubalgebraSpec {
    pub id: String,
    pub params: ParameterDomain,
    pub generators: [[Expr; DIM]; 4],
}

/// The published invariants of one subalgebra; the density is an implicit
/// fifth member.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub id: String,
    pub invariants: [Expr; 4],
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub spec: SubalgebraSpec,
    pub invariants: InvariantSet,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog schema violation: {0}")]
    Schema(String),
    #[error("duplicate subalgebra id '{0}'")]
    DuplicateId(String),
    #[error("entry '{id}', {field}: {source}")]
    BadExpression {
        id: String,
        field: String,
        source: crate::expr::ParseError,
    },
    #[error("expected {CATALOG_SIZE} entries, found {0}")]
    WrongCount(usize),
}

#[derive(Deserialize)]
struct RawParam {
    name: String,
    #[serde(default)]
    nonzero: bool,
}

#[derive(Deserialize)]
struct RawSumSq {
    vars: Vec<String>,
    #[serde(default)]
    target: Option<String>,
}

#[derive(Deserialize)]
struct RawNotEqual {
    name: String,
    value: String,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    #[serde(default)]
    parameters: Vec<RawParam>,
    #[serde(default)]
    sum_sq: Vec<RawSumSq>,
    #[serde(default)]
    binary: Vec<String>,
    #[serde(default)]
    not_equal: Vec<RawNotEqual>,
    #[serde(default)]
    not_all_zero: Vec<Vec<String>>,
    generators: Vec<Vec<String>>,
    invariants: Vec<String>,
}

const CATALOG_DATA: &str = include_str!("../../data/subalgebras.json");

/// Loads the catalog shipped with the crate.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(CATALOG_DATA).expect("embedded catalog is valid")
}

/// Loads and validates a catalog file: exactly fifty entries, unique ids,
/// all expressions canonical.
pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path)?;
    parse_catalog(&text)
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let raw: Vec<RawEntry> =
        serde_json::from_str(text).map_err(|e| CatalogError::Schema(e.to_string()))?;
    if raw.len() != CATALOG_SIZE {
        return Err(CatalogError::WrongCount(raw.len()));
    }
    let mut seen = BTreeSet::new();
    let mut entries = Vec::with_capacity(raw.len());
    for r in raw {
        if !seen.insert(r.id.clone()) {
            return Err(CatalogError::DuplicateId(r.id));
        }
        entries.push(convert_entry(r)?);
    }
    Ok(entries)
}

fn convert_entry(raw: RawEntry) -> Result<CatalogEntry, CatalogError> {
    let id = raw.id;
    let declared: BTreeSet<String> = raw.parameters.iter().map(|p| p.name.clone()).collect();
    let check_declared = |name: &str, what: &str| -> Result<(), CatalogError> {
        if declared.contains(name) {
            Ok(())
        } else {
            Err(CatalogError::Schema(format!(
                "entry '{id}': {what} references undeclared parameter '{name}'"
            )))
        }
    };

    let mut domain = ParameterDomain {
        names: raw.parameters.iter().map(|p| p.name.clone()).collect(),
        ..Default::default()
    };
    for p in &raw.parameters {
        if p.nonzero {
            domain.nonzero.insert(p.name.clone());
        }
    }
    for s in raw.sum_sq {
        for v in &s.vars {
            check_declared(v, "sum-of-squares constraint")?;
        }
        let target = match s.target.as_deref() {
            None | Some("1") => SumSqTarget::One,
            Some(name) => {
                check_declared(name, "sum-of-squares target")?;
                SumSqTarget::Binary(name.to_string())
            }
        };
        domain.sum_squares.push((s.vars, target));
    }
    for b in raw.binary {
        check_declared(&b, "binary constraint")?;
        domain.binary.push(b);
    }
    for ne in raw.not_equal {
        check_declared(&ne.name, "inequation")?;
        let value = parse(&ne.value)
            .ok()
            .and_then(|e| e.as_rational().cloned())
            .ok_or_else(|| {
                CatalogError::Schema(format!(
                    "entry '{id}': inequation value '{}' is not rational",
                    ne.value
                ))
            })?;
        domain.not_equal.push((ne.name, value));
    }
    for group in raw.not_all_zero {
        for v in &group {
            check_declared(v, "not-all-zero constraint")?;
        }
        domain.not_all_zero.push(group);
    }

    if raw.generators.len() != 4 {
        return Err(CatalogError::Schema(format!(
            "entry '{id}': expected 4 generators, found {}",
            raw.generators.len()
        )));
    }
    if raw.invariants.len() != 4 {
        return Err(CatalogError::Schema(format!(
            "entry '{id}': expected 4 invariants, found {}",
            raw.invariants.len()
        )));
    }

    let parse_field = |text: &str, field: String| -> Result<Expr, CatalogError> {
        parse(text).map_err(|source| CatalogError::BadExpression {
            id: id.clone(),
            field,
            source,
        })
    };

    let mut generators: Vec<[Expr; DIM]> = Vec::with_capacity(4);
    for (g, vector) in raw.generators.iter().enumerate() {
        if vector.len() != DIM {
            return Err(CatalogError::Schema(format!(
                "entry '{id}': generator {} has {} components, expected {DIM}",
                g + 1,
                vector.len()
            )));
        }
        let mut coeffs: Vec<Expr> = Vec::with_capacity(DIM);
        for (k, text) in vector.iter().enumerate() {
            coeffs.push(parse_field(
                text,
                format!("generator {} component {}", g + 1, k + 1),
            )?);
        }
        generators.push(coeffs.try_into().expect("length checked"));
    }
    let generators: [[Expr; DIM]; 4] = generators.try_into().expect("length checked");

    let mut invariants: Vec<Expr> = Vec::with_capacity(4);
    for (k, text) in raw.invariants.iter().enumerate() {
        invariants.push(parse_field(text, format!("invariant {}", k + 1))?);
    }
    let invariants: [Expr; 4] = invariants.try_into().expect("length checked");

    Ok(CatalogEntry {
        spec: SubalgebraSpec {
            id: id.clone(),
            params: domain,
            generators,
        },
        invariants: InvariantSet { id, invariants },
    })
}
