//! Input documents: a problem is one JSON object with the modulus, the
//! matrix, optional named subspaces (lists of spanning vectors, reduced mod
//! p on load), and an optional depth tuple. Fixtures extend that with
//! expected classification flags and non-distributivity claims.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use hinv::linalg::{Subspace, VectorF};
use hinv::operator::Operator;
use hinv::PrimeField;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub p: u16,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub subspaces: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default)]
    pub r: Option<Vec<usize>>,
    #[serde(default)]
    pub expect: BTreeMap<String, Expectations>,
    #[serde(default)]
    pub non_distributive: Vec<NonDistributive>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default)]
    pub invariant: Option<bool>,
    #[serde(default)]
    pub marked: Option<bool>,
    #[serde(default)]
    pub characteristic: Option<bool>,
    #[serde(default)]
    pub hyperinvariant: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonDistributive {
    pub subspace: String,
    pub parts: Vec<String>,
}

/// Parsed, validated problem.
pub struct Problem {
    pub name: Option<String>,
    pub field: PrimeField,
    pub operator: Operator,
    pub subspaces: BTreeMap<String, Subspace>,
    pub r: Option<Vec<usize>>,
    pub expect: BTreeMap<String, Expectations>,
    pub non_distributive: Vec<NonDistributive>,
}

pub fn load_problem(path: &Path) -> Result<Problem, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text)
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let doc: ProblemDoc =
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("invalid input: {e}")))?;
    let field = PrimeField::new(doc.p)
        .map_err(|e| CliError::parse(format!("invalid modulus: {e}")))?;
    let n = doc.matrix.len();
    for row in &doc.matrix {
        if row.len() != n {
            return Err(CliError::parse(format!(
                "matrix must be square; row of length {} in a {n}-row matrix",
                row.len()
            )));
        }
    }
    let matrix = hinv::MatrixF::from_int_rows(field, &doc.matrix)
        .map_err(|e| CliError::parse(format!("invalid matrix: {e}")))?;
    let operator =
        Operator::new(matrix).map_err(|e| CliError::parse(format!("invalid matrix: {e}")))?;
    let mut subspaces = BTreeMap::new();
    for (name, rows) in &doc.subspaces {
        let mut vectors = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(CliError::parse(format!(
                    "subspace {name}: vector of length {} in ambient dimension {n}",
                    row.len()
                )));
            }
            vectors.push(VectorF::from_ints(field, row));
        }
        let s = Subspace::from_rows(field, n, &vectors)
            .map_err(|e| CliError::parse(format!("subspace {name}: {e}")))?;
        subspaces.insert(name.clone(), s);
    }
    for name in doc.expect.keys() {
        if !subspaces.contains_key(name) {
            return Err(CliError::parse(format!(
                "expectations reference unknown subspace {name}"
            )));
        }
    }
    for nd in &doc.non_distributive {
        if !subspaces.contains_key(&nd.subspace) {
            return Err(CliError::parse(format!(
                "non_distributive references unknown subspace {}",
                nd.subspace
            )));
        }
        for part in &nd.parts {
            if !subspaces.contains_key(part) {
                return Err(CliError::parse(format!(
                    "non_distributive references unknown subspace {part}"
                )));
            }
        }
    }
    Ok(Problem {
        name: doc.name,
        field,
        operator,
        subspaces,
        r: doc.r,
        expect: doc.expect,
        non_distributive: doc.non_distributive,
    })
}

/// Fixtures compiled into the binary; `verify` with no input runs these.
pub const BUNDLED_FIXTURES: &[(&str, &str)] = &[
    (
        "example_1_2",
        include_str!("../fixtures/example_1_2.json"),
    ),
    (
        "example_1_3",
        include_str!("../fixtures/example_1_3.json"),
    ),
    (
        "example_1_4",
        include_str!("../fixtures/example_1_4.json"),
    ),
    (
        "example_2_1",
        include_str!("../fixtures/example_2_1.json"),
    ),
    (
        "example_2_5",
        include_str!("../fixtures/example_2_5.json"),
    ),
    (
        "gf3_structure",
        include_str!("../fixtures/gf3_structure.json"),
    ),
];
