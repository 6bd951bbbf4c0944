//! Report structures for the machine-readable output. Field order is fixed
//! by the struct definitions and maps use sorted keys, so serialization is
//! byte-stable for a fixed input.

use serde::Serialize;

use hinv::classify::{ClassificationReport, Verdict};
use hinv::linalg::{MatrixF, Subspace};

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

pub fn matrix_rows(m: &MatrixF) -> Vec<Vec<u8>> {
    (0..m.nrows()).map(|r| m.row_slice(r).to_vec()).collect()
}

pub fn subspace_rows(s: &Subspace) -> Vec<Vec<u8>> {
    matrix_rows(s.basis())
}

#[derive(Serialize)]
pub struct EigenvalueOut {
    pub lambda: u8,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct ComponentOut {
    pub lambda: u8,
    pub dim: usize,
    pub exponents: Vec<usize>,
    pub generators: Vec<String>,
    pub generator_rows: Vec<Vec<u8>>,
}

#[derive(Serialize)]
pub struct DepthReportOut {
    pub depths: Vec<usize>,
    pub admissible: bool,
    pub monotone: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_r: Option<Vec<Vec<u8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_ru: Option<Vec<Vec<u8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple_independent: Option<bool>,
}

#[derive(Serialize)]
pub struct AnalyzeOut {
    pub p: u8,
    pub dim: usize,
    pub nilpotent: bool,
    pub eigenvalues: Vec<EigenvalueOut>,
    pub components: Vec<ComponentOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_report: Option<DepthReportOut>,
}

#[derive(Serialize)]
pub struct WitnessOut {
    pub kind: String,
    pub matrix: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moves: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
}

#[derive(Serialize)]
pub struct ClassifyOut {
    pub subspace: String,
    pub dim: usize,
    pub invariant: &'static str,
    pub marked: &'static str,
    pub characteristic: &'static str,
    pub hyperinvariant: &'static str,
    pub witnesses: Vec<WitnessOut>,
}

impl ClassifyOut {
    pub fn from_report(name: &str, dim: usize, report: &ClassificationReport) -> Self {
        let mut witnesses = Vec::new();
        if let Some(w) = &report.hyper_witness {
            witnesses.push(WitnessOut {
                kind: "commuting_endomorphism_escapes".to_string(),
                matrix: matrix_rows(&w.endo),
                moves: Some(w.vector.symbolic()),
                to: Some(w.image.symbolic()),
            });
        }
        if let Some(alpha) = &report.char_witness {
            witnesses.push(WitnessOut {
                kind: "commuting_automorphism_moves_subspace".to_string(),
                matrix: matrix_rows(alpha),
                moves: None,
                to: None,
            });
        }
        ClassifyOut {
            subspace: name.to_string(),
            dim,
            invariant: verdict_str(report.invariant),
            marked: verdict_str(report.marked),
            characteristic: verdict_str(report.characteristic),
            hyperinvariant: verdict_str(report.hyperinvariant),
            witnesses,
        }
    }

    pub fn non_invariant(name: &str, dim: usize) -> Self {
        ClassifyOut {
            subspace: name.to_string(),
            dim,
            invariant: "no",
            marked: "no",
            characteristic: "no",
            hyperinvariant: "no",
            witnesses: Vec::new(),
        }
    }
}

#[derive(Serialize)]
pub struct LatticeElementOut {
    pub dim: usize,
    pub labels: Vec<String>,
    pub basis: Vec<Vec<u8>>,
}

#[derive(Serialize)]
pub struct LatticeOut {
    pub count: usize,
    pub closed_under_meet_and_join: bool,
    pub elements: Vec<LatticeElementOut>,
    pub hasse_edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
pub struct SearchOut {
    pub count: usize,
    pub elements: Vec<LatticeElementOut>,
}

#[derive(Serialize)]
pub struct PropertyOut {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<String>,
}

#[derive(Serialize)]
pub struct FixtureOut {
    pub name: String,
    pub expectations: u64,
    pub mismatches: u64,
    pub details: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub fixtures: Vec<FixtureOut>,
    pub properties: Vec<PropertyOut>,
    pub passed: bool,
}
