//! JSON report types shared by the CLI and its consumers.
//!
//! Every report carries a schema version, the tool version, and the resolved
//! seed. Rationals are serialized as strings ("p/q", or just "p" for
//! integers) so reports stay exact and byte-stable across runs.

use serde::{Deserialize, Serialize};

use crate::commutant;
use crate::counterexample::CounterexampleOutcome;
use crate::filterbank::BenchOutcome;
use crate::poly::Poly;
use crate::represent::cases::CaseParams;
use crate::represent::conversion::ConversionSearchReport;
use crate::represent::{EntryWitness, RepresentResult, Verdict};
use crate::spectra;
use crate::{MatQ, Rat};

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn poly_strings(p: &Poly<Rat>) -> Vec<String> {
    p.coeffs().iter().map(rat_str).collect()
}

pub fn matrix_strings(m: &MatQ) -> Vec<Vec<String>> {
    (0..m.n())
        .map(|i| m.row(i).iter().map(rat_str).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool_version: String,
    pub seed: u64,
    pub n: usize,
    /// Ascending coefficients as rational strings; degree n, monic.
    pub charpoly: Vec<String>,
    pub minpoly: Vec<String>,
    pub shift_enabled: bool,
    pub poly_span_dim: usize,
    pub commutant_dim: usize,
    pub represent: Option<RepresentReportBody>,
    pub bench: Option<BenchOutcome>,
}

/// Runs the spectral and commutant pipeline on an exact matrix. The report
/// depends only on the matrix, never on the encoding it arrived in.
pub fn analyze(s: &MatQ, seed: u64) -> AnalysisReport {
    let mut spectral = spectra::spectral_report(s);
    spectral.commutant_dim = Some(commutant::commutant_dimension(s));
    let commutant_dim = spectral.commutant_dim.unwrap();
    AnalysisReport {
        schema: SCHEMA_VERSION,
        tool_version: tool_version().to_string(),
        seed,
        n: spectral.n,
        charpoly: poly_strings(&spectral.charpoly),
        minpoly: poly_strings(&spectral.minpoly),
        shift_enabled: spectral.shift_enabled,
        poly_span_dim: spectral.poly_span_dim,
        commutant_dim,
        represent: None,
        bench: None,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WitnessEntryBody {
    /// One-based, matching the usual subscript notation.
    pub row: usize,
    pub col_a: usize,
    pub col_b: usize,
    pub row_zero_based: usize,
    pub col_a_zero_based: usize,
    pub col_b_zero_based: usize,
}

impl From<&EntryWitness> for WitnessEntryBody {
    fn from(w: &EntryWitness) -> Self {
        WitnessEntryBody {
            row: w.row + 1,
            col_a: w.col_a + 1,
            col_b: w.col_b + 1,
            row_zero_based: w.row,
            col_a_zero_based: w.col_a,
            col_b_zero_based: w.col_b,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepresentReportBody {
    pub verdict: String,
    pub coeffs: Option<Vec<String>>,
    pub witness_entry: Option<WitnessEntryBody>,
    pub residual_certificate: Option<Vec<String>>,
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Representable => "representable",
        Verdict::NotRepresentable => "not-representable",
        Verdict::NotCommuting => "not-commuting",
    }
}

impl From<&RepresentResult<Rat>> for RepresentReportBody {
    fn from(r: &RepresentResult<Rat>) -> Self {
        RepresentReportBody {
            verdict: verdict_str(r.verdict).to_string(),
            coeffs: r.coeffs.as_ref().map(poly_strings),
            witness_entry: r.witness_entry.as_ref().map(WitnessEntryBody::from),
            residual_certificate: r
                .residual_certificate
                .as_ref()
                .map(|c| c.iter().map(rat_str).collect()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepresentReport {
    pub schema: u32,
    pub tool_version: String,
    pub seed: u64,
    pub n: usize,
    #[serde(flatten)]
    pub body: RepresentReportBody,
}

pub fn represent_report(n: usize, seed: u64, result: &RepresentResult<Rat>) -> RepresentReport {
    RepresentReport {
        schema: SCHEMA_VERSION,
        tool_version: tool_version().to_string(),
        seed,
        n,
        body: RepresentReportBody::from(result),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyReport {
    pub schema: u32,
    pub tool_version: String,
    pub n: usize,
    pub kind: String,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CommutantReport {
    pub schema: u32,
    pub tool_version: String,
    pub n: usize,
    pub dim: usize,
    pub basis: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WitnessReport {
    pub schema: u32,
    pub tool_version: String,
    pub n: usize,
    pub shift_enabled: bool,
    /// Absent when the matrix is shift-enabled.
    pub witness: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CaseCheckBody {
    pub case: u8,
    pub params: Vec<(String, String)>,
    pub infeasible: bool,
    pub contradiction: String,
    pub solver_agrees: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FeasibleTripleBody {
    pub candidate: Vec<Vec<String>>,
    pub r_coeffs: Vec<String>,
    pub h_coeffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConversionReport {
    pub schema: u32,
    pub tool_version: String,
    pub seed: u64,
    pub samples_tried: usize,
    pub feasible_found: Vec<FeasibleTripleBody>,
    pub case_checks: Option<Vec<CaseCheckBody>>,
}

fn case_params_strings(params: &CaseParams) -> Vec<(String, String)> {
    match params {
        CaseParams::EqualDiag { s11, s13, s32 } => vec![
            ("s11".to_string(), rat_str(s11)),
            ("s13".to_string(), rat_str(s13)),
            ("s32".to_string(), rat_str(s32)),
        ],
        CaseParams::SplitDiag { s11, s33, s13 } => vec![
            ("s11".to_string(), rat_str(s11)),
            ("s33".to_string(), rat_str(s33)),
            ("s13".to_string(), rat_str(s13)),
        ],
    }
}

pub fn conversion_report(r: &ConversionSearchReport) -> ConversionReport {
    ConversionReport {
        schema: SCHEMA_VERSION,
        tool_version: tool_version().to_string(),
        seed: r.seed,
        samples_tried: r.samples_tried,
        feasible_found: r
            .feasible_found
            .iter()
            .map(|t| FeasibleTripleBody {
                candidate: matrix_strings(&t.candidate),
                r_coeffs: poly_strings(&t.r_coeffs),
                h_coeffs: poly_strings(&t.h_coeffs),
            })
            .collect(),
        case_checks: r.case_checks.as_ref().map(|checks| {
            checks
                .iter()
                .map(|c| CaseCheckBody {
                    case: c.params.case_number(),
                    params: case_params_strings(&c.params),
                    infeasible: c.infeasible,
                    contradiction: c.contradiction.describe().to_string(),
                    solver_agrees: c.solver_agrees,
                })
                .collect()
        }),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StageBody {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CounterexampleReport {
    pub schema: u32,
    pub tool_version: String,
    pub seed: u64,
    pub samples: usize,
    pub tampered: bool,
    pub stages: Vec<StageBody>,
    pub passed: bool,
    pub first_failed: Option<String>,
    pub conversion: ConversionReport,
    pub represent: RepresentReportBody,
}

pub fn counterexample_report(outcome: &CounterexampleOutcome, samples: usize) -> CounterexampleReport {
    CounterexampleReport {
        schema: SCHEMA_VERSION,
        tool_version: tool_version().to_string(),
        seed: outcome.conversion.seed,
        samples,
        tampered: outcome.tampered,
        stages: outcome
            .stages
            .iter()
            .map(|s| StageBody {
                name: s.name.to_string(),
                passed: s.passed,
                detail: s.detail.clone(),
            })
            .collect(),
        passed: outcome.passed,
        first_failed: outcome.first_failed.map(|s| s.to_string()),
        conversion: conversion_report(&outcome.conversion),
        represent: RepresentReportBody::from(&outcome.represent),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ApplyReportJson {
    pub schema: u32,
    pub tool_version: String,
    pub seed: u64,
    pub n: usize,
    pub coeffs: Vec<f64>,
    pub output: Vec<f64>,
    pub bench: Option<BenchOutcome>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanFileEntry {
    pub path: String,
    pub status: String,
    pub shift_enabled: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScanSummary {
    pub schema: u32,
    pub tool_version: String,
    pub scanned: usize,
    pub shift_enabled: usize,
    pub not_shift_enabled: usize,
    pub failed: usize,
    pub files: Vec<ScanFileEntry>,
}

/// Pretty JSON with a trailing newline; field order is declaration order, so
/// output is byte-stable for fixed inputs.
pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize infallibly");
    s.push('\n');
    s
}
