//! The structured output schema. Human tables are rendered from these
//! records, never computed separately.

use serde::{Deserialize, Serialize};

use nullcone::instability::{KnTrace, SemistabilityTrace};
use nullcone::{Rational, RationalVector};

pub const SCHEMA_VERSION: &str = "1";

/// Exact rational as a string, `p` or `p/q`.
pub fn rat_str(x: &Rational) -> String {
    x.to_string()
}

pub fn vec_strs(v: &RationalVector) -> Vec<String> {
    v.coords().iter().map(rat_str).collect()
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    nullcone::rational::parse_rational(s)
}

pub fn parse_vec(v: &[String]) -> Option<RationalVector> {
    v.iter().map(|s| parse_rat(s)).collect::<Option<Vec<_>>>().map(RationalVector::new)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: Inputs,
    pub results: Results,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub datum: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lattice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gram_scales: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub support: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub levi: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stratum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Results {
    Strata { rows: Vec<StratumRow> },
    Optimal(KempfRecord),
    MuP(MuPRecord),
    Induce(InductionRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub mu: Vec<String>,
    pub lambda: Vec<String>,
    pub m: u64,
    pub q2: String,
    /// Simple roots of the Levi of `P_μ`, by name.
    pub parabolic: Vec<String>,
    pub dim_saturation: usize,
    pub dim_stratum: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<TraceRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    pub weight: Vec<String>,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub label: Vec<String>,
    pub nonempty: bool,
    pub graded_dim: usize,
    pub levi_roots: usize,
    pub perp_rank: usize,
    pub projected: Vec<WeightRecord>,
    pub semistability: SemistabilityRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SemistabilityRecord {
    Torus { origin_in_hull: bool },
    Reductive { candidates: Vec<CandidateRecord> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub label: Vec<String>,
    pub stratum_dim: usize,
    pub module_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub test: Option<Box<TraceRecord>>,
}

impl From<&KnTrace> for TraceRecord {
    fn from(t: &KnTrace) -> Self {
        Self {
            label: vec_strs(&t.label),
            nonempty: t.nonempty(),
            graded_dim: t.graded_dim,
            levi_roots: t.levi_roots,
            perp_rank: t.perp_rank,
            projected: t
                .projected
                .iter()
                .map(|(w, m)| WeightRecord {
                    weight: vec_strs(w),
                    mult: *m,
                })
                .collect(),
            semistability: match &t.semistability {
                SemistabilityTrace::Torus { origin_in_hull } => SemistabilityRecord::Torus {
                    origin_in_hull: *origin_in_hull,
                },
                SemistabilityTrace::Reductive { candidates } => SemistabilityRecord::Reductive {
                    candidates: candidates
                        .iter()
                        .map(|c| CandidateRecord {
                            label: vec_strs(&c.label),
                            stratum_dim: c.stratum_dim,
                            module_dim: c.module_dim,
                            test: c.nonempty.as_ref().map(|t| Box::new(TraceRecord::from(t.as_ref()))),
                        })
                        .collect(),
                },
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempfRecord {
    pub mu: Vec<String>,
    pub lambda: Vec<String>,
    pub m: u64,
    pub q2: String,
    pub dominant: Vec<String>,
    /// Support members with pairing exactly one, by name where possible.
    pub active_set: Vec<String>,
    pub multipliers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuPRecord {
    pub mu_p: Vec<String>,
    pub delta_p: Vec<String>,
    pub cone_route: Vec<String>,
    pub closed_form_route: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallbackRecord {
    pub mu: Vec<String>,
    pub q2: String,
    pub seed: u64,
    pub samples: usize,
    pub evaluated: usize,
    pub best_effort: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionRecord {
    pub status: String,
    pub eta: Vec<String>,
    pub blade_nonempty: bool,
    pub method: String,
    pub w_sub: Vec<WeightRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub induced: Option<StratumRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fallback: Option<FallbackRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<TraceRecord>,
}

impl Diagnostic {
    pub fn note(message: impl Into<String>) -> Self {
        Self {
            kind: "note".into(),
            message: message.into(),
            label: None,
            trace: None,
        }
    }
}
