//! Output records. One schema version gates every payload; serialization is
//! canonical: struct-order keys, decimal integers, polynomial coefficient
//! arrays low-degree-first.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord<P> {
    pub schema_version: String,
    pub command: String,
    pub inputs: Inputs,
    pub payload: P,
}

impl<P: Serialize> OutputRecord<P> {
    pub fn new(command: &str, inputs: Inputs, payload: P) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("payloads contain no non-serializable values")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Inputs {
    pub q: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
}

impl Inputs {
    pub fn new(q: u64, n: u64) -> Self {
        Inputs {
            q,
            n,
            gamma: None,
            t: None,
        }
    }

    pub fn with_gamma(mut self, gamma: u64) -> Self {
        self.gamma = Some(gamma);
        self
    }

    pub fn with_t(mut self, t: u64) -> Self {
        self.t = Some(t);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetRow {
    pub leader: u64,
    pub size: u64,
    pub is_ed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_difference: Option<u64>,
    pub elements: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetsPayload {
    pub coset_count: u64,
    pub ed_count: u64,
    pub cosets: Vec<CosetRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdCosetPayload {
    pub gamma: u64,
    pub leader: u64,
    pub size: u64,
    pub primitive_modulus: u64,
    pub radical: u64,
    pub q_mod_4: u64,
    pub radical_divides_q_minus_1: bool,
    pub four_condition: bool,
    pub is_ed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_difference: Option<u64>,
    pub coarsest_exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdGlobalPayload {
    pub radical: u64,
    pub q_mod_4: u64,
    pub radical_divides_q_minus_1: bool,
    pub four_condition: bool,
    pub all_ed: bool,
    pub coarsest_exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub leader: u64,
    pub size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_difference: Option<u64>,
    pub elements: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub t: u64,
    pub components: Vec<ComponentRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MerPayload {
    pub gamma: u64,
    pub leader: u64,
    pub size: u64,
    pub coarsest_exponent: u64,
    pub admissible_exponents: Vec<u64>,
    pub representations: Vec<Representation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinomialRow {
    pub degree: u64,
    pub constant_exponent: u64,
    pub sign: i8,
    pub root_modulus: u64,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorRow {
    pub leader: u64,
    pub degree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binomial: Option<BinomialRow>,
    /// Coefficients over the prime field, low degree first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_coeffs: Option<Vec<u64>>,
    /// Coefficients over the extension, each element as its coordinate
    /// vector over the prime field, low degree first on both levels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext_coeffs: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorPayload {
    pub t: u64,
    pub all_binomial: bool,
    pub verified: bool,
    pub symbolic_only: bool,
    pub binomial_count: u64,
    pub factor_count: u64,
    pub factors: Vec<FactorRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeaderPayload {
    pub gamma: u64,
    pub leader: u64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_modulus: Option<u64>,
    pub window_values: Vec<u64>,
    pub reductions: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyPayload {
    pub coset_count: u64,
    pub ed_count: u64,
    pub coarsest_exponent: u64,
    pub admissible_exponent_count: u64,
    pub all_binomial_at_1: bool,
}

/// Cap above which element lists are elided in human-readable mode.
pub const ELISION_CAP: usize = 64;

/// Human rendering of a residue list: full when short or forced, otherwise
/// the first few entries and an elision marker carrying the size.
pub fn format_elements(elements: &[u64], full: bool) -> String {
    if full || elements.len() <= ELISION_CAP {
        let inner: Vec<String> = elements.iter().map(u64::to_string).collect();
        format!("{{{}}}", inner.join(", "))
    } else {
        let head: Vec<String> = elements[..8].iter().map(u64::to_string).collect();
        format!("{{{}, … (τ={})}}", head.join(", "), elements.len())
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
