//! Serialized report shapes. Field order is fixed by declaration order, so
//! identical inputs produce identical bytes.

use monodromy_core::homology::{Check, HomologyModel};
use serde::{Deserialize, Serialize};

use crate::dump::ModelDump;

pub const TOOL: &str = "monodromy";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn new(name: &str, pass: bool, witness: impl FnOnce() -> String) -> Self {
        Self {
            name: name.into(),
            pass,
            witness: (!pass).then(witness),
        }
    }
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name.clone(),
            pass: c.pass,
            witness: c.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub family: String,
    pub p: u32,
    pub q: u32,
    pub m: i64,
    pub n: i64,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_passes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_under_doubling: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_kernel_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_kernel_generator: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator_order_low: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator_order_high: Option<usize>,
    pub checks: Vec<CheckEntry>,
    pub all_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelDump>,
}

impl Report {
    /// A report carrying only the model header.
    pub fn for_model(command: String, model: &HomologyModel) -> Self {
        let params = &model.params;
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            command,
            family: params.family.name().into(),
            p: params.p,
            q: params.q,
            m: params.m,
            n: params.n,
            rank: model.rank(),
            exponent_bound: None,
            cap: None,
            closure_dim: None,
            closure_certified: None,
            closure_passes: None,
            stable_under_doubling: None,
            closure_basis: None,
            orbit_size: None,
            parity_case: None,
            zero_kernel_dim: None,
            zero_kernel_generator: None,
            annihilator_order_low: None,
            annihilator_order_high: None,
            checks: Vec::new(),
            all_pass: true,
            model: None,
        }
    }

    pub fn push(&mut self, check: CheckEntry) {
        self.all_pass &= check.pass;
        self.checks.push(check);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    /// Order of the derivative this coefficient multiplies.
    pub derivative: usize,
    pub value: String,
    pub is_rational: bool,
    pub is_log_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilateReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub solutions: Vec<String>,
    pub order: usize,
    pub operator: String,
    pub reduced: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<String>,
    /// Highest derivative first, as in the operator.
    pub coefficients: Vec<CoefficientEntry>,
    pub all_rational: bool,
    pub checks: Vec<CheckEntry>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub family: String,
    pub max_pq: u32,
    pub pairs: usize,
    pub passed: usize,
    pub failed: Vec<(u32, u32)>,
    pub all_pass: bool,
}
