use serde::{Deserialize, Serialize};

use super::spec::IndependenceCheck;
use crate::dyadic::DyadicRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Walsh,
    Restriction,
    Oracle,
    ClosedForm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Walsh => "walsh",
            Method::Restriction => "restriction",
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed-form",
        })
    }
}

/// Outcome of a bias computation. Exact values are dyadic rationals; the
/// float `log2_bias` is derived from `exact` for display only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiasReport {
    pub method: Method,
    pub exact: Option<DyadicRational>,
    pub log2_bias: Option<f64>,
    pub lower_bound: Option<DyadicRational>,
    /// Variables (1-based) of the linear approximation attaining `lower_bound`.
    pub lower_bound_mask: Option<Vec<usize>>,
    pub closed_form: Option<DyadicRational>,
    pub plateaued_bound: Option<DyadicRational>,
    pub equality_condition_met: Option<bool>,
    /// Inner table-lookup-and-multiply steps.
    pub op_count: u64,
    /// Evaluations of the combining function made while precomputing.
    pub function_evaluations: u64,
    /// Other precomputation steps (transform butterflies).
    pub precomputation_ops: u64,
    pub independence: IndependenceCheck,
    pub warnings: Vec<String>,
}

impl BiasReport {
    pub(crate) fn new(method: Method, independence: IndependenceCheck) -> Self {
        let mut warnings = Vec::new();
        if let Some(reason) = &independence.reason {
            warnings.push(format!("independence {:?}: {reason}", independence.verdict));
        }
        Self {
            method,
            exact: None,
            log2_bias: None,
            lower_bound: None,
            lower_bound_mask: None,
            closed_form: None,
            plateaued_bound: None,
            equality_condition_met: None,
            op_count: 0,
            function_evaluations: 0,
            precomputation_ops: 0,
            independence,
            warnings,
        }
    }

    pub(crate) fn with_exact(mut self, value: DyadicRational) -> Self {
        self.log2_bias = value.is_positive().then(|| value.log2_abs());
        self.exact = Some(value);
        self
    }
}
