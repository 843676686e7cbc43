use serde::{Deserialize, Serialize};

use super::bounds::{
    closed_form_from_spectrum, lower_bound_linear_from_spectrum, plateaued_bound_from_spectrum,
};
use super::exact::{
    exact_bias_restrictions, exact_bias_walsh, exact_bias_walsh_from_spectrum, low_coefficients,
};
use super::oracle::{brute_force_oracle, TouchedBits, ORACLE_BUDGET_BITS};
use super::spec::{Independence, ParityCheckSpec};
use crate::boolfun::BooleanFunction;
use crate::dyadic::DyadicRational;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub violations: Vec<String>,
    /// Hex truth table of the function, for reproduction.
    pub function: String,
    pub spec: ParityCheckSpec,
    pub exact: Option<DyadicRational>,
    pub oracle: Option<DyadicRational>,
    pub lower_bound: Option<DyadicRational>,
    pub closed_form: Option<DyadicRational>,
    pub plateaued_bound: Option<DyadicRational>,
    pub equality_condition_met: Option<bool>,
}

/// Runs every applicable method on one instance and checks the relations
/// that must hold between them.
pub fn cross_check(f: &BooleanFunction, spec: &ParityCheckSpec) -> Result<CrossCheck> {
    let mut out = CrossCheck {
        verdict: Verdict::Skipped,
        reason: None,
        violations: Vec::new(),
        function: f.to_hex(),
        spec: spec.clone(),
        exact: None,
        oracle: None,
        lower_bound: None,
        closed_form: None,
        plateaued_bound: None,
        equality_condition_met: None,
    };
    let independence = spec.validate_independence();
    if independence.verdict != Independence::Pass {
        out.reason = Some(format!(
            "independence {:?}: {}",
            independence.verdict,
            independence.reason.unwrap_or_default()
        ));
        return Ok(out);
    }
    let free = TouchedBits::new(spec).total();
    if free > ORACLE_BUDGET_BITS {
        out.reason = Some(format!(
            "oracle needs {free} free bits, budget {ORACLE_BUDGET_BITS}"
        ));
        return Ok(out);
    }

    let by_restriction = exact_bias_restrictions(f, spec)?
        .exact
        .expect("exact value");
    let by_walsh = exact_bias_walsh(f, spec)?.exact.expect("exact value");
    let spectrum = f.walsh_transform();
    let by_spectrum = exact_bias_walsh_from_spectrum(&spectrum, spec)?
        .exact
        .expect("exact value");
    let oracle = brute_force_oracle(f, spec)?.exact.expect("exact value");

    let mut violations = Vec::new();
    if by_restriction != by_walsh {
        violations.push(format!("restriction {by_restriction} != walsh {by_walsh}"));
    }
    if by_walsh != by_spectrum {
        violations.push(format!(
            "walsh {by_walsh} != walsh from full spectrum {by_spectrum}"
        ));
    }
    if by_restriction != oracle {
        violations.push(format!("restriction {by_restriction} != oracle {oracle}"));
    }

    let lower = lower_bound_linear_from_spectrum(&spectrum, spec)?.value;
    if lower > oracle {
        violations.push(format!("linear lower bound {lower} exceeds bias {oracle}"));
    }

    let closed = closed_form_from_spectrum(&spectrum, spec)?.and_then(|r| r.closed_form);
    if let Some(closed) = &closed {
        if *closed != oracle {
            violations.push(format!("closed form {closed} != bias {oracle}"));
        }
    }

    let plateaued = plateaued_bound_from_spectrum(&spectrum, spec)?;
    if let Some(pb) = &plateaued {
        if oracle > pb.bound {
            violations.push(format!(
                "bias {oracle} exceeds plateaued bound {}",
                pb.bound
            ));
        }
        if (oracle == pb.bound) != pb.equality_condition_met {
            violations.push(format!(
                "plateaued equality predicate {} but bias {oracle} vs bound {}",
                pb.equality_condition_met, pb.bound
            ));
        }
    }

    if spec.s() == 1 {
        let n = spec.num_vars() as u64;
        let collapsed = low_coefficients(&spectrum, spec)
            .iter()
            .map(|&w| DyadicRational::new(w, n).pow(2))
            .fold(DyadicRational::zero(), |acc, v| &acc + &v);
        if collapsed != oracle {
            violations.push(format!(
                "two-term sum of squares {collapsed} != bias {oracle}"
            ));
        }
    }

    out.verdict = if violations.is_empty() {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    out.violations = violations;
    out.exact = Some(by_restriction);
    out.oracle = Some(oracle);
    out.lower_bound = Some(lower);
    out.closed_form = closed;
    out.equality_condition_met = plateaued.as_ref().map(|pb| pb.equality_condition_met);
    out.plateaued_bound = plateaued.map(|pb| pb.bound);
    Ok(out)
}
