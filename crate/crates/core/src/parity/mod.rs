//! Parity-check relations `PC(t) = xor over tau in T of f(x(t + tau))` and
//! their biases: two exact enumerations, a brute-force oracle, lower bounds,
//! and closed forms.

mod bounds;
mod chi;
mod crosscheck;
mod exact;
mod oracle;
mod report;
mod spec;

pub use bounds::{
    closed_form_from_spectrum, closed_form_single_coefficient, lower_bound_linear,
    lower_bound_linear_from_spectrum, lower_bound_separable, plateaued_bound,
    plateaued_bound_from_spectrum, LinearBound, PlateauedBound, SeparableApproximation,
};
pub use chi::{chi, chi_recursive, AlphaWord, ChiMap};
pub use crosscheck::{cross_check, CrossCheck, Verdict};
pub use exact::{
    exact_bias_restrictions, exact_bias_walsh, exact_bias_walsh_from_spectrum, low_coefficients,
    original_mask, walsh_formula_unchecked, EXACT_BUDGET_BITS,
};
pub use oracle::{brute_force_oracle, TouchedBits, ORACLE_BUDGET_BITS};
pub use report::{BiasReport, Method};
pub use spec::{Independence, IndependenceCheck, ParityCheckJson, ParityCheckSpec, MAX_BLOCKS};

use crate::boolfun::{BooleanFunction, WalshSpectrum};
use crate::error::Result;

/// Method requested by a caller; `Auto` resolves to Walsh when a spectrum is
/// already at hand and to restrictions otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodChoice {
    Walsh,
    Restriction,
    Oracle,
    Auto,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "walsh" => Ok(Self::Walsh),
            "restriction" => Ok(Self::Restriction),
            "oracle" => Ok(Self::Oracle),
            "auto" => Ok(Self::Auto),
            other => Err(format!(
                "unknown method {other:?} (walsh, restriction, oracle, auto)"
            )),
        }
    }
}

/// Exact bias with the chosen method plus every bound that applies.
pub fn bias_report(
    f: &BooleanFunction,
    spec: &ParityCheckSpec,
    method: MethodChoice,
    spectrum: Option<&WalshSpectrum>,
) -> Result<BiasReport> {
    let mut report = match (method, spectrum) {
        (MethodChoice::Walsh, Some(s)) | (MethodChoice::Auto, Some(s)) => {
            let mut r = exact_bias_walsh_from_spectrum(s, spec)?;
            r.function_evaluations = 0;
            r
        }
        (MethodChoice::Walsh, None) => exact_bias_walsh(f, spec)?,
        (MethodChoice::Restriction, _) | (MethodChoice::Auto, None) => {
            exact_bias_restrictions(f, spec)?
        }
        (MethodChoice::Oracle, _) => brute_force_oracle(f, spec)?,
    };
    let owned;
    let spectrum = match spectrum {
        Some(s) => s,
        None => {
            owned = f.walsh_transform();
            &owned
        }
    };
    add_bounds(&mut report, spectrum, spec)?;
    Ok(report)
}

/// Bounds and closed forms only, without an exact enumeration.
pub fn bound_report(f: &BooleanFunction, spec: &ParityCheckSpec) -> Result<BiasReport> {
    let spectrum = f.walsh_transform();
    let mut report = match closed_form_from_spectrum(&spectrum, spec) {
        Ok(Some(r)) => r,
        _ => {
            let mut r = BiasReport::new(Method::ClosedForm, spec.validate_independence());
            r.exact = None;
            r
        }
    };
    report.function_evaluations = 1 << f.num_vars();
    add_bounds(&mut report, &spectrum, spec)?;
    Ok(report)
}

fn add_bounds(
    report: &mut BiasReport,
    spectrum: &WalshSpectrum,
    spec: &ParityCheckSpec,
) -> Result<()> {
    let linear = lower_bound_linear_from_spectrum(spectrum, spec)?;
    report.lower_bound = Some(linear.value);
    report.lower_bound_mask = Some(linear.variables);
    if let Ok(Some(closed)) = closed_form_from_spectrum(spectrum, spec) {
        report.closed_form = closed.closed_form;
    }
    if let Some(pb) = plateaued_bound_from_spectrum(spectrum, spec)? {
        report.plateaued_bound = Some(pb.bound);
        report.equality_condition_met = Some(pb.equality_condition_met);
    }
    Ok(())
}
