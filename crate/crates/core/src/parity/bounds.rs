//! Lower bounds from approximations compatible with the blocks, and the
//! closed forms available for resilient and plateaued combiners.

use serde::{Deserialize, Serialize};

use super::exact::{check_independence, low_coefficients};
use super::report::{BiasReport, Method};
use super::spec::ParityCheckSpec;
use crate::boolfun::{BooleanFunction, WalshSpectrum};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearBound {
    pub value: DyadicRational,
    /// Relabeled mask of the best linear approximation.
    pub mask: usize,
    /// The same mask as original 1-based variables.
    pub variables: Vec<usize>,
}

/// `max over a in V_k of E(f + phi_a)^(2^s)`. The smallest maximizing mask is
/// reported.
pub fn lower_bound_linear(f: &BooleanFunction, spec: &ParityCheckSpec) -> Result<LinearBound> {
    check_arity(f.num_vars(), spec)?;
    lower_bound_linear_from_spectrum(&f.walsh_transform(), spec)
}

pub fn lower_bound_linear_from_spectrum(
    spectrum: &WalshSpectrum,
    spec: &ParityCheckSpec,
) -> Result<LinearBound> {
    check_arity(spectrum.num_vars(), spec)?;
    let coeffs = low_coefficients(spectrum, spec);
    let (mask, best) =
        coeffs.iter().enumerate().fold(
            (0, 0i64),
            |(m, b), (a, &w)| if w.abs() > b { (a, w.abs()) } else { (m, b) },
        );
    let value = DyadicRational::new(best, spec.num_vars() as u64).pow(1 << spec.s());
    Ok(LinearBound {
        value,
        mask,
        variables: spec.mask_variables(mask),
    })
}

/// An approximation `g = g_1 + ... + g_s` of the block variables, each `g_i`
/// depending only on block `i`.
///
/// Variable `p + 1` of `g` is the `p`-th block variable in the order the
/// blocks list them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparableApproximation {
    g: BooleanFunction,
    parts: Vec<BooleanFunction>,
}

impl SeparableApproximation {
    pub fn new(g: BooleanFunction, spec: &ParityCheckSpec) -> Result<Self> {
        let k = spec.k();
        if g.num_vars() != k {
            return Err(Error::NotSeparable(format!(
                "approximation has {} variables, blocks cover {k}",
                g.num_vars()
            )));
        }
        let g0 = g.eval(0);
        let mut parts = Vec::with_capacity(spec.s());
        let mut start = 0;
        for block in spec.blocks() {
            let width = block.len();
            // g_i(y) = g(y placed on block i, zeros elsewhere) + g(0), except
            // that g_1 absorbs the constant.
            let part = BooleanFunction::from_fn(width, |y| {
                let value = g.eval(y << start);
                if start == 0 {
                    value
                } else {
                    value ^ g0
                }
            })?;
            parts.push(part);
            start += width;
        }
        for x in 0..1usize << k {
            let mut start = 0;
            let mut value = false;
            for part in &parts {
                let width = part.num_vars();
                value ^= part.eval((x >> start) & ((1 << width) - 1));
                start += width;
            }
            if value != g.eval(x) {
                return Err(Error::NotSeparable(format!(
                    "g differs from the sum of its block parts at input {x:#b}"
                )));
            }
        }
        Ok(Self { g, parts })
    }

    /// Builds from a function of all `n` original variables that ignores the
    /// variables outside the blocks.
    pub fn from_full(g: &BooleanFunction, spec: &ParityCheckSpec) -> Result<Self> {
        check_arity(g.num_vars(), spec)?;
        let relabeled = g.permute(spec.order())?;
        let k = spec.k();
        let low = 1usize << k;
        if (0..relabeled.table().len()).any(|x| relabeled.eval(x) != relabeled.eval(x & (low - 1)))
        {
            return Err(Error::NotSeparable(
                "approximation depends on variables outside the blocks".into(),
            ));
        }
        let g_low = BooleanFunction::from_table(k, relabeled.table()[..low].to_vec())?;
        Self::new(g_low, spec)
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.g
    }

    pub fn parts(&self) -> &[BooleanFunction] {
        &self.parts
    }

    /// `E(f + g)` with `g` read on the block variables of `f`.
    pub fn correlation(
        &self,
        f: &BooleanFunction,
        spec: &ParityCheckSpec,
    ) -> Result<DyadicRational> {
        check_arity(f.num_vars(), spec)?;
        let relabeled = f.permute(spec.order())?;
        let low = (1usize << spec.k()) - 1;
        let sum: i64 = relabeled
            .table()
            .iter()
            .enumerate()
            .map(|(x, &v)| if v ^ self.g.eval(x & low) { -1 } else { 1 })
            .sum();
        Ok(DyadicRational::new(sum, f.num_vars() as u64))
    }
}

/// `E(f + g)^(2^s)`, a lower bound on the bias for any separable `g`.
pub fn lower_bound_separable(
    f: &BooleanFunction,
    g: &SeparableApproximation,
    spec: &ParityCheckSpec,
) -> Result<DyadicRational> {
    Ok(g.correlation(f, spec)?.pow(1 << spec.s()))
}

/// `E(f + phi_a)^(2^s)` when `a` is the only mask on the block variables with
/// a nonzero coefficient; `None` otherwise.
pub fn closed_form_single_coefficient(
    f: &BooleanFunction,
    spec: &ParityCheckSpec,
) -> Result<Option<BiasReport>> {
    check_arity(f.num_vars(), spec)?;
    closed_form_from_spectrum(&f.walsh_transform(), spec)
}

pub fn closed_form_from_spectrum(
    spectrum: &WalshSpectrum,
    spec: &ParityCheckSpec,
) -> Result<Option<BiasReport>> {
    check_arity(spectrum.num_vars(), spec)?;
    let independence = check_independence(spec)?;
    let coeffs = low_coefficients(spectrum, spec);
    let mut support = coeffs.iter().enumerate().filter(|(_, &w)| w != 0);
    let (mask, &coeff) = match (support.next(), support.next()) {
        (Some(only), None) => only,
        _ => return Ok(None),
    };
    let value = DyadicRational::new(coeff, spec.num_vars() as u64).pow(1 << spec.s());
    let mut report = BiasReport::new(Method::ClosedForm, independence).with_exact(value.clone());
    report.closed_form = Some(value);
    report.lower_bound_mask = Some(spec.mask_variables(mask));
    report.op_count = 1;
    Ok(Some(report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauedBound {
    /// `|A|^(2^(s-1)) eps^(2^s)`.
    pub bound: DyadicRational,
    pub amplitude: DyadicRational,
    /// `|A|`, the masks on the block variables with a nonzero coefficient.
    pub support_size: usize,
    /// Union of the supports of `1_k + a` over `A`, original 1-based variables.
    pub uncovered_variables: Vec<usize>,
    /// Whether some `M_i` is a period of every sequence in that union; the
    /// bound is then attained.
    pub equality_condition_met: bool,
}

/// Upper bound for plateaued combiners that are at least `(k-2)`-resilient.
/// `None` when either hypothesis fails.
pub fn plateaued_bound(
    f: &BooleanFunction,
    spec: &ParityCheckSpec,
) -> Result<Option<PlateauedBound>> {
    check_arity(f.num_vars(), spec)?;
    plateaued_bound_from_spectrum(&f.walsh_transform(), spec)
}

pub fn plateaued_bound_from_spectrum(
    spectrum: &WalshSpectrum,
    spec: &ParityCheckSpec,
) -> Result<Option<PlateauedBound>> {
    check_arity(spectrum.num_vars(), spec)?;
    let k = spec.k();
    let Some(amplitude) = spectrum.plateaued_amplitude() else {
        return Ok(None);
    };
    if spectrum.resiliency_order() < k as i32 - 2 {
        return Ok(None);
    }
    let coeffs = low_coefficients(spectrum, spec);
    let all = (1usize << k) - 1;
    let support: Vec<usize> = (0..=all).filter(|&a| coeffs[a] != 0).collect();
    let union = support.iter().fold(0usize, |acc, &a| acc | (all ^ a));
    let uncovered: Vec<usize> = (0..k)
        .filter(|p| union >> p & 1 == 1)
        .map(|p| spec.order()[p])
        .collect();
    let equality = spec.moduli().iter().any(|&m| {
        uncovered
            .iter()
            .all(|&var| m % u128::from(spec.periods()[var]) == 0)
    });

    let terms = 1u32 << spec.s();
    let bound = &DyadicRational::from(support.len() as i64).pow(terms / 2) * &amplitude.pow(terms);
    let mut uncovered_variables: Vec<usize> = uncovered.iter().map(|v| v + 1).collect();
    uncovered_variables.sort_unstable();
    Ok(Some(PlateauedBound {
        bound,
        amplitude,
        support_size: support.len(),
        uncovered_variables,
        equality_condition_met: equality,
    }))
}

fn check_arity(n: usize, spec: &ParityCheckSpec) -> Result<()> {
    if n != spec.num_vars() {
        return Err(Error::ArityMismatch {
            function: n,
            spec: spec.num_vars(),
        });
    }
    Ok(())
}
