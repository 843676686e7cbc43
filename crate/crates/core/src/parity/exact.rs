//! Exact bias of a parity-check relation by enumerating the free bits that
//! fix the block variables.
//!
//! Both methods evaluate `sum_alpha prod_c v[chi(c, alpha)]` over a table `v`
//! of `2^k` integers and differ only in the table and the final scaling:
//!
//! * restriction biases: `v[a] = 2^(n-k) E(f_{a+V})`, and the sum is divided
//!   by `2^(k 2^(s-1) + (n-k) 2^s)`;
//! * Walsh coefficients on the first `k` variables: `v[a] = W(a)`, divided by
//!   `2^(n 2^s)`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::chi::ChiMap;
use super::report::{BiasReport, Method};
use super::spec::{Independence, IndependenceCheck, ParityCheckSpec};
use crate::boolfun::{fwht, BooleanFunction, WalshSpectrum};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Largest `k * 2^(s-1)` the exact methods will enumerate.
pub const EXACT_BUDGET_BITS: usize = 40;

const CHUNK_BITS: usize = 14;

pub fn exact_bias_restrictions(f: &BooleanFunction, spec: &ParityCheckSpec) -> Result<BiasReport> {
    let independence = check_exact_preconditions(f, spec)?;
    let relabeled = f.permute(spec.order())?;
    let table = relabeled.restriction_table(spec.k())?;
    let (sum, ops) = sum_of_products(table.numerators(), spec)?;

    let n = spec.num_vars() as u64;
    let k = spec.k() as u64;
    let terms = 1u64 << spec.s();
    let scale = spec.alpha_bits() as u64 + (n - k) * terms;

    let mut report = BiasReport::new(Method::Restriction, independence)
        .with_exact(DyadicRational::new(sum, scale));
    report.op_count = ops;
    report.function_evaluations = 1 << n;
    Ok(report)
}

/// Walsh route. Only the `2^k` coefficients on the block variables are
/// needed; they come from one pass over `f` (summing each coset) followed by
/// a `k`-variable butterfly.
pub fn exact_bias_walsh(f: &BooleanFunction, spec: &ParityCheckSpec) -> Result<BiasReport> {
    let independence = check_exact_preconditions(f, spec)?;
    let relabeled = f.permute(spec.order())?;
    let mut coeffs = relabeled.restriction_table(spec.k())?.numerators().to_vec();
    fwht(&mut coeffs);
    let k = spec.k() as u64;
    let mut report = walsh_from_low_coefficients(&coeffs, spec, independence)?;
    report.function_evaluations = 1 << spec.num_vars();
    report.precomputation_ops = k << k;
    Ok(report)
}

/// The Walsh-coefficient formula evaluated without the independence check.
/// Its value is the bias only when the check passes; used to show how far a
/// failing relation strays from it.
pub fn walsh_formula_unchecked(
    f: &BooleanFunction,
    spec: &ParityCheckSpec,
) -> Result<DyadicRational> {
    if f.num_vars() != spec.num_vars() {
        return Err(Error::ArityMismatch {
            function: f.num_vars(),
            spec: spec.num_vars(),
        });
    }
    check_budget(spec)?;
    let coeffs = low_coefficients(&f.walsh_transform(), spec);
    let (sum, _) = sum_of_products(&coeffs, spec)?;
    Ok(DyadicRational::new(
        sum,
        (spec.num_vars() as u64) << spec.s(),
    ))
}

/// Walsh route from a full spectrum of `f` (original variable order).
pub fn exact_bias_walsh_from_spectrum(
    spectrum: &WalshSpectrum,
    spec: &ParityCheckSpec,
) -> Result<BiasReport> {
    if spectrum.num_vars() != spec.num_vars() {
        return Err(Error::ArityMismatch {
            function: spectrum.num_vars(),
            spec: spec.num_vars(),
        });
    }
    check_budget(spec)?;
    let independence = check_independence(spec)?;
    let coeffs = low_coefficients(spectrum, spec);
    walsh_from_low_coefficients(&coeffs, spec, independence)
}

/// Coefficients `W(a)` for relabeled masks `a < 2^k`, read from a spectrum in
/// the original variable order.
pub fn low_coefficients(spectrum: &WalshSpectrum, spec: &ParityCheckSpec) -> Vec<i64> {
    (0..1usize << spec.k())
        .map(|a| spectrum.coeff(original_mask(a, spec)))
        .collect()
}

/// Relabeled mask (bit `p` for position `p`) to a mask over the original
/// variables.
pub fn original_mask(relabeled: usize, spec: &ParityCheckSpec) -> usize {
    spec.order()
        .iter()
        .enumerate()
        .filter(|(p, _)| relabeled >> p & 1 == 1)
        .fold(0, |acc, (_, &var)| acc | 1 << var)
}

fn walsh_from_low_coefficients(
    coeffs: &[i64],
    spec: &ParityCheckSpec,
    independence: IndependenceCheck,
) -> Result<BiasReport> {
    let (sum, ops) = sum_of_products(coeffs, spec)?;
    let scale = (spec.num_vars() as u64) << spec.s();
    let mut report =
        BiasReport::new(Method::Walsh, independence).with_exact(DyadicRational::new(sum, scale));
    report.op_count = ops;
    Ok(report)
}

fn check_exact_preconditions(
    f: &BooleanFunction,
    spec: &ParityCheckSpec,
) -> Result<IndependenceCheck> {
    if f.num_vars() != spec.num_vars() {
        return Err(Error::ArityMismatch {
            function: f.num_vars(),
            spec: spec.num_vars(),
        });
    }
    check_budget(spec)?;
    check_independence(spec)
}

pub(crate) fn check_independence(spec: &ParityCheckSpec) -> Result<IndependenceCheck> {
    let check = spec.validate_independence();
    if check.verdict == Independence::Fail {
        return Err(Error::Independence(check.verdict));
    }
    Ok(check)
}

fn check_budget(spec: &ParityCheckSpec) -> Result<()> {
    let needed = spec.alpha_bits();
    if needed > EXACT_BUDGET_BITS {
        return Err(Error::Budget {
            needed,
            budget: EXACT_BUDGET_BITS,
        });
    }
    Ok(())
}

/// `sum_alpha prod_c values[chi(c, alpha)]` and the number of lookups made.
///
/// Products of `2^s` table entries are formed in `i128` when they provably
/// fit, otherwise in `BigInt`. A zero factor ends its product early.
fn sum_of_products(values: &[i64], spec: &ParityCheckSpec) -> Result<(BigInt, u64)> {
    let map = ChiMap::new(spec)?;
    let alpha_bits = spec.alpha_bits();
    let max_abs = values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    let value_bits = 64 - max_abs.leading_zeros() as usize;
    let narrow = value_bits * map.terms() <= 126;

    let chunk_bits = alpha_bits.min(CHUNK_BITS);
    let chunks = 1u64 << (alpha_bits - chunk_bits);
    let (sum, ops) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk << chunk_bits;
            let range = start..start + (1u64 << chunk_bits);
            if narrow {
                narrow_chunk(values, &map, range)
            } else {
                wide_chunk(values, &map, range)
            }
        })
        .reduce(|| (BigInt::zero(), 0), |(a, x), (b, y)| (a + b, x + y));
    Ok((sum, ops))
}

fn narrow_chunk(values: &[i64], map: &ChiMap, range: std::ops::Range<u64>) -> (BigInt, u64) {
    let mut total = BigInt::zero();
    let mut acc: i128 = 0;
    let mut ops = 0u64;
    for alpha in range {
        let mut product: i128 = 1;
        for c in 0..map.terms() {
            ops += 1;
            let v = values[map.eval(c, alpha)];
            if v == 0 {
                product = 0;
                break;
            }
            product *= i128::from(v);
        }
        match acc.checked_add(product) {
            Some(next) => acc = next,
            None => {
                total += acc;
                acc = product;
            }
        }
    }
    (total + acc, ops)
}

fn wide_chunk(values: &[i64], map: &ChiMap, range: std::ops::Range<u64>) -> (BigInt, u64) {
    let mut total = BigInt::zero();
    let mut ops = 0u64;
    for alpha in range {
        let mut product = BigInt::from(1);
        for c in 0..map.terms() {
            ops += 1;
            let v = values[map.eval(c, alpha)];
            if v == 0 {
                product = BigInt::zero();
                break;
            }
            product *= v;
        }
        total += product;
    }
    (total, ops)
}
