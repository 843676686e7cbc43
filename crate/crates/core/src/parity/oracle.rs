//! Brute-force bias of a parity-check relation straight from its definition.
//!
//! Each sequence `x_j` is an arbitrary word of length `T_j`, so the bits read
//! by the relation at offsets `tau` are the entries at `tau mod T_j`: offsets
//! with equal residues share a bit, distinct residues are independent uniform
//! bits. Averaging `(-1)^PC` over every assignment of the touched bits gives
//! the bias. This uses neither the block structure nor `chi`, so it also
//! reports the true bias of relations that fail the independence check.

use rayon::prelude::*;

use super::report::{BiasReport, Method};
use super::spec::ParityCheckSpec;
use crate::boolfun::BooleanFunction;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Largest number of free bits the oracle enumerates.
pub const ORACLE_BUDGET_BITS: usize = 30;

const CHUNK_BITS: usize = 12;

/// For every term `c` and variable `j`, the position of the free bit that
/// `x_j(t + tau_c)` reads.
#[derive(Clone, Debug)]
pub struct TouchedBits {
    n: usize,
    terms: usize,
    /// `positions[c * n + j]`
    positions: Vec<u8>,
    total: usize,
}

impl TouchedBits {
    pub fn new(spec: &ParityCheckSpec) -> Self {
        let n = spec.num_vars();
        let offsets = spec.offsets();
        let terms = offsets.len();
        let mut positions = vec![0u8; terms * n];
        let mut total = 0usize;
        for (j, &period) in spec.periods().iter().enumerate() {
            let mut residues: Vec<u128> = Vec::new();
            for (c, &tau) in offsets.iter().enumerate() {
                let r = tau % u128::from(period);
                let class = residues.iter().position(|&x| x == r).unwrap_or_else(|| {
                    residues.push(r);
                    residues.len() - 1
                });
                // Saturate; callers reject totals above the budget anyway.
                positions[c * n + j] = (total + class).min(u8::MAX as usize) as u8;
            }
            total += residues.len();
        }
        Self {
            n,
            terms,
            positions,
            total,
        }
    }

    /// Number of distinct bits the relation reads.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Input of `f` in term `c` under the assignment `bits`.
    #[inline]
    pub fn input(&self, c: usize, bits: u64) -> usize {
        self.positions[c * self.n..(c + 1) * self.n]
            .iter()
            .enumerate()
            .fold(0usize, |x, (j, &pos)| {
                x | (((bits >> pos) & 1) as usize) << j
            })
    }
}

pub fn brute_force_oracle(f: &BooleanFunction, spec: &ParityCheckSpec) -> Result<BiasReport> {
    if f.num_vars() != spec.num_vars() {
        return Err(Error::ArityMismatch {
            function: f.num_vars(),
            spec: spec.num_vars(),
        });
    }
    let touched = TouchedBits::new(spec);
    let free = touched.total();
    if free > ORACLE_BUDGET_BITS {
        return Err(Error::Budget {
            needed: free,
            budget: ORACLE_BUDGET_BITS,
        });
    }

    let chunk_bits = free.min(CHUNK_BITS);
    let sum: i64 = (0..1u64 << (free - chunk_bits))
        .into_par_iter()
        .map(|chunk| {
            let start = chunk << chunk_bits;
            (start..start + (1u64 << chunk_bits))
                .map(|bits| {
                    let pc = (0..touched.terms)
                        .fold(false, |acc, c| acc ^ f.eval(touched.input(c, bits)));
                    if pc {
                        -1
                    } else {
                        1
                    }
                })
                .sum::<i64>()
        })
        .sum();

    let mut report = BiasReport::new(Method::Oracle, spec.validate_independence())
        .with_exact(DyadicRational::new(sum, free as u64));
    report.op_count = (1u64 << free) * touched.terms as u64;
    Ok(report)
}
