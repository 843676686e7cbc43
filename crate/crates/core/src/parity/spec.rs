use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::boolfun::MAX_VARIABLES;
use crate::error::{Error, Result};

/// Largest supported block count; the relation then has `2^16` terms.
pub const MAX_BLOCKS: usize = 16;

/// Wire form of a parity-check set, variables numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCheckJson {
    pub periods: Vec<u64>,
    pub blocks: Vec<Vec<usize>>,
    pub multipliers: Vec<u64>,
}

/// The set `T = { sum_i c_i M_i : c_i in {0,1} }` together with the device
/// periods it was derived from.
///
/// Block `i` lists the variables whose sequences all have `M_i` as a period.
/// Internally the block variables are relabeled to positions `0..k` in the
/// order they are listed, followed by the remaining variables in increasing
/// order; see [`ParityCheckSpec::order`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ParityCheckJson", into = "ParityCheckJson")]
pub struct ParityCheckSpec {
    periods: Vec<u64>,
    blocks: Vec<Vec<usize>>,
    multipliers: Vec<u64>,
    moduli: Vec<u128>,
    order: Vec<usize>,
    block_of_position: Vec<usize>,
    k: usize,
}

impl ParityCheckSpec {
    pub fn new(periods: Vec<u64>, blocks: Vec<Vec<usize>>, multipliers: Vec<u64>) -> Result<Self> {
        let n = periods.len();
        if n == 0 || n > MAX_VARIABLES {
            return Err(Error::Spec(format!(
                "{n} periods, expected 1..={MAX_VARIABLES}"
            )));
        }
        if let Some(j) = periods.iter().position(|&t| t == 0) {
            return Err(Error::Spec(format!("period of x{} is zero", j + 1)));
        }
        if blocks.is_empty() || blocks.len() > MAX_BLOCKS {
            return Err(Error::Spec(format!(
                "{} blocks, expected 1..={MAX_BLOCKS}",
                blocks.len()
            )));
        }
        if multipliers.len() != blocks.len() {
            return Err(Error::Spec(format!(
                "{} multipliers for {} blocks",
                multipliers.len(),
                blocks.len()
            )));
        }
        if multipliers.contains(&0) {
            return Err(Error::Spec("multipliers must be positive".into()));
        }

        let mut used = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut block_of_position = Vec::new();
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Spec(format!("block {} is empty", i + 1)));
            }
            for &var in block {
                if var == 0 || var > n {
                    return Err(Error::Spec(format!("variable x{var} not in x1..x{n}")));
                }
                if std::mem::replace(&mut used[var - 1], true) {
                    return Err(Error::Spec(format!("variable x{var} appears twice")));
                }
                order.push(var - 1);
                block_of_position.push(i);
            }
        }
        let k = order.len();
        order.extend((0..n).filter(|&j| !used[j]));

        let mut moduli = Vec::with_capacity(blocks.len());
        for (block, &q) in blocks.iter().zip(&multipliers) {
            let lcm = block
                .iter()
                .try_fold(1u128, |acc, &var| {
                    checked_lcm(acc, u128::from(periods[var - 1]))
                })
                .and_then(|l| l.checked_mul(u128::from(q)))
                .ok_or_else(|| Error::Spec("block modulus overflows 128 bits".into()))?;
            moduli.push(lcm);
        }
        if moduli
            .iter()
            .try_fold(0u128, |acc, &m| acc.checked_add(m))
            .is_none()
        {
            return Err(Error::Spec("largest offset overflows 128 bits".into()));
        }

        Ok(Self {
            periods,
            blocks,
            multipliers,
            moduli,
            order,
            block_of_position,
            k,
        })
    }

    /// Variable count `n`.
    pub fn num_vars(&self) -> usize {
        self.periods.len()
    }

    /// Number of variables involved in the blocks.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Block count; the relation has `2^s` terms.
    pub fn s(&self) -> usize {
        self.blocks.len()
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    /// `M_i = q_i * lcm(periods in block i)`.
    pub fn moduli(&self) -> &[u128] {
        &self.moduli
    }

    /// Relabeling: position `p` holds original variable `order[p]` (0-based).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based block index of each of the first `k` positions.
    pub fn block_of_position(&self) -> &[usize] {
        &self.block_of_position
    }

    /// Number of free bits `k * 2^(s-1)` fixing the block variables.
    pub fn alpha_bits(&self) -> usize {
        self.k << (self.s() - 1)
    }

    /// `tau_c = sum_i c_i M_i` where `c_i` is bit `i - 1` of `c`.
    pub fn offset(&self, c: usize) -> u128 {
        self.moduli
            .iter()
            .enumerate()
            .filter(|(i, _)| c >> i & 1 == 1)
            .map(|(_, &m)| m)
            .sum()
    }

    /// All `2^s` offsets, indexed by `c`.
    pub fn offsets(&self) -> Vec<u128> {
        (0..1usize << self.s()).map(|c| self.offset(c)).collect()
    }

    pub fn max_offset(&self) -> u128 {
        self.moduli.iter().sum()
    }

    /// Maps a relabeled mask (bit `p` for position `p`) back to original
    /// 1-based variable numbers.
    pub fn mask_variables(&self, mask: usize) -> Vec<usize> {
        let mut vars: Vec<usize> = (0..self.num_vars())
            .filter(|p| mask >> p & 1 == 1)
            .map(|p| self.order[p] + 1)
            .collect();
        vars.sort_unstable();
        vars
    }

    /// Checks that the block structure is the only source of repeated
    /// values and that the other sequences contribute independent bits.
    ///
    /// For a variable outside the blocks, `x_j(t + tau)` are independent over
    /// `tau` exactly when the offsets are pairwise distinct modulo `T_j`
    /// ([`Independence::Pass`]). [`Independence::PassWeak`] means only that no
    /// nonzero offset is a multiple of `T_j`. For a variable in block `i`,
    /// offsets must coincide modulo `T_j` only for pairs differing in `c_i`;
    /// any extra coincidence is a failure.
    pub fn validate_independence(&self) -> IndependenceCheck {
        let offsets = self.offsets();
        let half = offsets.len() / 2;
        for p in 0..self.k {
            let var = self.order[p];
            let period = u128::from(self.periods[var]);
            let bit = 1usize << self.block_of_position[p];
            let residues: HashSet<u128> = (0..offsets.len())
                .filter(|c| c & bit == 0)
                .map(|c| offsets[c] % period)
                .collect();
            if residues.len() != half {
                return IndependenceCheck::fail(format!(
                    "x{} repeats across terms outside its block pairing",
                    var + 1
                ));
            }
        }
        let mut verdict = IndependenceCheck::pass();
        for &var in &self.order[self.k..] {
            let period = u128::from(self.periods[var]);
            let residues: HashSet<u128> = offsets.iter().map(|&t| t % period).collect();
            if residues.len() == offsets.len() {
                continue;
            }
            if offsets[1..].iter().any(|&t| t % period == 0) {
                return IndependenceCheck::fail(format!(
                    "a nonzero offset is a multiple of T{} = {period}",
                    var + 1
                ));
            }
            verdict = IndependenceCheck {
                verdict: Independence::PassWeak,
                reason: Some(format!(
                    "two offsets coincide modulo T{} = {period}",
                    var + 1
                )),
            };
        }
        verdict
    }
}

fn checked_lcm(a: u128, b: u128) -> Option<u128> {
    (a / a.gcd(&b)).checked_mul(b)
}

impl TryFrom<ParityCheckJson> for ParityCheckSpec {
    type Error = Error;

    fn try_from(raw: ParityCheckJson) -> Result<Self> {
        Self::new(raw.periods, raw.blocks, raw.multipliers)
    }
}

impl From<ParityCheckSpec> for ParityCheckJson {
    fn from(spec: ParityCheckSpec) -> Self {
        Self {
            periods: spec.periods,
            blocks: spec.blocks,
            multipliers: spec.multipliers,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Independence {
    Pass,
    PassWeak,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCheck {
    pub verdict: Independence,
    pub reason: Option<String>,
}

impl IndependenceCheck {
    fn pass() -> Self {
        Self {
            verdict: Independence::Pass,
            reason: None,
        }
    }

    fn fail(reason: String) -> Self {
        Self {
            verdict: Independence::Fail,
            reason: Some(reason),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(periods: Vec<u64>, blocks: Vec<Vec<usize>>, q: Vec<u64>) -> Independence {
        ParityCheckSpec::new(periods, blocks, q)
            .unwrap()
            .validate_independence()
            .verdict
    }

    #[test]
    fn derived_quantities() {
        let spec =
            ParityCheckSpec::new(vec![3, 5, 7, 4], vec![vec![3], vec![1, 2]], vec![2, 1]).unwrap();
        assert_eq!(spec.k(), 3);
        assert_eq!(spec.s(), 2);
        assert_eq!(spec.moduli(), &[14, 15]);
        assert_eq!(spec.order(), &[2, 0, 1, 3]);
        assert_eq!(spec.block_of_position(), &[0, 1, 1]);
        assert_eq!(spec.offsets(), vec![0, 14, 15, 29]);
        assert_eq!(spec.alpha_bits(), 6);
        assert_eq!(spec.mask_variables(0b1001), vec![3, 4]);
    }

    #[test]
    fn two_term_examples() {
        // T = {0, 15} against T_3 = 7.
        assert_eq!(
            verdict(vec![5, 3, 7], vec![vec![1, 2]], vec![1]),
            Independence::Pass
        );
        // T = {0, 14} against T_3 = 7.
        assert_eq!(
            verdict(vec![7, 2, 7], vec![vec![1]], vec![2]),
            Independence::Fail
        );
    }

    #[test]
    fn pairwise_differences_are_checked() {
        // T = {0, 6, 10, 16} against T_3 = 4: 16 - 0 is a multiple of 4.
        assert_eq!(
            verdict(vec![6, 10, 4], vec![vec![1], vec![2]], vec![1, 1]),
            Independence::Fail
        );
        // T = {0, 2, 5, 7} against T_3 = 3: 5 - 2 is a multiple, no element is.
        assert_eq!(
            verdict(vec![2, 5, 3], vec![vec![1], vec![2]], vec![1, 1]),
            Independence::PassWeak
        );
    }

    #[test]
    fn block_variables_must_not_repeat_across_blocks() {
        // M_2 = 15 is a multiple of T_1 = 3.
        assert_eq!(
            verdict(vec![3, 5, 7], vec![vec![1], vec![2]], vec![1, 3]),
            Independence::Fail
        );
        assert_eq!(
            verdict(vec![3, 5, 7], vec![vec![1], vec![2]], vec![1, 1]),
            Independence::Pass
        );
    }

    #[test]
    fn construction_errors() {
        assert!(ParityCheckSpec::new(vec![], vec![vec![1]], vec![1]).is_err());
        assert!(ParityCheckSpec::new(vec![3, 0], vec![vec![1]], vec![1]).is_err());
        assert!(ParityCheckSpec::new(vec![3, 5], vec![vec![1], vec![1]], vec![1, 1]).is_err());
        assert!(ParityCheckSpec::new(vec![3, 5], vec![vec![3]], vec![1]).is_err());
        assert!(ParityCheckSpec::new(vec![3, 5], vec![vec![]], vec![1]).is_err());
        assert!(ParityCheckSpec::new(vec![3, 5], vec![vec![1]], vec![1, 2]).is_err());
        assert!(ParityCheckSpec::new(vec![3, 5], vec![vec![1]], vec![0]).is_err());
    }

    #[test]
    fn json_form() {
        let text = r#"{"periods":[7,3,5],"blocks":[[1]],"multipliers":[2]}"#;
        let spec: ParityCheckSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.offsets(), vec![0, 14]);
        assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        assert!(serde_json::from_str::<ParityCheckSpec>(
            r#"{"periods":[7],"blocks":[[2]],"multipliers":[1]}"#
        )
        .is_err());
    }
}
