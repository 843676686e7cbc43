//! Truth-table Boolean functions and their spectral analysis.
//!
//! Variable `x_j` (1-based) is bit `j - 1` of the truth-table index, so the
//! first `k` variables span the low `k` index bits. Fixing the first `k`
//! variables to `a` leaves the restriction at indices `a + y * 2^k`.

mod format;
mod restriction;
mod walsh;

pub use restriction::RestrictionTable;
pub use walsh::{fwht, WalshSpectrum};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

pub const MAX_VARIABLES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn from_table(n: usize, table: Vec<bool>) -> Result<Self> {
        check_arity(n)?;
        if table.len() != 1 << n {
            return Err(Error::TableLength {
                expected: 1 << n,
                actual: table.len(),
            });
        }
        Ok(Self { n, table })
    }

    /// Builds from 0/1 entries, rejecting anything else.
    pub fn from_bits(n: usize, bits: &[u8]) -> Result<Self> {
        let table = bits
            .iter()
            .enumerate()
            .map(|(i, &b)| match b {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(Error::TableEntry(i)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(n, table)
    }

    /// Tabulates `f` over all `2^n` inputs, passed as packed indices.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_arity(n)?;
        Ok(Self {
            n,
            table: (0..1usize << n).map(f).collect(),
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// The linear function `x -> mask . x`.
    pub fn linear(n: usize, mask: usize) -> Result<Self> {
        Self::from_fn(n, |x| (x & mask).count_ones() & 1 == 1)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// `2^-n * sum_x (-1)^f(x)`.
    pub fn bias(&self) -> DyadicRational {
        let ones = self.weight() as i64;
        DyadicRational::new((1i64 << self.n) - 2 * ones, self.n as u64)
    }

    pub fn walsh_transform(&self) -> WalshSpectrum {
        WalshSpectrum::of(self)
    }

    pub fn restriction_table(&self, k: usize) -> Result<RestrictionTable> {
        RestrictionTable::of(self, k)
    }

    pub fn resiliency_order(&self) -> i32 {
        self.walsh_transform().resiliency_order()
    }

    pub fn plateaued_amplitude(&self) -> Option<DyadicRational> {
        self.walsh_transform().plateaued_amplitude()
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                function: other.n,
                spec: self.n,
            });
        }
        Ok(Self {
            n: self.n,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Relabels variables: variable `m + 1` of the result is variable
    /// `order[m] + 1` of `self` (both 0-based in `order`).
    ///
    /// `order` must be a permutation of `0..n`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
        {
            return Err(Error::Spec(format!(
                "{order:?} is not a permutation of 0..{n}"
            )));
        }
        Ok(Self::from_fn(n, |y| {
            let x = order
                .iter()
                .enumerate()
                .fold(0usize, |x, (m, &old)| x | (((y >> m) & 1) << old));
            self.table[x]
        })
        .expect("arity already validated"))
    }
}

fn check_arity(n: usize) -> Result<()> {
    if (1..=MAX_VARIABLES).contains(&n) {
        Ok(())
    } else {
        Err(Error::VariableCount(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and2() -> BooleanFunction {
        BooleanFunction::from_bits(2, &[0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn bias_examples() {
        assert_eq!(
            BooleanFunction::constant(2, false).unwrap().bias(),
            DyadicRational::one()
        );
        assert_eq!(
            BooleanFunction::linear(1, 1).unwrap().bias(),
            DyadicRational::zero()
        );
        assert_eq!(and2().bias(), DyadicRational::new(1, 1));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            BooleanFunction::from_table(0, vec![false]),
            Err(Error::VariableCount(0))
        );
        assert_eq!(
            BooleanFunction::from_table(25, vec![]),
            Err(Error::VariableCount(25))
        );
        assert!(matches!(
            BooleanFunction::from_table(2, vec![false; 3]),
            Err(Error::TableLength {
                expected: 4,
                actual: 3
            })
        ));
        assert_eq!(
            BooleanFunction::from_bits(1, &[0, 2]),
            Err(Error::TableEntry(1))
        );
    }

    #[test]
    fn permute_moves_variables() {
        // f = x3 on three variables; move x3 to the front.
        let f = BooleanFunction::from_fn(3, |x| x >> 2 & 1 == 1).unwrap();
        let g = f.permute(&[2, 0, 1]).unwrap();
        assert_eq!(g, BooleanFunction::linear(3, 1).unwrap());
        assert!(f.permute(&[0, 0, 1]).is_err());
    }
}
