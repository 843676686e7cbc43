use super::BooleanFunction;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// Biases of the `2^k` restrictions obtained by fixing the first `k`
/// variables, each an integer over `2^(n - k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionTable {
    k: usize,
    log2_denominator: u64,
    numerators: Vec<i64>,
}

impl RestrictionTable {
    pub fn of(f: &BooleanFunction, k: usize) -> Result<Self> {
        let n = f.num_vars();
        if k == 0 || k > n {
            return Err(Error::RestrictionSize { k, n });
        }
        let stride = 1usize << k;
        let mut numerators = vec![0i64; stride];
        // Index x = a + y * 2^k, so each contiguous run of 2^k entries
        // contributes one term to every restriction.
        for chunk in f.table().chunks(stride) {
            for (acc, &bit) in numerators.iter_mut().zip(chunk) {
                *acc += if bit { -1 } else { 1 };
            }
        }
        Ok(Self {
            k,
            log2_denominator: (n - k) as u64,
            numerators,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn log2_denominator(&self) -> u64 {
        self.log2_denominator
    }

    /// `2^(n-k) * E(f_{a + V})` for every `a`.
    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn bias(&self, a: usize) -> DyadicRational {
        DyadicRational::new(self.numerators[a], self.log2_denominator)
    }

    pub fn biases(&self) -> Vec<DyadicRational> {
        (0..self.numerators.len()).map(|a| self.bias(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_examples() {
        // x1 + x2 x3: fixing x1 leaves x2 x3 (bias 1/2) or its complement.
        let f = BooleanFunction::from_fn(3, |x| (x & 1 == 1) ^ (x & 6 == 6)).unwrap();
        let t = f.restriction_table(1).unwrap();
        assert_eq!(
            t.biases(),
            vec![DyadicRational::new(1, 1), DyadicRational::new(-1, 1)]
        );

        let zero = BooleanFunction::constant(4, false).unwrap();
        for k in 1..=4 {
            assert!(zero
                .restriction_table(k)
                .unwrap()
                .biases()
                .iter()
                .all(|b| *b == DyadicRational::one()));
        }

        let x3 = BooleanFunction::linear(3, 0b100).unwrap();
        assert!(x3
            .restriction_table(2)
            .unwrap()
            .biases()
            .iter()
            .all(|b| b.is_zero()));
    }

    #[test]
    fn k_out_of_range() {
        let f = BooleanFunction::constant(3, false).unwrap();
        assert_eq!(
            f.restriction_table(0),
            Err(Error::RestrictionSize { k: 0, n: 3 })
        );
        assert_eq!(
            f.restriction_table(4),
            Err(Error::RestrictionSize { k: 4, n: 3 })
        );
    }

    #[test]
    fn restrictions_average_to_bias() {
        let f = BooleanFunction::from_fn(5, |x| ((x * 2654435761usize) >> 7) & 1 == 1).unwrap();
        for k in 1..=5 {
            let t = f.restriction_table(k).unwrap();
            let sum = t
                .biases()
                .iter()
                .fold(DyadicRational::zero(), |acc, b| &acc + b);
            assert_eq!(sum.shr(k as u64), f.bias());
        }
    }
}
