use rayon::prelude::*;

use super::BooleanFunction;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

const PARALLEL_LEN: usize = 1 << 16;

/// In-place unnormalized Walsh-Hadamard butterfly over a length `2^n` slice.
///
/// Applying it twice multiplies every entry by the length.
pub fn fwht(values: &mut [i64]) {
    let len = values.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let mut half = 1;
    while half < len {
        let stage = |chunk: &mut [i64]| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        };
        if len >= PARALLEL_LEN {
            values.par_chunks_mut(2 * half).for_each(stage);
        } else {
            values.chunks_mut(2 * half).for_each(stage);
        }
        half *= 2;
    }
}

/// All `2^n` Walsh coefficients `W(a) = sum_x (-1)^(f(x) + a.x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    coeffs: Vec<i64>,
}

impl WalshSpectrum {
    pub fn of(f: &BooleanFunction) -> Self {
        let mut coeffs: Vec<i64> = f.table().iter().map(|&b| if b { -1 } else { 1 }).collect();
        fwht(&mut coeffs);
        Self {
            n: f.num_vars(),
            coeffs,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, mask: usize) -> i64 {
        self.coeffs[mask]
    }

    /// `E(f + phi_a) = W(a) / 2^n`.
    pub fn linear_bias(&self, mask: u64) -> Result<DyadicRational> {
        if mask >= 1u64 << self.n {
            return Err(Error::MaskOutOfRange { mask, n: self.n });
        }
        Ok(DyadicRational::new(
            self.coeffs[mask as usize],
            self.n as u64,
        ))
    }

    /// Largest `t` with `W(a) = 0` for every `a` of weight at most `t`,
    /// `a = 0` included. `-1` for unbalanced functions.
    pub fn resiliency_order(&self) -> i32 {
        if self.coeffs[0] != 0 {
            return -1;
        }
        self.min_nonzero_weight(false) as i32 - 1
    }

    /// Same scan as [`Self::resiliency_order`] without the `a = 0` term.
    /// Constant functions are correlation-immune of every order `n`.
    pub fn correlation_immunity_order(&self) -> i32 {
        self.min_nonzero_weight(true) as i32 - 1
    }

    fn min_nonzero_weight(&self, skip_zero: bool) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(usize::from(skip_zero))
            .filter(|(_, &w)| w != 0)
            .map(|(a, _)| a.count_ones())
            .min()
            .unwrap_or(self.n as u32 + 1)
    }

    /// `W / 2^n` when every coefficient lies in `{0, +W, -W}`.
    pub fn plateaued_amplitude(&self) -> Option<DyadicRational> {
        let mut amplitude = 0i64;
        for &w in &self.coeffs {
            let w = w.abs();
            if w == 0 {
                continue;
            }
            if amplitude == 0 {
                amplitude = w;
            } else if amplitude != w {
                return None;
            }
        }
        Some(DyadicRational::new(amplitude, self.n as u64))
    }

    /// Masks with a nonzero coefficient among the first `2^k` (those
    /// supported on the first `k` variables).
    pub fn support_in_low(&self, k: usize) -> Vec<usize> {
        (0..1usize << k).filter(|&a| self.coeffs[a] != 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_coeff(f: &BooleanFunction, a: usize) -> i64 {
        (0..1usize << f.num_vars())
            .map(|x| {
                if f.eval(x) ^ ((x & a).count_ones() & 1 == 1) {
                    -1
                } else {
                    1
                }
            })
            .sum()
    }

    #[test]
    fn spectrum_examples() {
        let zero = BooleanFunction::constant(1, false).unwrap();
        assert_eq!(zero.walsh_transform().coeffs(), &[2, 0]);

        let lin = BooleanFunction::linear(2, 0b11).unwrap();
        assert_eq!(lin.walsh_transform().coeffs(), &[0, 0, 0, 4]);

        let and2 = BooleanFunction::from_bits(2, &[0, 0, 0, 1]).unwrap();
        let s = and2.walsh_transform();
        assert_eq!(s.coeffs(), &[2, 2, 2, -2]);
        assert_eq!(s.linear_bias(0b11).unwrap(), DyadicRational::new(-1, 1));
        assert!(matches!(
            s.linear_bias(4),
            Err(Error::MaskOutOfRange { mask: 4, n: 2 })
        ));
    }

    #[test]
    fn linear_bias_of_projection() {
        let x1 = BooleanFunction::linear(1, 1).unwrap();
        let s = x1.walsh_transform();
        assert_eq!(s.linear_bias(1).unwrap(), DyadicRational::one());
        assert_eq!(s.linear_bias(0).unwrap(), DyadicRational::zero());
    }

    #[test]
    fn resiliency_examples() {
        assert_eq!(
            BooleanFunction::linear(3, 0b111)
                .unwrap()
                .resiliency_order(),
            2
        );
        let and2 = BooleanFunction::from_bits(2, &[0, 0, 0, 1]).unwrap();
        assert_eq!(and2.resiliency_order(), -1);
        // x1 + x2 x3
        let f = BooleanFunction::from_fn(3, |x| (x & 1 == 1) ^ (x & 6 == 6)).unwrap();
        assert_eq!(f.resiliency_order(), 0);
        assert_eq!(
            BooleanFunction::constant(3, true)
                .unwrap()
                .walsh_transform()
                .correlation_immunity_order(),
            3
        );
    }

    #[test]
    fn plateaued_examples() {
        let bent = BooleanFunction::from_fn(4, |x| (x & 3 == 3) ^ (x & 12 == 12)).unwrap();
        assert_eq!(bent.plateaued_amplitude(), Some(DyadicRational::new(1, 2)));
        let x1 = BooleanFunction::linear(1, 1).unwrap();
        assert_eq!(x1.plateaued_amplitude(), Some(DyadicRational::one()));
        let maj = BooleanFunction::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        assert_eq!(maj.plateaued_amplitude(), Some(DyadicRational::new(1, 1)));
        // x1 x2 x3 has coefficients 6 and +-2: not plateaued.
        let and3 = BooleanFunction::from_fn(3, |x| x == 7).unwrap();
        assert_eq!(and3.plateaued_amplitude(), None);
    }

    fn arb_function(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 1 << n)
                .prop_map(move |t| BooleanFunction::from_table(n, t).unwrap())
        })
    }

    proptest! {
        #[test]
        fn butterfly_matches_definition(f in arb_function(6)) {
            let s = f.walsh_transform();
            for a in 0..1usize << f.num_vars() {
                prop_assert_eq!(s.coeff(a), brute_coeff(&f, a));
            }
            prop_assert_eq!(s.linear_bias(0).unwrap(), f.bias());
        }

        #[test]
        fn amplitude_satisfies_parseval(f in arb_function(6)) {
            let s = f.walsh_transform();
            if let Some(eps) = s.plateaued_amplitude() {
                let support = s.coeffs().iter().filter(|&&w| w != 0).count() as i64;
                prop_assert_eq!(&eps * &eps * DyadicRational::from(support), DyadicRational::one());
            }
        }
    }
}
