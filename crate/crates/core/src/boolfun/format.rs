//! Text forms of a truth table.
//!
//! Hex: the table read as the integer `sum_x f(x) 2^x`, written in lowercase
//! hex, most significant digit first, zero-padded to `max(1, 2^n / 4)` digits.
//! Entry `x` is bit `x mod 4` of the digit at position `(2^n - 1 - x) / 4`
//! counted from the left. `x1 x2` on two variables is `8`.
//!
//! ANF: XOR of monomials such as `x1*x2 + x3 + 1`, variables `x1..xn`.

use super::BooleanFunction;
use crate::error::{Error, Result};

impl BooleanFunction {
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        super::check_arity(n)?;
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        let digits = hex_digits(n);
        if hex.len() != digits {
            return Err(Error::Hex(format!(
                "{} digits for n = {n}, expected {digits}",
                hex.len()
            )));
        }
        let size = 1usize << n;
        let mut table = vec![false; size];
        for (pos, ch) in hex.chars().enumerate() {
            let value = ch
                .to_digit(16)
                .ok_or_else(|| Error::Hex(format!("invalid digit {ch:?}")))?;
            let base = 4 * (digits - 1 - pos);
            for bit in 0..4 {
                if value >> bit & 1 == 1 {
                    let x = base + bit;
                    if x >= size {
                        return Err(Error::Hex(format!("digit {ch:?} sets bits beyond 2^{n}")));
                    }
                    table[x] = true;
                }
            }
        }
        Self::from_table(n, table)
    }

    pub fn to_hex(&self) -> String {
        let digits = hex_digits(self.n);
        (0..digits)
            .map(|pos| {
                let base = 4 * (digits - 1 - pos);
                let value = (0..4)
                    .filter(|&bit| base + bit < self.table.len() && self.table[base + bit])
                    .fold(0u32, |v, bit| v | 1 << bit);
                char::from_digit(value, 16).expect("nibble")
            })
            .collect()
    }

    /// Parses an ANF expression. With `n = None` the arity is the largest
    /// variable index mentioned (at least 1).
    pub fn from_anf(expr: &str, n: Option<usize>) -> Result<Self> {
        let mut monomials: Vec<usize> = Vec::new();
        let mut highest = 0usize;
        for term in expr.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Anf(format!("empty term in {expr:?}")));
            }
            let mut mask = 0usize;
            let mut zero = false;
            for factor in term.split('*').map(str::trim) {
                match factor {
                    "1" => {}
                    "0" => zero = true,
                    _ => {
                        let index: usize = factor
                            .strip_prefix('x')
                            .and_then(|d| d.parse().ok())
                            .filter(|&i| i >= 1)
                            .ok_or_else(|| Error::Anf(format!("unknown factor {factor:?}")))?;
                        if index > super::MAX_VARIABLES {
                            return Err(Error::Anf(format!("variable x{index} out of range")));
                        }
                        highest = highest.max(index);
                        mask |= 1 << (index - 1);
                    }
                }
            }
            if !zero {
                monomials.push(mask);
            }
        }
        let n = n.unwrap_or(highest.max(1));
        super::check_arity(n)?;
        if highest > n {
            return Err(Error::Anf(format!("variable x{highest} used with n = {n}")));
        }
        let mut coeffs = vec![false; 1 << n];
        for m in monomials {
            coeffs[m] ^= true;
        }
        mobius(&mut coeffs);
        Self::from_table(n, coeffs)
    }

    /// Canonical ANF: monomials in increasing mask order, `0` when empty.
    pub fn to_anf(&self) -> String {
        let mut coeffs = self.table.clone();
        mobius(&mut coeffs);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(mask, _)| {
                if mask == 0 {
                    "1".to_string()
                } else {
                    (0..self.n)
                        .filter(|j| mask >> j & 1 == 1)
                        .map(|j| format!("x{}", j + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn hex_digits(n: usize) -> usize {
    ((1usize << n) / 4).max(1)
}

/// Binary Moebius transform; an involution mapping truth table <-> ANF.
fn mobius(values: &mut [bool]) {
    let mut half = 1;
    while half < values.len() {
        for chunk in values.chunks_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter().zip(hi.iter_mut()) {
                *b ^= *a;
            }
        }
        half *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_bit_order() {
        let and2 = BooleanFunction::from_hex(2, "8").unwrap();
        assert_eq!(and2.table(), &[false, false, false, true]);
        assert_eq!(and2.to_hex(), "8");
        // x1 on three variables: entries 1, 3, 5, 7 set.
        assert_eq!(BooleanFunction::linear(3, 1).unwrap().to_hex(), "aa");
        assert_eq!(BooleanFunction::linear(1, 1).unwrap().to_hex(), "2");
        assert_eq!(BooleanFunction::from_hex(3, "AA").unwrap().to_hex(), "aa");
    }

    #[test]
    fn hex_errors() {
        assert!(matches!(
            BooleanFunction::from_hex(2, "08"),
            Err(Error::Hex(_))
        ));
        assert!(matches!(
            BooleanFunction::from_hex(2, "g"),
            Err(Error::Hex(_))
        ));
        assert!(matches!(
            BooleanFunction::from_hex(1, "4"),
            Err(Error::Hex(_))
        ));
        assert_eq!(
            BooleanFunction::from_hex(30, "0"),
            Err(Error::VariableCount(30))
        );
    }

    #[test]
    fn anf_examples() {
        let f = BooleanFunction::from_anf("x1 + x2", Some(2)).unwrap();
        assert_eq!(f.table(), &[false, true, true, false]);
        let one = BooleanFunction::from_anf("1", Some(1)).unwrap();
        assert_eq!(one.table(), &[true, true]);
        let and2 = BooleanFunction::from_anf("x1*x2", None).unwrap();
        assert_eq!(and2, BooleanFunction::from_hex(2, "8").unwrap());
        assert_eq!(
            BooleanFunction::from_anf("x3 + 1 + x2*x1", None)
                .unwrap()
                .to_anf(),
            "1 + x1*x2 + x3"
        );
        assert_eq!(
            BooleanFunction::from_anf("x1 + x1", None).unwrap().to_anf(),
            "0"
        );
    }

    #[test]
    fn anf_errors() {
        assert!(matches!(
            BooleanFunction::from_anf("x3", Some(2)),
            Err(Error::Anf(_))
        ));
        assert!(matches!(
            BooleanFunction::from_anf("y1", None),
            Err(Error::Anf(_))
        ));
        assert!(matches!(
            BooleanFunction::from_anf("x1 +", None),
            Err(Error::Anf(_))
        ));
        assert!(matches!(
            BooleanFunction::from_anf("x0", None),
            Err(Error::Anf(_))
        ));
    }

    proptest! {
        #[test]
        fn text_forms_round_trip(n in 1usize..=7, seed in any::<u64>()) {
            let f = BooleanFunction::from_fn(n, |x| {
                (seed.rotate_left(x as u32) ^ (x as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)) >> 63 == 1
            }).unwrap();
            prop_assert_eq!(&BooleanFunction::from_hex(n, &f.to_hex()).unwrap(), &f);
            prop_assert_eq!(&BooleanFunction::from_anf(&f.to_anf(), Some(n)).unwrap(), &f);
        }
    }
}
