//! The map `chi(c, alpha)` giving the values of the block variables in term
//! `c` of the relation as a function of the free bits `alpha`.
//!
//! Term `c` has `tau = sum_i c_i M_i` with `c_i` bit `i - 1` of `c`. For a
//! variable in block `i`, terms `c` and `c - 2^(i-1)` (when `c_i = 1`) differ by
//! `M_i`, a period of that variable, so they see the same value. The terms
//! with `c_i = 0` each consume a fresh bit: writing `c = 2^i q + r` with
//! `r < 2^(i-1)`, the bit is `alpha_{j, 2^(i-1) q + r}`, which is `c` with bit
//! `i - 1` deleted.

use super::spec::ParityCheckSpec;
use crate::error::{Error, Result};

/// The `k * 2^(s-1)` free bits, as `k` sub-words of `2^(s-1)` bits: bit `m` of
/// sub-word `j` (`alpha_{j,m}`) is bit `j * 2^(s-1) + m` of the packed word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlphaWord {
    bits: u64,
    len: usize,
}

impl AlphaWord {
    pub fn new(bits: u64, spec: &ParityCheckSpec) -> Result<Self> {
        let len = spec.alpha_bits();
        if len > 64 || (len < 64 && bits >> len != 0) {
            return Err(Error::AlphaLength {
                expected: len,
                actual: 64 - bits.leading_zeros() as usize,
            });
        }
        Ok(Self { bits, len })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Source of each block variable's value in each term: for term `c` and
/// relabeled position `p`, the index into the packed alpha word.
#[derive(Clone, Debug)]
pub struct ChiMap {
    k: usize,
    terms: usize,
    /// `sources[c * k + p]`
    sources: Vec<u8>,
}

impl ChiMap {
    pub fn new(spec: &ParityCheckSpec) -> Result<Self> {
        let k = spec.k();
        let s = spec.s();
        let half = 1usize << (s - 1);
        if spec.alpha_bits() > 64 {
            return Err(Error::Budget {
                needed: spec.alpha_bits(),
                budget: 64,
            });
        }
        let terms = 1usize << s;
        let mut sources = vec![0u8; terms * k];
        for (c, row) in sources.chunks_mut(k).enumerate() {
            for (p, &block) in spec.block_of_position().iter().enumerate() {
                row[p] = (p * half + fresh_index(c, block)) as u8;
            }
        }
        Ok(Self { k, terms, sources })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Alpha bit index feeding position `p` of term `c`.
    pub fn source(&self, c: usize, p: usize) -> usize {
        self.sources[c * self.k + p] as usize
    }

    /// `chi(c, alpha)` packed with position `p` at bit `p`.
    #[inline]
    pub fn eval(&self, c: usize, alpha: u64) -> usize {
        self.sources[c * self.k..(c + 1) * self.k]
            .iter()
            .enumerate()
            .fold(0usize, |acc, (p, &src)| {
                acc | (((alpha >> src) & 1) as usize) << p
            })
    }
}

/// `c` with bit `block` removed: the fresh-bit index of term `c` (after
/// stepping down to the term where `c_i = 0`).
#[inline]
fn fresh_index(c: usize, block: usize) -> usize {
    let low = c & ((1 << block) - 1);
    let high = c >> (block + 1);
    low | high << block
}

/// `chi(c, alpha)` for one term, packed with relabeled position `p` at bit `p`.
pub fn chi(c: usize, alpha: &AlphaWord, spec: &ParityCheckSpec) -> Result<usize> {
    let terms = 1usize << spec.s();
    if c >= terms {
        return Err(Error::TermIndex { c, terms });
    }
    if alpha.len() != spec.alpha_bits() {
        return Err(Error::AlphaLength {
            expected: spec.alpha_bits(),
            actual: alpha.len(),
        });
    }
    Ok(ChiMap::new(spec)?.eval(c, alpha.bits()))
}

/// `chi` by the literal recursion: step down while `c_i = 1`, then read the
/// fresh bit. Kept separate from [`ChiMap`] so the two can be compared.
pub fn chi_recursive(c: usize, alpha: u64, spec: &ParityCheckSpec) -> usize {
    let half = 1usize << (spec.s() - 1);
    let mut out = 0;
    for (p, &block) in spec.block_of_position().iter().enumerate() {
        let mut cc = c;
        if cc >> block & 1 == 1 {
            cc -= 1 << block;
        }
        let q = cc >> (block + 1);
        let r = cc & ((1 << block) - 1);
        let m = (q << block) + r;
        out |= ((alpha >> (p * half + m)) & 1) as usize * (1 << p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_terms_repeat_alpha() {
        let spec = ParityCheckSpec::new(vec![3, 5, 7], vec![vec![1, 2, 3]], vec![1]).unwrap();
        for bits in 0..8u64 {
            let alpha = AlphaWord::new(bits, &spec).unwrap();
            assert_eq!(chi(0, &alpha, &spec).unwrap(), bits as usize);
            assert_eq!(chi(1, &alpha, &spec).unwrap(), bits as usize);
        }
    }

    #[test]
    fn errors() {
        let spec = ParityCheckSpec::new(vec![3, 5], vec![vec![1], vec![2]], vec![1, 1]).unwrap();
        let alpha = AlphaWord::new(0b1010, &spec).unwrap();
        assert_eq!(
            chi(4, &alpha, &spec),
            Err(Error::TermIndex { c: 4, terms: 4 })
        );
        assert!(matches!(
            AlphaWord::new(0b10000, &spec),
            Err(Error::AlphaLength { expected: 4, .. })
        ));
    }

    #[test]
    fn map_matches_recursion() {
        let spec = ParityCheckSpec::new(
            vec![3, 5, 7, 11, 13],
            vec![vec![2], vec![1, 4], vec![5]],
            vec![1, 1, 1],
        )
        .unwrap();
        let map = ChiMap::new(&spec).unwrap();
        for alpha in (0..1u64 << spec.alpha_bits()).step_by(7) {
            for c in 0..8 {
                assert_eq!(map.eval(c, alpha), chi_recursive(c, alpha, &spec));
            }
        }
    }
}
