use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::parity::ParityCheckSpec;

/// Cost of a distinguisher using a relation of bias `eps`: about `eps^-2`
/// relation evaluations of `2^s` terms each, over `eps^-2 + max T` keystream
/// bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackCost {
    #[serde(with = "decimal")]
    pub time: BigInt,
    #[serde(with = "decimal")]
    pub data: BigInt,
}

impl AttackCost {
    pub fn log2_time(&self) -> f64 {
        DyadicRational::from(self.time.clone()).log2_abs()
    }

    pub fn log2_data(&self) -> f64 {
        DyadicRational::from(self.data.clone()).log2_abs()
    }
}

/// `time = ceil(eps^-2) 2^s`, `data = ceil(eps^-2) + max T`.
pub fn attack_cost(epsilon: &DyadicRational, spec: &ParityCheckSpec) -> Result<AttackCost> {
    if !epsilon.is_positive() || *epsilon > DyadicRational::one() {
        return Err(Error::BiasRange);
    }
    // eps = m / 2^d, so eps^-2 = 2^(2d) / m^2.
    let numerator = BigInt::one() << (2 * epsilon.log2_denominator());
    let denominator = epsilon.numerator() * epsilon.numerator();
    let samples = numerator.div_ceil(&denominator);
    Ok(AttackCost {
        time: &samples << spec.s(),
        data: samples + BigInt::from(spec.max_offset()),
    })
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_blocks() -> ParityCheckSpec {
        ParityCheckSpec::new(vec![3, 5, 7], vec![vec![1], vec![2]], vec![1, 1]).unwrap()
    }

    #[test]
    fn cost_examples() {
        let spec = two_blocks();
        let cost = attack_cost(&DyadicRational::pow2(-12), &spec).unwrap();
        assert_eq!(cost.time, BigInt::one() << 26);
        assert_eq!(cost.data, (BigInt::one() << 24) + 8);

        let cost = attack_cost(&DyadicRational::pow2(-20), &spec).unwrap();
        assert_eq!(cost.time, BigInt::one() << 42);
        assert_eq!(cost.log2_time(), 42.0);

        let cost = attack_cost(&DyadicRational::one(), &spec).unwrap();
        assert_eq!(cost.time, BigInt::from(4));
        assert_eq!(cost.data, BigInt::from(1 + 8));
    }

    #[test]
    fn rounding_up() {
        // eps = 3/4: eps^-2 = 16/9, rounded up to 2.
        let cost = attack_cost(&DyadicRational::new(3, 2), &two_blocks()).unwrap();
        assert_eq!(cost.time, BigInt::from(8));
    }

    #[test]
    fn range() {
        let spec = two_blocks();
        assert_eq!(
            attack_cost(&DyadicRational::zero(), &spec),
            Err(Error::BiasRange)
        );
        assert_eq!(
            attack_cost(&DyadicRational::new(-1, 2), &spec),
            Err(Error::BiasRange)
        );
        assert_eq!(
            attack_cost(&DyadicRational::new(3, 1), &spec),
            Err(Error::BiasRange)
        );
    }

    #[test]
    fn decreasing_in_bias() {
        let spec = two_blocks();
        let mut previous = None;
        for d in 0..30 {
            let cost = attack_cost(&DyadicRational::new(3, d + 2), &spec).unwrap();
            if let Some(p) = previous {
                assert!(cost.time > p);
            }
            previous = Some(cost.time);
        }
    }
}
