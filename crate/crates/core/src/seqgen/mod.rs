//! Combination generators built from periodic devices, and empirical checks
//! of parity-check biases against them.

mod cost;
mod device;
mod simulate;

pub use cost::{attack_cost, AttackCost};
pub use device::{PeriodicDevice, MAX_REGISTER_LENGTH};
pub use simulate::{
    empirical_bias, empirical_bias_with, simulate, sliding_window_bias, EmpiricalEstimate,
    Ensemble, SimulationReport,
};

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::parity::ParityCheckSpec;

/// Combining function in a generator config.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombinerJson {
    Anf(String),
    Hex(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub devices: Vec<PeriodicDevice>,
    pub combiner: CombinerJson,
}

/// `n` devices whose outputs feed an `n`-variable combiner. Each device is
/// stored as one least period of its output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    devices: Vec<PeriodicDevice>,
    sequences: Vec<Vec<bool>>,
    combiner: BooleanFunction,
}

impl Generator {
    pub fn new(devices: Vec<PeriodicDevice>, combiner: BooleanFunction) -> Result<Self> {
        if devices.len() != combiner.num_vars() {
            return Err(Error::Generator(format!(
                "{} devices for a combiner of {} variables",
                devices.len(),
                combiner.num_vars()
            )));
        }
        let sequences = devices
            .iter()
            .map(PeriodicDevice::period_bits)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            devices,
            sequences,
            combiner,
        })
    }

    pub fn from_json(config: &GeneratorJson) -> Result<Self> {
        let n = config.devices.len();
        let combiner = match &config.combiner {
            CombinerJson::Anf(expr) => BooleanFunction::from_anf(expr, Some(n))?,
            CombinerJson::Hex(hex) => BooleanFunction::from_hex(n, hex)?,
        };
        Self::new(config.devices.clone(), combiner)
    }

    pub fn devices(&self) -> &[PeriodicDevice] {
        &self.devices
    }

    pub fn combiner(&self) -> &BooleanFunction {
        &self.combiner
    }

    /// Least periods `T_1 .. T_n`.
    pub fn periods(&self) -> Vec<u64> {
        self.sequences.iter().map(|s| s.len() as u64).collect()
    }

    /// `x_j(t)` for 0-based device `j`.
    #[inline]
    pub fn device_bit(&self, j: usize, t: u128) -> bool {
        let seq = &self.sequences[j];
        seq[(t % seq.len() as u128) as usize]
    }

    /// `s(t) = f(x_1(t), ..., x_n(t))`.
    #[inline]
    pub fn output(&self, t: u128) -> bool {
        let x = (0..self.sequences.len())
            .fold(0usize, |x, j| x | usize::from(self.device_bit(j, t)) << j);
        self.combiner.eval(x)
    }
}

/// The first `length` keystream bits.
pub fn keystream(generator: &Generator, length: usize) -> Vec<bool> {
    (0..length as u128).map(|t| generator.output(t)).collect()
}

/// `xor over tau in T of stream[t + tau]` for each requested `t`.
pub fn parity_check_samples(
    stream: &[bool],
    spec: &ParityCheckSpec,
    t_values: &[u64],
) -> Result<Vec<bool>> {
    let offsets = spec.offsets();
    let max = spec.max_offset();
    t_values
        .iter()
        .map(|&t| {
            let last = u128::from(t) + max;
            if last >= stream.len() as u128 {
                return Err(Error::StreamIndex {
                    needed: last,
                    len: stream.len(),
                });
            }
            Ok(offsets.iter().fold(false, |acc, &tau| {
                acc ^ stream[(u128::from(t) + tau) as usize]
            }))
        })
        .collect()
}
