//! Monte Carlo estimates of `E(PC) = E[(-1)^PC(t)]`.
//!
//! Trials are split into chunks of [`CHUNK_TRIALS`]; chunk `i` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `i`. Results depend
//! only on the seed and trial count, never on the thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Generator;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::parity::{
    brute_force_oracle, walsh_formula_unchecked, Independence, IndependenceCheck, ParityCheckSpec,
};

pub const CHUNK_TRIALS: u64 = 1 << 12;

/// Two-sided 99% normal quantile.
const Z99: f64 = 2.575_829_303_548_901;

/// What is random in each trial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    /// Fresh uniformly random contents for one period of every device, device
    /// periods kept. This is the ensemble the exact bias is defined over.
    #[default]
    RandomContent,
    /// The generator's actual device sequences at uniformly random phases.
    /// Converges to a phase average of the concrete devices, which in general
    /// differs from the exact bias.
    RandomPhase,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalEstimate {
    pub ensemble: String,
    pub trials: u64,
    pub seed: Option<u64>,
    /// Mean of `(-1)^PC`.
    pub estimate: f64,
    pub stderr: f64,
    pub interval_99: [f64; 2],
}

impl EmpiricalEstimate {
    fn from_sum(ensemble: &str, sum: i64, trials: u64, seed: Option<u64>) -> Self {
        let n = trials as f64;
        let mean = sum as f64 / n;
        // Samples are +-1, so the sample variance is (1 - mean^2) n / (n - 1).
        let variance = if trials > 1 {
            ((1.0 - mean * mean) * n / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        let stderr = (variance / n).sqrt();
        Self {
            ensemble: ensemble.to_string(),
            trials,
            seed,
            estimate: mean,
            stderr,
            interval_99: [mean - Z99 * stderr, mean + Z99 * stderr],
        }
    }

    /// `(estimate - value) / stderr`; infinite when the estimate has zero
    /// spread but misses the value.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = self.estimate - value;
        if self.stderr == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(diff)
            }
        } else {
            diff / self.stderr
        }
    }
}

pub fn empirical_bias(
    generator: &Generator,
    spec: &ParityCheckSpec,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalEstimate> {
    empirical_bias_with(generator, spec, trials, seed, Ensemble::RandomContent)
}

pub fn empirical_bias_with(
    generator: &Generator,
    spec: &ParityCheckSpec,
    trials: u64,
    seed: u64,
    ensemble: Ensemble,
) -> Result<EmpiricalEstimate> {
    check_compatible(generator, spec)?;
    if trials == 0 {
        return Err(Error::Generator("at least one trial is required".into()));
    }
    let offsets = spec.offsets();
    let periods: Vec<u128> = spec.periods().iter().map(|&t| u128::from(t)).collect();
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let sum: i64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = CHUNK_TRIALS.min(trials - chunk * CHUNK_TRIALS);
            let mut scratch = Vec::with_capacity(offsets.len());
            (0..count)
                .map(|_| {
                    let pc = match ensemble {
                        Ensemble::RandomContent => random_content_trial(
                            generator,
                            &periods,
                            &offsets,
                            &mut rng,
                            &mut scratch,
                        ),
                        Ensemble::RandomPhase => {
                            random_phase_trial(generator, &periods, &offsets, &mut rng)
                        }
                    };
                    if pc {
                        -1i64
                    } else {
                        1
                    }
                })
                .sum::<i64>()
        })
        .sum();
    let name = match ensemble {
        Ensemble::RandomContent => "random-content",
        Ensemble::RandomPhase => "random-phase",
    };
    Ok(EmpiricalEstimate::from_sum(name, sum, trials, Some(seed)))
}

/// One relation evaluation where every `x_j(t + tau)` reads a bit of a
/// freshly drawn period: equal residues modulo `T_j` share a bit.
fn random_content_trial(
    generator: &Generator,
    periods: &[u128],
    offsets: &[u128],
    rng: &mut ChaCha8Rng,
    scratch: &mut Vec<(u128, bool)>,
) -> bool {
    let t = u128::from(rng.gen::<u32>());
    let mut inputs = vec![0usize; offsets.len()];
    for (j, &period) in periods.iter().enumerate() {
        scratch.clear();
        for (c, &tau) in offsets.iter().enumerate() {
            let r = (t + tau) % period;
            let bit = match scratch.iter().find(|(res, _)| *res == r) {
                Some(&(_, b)) => b,
                None => {
                    let b = rng.gen::<bool>();
                    scratch.push((r, b));
                    b
                }
            };
            inputs[c] |= usize::from(bit) << j;
        }
    }
    inputs
        .iter()
        .fold(false, |acc, &x| acc ^ generator.combiner().eval(x))
}

fn random_phase_trial(
    generator: &Generator,
    periods: &[u128],
    offsets: &[u128],
    rng: &mut ChaCha8Rng,
) -> bool {
    let t = u128::from(rng.gen::<u32>());
    let phases: Vec<u128> = periods.iter().map(|&p| rng.gen_range(0..p)).collect();
    offsets.iter().fold(false, |acc, &tau| {
        let x = phases.iter().enumerate().fold(0usize, |x, (j, &phase)| {
            x | usize::from(generator.device_bit(j, phase + t + tau)) << j
        });
        acc ^ generator.combiner().eval(x)
    })
}

/// Mean of `(-1)^PC(t)` over `t = 0 .. samples` on the generator's own
/// keystream (all devices at phase 0).
pub fn sliding_window_bias(
    generator: &Generator,
    spec: &ParityCheckSpec,
    samples: u64,
) -> Result<EmpiricalEstimate> {
    check_compatible(generator, spec)?;
    if samples == 0 {
        return Err(Error::Generator("at least one sample is required".into()));
    }
    let offsets = spec.offsets();
    let sum: i64 = (0..samples)
        .into_par_iter()
        .map(|t| {
            let pc = offsets.iter().fold(false, |acc, &tau| {
                acc ^ generator.output(u128::from(t) + tau)
            });
            if pc {
                -1i64
            } else {
                1
            }
        })
        .sum();
    Ok(EmpiricalEstimate::from_sum(
        "sliding-window",
        sum,
        samples,
        None,
    ))
}

fn check_compatible(generator: &Generator, spec: &ParityCheckSpec) -> Result<()> {
    let periods = generator.periods();
    if periods != spec.periods() {
        return Err(Error::Generator(format!(
            "parity-check periods {:?} differ from device least periods {periods:?}",
            spec.periods()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub estimate: EmpiricalEstimate,
    pub independence: IndependenceCheck,
    /// The Walsh-coefficient formula, evaluated even when it does not apply.
    pub formula: Option<DyadicRational>,
    pub formula_applies: bool,
    /// Brute-force bias of the relation, when small enough to enumerate.
    pub oracle: Option<DyadicRational>,
    pub z_formula: Option<f64>,
    pub z_oracle: Option<f64>,
    /// Estimate more than three standard errors from the formula.
    pub diverges_from_formula: Option<bool>,
}

/// Estimate plus its comparison against the formula and the oracle.
pub fn simulate(
    generator: &Generator,
    spec: &ParityCheckSpec,
    trials: u64,
    seed: u64,
    ensemble: Ensemble,
) -> Result<SimulationReport> {
    let estimate = empirical_bias_with(generator, spec, trials, seed, ensemble)?;
    let independence = spec.validate_independence();
    let formula = walsh_formula_unchecked(generator.combiner(), spec).ok();
    let oracle = brute_force_oracle(generator.combiner(), spec)
        .ok()
        .and_then(|r| r.exact);
    let z_formula = formula.as_ref().map(|v| estimate.z_score(v.to_f64()));
    let z_oracle = oracle.as_ref().map(|v| estimate.z_score(v.to_f64()));
    Ok(SimulationReport {
        formula_applies: independence.verdict == Independence::Pass,
        diverges_from_formula: z_formula.map(|z| z.abs() > 3.0),
        estimate,
        independence,
        formula,
        oracle,
        z_formula,
        z_oracle,
    })
}
