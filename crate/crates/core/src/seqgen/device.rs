use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};

/// Longest register whose state cycle is walked exhaustively.
pub const MAX_REGISTER_LENGTH: usize = 20;

/// A source of a periodic bit sequence.
///
/// Registers hold `s_t .. s_{t+L-1}` with `s_{t+i}` in state bit `i`; each
/// clock outputs bit 0, computes `s_{t+L}` from the whole state and shifts it
/// in at bit `L - 1`. For an NLFSR, variable `x_{i+1}` of the feedback
/// function reads state bit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PeriodicDevice {
    /// One period of the output, repeated forever.
    Explicit { bits: Vec<u8> },
    /// Feedback is the parity of `state & taps`.
    Lfsr {
        length: usize,
        taps: u32,
        state: u32,
    },
    /// Feedback is a Boolean function of the `length` state bits, given as a
    /// hex truth table.
    Nlfsr {
        length: usize,
        feedback: String,
        state: u32,
    },
}

impl PeriodicDevice {
    pub fn explicit(bits: &[u8]) -> Self {
        Self::Explicit {
            bits: bits.to_vec(),
        }
    }

    pub fn lfsr(length: usize, taps: u32, state: u32) -> Self {
        Self::Lfsr {
            length,
            taps,
            state,
        }
    }

    pub fn nlfsr(feedback: &BooleanFunction, state: u32) -> Self {
        Self::Nlfsr {
            length: feedback.num_vars(),
            feedback: feedback.to_hex(),
            state,
        }
    }

    /// One least period of the output sequence.
    pub fn period_bits(&self) -> Result<Vec<bool>> {
        let cycle = match self {
            Self::Explicit { bits } => {
                if bits.is_empty() {
                    return Err(Error::Device("explicit sequence is empty".into()));
                }
                bits.iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(Error::Device(format!("bit value {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Self::Lfsr {
                length,
                taps,
                state,
            } => {
                check_register(*length, *state)?;
                if *state == 0 {
                    return Err(Error::Device("LFSR state is all-zero".into()));
                }
                let taps = *taps;
                walk_cycle(*length, *state, |s| (s & taps).count_ones() & 1 == 1)?
            }
            Self::Nlfsr {
                length,
                feedback,
                state,
            } => {
                check_register(*length, *state)?;
                let f = BooleanFunction::from_hex(*length, feedback)?;
                walk_cycle(*length, *state, |s| f.eval(s as usize))?
            }
        };
        Ok(reduce_to_least_period(cycle))
    }

    pub fn least_period(&self) -> Result<u64> {
        Ok(self.period_bits()?.len() as u64)
    }
}

fn check_register(length: usize, state: u32) -> Result<()> {
    if length == 0 || length > MAX_REGISTER_LENGTH {
        return Err(Error::Device(format!(
            "register length {length} outside 1..={MAX_REGISTER_LENGTH}"
        )));
    }
    if state >> length != 0 {
        return Err(Error::Device(format!(
            "state {state:#x} wider than {length} bits"
        )));
    }
    Ok(())
}

/// Clocks the register until its state repeats and returns the outputs over
/// one state cycle. Fails when the initial state is not on a cycle, since the
/// output would then not be purely periodic.
fn walk_cycle(length: usize, initial: u32, feedback: impl Fn(u32) -> bool) -> Result<Vec<bool>> {
    let mut seen = vec![false; 1 << length];
    let mut state = initial;
    let mut out = Vec::new();
    while !std::mem::replace(&mut seen[state as usize], true) {
        out.push(state & 1 == 1);
        let bit = u32::from(feedback(state));
        state = (state >> 1) | (bit << (length - 1));
    }
    if state != initial {
        return Err(Error::Device(format!(
            "initial state {initial:#x} is not on a cycle; output is not purely periodic"
        )));
    }
    Ok(out)
}

/// Shortest prefix whose repetition reproduces the cycle.
fn reduce_to_least_period(cycle: Vec<bool>) -> Vec<bool> {
    let len = cycle.len();
    for d in (1..=len).filter(|d| len.is_multiple_of(*d)) {
        if (d..len).all(|t| cycle[t] == cycle[t - d]) {
            return cycle[..d].to_vec();
        }
    }
    cycle
}
