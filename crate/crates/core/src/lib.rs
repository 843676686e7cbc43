//! Biases of parity-check relations over combination keystream generators.
//!
//! A combination generator feeds `n` periodic sequences into a Boolean
//! function `f`. XORing the keystream at the offsets of a set
//! `T = { sum_i c_i M_i }`, where each `M_i` is a common period of a group of
//! sequences, cancels those sequences out of any separable approximation of
//! `f` and yields a biased relation. This crate computes that bias exactly,
//! bounds it, and checks the numbers by simulation.
//!
//! * [`boolfun`]: truth tables, Walsh spectra, restrictions, resiliency.
//! * [`parity`]: the set `T`, the free-bit map, exact biases, bounds.
//! * [`seqgen`]: periodic devices, keystreams, empirical biases, attack cost.

pub mod boolfun;
pub mod dyadic;
pub mod error;
pub mod parity;
pub mod seqgen;

pub use boolfun::{BooleanFunction, RestrictionTable, WalshSpectrum};
pub use dyadic::DyadicRational;
pub use error::{Error, Result};
pub use parity::{BiasReport, Independence, Method, ParityCheckSpec};
