use thiserror::Error;

use crate::parity::Independence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count {0} outside the supported range 1..=24")]
    VariableCount(usize),
    #[error("truth table has {actual} entries, expected {expected}")]
    TableLength { expected: usize, actual: usize },
    #[error("truth table entry at index {0} is not 0 or 1")]
    TableEntry(usize),
    #[error("malformed hex truth table: {0}")]
    Hex(String),
    #[error("malformed ANF expression: {0}")]
    Anf(String),
    #[error("mask {mask:#x} out of range for {n} variables")]
    MaskOutOfRange { mask: u64, n: usize },
    #[error("fixed-variable count {k} outside 1..={n}")]
    RestrictionSize { k: usize, n: usize },
    #[error("invalid parity-check set: {0}")]
    Spec(String),
    #[error("function has {function} variables but the parity-check set describes {spec}")]
    ArityMismatch { function: usize, spec: usize },
    #[error("term index {c} out of range for a {terms}-term relation")]
    TermIndex { c: usize, terms: usize },
    #[error("alpha word has {actual} bits, expected {expected}")]
    AlphaLength { expected: usize, actual: usize },
    #[error("enumeration needs {needed} free bits, budget is {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("independence check failed ({0:?}); the exact formulas do not apply")]
    Independence(Independence),
    #[error("approximation is not separable across the blocks: {0}")]
    NotSeparable(String),
    #[error("bias must be positive and at most 1")]
    BiasRange,
    #[error("device error: {0}")]
    Device(String),
    #[error("generator error: {0}")]
    Generator(String),
    #[error("parity-check offset {needed} exceeds stream length {len}")]
    StreamIndex { needed: u128, len: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
