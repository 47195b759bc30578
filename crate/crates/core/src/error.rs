//! Crate-wide error type.
//!
//! Every error carries enough context (the offending element, index, or
//! token position) to reconstruct what went wrong.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Elements handed to an operation do not belong to the descriptor.
    DescriptorMismatch { context: String },
    /// A finite multiplication table failed a group axiom.
    InvalidTable { reason: String },
    /// A descriptor parameter is out of range (e.g. `UT(1)`).
    InvalidDescriptor { reason: String },
    /// A partition predicate refers to structure the descriptor lacks.
    InvalidPredicate { reason: String },
    /// No cell of the partition contains the element (totality violation).
    NoCell { witness: String },
    /// More than one cell contains the element (disjointness violation).
    AmbiguousCell { witness: String, cells: Vec<usize> },
    /// A cell index outside the partition.
    BadCellIndex { index: usize, cells: usize },
    /// The splitter predicate matches nothing inside the chosen cell.
    UnsatisfiableSplitter { cell: usize },
    /// A projection map does not cover a cell index appearing in the set.
    UnmappedIndex { index: usize },
    /// Configuration sets of different shape cannot be compared.
    ShapeMismatch { context: String },
    /// An isomorphism spec does not apply to the descriptor.
    IsoMismatch { reason: String },
    /// A generating sequence was empty where one is required.
    EmptyGenerators,
    /// Requested radius exceeds the configured maximum.
    RadiusTooLarge { radius: usize, max: usize },
    /// Integer coordinate arithmetic overflowed machine range.
    Overflow { context: String },
    /// The prime list for the quotient consistency check is too small.
    InsufficientPrimes { largest: u64, needed_above: u64 },
    /// A listed prime is not prime.
    NotPrime { value: u64 },
    /// Text input could not be parsed; `at` is a byte offset or token.
    Parse { what: String, at: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DescriptorMismatch { context } => {
                write!(f, "element does not belong to the descriptor: {context}")
            }
            Error::InvalidTable { reason } => write!(f, "invalid multiplication table: {reason}"),
            Error::InvalidDescriptor { reason } => write!(f, "invalid group descriptor: {reason}"),
            Error::InvalidPredicate { reason } => write!(f, "invalid cell predicate: {reason}"),
            Error::NoCell { witness } => write!(f, "no cell contains element {witness}"),
            Error::AmbiguousCell { witness, cells } => {
                write!(f, "element {witness} lies in cells {cells:?}")
            }
            Error::BadCellIndex { index, cells } => {
                write!(f, "cell index {index} out of range 1..={cells}")
            }
            Error::UnsatisfiableSplitter { cell } => {
                write!(f, "splitter matches no element of cell {cell} on the validation ball")
            }
            Error::UnmappedIndex { index } => write!(f, "projection map misses cell index {index}"),
            Error::ShapeMismatch { context } => write!(f, "configuration shape mismatch: {context}"),
            Error::IsoMismatch { reason } => write!(f, "isomorphism spec mismatch: {reason}"),
            Error::EmptyGenerators => write!(f, "generating sequence is empty"),
            Error::RadiusTooLarge { radius, max } => {
                write!(f, "radius {radius} exceeds configured maximum {max}")
            }
            Error::Overflow { context } => write!(f, "integer overflow in {context}"),
            Error::InsufficientPrimes { largest, needed_above } => write!(
                f,
                "prime list insufficient: largest prime {largest} must exceed {needed_above}"
            ),
            Error::NotPrime { value } => write!(f, "{value} is not prime"),
            Error::Parse { what, at } => write!(f, "parse error: {what} at {at}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
