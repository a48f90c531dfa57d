use alloc::string::String;
use core::fmt;

/// Errors raised by ring construction and the exact algorithms on rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A basis index is outside `0..rank`.
    IndexOutOfRange { index: usize, rank: usize },
    /// The dual map is not an involutive permutation.
    BadDual(String),
    /// A structure constant was given twice.
    DuplicateTriple { a: usize, b: usize, c: usize },
    /// No positive `Z[phi]`-valued character could be found.
    NoGoldenDimensions(String),
    /// The grading classes do not carry a group structure.
    NotAGroup(String),
    /// The element is not a self-dual basis element with `t t = 1 + t`.
    NotFibLike(String),
    /// An exact division had no nonnegative integral solution.
    NoSolution,
    /// A permutation fails to be a ring automorphism.
    NotAnAutomorphism(String),
    /// `alpha^k` is not the identity.
    ActionOrder { order: usize },
    /// The subset of basis elements is not closed under fusion.
    NotClosed { a: usize, b: usize, c: usize },
    /// A word or presentation was malformed.
    BadWord(String),
    /// A catalog entry failed one of its invariants.
    Catalog(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "basis index {index} out of range for rank {rank}")
            }
            Error::BadDual(msg) => write!(f, "invalid dual map: {msg}"),
            Error::DuplicateTriple { a, b, c } => {
                write!(f, "structure constant ({a},{b},{c}) given more than once")
            }
            Error::NoGoldenDimensions(msg) => write!(f, "no golden-integer dimensions: {msg}"),
            Error::NotAGroup(msg) => write!(f, "grading is not a group: {msg}"),
            Error::NotFibLike(msg) => write!(f, "not a Fibonacci object: {msg}"),
            Error::NoSolution => write!(f, "no nonnegative solution"),
            Error::NotAnAutomorphism(msg) => write!(f, "not a ring automorphism: {msg}"),
            Error::ActionOrder { order } => {
                write!(f, "action generator does not satisfy alpha^{order} = id")
            }
            Error::NotClosed { a, b, c } => {
                write!(f, "subset not closed: {a} x {b} contains {c}")
            }
            Error::BadWord(msg) => write!(f, "malformed word: {msg}"),
            Error::Catalog(msg) => write!(f, "catalog entry failed: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::error::Error for Error {}
