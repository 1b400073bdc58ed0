use alloc::string::String;
use core::fmt;

/// Errors raised by poset construction, queries and the dimension solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The closure of the given relation pairs is not antisymmetric.
    Cycle { first: String, second: String },
    UnknownElement(String),
    DuplicateElement(String),
    /// An input exceeds the size guard of the requested operation.
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    TooWide { width: usize, limit: usize },
    EmptyPoset,
    InvalidWitness(String),
    InvalidEmbedding(String),
    /// A map that is not total or not order preserving.
    InvalidMap(String),
    OutOfRange { n: usize, m: usize },
    UnknownCheck(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Cycle { first, second } => write!(
                f,
                "relation is not antisymmetric: {first} and {second} lie on a cycle"
            ),
            Error::UnknownElement(name) => write!(f, "unknown element `{name}`"),
            Error::DuplicateElement(name) => write!(f, "element `{name}` declared twice"),
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what}: size {size} exceeds the limit of {limit}")
            }
            Error::TooWide { width, limit } => {
                write!(f, "embedding width {width} exceeds the limit of {limit}")
            }
            Error::EmptyPoset => f.write_str("operation requires a nonempty poset"),
            Error::InvalidWitness(msg) => write!(f, "invalid beat point witness: {msg}"),
            Error::InvalidEmbedding(msg) => write!(f, "invalid embedding: {msg}"),
            Error::InvalidMap(msg) => write!(f, "invalid map: {msg}"),
            Error::OutOfRange { n, m } => write!(
                f,
                "no {n}-point poset has 2-dimension {m} (admissible range is ceil(log2 n)..=n, 2 <= n)"
            ),
            Error::UnknownCheck(name) => write!(f, "unknown census check `{name}`"),
        }
    }
}

impl core::error::Error for Error {}
