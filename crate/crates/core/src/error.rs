use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// The requested graph would exceed the configured node cap.
    CapacityExceeded { requested: u128, cap: usize },
    /// Levels start at one.
    InvalidLevel(u32),
    InvalidProbability(f64),
    /// An argument outside the domain of a map (non-positive `x`, `t`, ...).
    Domain { what: &'static str, value: f64 },
    /// A row of a supposedly stochastic matrix does not sum to one.
    MalformedMatrix { row: usize, sum: f64 },
    /// Brute-force enumeration is only provided for small levels.
    UnsupportedLevel(u32),
    TooManySlots { node: u32, slots: usize, max: usize },
    InvalidSampleCount,
    UnknownNode(u32),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CapacityExceeded { requested, cap } => {
                write!(f, "graph would have {requested} nodes, cap is {cap}")
            }
            Error::InvalidLevel(k) => write!(f, "level must be at least 1, got {k}"),
            Error::InvalidProbability(p) => write!(f, "probability must lie in [0, 1], got {p}"),
            Error::Domain { what, value } => write!(f, "{what}: argument {value} out of domain"),
            Error::MalformedMatrix { row, sum } => {
                write!(f, "row {row} of matrix sums to {sum}, expected 1")
            }
            Error::UnsupportedLevel(k) => write!(f, "exhaustive enumeration supports levels 2 and 3 only, got {k}"),
            Error::TooManySlots { node, slots, max } => {
                write!(f, "node {node} has {slots} incident slots, enumeration limit is {max}")
            }
            Error::InvalidSampleCount => f.write_str("sample count must be at least 1"),
            Error::UnknownNode(id) => write!(f, "no node with id {id}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_probability(p: f64) -> crate::Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}
