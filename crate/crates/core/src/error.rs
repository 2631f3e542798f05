use std::fmt;

use crate::exact::Int;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates an operation's precondition.
    InvalidArgument(String),
    /// The `(p, q, m)` triple does not describe a valid variety.
    InvalidPair(String),
    /// The operation needs `p < q`; the smooth case `p = q` has no
    /// resolution data to compute.
    SmoothCaseUnsupported,
    /// No lattice point exists over the requested `(n, c)` fiber.
    EmptyFiber { n: Int, c: Int },
    /// The label fails the lattice membership conditions.
    NotInLattice { n: Int, c: Int, omega: Int },
    /// A hypothesis of the requested identity does not hold here.
    PreconditionFailure(String),
    IndexOutOfRange(String),
    /// An enumeration bound was exhausted without certifying the result.
    BoundFailure(String),
    /// Rewrite-system completion exceeded its rule budget.
    BudgetExceeded { rules: usize },
    /// A structural fact the construction relies on failed to hold.
    ConsistencyFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidPair(msg) => write!(f, "invalid pair: {msg}"),
            Error::SmoothCaseUnsupported => {
                write!(f, "smooth case (p = q) is not supported by this operation")
            }
            Error::EmptyFiber { n, c } => write!(f, "empty fiber over (n, c) = ({n}, {c})"),
            Error::NotInLattice { n, c, omega } => {
                write!(f, "label ({n}, {c}, {omega}) is not in the exponent lattice")
            }
            Error::PreconditionFailure(msg) => write!(f, "precondition failure: {msg}"),
            Error::IndexOutOfRange(msg) => write!(f, "index out of range: {msg}"),
            Error::BoundFailure(msg) => write!(f, "bound failure: {msg}"),
            Error::BudgetExceeded { rules } => {
                write!(f, "completion budget exceeded ({rules} rules)")
            }
            Error::ConsistencyFailure(msg) => write!(f, "consistency failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
