//! Error type shared across the crate.

use crate::series::Var;

/// Errors reported by series arithmetic, the Wick operator and the
/// enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// `exp` of a series whose constant term is nonzero, or composition
    /// with an inner series that has a nonzero constant term.
    #[error("series has a nonzero constant term; exp/composition requires constant term 0")]
    NonzeroConstantTerm,

    /// `log` of a series whose constant term is not the ring unit.
    #[error("series constant term is not 1; log requires constant term 1")]
    ConstantTermNotOne,

    /// Coefficient extraction past the truncation cap. Never silently zero.
    #[error("coefficient of degree {degree} requested but series is truncated at degree {cap}")]
    CoefficientOutOfRange { degree: usize, cap: usize },

    /// Wick sum requested at an order the operand's x-truncation cannot support.
    #[error("operand truncated at x-degree {have} but hbar-order {order} needs x-degree {need}")]
    InsufficientXCap {
        have: usize,
        need: usize,
        order: usize,
    },

    /// A negative power of hbar survived a Wick sum; the operand violated
    /// the valuation bound.
    #[error(
        "Wick sum produced a surviving hbar^{exponent} term ({value}); operand is inconsistent"
    )]
    NegativeHbarPower { exponent: i64, value: String },

    /// A Laurent coefficient dips below the structural bound -floor(d/3).
    #[error("coefficient of x^{degree} has hbar-valuation {valuation}, below the bound {bound}")]
    ValuationTooLow {
        degree: usize,
        valuation: i64,
        bound: i64,
    },

    /// Laurent exponential of an element with valuation <= 0 does not terminate.
    #[error("Laurent exponential requires strictly positive valuation")]
    NonpositiveValuation,

    /// Variable tag mismatch detected in a fallible operation.
    #[error("expected a series in {expected} but got one in {found}")]
    VariableMismatch { expected: Var, found: Var },

    /// Matchings exist only on even-sized sets.
    #[error("perfect matchings require an even set size, got {n}")]
    OddMatchingSize { n: usize },

    /// An enumeration was asked to exceed its configured cap.
    #[error("{what} = {requested} exceeds the configured cap {cap}; raise the cap (CLI: --force) to override")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
