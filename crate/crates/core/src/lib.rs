//! Exact computation of the virtual Euler characteristics of Out(F_n) and of
//! the even commutative graph complex.
//!
//! Two independent routes are implemented and cross-checked:
//!
//! * **Series route** ([`genfunc`], [`trees`]): truncated formal power series
//!   with exact rational coefficients, a formal Gaussian (Wick) operator, and
//!   the closed forms reached through Bernoulli numbers and rooted-tree
//!   generating functions.
//! * **Enumeration oracle** ([`oracle`]): brute-force enumeration of labeled
//!   half-edge graphs, trees and graph-forest pairs, with orbit-stabilizer
//!   weighting, which reproduces every small-order coefficient.
//!
//! The [`verify`] module packages the cross-checks into named suites.

pub mod error;
pub mod genfunc;
pub mod laurent;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod series;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::HbarLaurent;
pub use rational::ExactRational;
pub use report::{CheckItem, CheckReport, SeriesName, SeriesReport};
pub use series::{LambdaPoly, Ring, TruncatedSeries, Var};
