//! Rational approximations to Euler's constant γ and the Euler–Gompertz
//! constant δ, together with the continued fractions they generate.
//!
//! The central objects are pairs (qₙ, pₙ) with pₙ/qₙ → γ, built from binomial
//! sums such as qₙ = Σₖ C(n,k)² k!. The same denominators serve a second
//! sequence sₙ with sₙ/qₙ → δ. On top of those sit:
//!
//! * [`sequences`]: the concrete integer/rational sequences (binomial sums,
//!   their defining recurrences, cross-product discrepancies),
//! * [`linforms`]: linear forms pₙ − γqₙ described by gamma-factor products,
//!   with a creative-telescoping certificate for the main recurrence,
//! * [`contfrac`]: generic continued-fraction machinery (convergents,
//!   inversion from convergents, equivalence transforms, even contraction)
//!   plus the named fraction families for γ and δ,
//! * [`analysis`]: reference values, empirical error tables against the
//!   predicted decay rates, and integrality reports,
//! * [`numkit`]: the arithmetic kernel (big integers, exact rationals, and a
//!   fixed-point decimal type with sqrt/ln/exp and π, e, γ constants).

pub mod analysis;
#[cfg(feature = "cli")]
pub mod cli;
pub mod contfrac;
pub mod linforms;
pub mod numkit;
pub mod report;
pub mod sequences;

pub use numkit::{Dec, Int, Rat};
