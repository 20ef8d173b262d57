//! Numerical toolkit for monotone cosine series
//! `f(x) ~ sum a_nu cos(nu x)` with `a_nu` nonincreasing to zero.
//!
//! The crate evaluates three families of objects and compares them:
//!
//! * [`smoothness`]: k-th differences, `L^p` norms on a uniform grid and the
//!   modulus of smoothness `omega(f; t)_p`, together with the coefficient
//!   expression `E(n)` that brackets `omega(f; 1/n)_p` for monotone
//!   coefficients.
//! * [`besov`]: the integral seminorm `I(delta)`, its discrete counterpart
//!   `J(n)` and the coefficient functional `K(n)` that characterise the
//!   Nikol'skii-Besov classes, plus membership and equivalence reports.
//! * [`hardy`]: discrete Hardy-type inequalities for weighted partial sums,
//!   with ratio reports used to measure the unnamed constants empirically.
//!
//! [`sequences`] holds the coefficient model (a stored head plus an analytic
//! tail) and weighted power sums over finite or infinite ranges.
//! [`experiment`] drives configurable sweeps and writes CSV/JSON reports; the
//! `mbesov` binary is a thin wrapper around it.
//!
//! All `L^p` norms are taken over `[0, 2*pi]` without a `1/(2*pi)` factor.

pub mod besov;
pub mod error;
pub mod experiment;
pub mod hardy;
pub mod sequences;
pub mod series;
pub mod smoothness;

pub use error::{Error, Result};
pub use sequences::{CoefficientSequence, SumValue, TailModel};
