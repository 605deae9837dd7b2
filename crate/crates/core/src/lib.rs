//! Exact exponential-generating-function algebra.
//!
//! The crate computes Almkvist–Meurman numbers `M_n(h,k) = k^n (B_n(h/k) - B_n)`
//! two independent ways and certifies, step by step, that the chain
//!
//! ```text
//! A = sum_{n>=1} p_k(A)^(n-1) x^n/n!   (fixed point)
//! I = A^{<-1>} = k x log(1+x) / ((1+x)^k - 1)
//! I(e^x - 1) = k x (e^x - 1) / (e^{kx} - 1)
//! ```
//!
//! stays inside the Hurwitz series (integer EGF coefficients). It also carries
//! the four-parameter generalization over `Q[a1, a2, b1, b2]` and a brute-force
//! alternating-tree oracle.
//!
//! Everything is exact: rationals are arbitrary precision and there is no
//! floating point anywhere.

pub mod am;
pub mod coeffring;
pub mod combinat;
pub mod drake;
pub mod egf;
mod error;
pub mod fixpoint;

pub use coeffring::{binomial, Coefficient, ExactRational, Monomial, MultiPoly, Var};
pub use egf::{EgfSeries, IntegralityReport};
pub use error::{Error, Result};
