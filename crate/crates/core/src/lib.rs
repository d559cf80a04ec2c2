//! Bessel functions of the first kind of complex order, evaluated through
//! Fourier-type integral representations driven by the regularized incomplete
//! gamma function, and Neumann series of Bessel functions through their
//! closed-form integral over the unit circle.
//!
//! Every integral route has an independent power-series route next to it, so
//! the two can be cross-checked:
//!
//! | quantity | series route | integral route |
//! |---|---|---|
//! | `J_ν(z)` | [`bessel::bessel_j_series`] | [`bessel::bessel_j_integral`] |
//! | `I_ν(z)` | [`bessel::bessel_i_series`] | [`bessel::bessel_i_integral`] |
//! | `C_ℓ^ν(x)` | [`gegenbauer::gegenbauer_recurrence`] | [`gegenbauer::gegenbauer_integral_arc`] |
//! | `Σ aₙ J_{ν+n}(z)` | [`neumann::neumann_direct`] | [`neumann::neumann_integral`] |
//!
//! ```
//! use jfourier::{bessel, C64};
//!
//! let z = C64::new(2.0, 1.0);
//! let nu = C64::new(1.7, 0.5);
//! let by_series = bessel::bessel_j_series(nu, z).unwrap();
//! let by_integral = bessel::bessel_j_integral(nu, z).unwrap();
//! assert!((by_series - by_integral).norm() < 1e-9);
//! ```

// `!(x > y)` is used on purpose: it also rejects NaN. Reference constants
// keep every digit they were computed with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bessel;
pub mod error;
pub mod expansions;
pub mod gamma;
pub mod gegenbauer;
pub mod neumann;
pub mod order;
pub mod quadrature;
mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use order::{decompose_order, principal_power, sign, ComplexOrder};
pub use quadrature::{QuadratureResult, QuadratureSpec, Singularity};
pub use sum::SeriesEvaluation;

/// Outcome of an evaluation together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    pub diagnostics: Diagnostics,
}

/// Route-specific diagnostics attached to an [`Evaluation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Diagnostics {
    /// A power series, truncated after `terms` terms.
    Series(SeriesEvaluation),
    /// A quadrature rule.
    Quadrature {
        nodes_used: usize,
        err_estimate: f64,
        converged: bool,
    },
    /// A trigonometric / Bessel-coefficient expansion.
    Expansion {
        terms_used: usize,
        tail_bound: f64,
        complete: bool,
    },
    /// Closed-form arithmetic, nothing to report.
    Closed,
}

impl Diagnostics {
    pub(crate) fn from_quadrature(q: &QuadratureResult) -> Self {
        Diagnostics::Quadrature {
            nodes_used: q.nodes_used,
            err_estimate: q.err_estimate,
            converged: q.converged,
        }
    }
}
