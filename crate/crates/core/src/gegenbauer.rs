//! Gegenbauer polynomials `C_ℓ^ν`.
//!
//! The three-term recurrence is the reference. Three trigonometric integrals
//! reproduce it: the classical one over `η ∈ (0, π)`, and two arc integrals
//! over the parts of the unit circle cut off by `e^{±iu}`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::bessel::require_converged;
use crate::gamma::{gamma_fn, reciprocal_gamma};
use crate::quadrature::{fallible, integrate_nodes, Node};
use crate::{Error, QuadratureResult, QuadratureSpec, Result, Singularity, C64};

/// Closest an arc endpoint `u` may get to `0` or `π`.
pub const ARC_EDGE: f64 = 1e-6;

/// Which arc of the unit circle the integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcVariant {
    /// `t ∈ (u, 2π − u)`, through `e^{iπ}`.
    Outer,
    /// `t ∈ (−u, u)`, through `1`.
    Inner,
}

/// Degree and order of a Gegenbauer polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParams {
    pub ell: u32,
    pub nu: C64,
}

impl GegenbauerParams {
    pub fn new(ell: u32, nu: C64) -> Self {
        GegenbauerParams { ell, nu }
    }

    /// The integral forms need `Re ν > 0`.
    fn check_integral(&self) -> Result<()> {
        if !(self.nu.re > 0.0) || !self.nu.im.is_finite() {
            return Err(Error::domain(format!(
                "integral representation needs Re nu > 0, got {}",
                self.nu
            )));
        }
        Ok(())
    }
}

/// `C_ℓ^ν(x)` from `C_0 = 1`, `C_1 = 2νx` and
/// `(n+1) C_{n+1} = 2x(n+ν) C_n − (n+2ν−1) C_{n−1}`.
pub fn gegenbauer_recurrence(ell: u32, nu: C64, x: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if ell == 0 {
        return prev;
    }
    let mut cur = 2.0 * nu * x;
    for n in 1..ell {
        let n = n as f64;
        let next = (2.0 * x * (nu + n) * cur - (nu * 2.0 + n - 1.0) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind, `T_{n+1} = 2x T_n − T_{n−1}`.
pub fn chebyshev_t(ell: u32, x: C64) -> C64 {
    chebyshev(ell, x, x)
}

/// Chebyshev polynomial of the second kind, equal to `C_ℓ^1`.
pub fn chebyshev_u(ell: u32, x: C64) -> C64 {
    chebyshev(ell, x, 2.0 * x)
}

fn chebyshev(ell: u32, x: C64, first: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if ell == 0 {
        return prev;
    }
    let mut cur = first;
    for _ in 1..ell {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(ℓ+ν) h_ℓ^ν / π = 2^{1−2ν} Γ(ℓ+2ν) / (ℓ! Γ(ν)²)`, the constant in front
/// of every integral form.
fn integral_prefactor(ell: u32, nu: C64) -> Result<C64> {
    let rg = reciprocal_gamma(nu);
    let ln2 = std::f64::consts::LN_2;
    let mut factorial = 1.0;
    for k in 2..=ell {
        factorial *= k as f64;
    }
    Ok((ln2 * (1.0 - 2.0 * nu)).exp() * gamma_fn(nu * 2.0 + ell as f64)? * rg * rg / factorial)
}

/// Orthogonality constant `h_ℓ^ν = 2^{1−2ν} π Γ(ℓ+2ν) / ((ℓ+ν) ℓ! Γ(ν)²)`.
pub fn h_norm(ell: u32, nu: C64) -> Result<C64> {
    let shift = nu + ell as f64;
    if shift == C64::new(0.0, 0.0) {
        return Err(Error::Pole(format!("h_{ell}^{nu}: l + nu = 0")));
    }
    Ok(integral_prefactor(ell, nu)
        .map_err(|_| Error::Pole(format!("h_{ell}^{nu}: Gamma(l + 2 nu) has a pole")))?
        * PI
        / shift)
}

/// `(2 sin(u ± d/2) sin(d/2))^{ν−1}` in log form, `sign = ±1`.
fn arc_weight(u: f64, d: f64, sign: f64, exponent: C64) -> C64 {
    let ln_base = std::f64::consts::LN_2 + (u + sign * 0.5 * d).sin().ln() + (0.5 * d).sin().ln();
    (exponent * ln_base).exp()
}

fn sin_power(x: f64, exponent: C64) -> C64 {
    (exponent * x.sin().ln()).exp()
}

fn split_integral(
    f: impl Fn(Node, bool) -> Result<C64>,
    a: f64,
    mid: f64,
    b: f64,
    exponent: C64,
) -> Result<QuadratureResult> {
    let left_spec = QuadratureSpec::default().with_singularity(Singularity::LeftEndpoint(exponent));
    let right_spec =
        QuadratureSpec::default().with_singularity(Singularity::RightEndpoint(exponent));
    let left = fallible(
        |n: Node| f(n, true),
        |g| integrate_nodes(g, a, mid, &left_spec),
    )?;
    let right = fallible(
        |n: Node| f(n, false),
        |g| integrate_nodes(g, mid, b, &right_spec),
    )?;
    Ok(left.merge(right))
}

/// `C_ℓ^ν(cos u) = ((ℓ+ν)h/π) ∫_0^π (cos u + i sin u cos η)^ℓ (sin η)^{2ν−1} dη`.
pub fn gegenbauer_integral_vilenkin(ell: u32, nu: C64, u: f64) -> Result<C64> {
    GegenbauerParams::new(ell, nu).check_integral()?;
    if !(0.0 < u && u < PI) {
        return Err(Error::domain(format!("u = {u} must lie in (0, pi)")));
    }
    let exponent = nu * 2.0 - 1.0;
    let (cu, su) = (u.cos(), u.sin());
    let q = split_integral(
        |n, left| {
            // sin η from the distance to whichever end is near.
            let s = if left {
                sin_power(n.from_a, exponent)
            } else {
                sin_power(n.from_b, exponent)
            };
            Ok(C64::new(cu, su * n.x.cos()).powu(ell) * s)
        },
        0.0,
        FRAC_PI_2,
        PI,
        exponent,
    )?;
    let q = require_converged(q, "Gegenbauer integral")?;
    Ok(integral_prefactor(ell, nu)? * q.value)
}

/// `C_ℓ^ν(cos u)` as an integral of `e^{i(ℓ+ν)t} |cos u − cos t|^{ν−1}` over
/// one of the two arcs ending at `t = ±u`.
pub fn gegenbauer_integral_arc(ell: u32, nu: C64, u: f64, variant: ArcVariant) -> Result<C64> {
    GegenbauerParams::new(ell, nu).check_integral()?;
    if !(ARC_EDGE..=PI - ARC_EDGE).contains(&u) {
        return Err(Error::domain(format!(
            "u = {u} must lie at least {ARC_EDGE} inside (0, pi)"
        )));
    }
    let exponent = nu - 1.0;
    let freq = nu + ell as f64;
    let wave = |t: f64| (C64::new(0.0, t) * freq).exp();
    let (q, phase) = match variant {
        ArcVariant::Outer => {
            // cos u − cos t = 2 sin(u + d/2) sin(d/2), d the distance to the near end.
            let q = split_integral(
                |n, left| {
                    let d = if left { n.from_a } else { n.from_b };
                    Ok(wave(n.x) * arc_weight(u, d, 1.0, exponent))
                },
                u,
                PI,
                2.0 * PI - u,
                exponent,
            )?;
            (q, (C64::new(0.0, -PI) * nu).exp())
        }
        ArcVariant::Inner => {
            // cos t − cos u = 2 sin(u − d/2) sin(d/2).
            let q = split_integral(
                |n, left| {
                    let d = if left { n.from_a } else { n.from_b };
                    Ok(wave(n.x) * arc_weight(u, d, -1.0, exponent))
                },
                -u,
                0.0,
                u,
                exponent,
            )?;
            (q, C64::new(1.0, 0.0))
        }
    };
    let q = require_converged(q, "Gegenbauer arc integral")?;
    let scale = integral_prefactor(ell, nu)? * (exponent * std::f64::consts::LN_2).exp() * phase
        / sin_power(u, nu * 2.0 - 1.0);
    Ok(scale * q.value)
}

/// `∫_{−1}^{1} C_ℓ^ν C_n^ν (1−x²)^{ν−½} dx`, computed as
/// `∫_0^π C_ℓ^ν(cos u) C_n^ν(cos u) sin^{2ν} u du`.
pub fn orthogonality_integral(ell: u32, n: u32, nu: C64) -> Result<QuadratureResult> {
    if !(nu.re > -0.5) {
        return Err(Error::domain(format!(
            "weight needs Re nu > -1/2, got {nu}"
        )));
    }
    let exponent = nu * 2.0;
    split_integral(
        |node, left| {
            let s = if left {
                sin_power(node.from_a, exponent)
            } else {
                sin_power(node.from_b, exponent)
            };
            let x = C64::new(node.x.cos(), 0.0);
            Ok(gegenbauer_recurrence(ell, nu, x) * gegenbauer_recurrence(n, nu, x) * s)
        },
        0.0,
        FRAC_PI_2,
        PI,
        exponent,
    )
}
