//! Bessel functions of the first kind.
//!
//! `J_ν(z)` is available through its ascending power series (the reference
//! route), through the half-range Fourier-type integral
//!
//! ```text
//! J_μ(z) = (i^μ/π) ∫_0^π e^{−iz cos θ} P({μ}, −iz(1 + cos θ)) cos μθ dθ,
//! ```
//!
//! and, for integer orders, through Bessel's classical integral. The full-period
//! kernel `𝔍` whose Fourier coefficients are `iˡ J_{ν+ℓ}(z)` is exposed as
//! [`kernel_frakj`].
//!
//! The incomplete gamma factor is always evaluated with the power
//! `(−iz d)^{a}` split as `(−i)^a z^a d^a`, which is the continuation of the
//! positive-`z` values across the whole slit plane. The principal power of
//! the product would jump wherever `−iz` crosses the negative axis.

use std::f64::consts::PI;

use crate::gamma::{reciprocal_gamma, regularized_p_with_power};
use crate::order::{i_pow, i_pow_int, require_slit_domain};
use crate::quadrature::{
    fallible, integrate, integrate_fourier_coefficient, integrate_nodes, Node,
};
use crate::sum::{sum_series, Truncation};
use crate::{
    decompose_order, principal_power, sign, ComplexOrder, Diagnostics, Error, Evaluation,
    QuadratureResult, QuadratureSpec, Result, SeriesEvaluation, Singularity, C64,
};

/// Largest `|z|` accepted by the integral routes. Beyond it the integrands
/// oscillate faster than the plain rules resolve at the default depth.
pub const OSCILLATION_CAP: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselMethod {
    Series,
    IntegralFourier,
    IntegralClassical,
    HalfOrderClosed,
}

impl BesselMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BesselMethod::Series => "series",
            BesselMethod::IntegralFourier => "integral",
            BesselMethod::IntegralClassical => "classical",
            BesselMethod::HalfOrderClosed => "halforder",
        }
    }
}

/// One evaluation of a Bessel function with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: ComplexOrder,
    pub argument: C64,
    pub value: C64,
    pub method: BesselMethod,
    pub diagnostics: Diagnostics,
}

impl From<BesselEval> for Evaluation {
    fn from(e: BesselEval) -> Self {
        Evaluation {
            value: e.value,
            diagnostics: e.diagnostics,
        }
    }
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// Turns an unconverged quadrature into an error; value-only entry points
/// never hand back an estimate the rule itself does not trust.
pub(crate) fn require_converged(
    q: QuadratureResult,
    what: &'static str,
) -> Result<QuadratureResult> {
    if q.converged {
        Ok(q)
    } else {
        Err(Error::NotConverged {
            what,
            iterations: q.nodes_used,
            estimate: format!("{} (error estimate {:e})", q.value, q.err_estimate),
        })
    }
}

pub(crate) fn check_oscillation(z: C64, what: &'static str) -> Result<()> {
    if z.norm() > OSCILLATION_CAP {
        return Err(Error::NotConverged {
            what,
            iterations: 0,
            estimate: format!(
                "|z| = {} is above the oscillation cap {OSCILLATION_CAP}",
                z.norm()
            ),
        });
    }
    Ok(())
}

fn require_order_above_minus_half(order: &ComplexOrder, what: &str) -> Result<()> {
    if !(order.nu.re > -0.5) {
        return Err(Error::domain(format!(
            "{what}: order {} needs Re > -1/2",
            order.nu
        )));
    }
    Ok(())
}

/// `i^ν`, exact for integer orders.
pub(crate) fn i_pow_order(order: &ComplexOrder) -> C64 {
    match order.as_integer() {
        Some(n) => i_pow_int(n),
        None => i_pow(order.nu),
    }
}

// ---------------------------------------------------------------------------
// Power series

fn j_series(order: &ComplexOrder, z: C64) -> Result<SeriesEvaluation> {
    let nu = order.nu;
    if z == zero() {
        let value = if nu == zero() {
            one()
        } else if nu.re > 0.0 {
            zero()
        } else {
            return Err(Error::domain(format!("J_{nu}(0) is unbounded")));
        };
        return Ok(SeriesEvaluation {
            value,
            terms: 1,
            last_term: value.norm(),
            converged: true,
        });
    }
    let half = z * 0.5;
    let step = -(half * half);
    let prefix = match order.as_integer() {
        Some(n) => half.powi(n as i32),
        None => principal_power(half, nu)?,
    };
    let mut term = reciprocal_gamma(nu + 1.0);
    let rule = Truncation::default().min_terms(half.norm().ceil() as usize + 1);
    let series = sum_series(rule, |k| {
        if k > 0 {
            term = term * step / (k as f64 * (nu + k as f64));
        }
        Ok(term)
    })?;
    SeriesEvaluation {
        value: series.value * prefix,
        last_term: series.last_term * prefix.norm(),
        ..series
    }
    .into_result("Bessel J power series")
}

/// `J_ν(z)` by its ascending series, principal branch of `(z/2)^ν`.
///
/// Negative integer orders go through `J_{−n} = (−1)ⁿ J_n`.
pub fn bessel_j_series_eval(nu: C64, z: C64) -> Result<BesselEval> {
    let order = decompose_order(nu)?;
    let (series, flip) = match order.as_integer() {
        Some(n) if n < 0 => (
            j_series(&decompose_order(C64::new(-n as f64, 0.0))?, z)?,
            n % 2 != 0,
        ),
        _ => (j_series(&order, z)?, false),
    };
    Ok(BesselEval {
        order,
        argument: z,
        value: if flip { -series.value } else { series.value },
        method: BesselMethod::Series,
        diagnostics: Diagnostics::Series(series),
    })
}

pub fn bessel_j_series(nu: C64, z: C64) -> Result<C64> {
    bessel_j_series_eval(nu, z).map(|e| e.value)
}

/// `J_{n+½}(z)` from Hankel's terminating expansion,
/// `√(2/πz) [P sin(z − nπ/2) + Q cos(z − nπ/2)]`.
///
/// The polynomials in `1/z` cancel badly once `n` exceeds `|z|` by much.
pub fn bessel_j_half_order_eval(n: u32, z: C64) -> Result<BesselEval> {
    let order = decompose_order(C64::new(n as f64 + 0.5, 0.0))?;
    require_slit_domain(z, "half-order closed form")?;
    let inv = 1.0 / (2.0 * z);
    // (n + k)! / (k! (n − k)!) (2z)^{−k}, built incrementally in k.
    let mut coeff = one();
    let (mut p, mut q) = (zero(), zero());
    for k in 0..=n {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += coeff * sign;
        } else {
            q += coeff * sign;
        }
        let kf = k as f64;
        coeff = coeff * inv * ((n as f64 + kf + 1.0) * (n as f64 - kf) / (kf + 1.0));
    }
    let shift = z - n as f64 * PI / 2.0;
    let value = (2.0 / (PI * z)).sqrt() * (p * shift.sin() + q * shift.cos());
    Ok(BesselEval {
        order,
        argument: z,
        value,
        method: BesselMethod::HalfOrderClosed,
        diagnostics: Diagnostics::Closed,
    })
}

// ---------------------------------------------------------------------------
// Incomplete gamma factor shared by every integral route

/// `P(a, s·d)` as a function of the real distance `d ≥ 0`, with the power
/// `(s·d)^a` taken as `prefactor · d^a`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GammaFactor {
    a: C64,
    scale: C64,
    prefactor: C64,
}

impl GammaFactor {
    /// `P(a, −iz·d)` with `(−iz·d)^a = (−i)^a z^a d^a`.
    pub fn rotated(a: C64, z: C64) -> Result<Self> {
        let prefactor = if a == zero() {
            one()
        } else {
            i_pow(-a) * principal_power(z, a)?
        };
        Ok(GammaFactor {
            a,
            scale: C64::new(z.im, -z.re),
            prefactor,
        })
    }

    /// `P(a, z·d)` with `(z·d)^a = z^a d^a`.
    pub fn plain(a: C64, z: C64) -> Result<Self> {
        let prefactor = if a == zero() {
            one()
        } else {
            principal_power(z, a)?
        };
        Ok(GammaFactor {
            a,
            scale: z,
            prefactor,
        })
    }

    /// The factor at `d = 1 − cos δ = 2 sin²(δ/2)`, for `0 ≤ δ ≤ π`. The power
    /// `d^a` is formed from `ln 2 + 2 ln sin(δ/2)`, so it stays finite when `d`
    /// itself underflows next to a singular endpoint.
    pub fn at_angle(&self, delta: f64) -> Result<C64> {
        if self.a == zero() {
            return Ok(one());
        }
        let s = (0.5 * delta.abs()).sin();
        let d = 2.0 * s * s;
        if s == 0.0 {
            return regularized_p_with_power(self.a, zero(), principal_power(zero(), self.a)?)
                .map(|g| g.value);
        }
        let power = self.prefactor * (self.a * (std::f64::consts::LN_2 + 2.0 * s.ln())).exp();
        regularized_p_with_power(self.a, self.scale * d, power).map(|g| g.value)
    }
}

/// `2 sin²(δ/2)`, which is `1 − cos δ` without cancellation.
pub(crate) fn one_minus_cos(delta: f64) -> f64 {
    let s = (0.5 * delta).sin();
    2.0 * s * s
}

/// `∫_0^π P({μ}, −iz(1 + cos θ)) g(θ) dθ` with the `(1 + cos θ)^{{μ}}`
/// behaviour at `θ = π` declared to the quadrature.
pub(crate) fn half_range_integral(
    order: &ComplexOrder,
    z: C64,
    g: impl Fn(f64) -> C64,
) -> Result<QuadratureResult> {
    let a = order.frac_part;
    let factor = GammaFactor::rotated(a, z)?;
    let spec = if order.is_integer {
        QuadratureSpec::default()
    } else {
        QuadratureSpec::default().with_singularity(Singularity::RightEndpoint(a * 2.0))
    };
    fallible(
        |n: Node| Ok(factor.at_angle(n.from_b)? * g(n.x)),
        |f| integrate_nodes(f, 0.0, PI, &spec),
    )
}

// ---------------------------------------------------------------------------
// Integral routes

/// `J_μ(z)` through the half-range Fourier-type integral. Requires
/// `Re μ > −1/2` and, for non-integer `μ`, `z` off `(−∞, 0]`.
pub fn bessel_j_integral_eval(mu: C64, z: C64) -> Result<BesselEval> {
    let order = decompose_order(mu)?;
    require_order_above_minus_half(&order, "Bessel J integral")?;
    if !order.is_integer {
        require_slit_domain(z, "Bessel J integral")?;
    }
    check_oscillation(z, "Bessel J integral")?;
    let nu = order.nu;
    let q = half_range_integral(&order, z, |theta| {
        C64::new(0.0, -z.re * theta.cos()).exp() * (z.im * theta.cos()).exp() * (nu * theta).cos()
    })?;
    let q = q.scaled(i_pow_order(&order) / PI);
    Ok(BesselEval {
        order,
        argument: z,
        value: q.value,
        method: BesselMethod::IntegralFourier,
        diagnostics: Diagnostics::from_quadrature(&q),
    })
}

pub fn bessel_j_integral(mu: C64, z: C64) -> Result<C64> {
    let e = bessel_j_integral_eval(mu, z)?;
    if let Diagnostics::Quadrature {
        converged: false,
        nodes_used,
        err_estimate,
    } = e.diagnostics
    {
        return Err(Error::NotConverged {
            what: "Bessel J integral",
            iterations: nodes_used,
            estimate: format!("{} (error estimate {err_estimate:e})", e.value),
        });
    }
    Ok(e.value)
}

/// Bessel's integral `J_n(z) = ((−i)ⁿ/π) ∫_0^π e^{iz cos θ} cos nθ dθ`.
pub fn bessel_j_classical_eval(n: i64, z: C64) -> Result<BesselEval> {
    check_oscillation(z, "Bessel classical integral")?;
    let order = decompose_order(C64::new(n as f64, 0.0))?;
    let m = n.abs();
    let q = require_converged(
        integrate(
            |theta| (C64::new(0.0, 1.0) * z * theta.cos()).exp() * (m as f64 * theta).cos(),
            0.0,
            PI,
            &QuadratureSpec::default(),
        )?,
        "Bessel classical integral",
    )?;
    let mut q = q.scaled(i_pow_int(-m) / PI);
    if n < 0 && m % 2 == 1 {
        q.value = -q.value;
    }
    Ok(BesselEval {
        order,
        argument: z,
        value: q.value,
        method: BesselMethod::IntegralClassical,
        diagnostics: Diagnostics::from_quadrature(&q),
    })
}

pub fn bessel_j_classical(n: i64, z: C64) -> Result<C64> {
    bessel_j_classical_eval(n, z).map(|e| e.value)
}

// ---------------------------------------------------------------------------
// The full-period kernel

/// `K(θ) = i^ν e^{iν[θ−π sgn θ]} e^{iz cos θ} P({ν}, −iz(1 − cos θ))`, the
/// kernel `2π·𝔍` shared with the Neumann-series integral.
pub(crate) fn kernel_k_with(
    order: &ComplexOrder,
    factor: &GammaFactor,
    z: C64,
    theta: f64,
) -> Result<C64> {
    let phase = match order.as_integer() {
        // e^{−inπ sgn θ} = (−1)ⁿ on both sides, so the kernel is continuous
        // through θ = 0 and periodic rules may sample there.
        Some(n) => C64::new(0.0, n as f64 * theta).exp() * if n % 2 == 0 { 1.0 } else { -1.0 },
        None => (C64::new(0.0, theta - PI * sign(theta) as f64) * order.nu).exp(),
    };
    let wave = (C64::new(0.0, 1.0) * z * theta.cos()).exp();
    Ok(i_pow_order(order) * phase * wave * factor.at_angle(theta)?)
}

fn check_theta(theta: f64) -> Result<()> {
    if !(-PI..=PI).contains(&theta) {
        return Err(Error::domain(format!("angle {theta} outside [-pi, pi]")));
    }
    Ok(())
}

/// `𝔍^{(ν)}_z(θ) = (i^ν/2π) e^{iν[θ−π sgn θ]} e^{iz cos θ} P({ν}, −iz(1 − cos θ))`.
///
/// At `θ = 0` the factor `P` vanishes for `Re{ν} > 0` and is undefined for
/// `Re{ν} < 0`; the latter is reported as a domain error.
pub fn kernel_frakj(order: &ComplexOrder, z: C64, theta: f64) -> Result<C64> {
    check_theta(theta)?;
    let factor = GammaFactor::rotated(order.frac_part, z)?;
    Ok(kernel_k_with(order, &factor, z, theta)? / (2.0 * PI))
}

/// `𝔍` rewritten with a Fresnel-type integral,
/// `π^{ν−1}/(2^{ν+1}Γ(ν+1)) e^{iν[θ−π sgn θ]} e^{iz cos θ} F_{1/ν}([2z(1 − cos θ)/π]^ν)`,
/// for real `ν > 0`.
pub fn kernel_frakj_fresnel(nu: f64, z: C64, theta: f64) -> Result<C64> {
    if !(nu > 0.0) {
        return Err(Error::domain(format!(
            "Fresnel form needs real order > 0, got {nu}"
        )));
    }
    check_theta(theta)?;
    let nu_c = C64::new(nu, 0.0);
    let arg = principal_power(z * (2.0 * one_minus_cos(theta) / PI), nu_c)?;
    let f = crate::quadrature::fresnel_f(1.0 / nu, arg)?;
    let f = require_converged(f, "Fresnel-type integral")?;
    let shifted = theta - PI * sign(theta) as f64;
    let prefix = PI.powf(nu - 1.0) / 2f64.powf(nu + 1.0) * reciprocal_gamma(nu_c + 1.0);
    Ok(prefix
        * C64::new(0.0, nu * shifted).exp()
        * (C64::new(0.0, 1.0) * z * theta.cos()).exp()
        * f.value)
}

/// `𝔍̃_ℓ = ∫_{−π}^{π} 𝔍^{(ν)}_z(θ) e^{iℓθ} dθ` for any integer `ℓ`. For
/// `ℓ ≥ 0` this is `iˡ J_{ν+ℓ}(z)`.
pub fn frakj_fourier_coefficient(nu: C64, z: C64, ell: i64) -> Result<Evaluation> {
    let order = decompose_order(nu)?;
    require_order_above_minus_half(&order, "kernel Fourier coefficient")?;
    check_oscillation(z, "kernel Fourier coefficient")?;
    let factor = GammaFactor::rotated(order.frac_part, z)?;
    let spec = if order.is_integer {
        QuadratureSpec::default()
    } else {
        QuadratureSpec::default().with_singularity(Singularity::Interior {
            at: 0.0,
            exponent: order.frac_part * 2.0,
        })
    };
    let q = fallible(
        |theta: f64| kernel_k_with(&order, &factor, z, theta),
        |f| integrate_fourier_coefficient(f, ell, &spec),
    )?;
    let q = q.scaled(C64::new(1.0 / (2.0 * PI), 0.0));
    Ok(Evaluation {
        value: q.value,
        diagnostics: Diagnostics::from_quadrature(&q),
    })
}

/// `J_{ν+ℓ}(z) = (−i)^ℓ 𝔍̃_ℓ` for `ℓ ≥ 0`.
pub fn bessel_j_fourier(nu: C64, z: C64, ell: u32) -> Result<C64> {
    let c = frakj_fourier_coefficient(nu, z, ell as i64)?;
    if let Diagnostics::Quadrature {
        converged: false,
        nodes_used,
        err_estimate,
    } = c.diagnostics
    {
        return Err(Error::NotConverged {
            what: "kernel Fourier coefficient",
            iterations: nodes_used,
            estimate: format!("{} (error estimate {err_estimate:e})", c.value),
        });
    }
    Ok(i_pow_int(-(ell as i64)) * c.value)
}

/// `∫_{−π}^{π} e^{iν[θ−π sgn θ]} (1 − cos θ)^{ν−j} e^{iℓθ} dθ`, which
/// vanishes for `ℓ ≥ 0` whenever the integral exists.
pub fn vanishing_moment(nu: C64, j: i64, ell: i64) -> Result<QuadratureResult> {
    let exponent = nu - j as f64;
    if !(exponent.re > -0.5) {
        return Err(Error::domain(format!(
            "moment exponent {exponent} is not integrable at theta = 0"
        )));
    }
    let spec = QuadratureSpec::default()
        .with_tolerances(1e-13, 1e-15)
        .with_singularity(Singularity::Interior {
            at: 0.0,
            exponent: exponent * 2.0,
        });
    fallible(
        |theta: f64| {
            let shifted = theta - PI * sign(theta) as f64;
            let s = (0.5 * theta).sin().abs();
            let weight = (exponent * (std::f64::consts::LN_2 + 2.0 * s.ln())).exp();
            Ok((C64::new(0.0, shifted) * nu).exp()
                * weight
                * C64::new(0.0, ell as f64 * theta).exp())
        },
        |f| integrate(f, -PI, PI, &spec),
    )
}

// ---------------------------------------------------------------------------
// Modified and spherical functions

fn phase_at_most_half_pi(z: C64) -> bool {
    z == zero() || z.arg() <= PI / 2.0
}

/// `I_ν(z)` from the `J` series through `I_ν(z) = (−i)^ν J_ν(iz)` when
/// `ph z ≤ π/2`, and `I_ν(z) = i^ν J_ν(−iz)` otherwise.
pub fn bessel_i_series(nu: C64, z: C64) -> Result<C64> {
    let order = decompose_order(nu)?;
    let i = C64::new(0.0, 1.0);
    if phase_at_most_half_pi(z) {
        Ok(i_pow(-order.nu) * bessel_j_series(order.nu, i * z)?)
    } else {
        Ok(i_pow(order.nu) * bessel_j_series(order.nu, -i * z)?)
    }
}

/// `I_μ(z) = (1/π) ∫_0^π e^{z cos θ} P({μ}, z(1 + cos θ)) cos μθ dθ` for
/// `Re μ > −1/2` and `ph z ≤ π/2`.
pub fn bessel_i_integral_eval(mu: C64, z: C64) -> Result<Evaluation> {
    let order = decompose_order(mu)?;
    require_order_above_minus_half(&order, "Bessel I integral")?;
    if !phase_at_most_half_pi(z) {
        return Err(Error::domain(format!(
            "Bessel I integral needs ph z <= pi/2, got {}",
            z.arg()
        )));
    }
    check_oscillation(z, "Bessel I integral")?;
    let a = order.frac_part;
    let factor = GammaFactor::plain(a, z)?;
    let spec = if order.is_integer {
        QuadratureSpec::default()
    } else {
        QuadratureSpec::default().with_singularity(Singularity::RightEndpoint(a * 2.0))
    };
    let nu = order.nu;
    let q = fallible(
        |n: Node| Ok((z * n.x.cos()).exp() * factor.at_angle(n.from_b)? * (nu * n.x).cos()),
        |f| integrate_nodes(f, 0.0, PI, &spec),
    )?;
    let q = require_converged(q, "Bessel I integral")?.scaled(C64::new(1.0 / PI, 0.0));
    Ok(Evaluation {
        value: q.value,
        diagnostics: Diagnostics::from_quadrature(&q),
    })
}

pub fn bessel_i_integral(mu: C64, z: C64) -> Result<C64> {
    bessel_i_integral_eval(mu, z).map(|e| e.value)
}

/// `I_m(z) = (1/π) ∫_0^π e^{z cos θ} cos mθ dθ` for integer `m`.
pub fn bessel_i_classical(m: i64, z: C64) -> Result<C64> {
    check_oscillation(z, "Bessel I classical integral")?;
    let q = integrate(
        |theta| (z * theta.cos()).exp() * (m as f64 * theta).cos(),
        0.0,
        PI,
        &QuadratureSpec::default(),
    )?;
    Ok(require_converged(q, "Bessel I classical integral")?.value / PI)
}

/// Spherical Bessel function `j_ℓ(w) = √(π/2w) J_{ℓ+½}(w)`, with the limits
/// `j_0(0) = 1`, `j_ℓ(0) = 0`.
pub fn spherical_j(ell: u32, w: C64) -> Result<C64> {
    if w == zero() {
        return Ok(if ell == 0 { one() } else { zero() });
    }
    let j = bessel_j_series(C64::new(ell as f64 + 0.5, 0.0), w)?;
    Ok((PI / 2.0).sqrt() / w.sqrt() * j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm().max(1.0)
    }

    fn half_closed(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * z.sin()
    }

    #[test]
    fn series_basic_values() {
        assert_eq!(
            bessel_j_series(c(0.0, 0.0), c(0.0, 0.0)).unwrap(),
            c(1.0, 0.0)
        );
        assert_eq!(
            bessel_j_series(c(3.0, 0.0), c(0.0, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        let v = bessel_j_series(c(0.5, 0.0), c(1.7, 0.0)).unwrap();
        assert!((v.re - half_closed(1.7)).abs() < 1e-15);
        // mpmath, 30 digits.
        assert!((v.re - 0.606_848_808_007_617_9).abs() < 1e-15);
        assert!(bessel_j_series(c(-0.5, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn series_complex_order_reference() {
        let v = bessel_j_series(c(1.7, 0.5), c(2.0, 1.0)).unwrap();
        let expected = c(0.465_066_796_689_233_96, 0.047_884_255_841_750_587);
        assert!(rel(v, expected) < 1e-14, "{v}");
        let v = bessel_j_series(c(-0.3, 0.0), c(1.0, 0.0)).unwrap();
        assert!((v.re - 0.633_870_726_369_384_7).abs() < 1e-14);
        let v = bessel_j_series(c(2.5, 0.0), c(10.0, 0.0)).unwrap();
        assert!((v.re - 0.196_658_483_581_818_4).abs() < 1e-13);
    }

    #[test]
    fn negative_integer_order_symmetry() {
        let a = bessel_j_series(c(-3.0, 0.0), c(2.5, 0.0)).unwrap();
        let b = bessel_j_series(c(3.0, 0.0), c(2.5, 0.0)).unwrap();
        assert_eq!(a, -b);
        let e = bessel_j_series_eval(c(-3.0, 0.0), c(2.5, 0.0)).unwrap();
        assert_eq!(e.order.int_part, -3);
    }

    #[test]
    fn half_order_closed_form_matches_series() {
        for n in 0..5u32 {
            for z in [c(1.5, 0.0), c(4.0, 1.0), c(7.0, -2.0)] {
                let closed = bessel_j_half_order_eval(n, z).unwrap().value;
                let series = bessel_j_series(c(n as f64 + 0.5, 0.0), z).unwrap();
                assert!(rel(closed, series) < 1e-12, "n = {n}, z = {z}");
            }
        }
    }

    #[test]
    fn integral_matches_series_at_reference_points() {
        let cases = [
            (c(0.5, 0.0), c(1.7, 0.0)),
            (c(1.7, 0.5), c(2.0, 1.0)),
            (c(-0.3, 0.0), c(1.0, 0.0)),
            (c(2.5, 0.0), c(10.0, 0.0)),
            (c(3.0, 0.0), c(1.0, 0.0)),
        ];
        for (nu, z) in cases {
            let i = bessel_j_integral(nu, z).unwrap();
            let s = bessel_j_series(nu, z).unwrap();
            assert!(rel(i, s) < 1e-9, "nu = {nu}, z = {z}: {i} vs {s}");
        }
    }

    #[test]
    fn integral_rejects_bad_input() {
        assert!(matches!(
            bessel_j_integral(c(-0.7, 0.0), c(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            bessel_j_integral(c(0.5, 0.0), c(-1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(bessel_j_integral(c(2.0, 0.0), c(-1.0, 0.0)).is_ok());
        assert!(matches!(
            bessel_j_integral(c(0.5, 0.0), c(60.0, 0.0)),
            Err(Error::NotConverged { .. })
        ));
    }

    #[test]
    fn classical_integral() {
        assert!(rel(bessel_j_classical(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-15);
        let j1 = bessel_j_series(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(rel(bessel_j_classical(1, c(1.0, 0.0)).unwrap(), j1) < 1e-13);
        let j2 = bessel_j_series(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(rel(bessel_j_classical(-2, c(3.0, 0.0)).unwrap(), j2) < 1e-13);
        let j3 = bessel_j_series(c(3.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(rel(bessel_j_classical(-3, c(3.0, 0.0)).unwrap(), -j3) < 1e-13);
    }

    #[test]
    fn kernel_reference_and_special_cases() {
        let o = decompose_order(c(0.5, 0.0)).unwrap();
        let k = kernel_frakj(&o, c(1.0, 0.0), 2.0).unwrap();
        assert!(rel(k, c(0.169_132_796_978_199_04, -0.097_585_174_362_183_77)) < 1e-13);

        let o0 = decompose_order(c(0.0, 0.0)).unwrap();
        let z = c(1.0, 0.5);
        for theta in [-2.0, 0.3, PI] {
            let expected = (C64::i() * z * f64::cos(theta)).exp() / (2.0 * PI);
            assert!(rel(kernel_frakj(&o0, z, theta).unwrap(), expected) < 1e-15);
        }

        let o3 = decompose_order(c(3.0, 0.0)).unwrap();
        let theta: f64 = 0.8;
        let expected =
            i_pow_int(-3) * (C64::i() * z * theta.cos()).exp() * C64::new(0.0, 3.0 * theta).exp()
                / (2.0 * PI);
        assert!(rel(kernel_frakj(&o3, z, theta).unwrap(), expected) < 1e-14);

        let neg = decompose_order(c(-0.3, 0.0)).unwrap();
        assert!(kernel_frakj(&neg, z, 0.0).is_err());
        assert!(kernel_frakj(&o, z, 4.0).is_err());
    }

    #[test]
    fn kernel_reflection_symmetry() {
        let o = decompose_order(c(0.7, 0.0)).unwrap();
        let z = c(1.0, 1.0);
        let theta: f64 = 1.1;
        let lhs = kernel_frakj(&o, z, -theta).unwrap();
        let shifted = theta - PI;
        let rhs =
            (C64::new(0.0, -2.0 * shifted) * o.nu).exp() * kernel_frakj(&o, z, theta).unwrap();
        assert!(rel(lhs, rhs) < 1e-14);
    }

    #[test]
    fn fresnel_form_of_kernel() {
        let o = decompose_order(c(0.5, 0.0)).unwrap();
        let direct = kernel_frakj(&o, c(1.0, 0.0), 2.0).unwrap();
        let fresnel = kernel_frakj_fresnel(0.5, c(1.0, 0.0), 2.0).unwrap();
        assert!((direct - fresnel).norm() < 1e-12);
        assert!(kernel_frakj_fresnel(-0.5, c(1.0, 0.0), 2.0).is_err());
    }

    #[test]
    fn fourier_coefficients_are_bessel_values() {
        let expected = [
            0.671_396_707_141_803_1,
            0.240_297_839_123_427_01,
            0.049_496_810_228_477_942,
        ];
        for (ell, e) in expected.iter().enumerate() {
            let v = bessel_j_fourier(c(0.5, 0.0), c(1.0, 0.0), ell as u32).unwrap();
            assert!((v - c(*e, 0.0)).norm() < 1e-11, "ell = {ell}: {v}");
        }
    }

    #[test]
    fn moments_vanish() {
        for ell in 0..3 {
            let m = vanishing_moment(c(1.5, 0.0), 1, ell).unwrap();
            assert!(m.value.norm() < 1e-12, "ell = {ell}: {}", m.value);
        }
    }

    #[test]
    fn modified_bessel() {
        assert!(
            rel(
                bessel_i_integral(c(0.0, 0.0), c(0.0, 0.0)).unwrap(),
                c(1.0, 0.0)
            ) < 1e-15
        );
        let m2 = bessel_i_classical(2, c(1.3, 0.0)).unwrap();
        assert!(rel(bessel_i_integral(c(2.0, 0.0), c(1.3, 0.0)).unwrap(), m2) < 1e-13);
        let z = c(2.0, 0.0);
        let via_j = i_pow(c(-0.5, 0.0)) * bessel_j_series(c(0.5, 0.0), C64::i() * z).unwrap();
        // I_{1/2}(2) = √(2/(2π)) sinh 2.
        assert!(rel(via_j, c((1.0 / PI).sqrt() * 2f64.sinh(), 0.0)) < 1e-14);
        assert!(rel(bessel_i_integral(c(0.5, 0.0), z).unwrap(), via_j) < 1e-10);
        assert!(rel(bessel_i_series(c(0.5, 0.0), z).unwrap(), via_j) < 1e-15);
        assert!(bessel_i_integral(c(0.5, 0.0), c(-1.0, 1.0)).is_err());
        // Left of the imaginary axis the series route still works.
        let left = bessel_i_series(c(1.0, 0.0), c(-1.0, 1.0)).unwrap();
        let mirrored = -bessel_i_series(c(1.0, 0.0), c(1.0, -1.0)).unwrap();
        assert!(rel(left, mirrored) < 1e-14);
    }

    #[test]
    fn spherical() {
        let j0 = spherical_j(0, c(1.0, 0.0)).unwrap();
        assert!(rel(j0, c(1f64.sin(), 0.0)) < 1e-15);
        assert_eq!(spherical_j(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(spherical_j(3, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let j2 = spherical_j(2, c(1.5, 0.0)).unwrap();
        let expected = (PI / 3.0).sqrt() * bessel_j_series(c(2.5, 0.0), c(1.5, 0.0)).unwrap();
        assert!(rel(j2, expected) < 1e-15);
    }
}
