//! Trigonometric series whose coefficients are Bessel functions.
//!
//! Inverting the Fourier representation of `J` gives expansions of the plane
//! wave `e^{iz cos θ}` (Jacobi–Anger), of `γ(½, ·)` and hence of `erf`, and
//! of the Fresnel integral. Every sum here is truncated adaptively: it stops
//! once three consecutive terms are bounded by `1e−16` times the partial sum,
//! after the Bessel coefficients have passed their maximum near `ℓ ≈ |z|`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::bessel::{bessel_i_series, bessel_j_series, frakj_fourier_coefficient, spherical_j};
use crate::gegenbauer::chebyshev_t;
use crate::order::i_pow_int;
use crate::sum::{sum_series, Truncation};
use crate::{sign, Diagnostics, Error, Result, C64};

const REL_TOL: f64 = 1e-16;
const CONSECUTIVE: usize = 3;
const MAX_TERMS: usize = 10_000;

/// A truncated expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionResult {
    pub value: C64,
    pub terms_used: usize,
    /// Bound on the last retained term.
    pub tail_bound: f64,
    /// False when the expansion is knowingly missing terms (see
    /// [`ExpansionMode::Partial`]).
    pub complete: bool,
}

impl ExpansionResult {
    pub fn diagnostics(&self) -> Diagnostics {
        Diagnostics::Expansion {
            terms_used: self.terms_used,
            tail_bound: self.tail_bound,
            complete: self.complete,
        }
    }
}

/// Whether an expansion that needs unavailable coefficients should fail or
/// return what it can.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionMode {
    #[default]
    Full,
    Partial,
}

/// Sums `term(ℓ) = (value, bound)` adaptively. `bound` majorizes `|value|`
/// and drives truncation, so a coefficient multiplied by a vanishing sine
/// does not end the sum early.
fn adaptive(
    min_terms: usize,
    mut term: impl FnMut(usize) -> Result<(C64, f64)>,
) -> Result<ExpansionResult> {
    let mut partial = C64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut run = 0;
    let mut last = 0.0;
    for n in 0..MAX_TERMS {
        let (t, bound) = term(n)?;
        partial += t;
        abs_sum += bound;
        last = bound;
        let scale = if partial.norm() > 0.0 {
            partial.norm()
        } else {
            abs_sum
        };
        run = if bound <= REL_TOL * scale { run + 1 } else { 0 };
        if n + 1 >= min_terms && run >= CONSECUTIVE {
            return Ok(ExpansionResult {
                value: partial,
                terms_used: n + 1,
                tail_bound: last,
                complete: true,
            });
        }
    }
    Err(Error::NotConverged {
        what: "Bessel coefficient expansion",
        iterations: MAX_TERMS,
        estimate: format!("{partial} (last term bound {last:e})"),
    })
}

fn past_hump(x: C64) -> usize {
    x.norm().ceil() as usize + 2
}

/// `J_0(z) + 2 Σ_{ℓ=1..n} iˡ J_ℓ(z) cos ℓθ` with exactly `n_terms` cosine terms.
pub fn jacobi_anger(z: C64, theta: f64, n_terms: usize) -> Result<ExpansionResult> {
    if n_terms < 1 {
        return Err(Error::domain("Jacobi-Anger expansion needs n_terms >= 1"));
    }
    let mut value = bessel_j_series(C64::new(0.0, 0.0), z)?;
    let mut last = value.norm();
    for ell in 1..=n_terms {
        let j = bessel_j_series(C64::new(ell as f64, 0.0), z)?;
        value += 2.0 * i_pow_int(ell as i64) * j * (ell as f64 * theta).cos();
        last = 2.0 * j.norm();
    }
    Ok(ExpansionResult {
        value,
        terms_used: n_terms + 1,
        tail_bound: last,
        complete: true,
    })
}

/// [`jacobi_anger`] truncated adaptively; equals `e^{iz cos θ}`.
pub fn jacobi_anger_adaptive(z: C64, theta: f64) -> Result<ExpansionResult> {
    adaptive(past_hump(z), |ell| {
        let j = bessel_j_series(C64::new(ell as f64, 0.0), z)?;
        let weight = if ell == 0 { 1.0 } else { 2.0 };
        Ok((
            weight * i_pow_int(ell as i64) * j * (ell as f64 * theta).cos(),
            weight * j.norm(),
        ))
    })
}

/// `erf(w)` from its Maclaurin series `2/√π Σ (−1)ⁿ w^{2n+1} / (n! (2n+1))`.
pub fn erf_maclaurin(w: C64) -> Result<C64> {
    let w2 = w * w;
    let mut power = w;
    let rule = Truncation::default().min_terms(w2.norm().ceil() as usize + 1);
    let s = sum_series(rule, |n| {
        if n > 0 {
            power = -power * w2 / n as f64;
        }
        Ok(power / (2 * n + 1) as f64)
    })?
    .into_result("erf Maclaurin series")?;
    Ok(s.value * (2.0 / PI.sqrt()))
}

fn check_erf_phase(w: C64) -> Result<()> {
    if w == C64::new(0.0, 0.0) {
        return Ok(());
    }
    let arg = w.arg();
    if !(-FRAC_PI_2 < arg && arg <= FRAC_PI_2) {
        return Err(Error::domain(format!(
            "erf expansion needs -pi/2 < ph w <= pi/2, got {arg}"
        )));
    }
    Ok(())
}

fn half_order(ell: usize) -> C64 {
    C64::new(ell as f64 + 0.5, 0.0)
}

/// `erf(w sin φ) = 2 e^{w² cos 2φ / 2} Σ (−1)ˡ I_{ℓ+½}(w²/2) sin(2ℓ+1)φ`.
pub fn erf_bessel_general(w: C64, phi: f64) -> Result<ExpansionResult> {
    check_erf_phase(w)?;
    let x = w * w * 0.5;
    let prefix = 2.0 * (x * (2.0 * phi).cos()).exp();
    adaptive(past_hump(x), |ell| {
        let i = bessel_i_series(half_order(ell), x)?;
        let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
        let t = prefix * i * (sign * ((2 * ell + 1) as f64 * phi).sin());
        Ok((t, (prefix * i).norm()))
    })
}

/// `erf(w) = 2 e^{−w²/2} Σ I_{ℓ+½}(w²/2)`.
pub fn erf_bessel_sum(w: C64) -> Result<ExpansionResult> {
    check_erf_phase(w)?;
    let x = w * w * 0.5;
    let prefix = 2.0 * (-x).exp();
    adaptive(past_hump(x), |ell| {
        let t = prefix * bessel_i_series(half_order(ell), x)?;
        Ok((t, t.norm()))
    })
}

/// `erf(w) = √2 Σ (−1)ˡ [I_{2ℓ+½}(w²) − I_{2ℓ+3/2}(w²)]`.
pub fn erf_bessel_alternating(w: C64) -> Result<ExpansionResult> {
    check_erf_phase(w)?;
    let x = w * w;
    adaptive(past_hump(x) / 2 + 1, |ell| {
        let a = bessel_i_series(half_order(2 * ell), x)?;
        let b = bessel_i_series(half_order(2 * ell + 1), x)?;
        let sign = if ell % 2 == 0 { SQRT_2 } else { -SQRT_2 };
        Ok(((a - b) * sign, SQRT_2 * (a.norm() + b.norm())))
    })
}

/// `γ(½, w² sin² φ) = 2√π sgn(φ) e^{w² cos 2φ / 2} Σ (−1)ˡ I_{ℓ+½}(w²/2) sin(2ℓ+1)φ`.
/// Even in `φ`.
pub fn erfgamma_sine_form(w: C64, phi: f64) -> Result<ExpansionResult> {
    let e = erf_bessel_general(w, phi)?;
    Ok(ExpansionResult {
        value: e.value * (PI.sqrt() * sign(phi) as f64),
        tail_bound: e.tail_bound * PI.sqrt(),
        ..e
    })
}

/// `γ(½, −iz(1 − cos θ))` reconstructed from the Fourier coefficients of the
/// half-odd-order kernel,
/// `2√π iⁿ sgn(θ) e^{−iπ/4} e^{−iz cos θ} Σ_{ℓ≥−n} 𝔍̃_ℓ sin(ℓ+n+½)θ`.
///
/// Only the coefficients with `ℓ ≥ 0` are known in closed form
/// (`𝔍̃_ℓ = iˡ J_{n+½+ℓ}(z)`). For `n = 0` that is the whole series. For
/// `n ≥ 1` the `n` coefficients with negative index are missing, so
/// [`ExpansionMode::Full`] is refused and [`ExpansionMode::Partial`] returns the
/// `ℓ ≥ 0` part flagged incomplete.
pub fn incgamma_half_expansion(
    z: C64,
    theta: f64,
    n: u32,
    mode: ExpansionMode,
) -> Result<ExpansionResult> {
    if n >= 1 && mode == ExpansionMode::Full {
        return Err(Error::Unsupported(format!(
            "order n + 1/2 = {}.5 needs the {n} Fourier coefficients with negative index",
            n
        )));
    }
    if !(-PI..=PI).contains(&theta) {
        return Err(Error::domain(format!("angle {theta} outside [-pi, pi]")));
    }
    let prefix = 2.0
        * PI.sqrt()
        * i_pow_int(n as i64)
        * sign(theta) as f64
        * C64::new(0.0, -FRAC_PI_4).exp()
        * (C64::new(0.0, -1.0) * z * theta.cos()).exp();
    let base = n as f64 + 0.5;
    let e = adaptive(past_hump(z), |ell| {
        let j = bessel_j_series(C64::new(base + ell as f64, 0.0), z)?;
        let s = ((ell as f64 + base) * theta).sin();
        Ok((prefix * i_pow_int(ell as i64) * j * s, (prefix * j).norm()))
    })?;
    Ok(ExpansionResult {
        complete: n == 0,
        ..e
    })
}

/// `F₂(aw) = w e^{iπw²(2a²−1)/4} Σ (−i)ˡ T_{2ℓ+1}(a) j_ℓ(πw²/4)` for `a ∈ [0, 1]`.
pub fn fresnel_bessel(a: f64, w: C64) -> Result<ExpansionResult> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain(format!(
            "Fresnel expansion needs a in [0, 1], got {a}"
        )));
    }
    if w == C64::new(0.0, 0.0) {
        return Ok(ExpansionResult {
            value: w,
            terms_used: 1,
            tail_bound: 0.0,
            complete: true,
        });
    }
    let x = w * w * FRAC_PI_4;
    let prefix = w * (C64::new(0.0, 1.0) * x * (2.0 * a * a - 1.0)).exp();
    adaptive(past_hump(x), |ell| {
        let j = spherical_j(ell as u32, x)?;
        let t = chebyshev_t(2 * ell as u32 + 1, C64::new(a, 0.0));
        Ok((
            prefix * i_pow_int(-(ell as i64)) * t * j,
            (prefix * j).norm(),
        ))
    })
}

/// Right-hand side of
/// `(−i)ⁿ e^{iz cos θ} = 𝔍̃_{−n} + 2 Σ_{ℓ≥−n+1} 𝔍̃_ℓ cos(ℓ+n)θ`
/// for the integer-order kernel `𝔍^{(n)}`.
///
/// For `n = 0` this is the Jacobi–Anger expansion. For `n ≥ 1` the
/// self-paired coefficient `𝔍̃_{−n}` is taken from a quadrature of the
/// kernel. That completes the series for `n = 1`. For `n ≥ 2` the
/// coefficients `−n+1 ≤ ℓ ≤ −1` have no closed form, so partial mode sums
/// only `𝔍̃_{−n}` and the `ℓ ≥ 0` terms and flags the result incomplete.
pub fn inv3_reconstruction(
    n: u32,
    z: C64,
    theta: f64,
    mode: ExpansionMode,
) -> Result<ExpansionResult> {
    if n >= 2 && mode == ExpansionMode::Full {
        return Err(Error::Unsupported(format!(
            "integer order {n} needs the Fourier coefficients -{}..-1",
            n - 1
        )));
    }
    if n == 0 {
        return jacobi_anger_adaptive(z, theta);
    }
    let nf = n as f64;
    let head = frakj_fourier_coefficient(C64::new(nf, 0.0), z, -(n as i64))?.value;
    let tail = adaptive(past_hump(z), |ell| {
        let j = bessel_j_series(C64::new(nf + ell as f64, 0.0), z)?;
        let c = ((ell as f64 + nf) * theta).cos();
        Ok((2.0 * i_pow_int(ell as i64) * j * c, 2.0 * j.norm()))
    })?;
    Ok(ExpansionResult {
        value: head + tail.value,
        terms_used: tail.terms_used + 1,
        tail_bound: tail.tail_bound,
        complete: n == 1,
    })
}
