//! Gamma function, its reciprocal, and the incomplete-gamma family in
//! Tricomi's entire form `γ*(ν, w) = e^{−w} Σ wⁿ / Γ(ν+n+1)`.

use std::f64::consts::PI;

use crate::order::principal_power;
use crate::sum::{sum_series, SeriesEvaluation, Truncation};
use crate::{Error, Result, C64};

/// Default relative tolerance of the Tricomi series.
pub const DEFAULT_TOL: f64 = 1e-14;

/// Above this magnitude `e^{−w}` is no longer representable.
const MAX_ARGUMENT: f64 = 700.0;

/// `|w| − Re w` above which the Tricomi series loses more than about
/// `e^8` in cancellation and the continued fraction takes over.
const CANCELLATION_SWITCH: f64 = 8.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMethod {
    /// Tricomi power series.
    Series,
    /// Legendre continued fraction for the complementary function.
    ContinuedFraction,
    /// Lanczos approximation combined with Euler reflection.
    Reflection,
    /// Exact value (`P(0, w) = 1`).
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub value: C64,
    pub method: GammaMethod,
}

fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `sin(πz)` with the argument reduced modulo 2 first, so that zeros at the
/// integers come out exact.
fn sin_pi(z: C64) -> C64 {
    let n = z.re.round();
    let r = C64::new(z.re - n, z.im);
    let s = (r * PI).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Lanczos approximation, valid for `Re z ≥ 1/2`.
fn lanczos(z: C64) -> C64 {
    let z = z - 1.0;
    let mut x = C64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    ((z + 0.5) * t.ln() - t).exp() * x * (2.0 * PI).sqrt()
}

/// `ln |Γ(z)|`, finite well past the point where `Γ` itself overflows.
pub(crate) fn ln_abs_gamma(z: C64) -> Result<f64> {
    if z.re < 0.5 {
        return Ok(gamma_fn(z)?.norm().ln());
    }
    let w = z - 1.0;
    let mut x = C64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (w + i as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    Ok(((w + 0.5) * t.ln() - t).re + x.norm().ln() + 0.5 * (2.0 * PI).ln())
}

/// `Γ(z)`; reflection is used for `Re z < 1/2`.
pub fn gamma_fn(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z.re.to_string()));
    }
    if z.re < 0.5 {
        Ok(PI / (sin_pi(z) * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// `Γ(z)` together with the route used.
pub fn gamma_value(z: C64) -> Result<GammaValue> {
    let value = gamma_fn(z)?;
    let method = if z.re < 0.5 {
        GammaMethod::Reflection
    } else {
        GammaMethod::Series
    };
    Ok(GammaValue { value, method })
}

/// `1/Γ(z)` as an entire function: exactly zero at `0, −1, −2, …`.
pub fn reciprocal_gamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sin_pi(z) * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
}

/// Index of the first nonvanishing term of `Σ wⁿ/Γ(ν+n+1)`.
fn first_live_index(nu: C64) -> usize {
    if is_nonpositive_integer(nu + 1.0) {
        (-nu.re) as usize
    } else {
        0
    }
}

/// Tricomi's `γ*(ν, w)` by its power series at relative tolerance `tol`.
pub fn tricomi_gamma_star_tol(nu: C64, w: C64, tol: f64) -> Result<SeriesEvaluation> {
    if w.norm() > MAX_ARGUMENT {
        return Err(Error::Range(format!(
            "|w| = {} exceeds {MAX_ARGUMENT}",
            w.norm()
        )));
    }
    let start = first_live_index(nu);
    let mut term = C64::new(0.0, 0.0);
    let rule = Truncation::default()
        .rel_tol(tol)
        .min_terms(w.norm().ceil() as usize + 1);
    let series = sum_series(rule, |n| {
        if n < start {
            return Ok(C64::new(0.0, 0.0));
        }
        term = if n == start {
            w.powu(n as u32) * reciprocal_gamma(nu + (n as f64) + 1.0)
        } else {
            term * w / (nu + n as f64)
        };
        Ok(term)
    })?;
    let scale = (-w).exp();
    Ok(SeriesEvaluation {
        value: series.value * scale,
        last_term: series.last_term * scale.norm(),
        ..series
    })
    .and_then(|s| s.into_result("Tricomi incomplete gamma series"))
}

/// Tricomi's `γ*(ν, w)` at the default tolerance.
pub fn tricomi_gamma_star(nu: C64, w: C64) -> Result<SeriesEvaluation> {
    tricomi_gamma_star_tol(nu, w, DEFAULT_TOL)
}

/// `Γ(a, w) e^{w} w^{−a}` by the Legendre continued fraction (modified
/// Lentz). Converges for `w` off the negative real axis.
fn upper_gamma_fraction(a: C64, w: C64) -> Result<C64> {
    const TINY: f64 = 1e-300;
    const MAX_ITER: usize = 10_000;
    let mut b = w + 1.0 - a;
    let mut c = C64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = C64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = C64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::NotConverged {
        what: "incomplete gamma continued fraction",
        iterations: MAX_ITER,
        estimate: h.to_string(),
    })
}

fn use_continued_fraction(w: C64) -> bool {
    w.norm() - w.re > CANCELLATION_SWITCH && w.re >= -w.norm() * std::f64::consts::FRAC_1_SQRT_2
}

/// `P(a, w)` where the caller supplies `w^a` on the branch it needs. The
/// entire factor `γ*` is shared by every branch, so the result is
/// `w_pow_a · γ*(a, w)`.
pub(crate) fn regularized_p_with_power(a: C64, w: C64, w_pow_a: C64) -> Result<GammaValue> {
    if a == C64::new(0.0, 0.0) {
        return Ok(GammaValue {
            value: C64::new(1.0, 0.0),
            method: GammaMethod::Exact,
        });
    }
    if use_continued_fraction(w) {
        let principal = principal_power(w, a)?;
        let q = (-w).exp() * principal * upper_gamma_fraction(a, w)? * reciprocal_gamma(a);
        let p = 1.0 - q;
        return Ok(GammaValue {
            value: p * (w_pow_a / principal),
            method: GammaMethod::ContinuedFraction,
        });
    }
    let star = tricomi_gamma_star_tol(a, w, 1e-16)?;
    Ok(GammaValue {
        value: w_pow_a * star.value,
        method: GammaMethod::Series,
    })
}

/// Regularized lower incomplete gamma `P(ν, w) = w^ν γ*(ν, w)`, principal branch.
pub fn regularized_p(nu: C64, w: C64) -> Result<C64> {
    regularized_p_value(nu, w).map(|v| v.value)
}

/// [`regularized_p`] together with the route used.
pub fn regularized_p_value(nu: C64, w: C64) -> Result<GammaValue> {
    if nu == C64::new(0.0, 0.0) {
        return Ok(GammaValue {
            value: C64::new(1.0, 0.0),
            method: GammaMethod::Exact,
        });
    }
    let w_pow = principal_power(w, nu)?;
    regularized_p_with_power(nu, w, w_pow)
}

/// Lower incomplete gamma `γ(ν, w) = Γ(ν) P(ν, w)`.
pub fn lower_incomplete_gamma(nu: C64, w: C64) -> Result<C64> {
    Ok(gamma_fn(nu)? * regularized_p(nu, w)?)
}

/// Evaluates `P(ν, w)` through the downward shift
/// `P(ν, w) = P(ν−k, w) − e^{−w} Σ_{j=1..k} w^{ν−j} / Γ(ν−j+1)`.
pub fn p_recurrence_shift(nu: C64, w: C64, k: u32) -> Result<C64> {
    if k == 0 {
        return Err(Error::domain("recurrence shift needs k >= 1"));
    }
    let base = regularized_p(nu - k as f64, w)?;
    let mut correction = C64::new(0.0, 0.0);
    for j in 1..=k {
        let rg = reciprocal_gamma(nu - j as f64 + 1.0);
        if rg == C64::new(0.0, 0.0) {
            continue;
        }
        correction += principal_power(w, nu - j as f64)? * rg;
    }
    Ok(base - (-w).exp() * correction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn gamma_at_integers_and_half() {
        assert!(close(gamma_fn(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-14));
        assert!(close(gamma_fn(c(5.0, 0.0)).unwrap(), c(24.0, 0.0), 1e-14));
        assert!(close(
            gamma_fn(c(0.5, 0.0)).unwrap(),
            c(PI.sqrt(), 0.0),
            1e-14
        ));
        assert!(close(
            gamma_fn(c(-0.5, 0.0)).unwrap(),
            c(-2.0 * PI.sqrt(), 0.0),
            1e-14
        ));
    }

    #[test]
    fn gamma_poles() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_fn(c(n, 0.0)), Err(Error::Pole(_))));
            assert_eq!(reciprocal_gamma(c(n, 0.0)), c(0.0, 0.0));
        }
    }

    #[test]
    fn gamma_complex_reference() {
        // mpmath.gamma(1+1j), mpmath.gamma(-2.5+0.7j), mpmath.gamma(12.3-4j)
        let cases = [
            (
                c(1.0, 1.0),
                c(0.498_015_668_118_356_04, -0.154_949_828_301_810_69),
            ),
            (
                c(-2.5, 0.7),
                c(-0.159_818_716_362_932_93, -0.157_566_549_081_515_28),
            ),
            (
                c(12.3, -4.0),
                c(-37_148_183.078_562_52, 21_407_656.972_251_746),
            ),
        ];
        for (z, expected) in cases {
            assert!(close(gamma_fn(z).unwrap(), expected, 1e-13), "z = {z}");
        }
    }

    #[test]
    fn reflection_route_is_reported() {
        assert_eq!(
            gamma_value(c(0.2, 0.0)).unwrap().method,
            GammaMethod::Reflection
        );
        assert_eq!(
            gamma_value(c(3.2, 0.0)).unwrap().method,
            GammaMethod::Series
        );
    }

    #[test]
    fn tricomi_special_values() {
        for w in [c(1.0, 0.0), c(2.0, 1.0)] {
            let v = tricomi_gamma_star(c(0.0, 0.0), w).unwrap();
            assert!(close(v.value, c(1.0, 0.0), 1e-14));
            let v = tricomi_gamma_star(c(1.0, 0.0), w).unwrap();
            assert!(close(v.value, (1.0 - (-w).exp()) / w, 1e-14));
        }
        let nu = c(0.3, 0.4);
        let v = tricomi_gamma_star(nu, c(0.0, 0.0)).unwrap();
        assert!(close(v.value, reciprocal_gamma(nu + 1.0), 1e-15));
    }

    #[test]
    fn tricomi_reference_value() {
        // 40-digit summation of the defining series (mpmath); equals erf(1).
        let v = tricomi_gamma_star(c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(v.value, c(0.842_700_792_949_714_869_3, 0.0), 1e-14));
        assert!(v.converged && v.terms > 3);
    }

    #[test]
    fn tricomi_range_guard() {
        assert!(matches!(
            tricomi_gamma_star(c(0.5, 0.0), c(701.0, 0.0)),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn tricomi_at_negative_integer_order() {
        // γ*(−m, w) = w^m.
        let w = c(0.7, -0.4);
        let v = tricomi_gamma_star(c(-2.0, 0.0), w).unwrap();
        assert!(close(v.value, w * w, 1e-14));
    }

    #[test]
    fn p_of_order_zero_is_one() {
        for w in [c(0.3, 0.0), c(-4.0, 2.0), c(0.0, 30.0)] {
            assert_eq!(regularized_p(c(0.0, 0.0), w).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn p_vanishes_at_origin() {
        assert_eq!(
            regularized_p(c(0.4, 0.1), c(0.0, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        assert!(regularized_p(c(-0.4, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn p_integer_order_closed_form() {
        let w = c(1.3, -0.8);
        for m in 1..=3 {
            let mut partial = c(0.0, 0.0);
            let mut term = c(1.0, 0.0);
            for j in 0..m {
                if j > 0 {
                    term = term * w / j as f64;
                }
                partial += term;
            }
            let expected = 1.0 - (-w).exp() * partial;
            assert!(close(
                regularized_p(c(m as f64, 0.0), w).unwrap(),
                expected,
                1e-14
            ));
        }
    }

    #[test]
    fn continued_fraction_matches_series_in_overlap() {
        // Both routes are accurate for moderate |w| away from the cut.
        for (a, w) in [
            (c(0.3, 0.0), c(1.0, -9.0)),
            (c(-0.3, 0.2), c(0.5, 10.0)),
            (c(0.7, 0.5), c(3.0, -8.5)),
        ] {
            let principal = principal_power(w, a).unwrap();
            let cf = 1.0
                - (-w).exp()
                    * principal
                    * upper_gamma_fraction(a, w).unwrap()
                    * reciprocal_gamma(a);
            let series = principal * tricomi_gamma_star_tol(a, w, 1e-16).unwrap().value;
            assert!(
                close(cf, series, 1e-11),
                "a = {a}, w = {w}: {cf} vs {series}"
            );
        }
    }

    #[test]
    fn imaginary_argument_uses_fraction() {
        let v = regularized_p_value(c(0.3, 0.0), c(0.0, -20.0)).unwrap();
        assert_eq!(v.method, GammaMethod::ContinuedFraction);
        let v = regularized_p_value(c(0.3, 0.0), c(0.0, -2.0)).unwrap();
        assert_eq!(v.method, GammaMethod::Series);
    }

    #[test]
    fn lower_incomplete_gamma_examples() {
        let w = c(0.8, 0.3);
        assert!(close(
            lower_incomplete_gamma(c(1.0, 0.0), w).unwrap(),
            1.0 - (-w).exp(),
            1e-14
        ));
        assert_eq!(
            lower_incomplete_gamma(c(2.0, 0.0), c(0.0, 0.0)).unwrap(),
            c(0.0, 0.0)
        );
        assert!(matches!(
            lower_incomplete_gamma(c(-1.0, 0.0), c(1.0, 0.0)),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn recurrence_shift_examples() {
        let w = c(1.0, 0.0);
        let shifted = p_recurrence_shift(c(1.0, 0.0), w, 1).unwrap();
        assert!(close(shifted, c(1.0 - (-1f64).exp(), 0.0), 1e-15));

        let direct = regularized_p(c(1.5, 0.0), c(2.0, 0.0)).unwrap();
        let shifted = p_recurrence_shift(c(1.5, 0.0), c(2.0, 0.0), 1).unwrap();
        assert!(close(shifted, direct, 1e-12));

        let w = c(1.0, 1.0);
        let direct = regularized_p(c(2.7, 0.0), w).unwrap();
        let shifted = p_recurrence_shift(c(2.7, 0.0), w, 2).unwrap();
        assert!(close(shifted, direct, 1e-12));

        assert!(p_recurrence_shift(c(2.7, 0.0), w, 0).is_err());
    }

    #[test]
    fn tricomi_is_continuous_across_poles() {
        // γ*(ν, w) is entire in ν: sample a small circle around ν = 0 and ν = −1.
        let w = c(0.9, 0.4);
        for center in [0.0, -1.0] {
            let at = tricomi_gamma_star(c(center, 0.0), w).unwrap().value;
            for k in 0..16 {
                let nu = c(center, 0.0) + C64::from_polar(1e-6, k as f64 * PI / 8.0);
                let v = tricomi_gamma_star(nu, w).unwrap().value;
                assert!((v - at).norm() < 1e-5, "center {center}, nu = {nu}");
            }
        }
    }
}
