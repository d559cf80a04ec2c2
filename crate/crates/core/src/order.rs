//! Order decomposition and branch conventions shared by every kernel.
//!
//! A complex order `ν` splits into an integer part `[Re ν]` (floor for
//! nonnegative real part, ceiling for negative real part) and a complex
//! fractional part `{ν} = ν − [Re ν]` with `−1 < Re{ν} < 1`. All fractional
//! powers use the principal branch, `arg ∈ (−π, π]`.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result, C64};

/// Distance from an integer below which an order is snapped to that integer.
pub const INTEGER_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder {
    pub nu: C64,
    pub int_part: i64,
    pub frac_part: C64,
    pub is_integer: bool,
}

impl ComplexOrder {
    /// Order shifted by an integer, `ν + n`; the fractional part is unchanged
    /// unless the shift moves `Re ν` across zero.
    pub fn shifted(&self, n: i64) -> Result<ComplexOrder> {
        decompose_order(self.nu + n as f64)
    }

    /// `ν` as an integer, when it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer.then_some(self.int_part)
    }

    /// True when `ν ∈ {0, 1, 2, …}`.
    pub fn is_nonnegative_integer(&self) -> bool {
        self.is_integer && self.int_part >= 0
    }
}

/// Splits `nu` into integer part and complex fractional part.
pub fn decompose_order(nu: C64) -> Result<ComplexOrder> {
    if !(nu.re.is_finite() && nu.im.is_finite()) {
        return Err(Error::domain(format!("order {nu} is not finite")));
    }
    let nearest = nu.re.round();
    if nu.im.abs() <= INTEGER_TOLERANCE && (nu.re - nearest).abs() <= INTEGER_TOLERANCE {
        let n = nearest as i64;
        return Ok(ComplexOrder {
            nu: C64::new(nearest, 0.0),
            int_part: n,
            frac_part: C64::new(0.0, 0.0),
            is_integer: true,
        });
    }
    let int_part = if nu.re >= 0.0 {
        nu.re.floor()
    } else {
        nu.re.ceil()
    };
    Ok(ComplexOrder {
        nu,
        int_part: int_part as i64,
        frac_part: C64::new(nu.re - int_part, nu.im),
        is_integer: false,
    })
}

/// `z^s = exp(s · Log z)` on the principal branch.
pub fn principal_power(z: C64, s: C64) -> Result<C64> {
    if s == C64::new(0.0, 0.0) {
        return Ok(C64::new(1.0, 0.0));
    }
    if z == C64::new(0.0, 0.0) {
        if s.re > 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(Error::domain(format!("0^{s} is undefined (Re s <= 0)")));
    }
    if s == C64::new(1.0, 0.0) {
        return Ok(z);
    }
    Ok((s * z.ln()).exp())
}

/// Sign function with `sign(0) = 0`.
pub fn sign(theta: f64) -> i32 {
    if theta > 0.0 {
        1
    } else if theta < 0.0 {
        -1
    } else {
        0
    }
}

/// `i^s = exp(iπs/2)`.
pub(crate) fn i_pow(s: C64) -> C64 {
    (C64::new(0.0, FRAC_PI_2) * s).exp()
}

/// `i^n` for an integer exponent, exact.
pub(crate) fn i_pow_int(n: i64) -> C64 {
    match n.rem_euclid(4) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// Rejects `z ∈ (−∞, 0]`, where principal fractional powers are discontinuous.
pub(crate) fn require_slit_domain(z: C64, what: &str) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::domain(format!(
            "{what}: argument {z} lies on the cut (-inf, 0] and the order is not an integer"
        )));
    }
    Ok(())
}
