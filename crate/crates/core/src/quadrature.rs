//! Complex-valued quadrature on finite intervals.
//!
//! Three engines sit behind [`integrate`]:
//!
//! * composite Gauss–Legendre, panel count doubling per level, for smooth
//!   integrands;
//! * tanh-sinh (double exponential) for integrands with an algebraic
//!   endpoint singularity declared in [`QuadratureSpec::singularity`];
//! * the equispaced trapezoid rule for smooth `2π`-periodic integrands
//!   ([`trapezoid_periodic`]).
//!
//! Every engine refines level by level; the error estimate is the difference
//! of the last two levels.
//!
//! Integrands that need the distance to an endpoint to full relative
//! precision (`1 + cos θ` near `θ = π`, say) should use [`integrate_nodes`],
//! whose callback receives that distance directly instead of recomputing it
//! from a rounded abscissa.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::order::principal_power;
use crate::{Error, Result, C64};

/// Points of the Gauss–Legendre rule used on every composite panel.
const PANEL_POINTS: usize = 16;
/// Step of the coarsest tanh-sinh level.
const DE_BASE_STEP: f64 = 0.5;
/// Half-width of the tanh-sinh window in `t`; the outermost nodes sit about
/// `1e-300` (relative) from the endpoints.
const DE_T_MAX: f64 = 6.1;
/// Refinement levels computed before a convergence verdict is accepted.
const MIN_LEVELS: usize = 2;

/// Where the integrand is allowed to be unbounded (or merely non-smooth).
///
/// The exponent `σ` describes behaviour like `d^σ`, with `d` the distance to
/// the singular point; it must satisfy `Re σ > −1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Singularity {
    #[default]
    None,
    LeftEndpoint(C64),
    RightEndpoint(C64),
    /// An interior point; the interval is split there and each half gets an
    /// endpoint treatment.
    Interior {
        at: f64,
        exponent: C64,
    },
}

impl Singularity {
    fn exponent(&self) -> Option<C64> {
        match *self {
            Singularity::None => None,
            Singularity::LeftEndpoint(s) | Singularity::RightEndpoint(s) => Some(s),
            Singularity::Interior { exponent, .. } => Some(exponent),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_levels: usize,
    pub singularity: Singularity,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            max_levels: 10,
            singularity: Singularity::None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_singularity(mut self, singularity: Singularity) -> Self {
        self.singularity = singularity;
        self
    }

    pub fn with_max_levels(mut self, levels: usize) -> Self {
        self.max_levels = levels;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_levels < 1 {
            return Err(Error::domain("max_levels must be at least 1"));
        }
        if let Some(s) = self.singularity.exponent() {
            if !(s.re > -1.0) {
                return Err(Error::domain(format!(
                    "singularity exponent {s} is not integrable (need Re > -1)"
                )));
            }
        }
        Ok(())
    }

    fn tolerance_for(&self, value: C64) -> f64 {
        (self.rel_tol * value.norm()).max(self.abs_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: C64,
    pub err_estimate: f64,
    pub nodes_used: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub(crate) fn merge(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            nodes_used: self.nodes_used + other.nodes_used,
            converged: self.converged && other.converged,
        }
    }

    pub(crate) fn scaled(self, factor: C64) -> QuadratureResult {
        QuadratureResult {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.norm(),
            ..self
        }
    }
}

/// An abscissa together with its distances to both ends of the interval.
/// `from_a` and `from_b` are accurate even when `x` itself has rounded onto
/// an endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_a: f64,
    pub from_b: f64,
}

/// `∫_a^b f(x) dx` for an integrand of the abscissa alone. Nodes whose
/// abscissa rounds onto an endpoint are not evaluated.
pub fn integrate(
    f: impl Fn(f64) -> C64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    integrate_nodes(
        |n: Node| {
            if n.x <= a || n.x >= b {
                C64::new(0.0, 0.0)
            } else {
                f(n.x)
            }
        },
        a,
        b,
        spec,
    )
}

/// `∫_a^b f dx` for an integrand that reads endpoint distances from [`Node`].
pub fn integrate_nodes(
    f: impl Fn(Node) -> C64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    spec.validate()?;
    match spec.singularity {
        Singularity::None => gauss_legendre_composite(&f, a, b, spec),
        Singularity::LeftEndpoint(s) => tanh_sinh(&f, a, b, Side::Left(s), spec),
        Singularity::RightEndpoint(s) => tanh_sinh(&f, a, b, Side::Right(s), spec),
        Singularity::Interior { at, exponent } => {
            if !(a < at && at < b) {
                return Err(Error::domain(format!(
                    "interior singularity {at} not inside ({a}, {b})"
                )));
            }
            let left = tanh_sinh(
                &|n: Node| {
                    f(Node {
                        x: n.x,
                        from_a: n.from_a,
                        from_b: n.from_b + (b - at),
                    })
                },
                a,
                at,
                Side::Right(exponent),
                spec,
            )?;
            let right = tanh_sinh(
                &|n: Node| {
                    f(Node {
                        x: n.x,
                        from_a: n.from_a + (at - a),
                        from_b: n.from_b,
                    })
                },
                at,
                b,
                Side::Left(exponent),
                spec,
            )?;
            Ok(left.merge(right))
        }
    }
}

/// Runs `rule` on an integrand that may fail. The first error raised by `f`
/// is returned in place of whatever the rule made of the poisoned value.
pub(crate) fn fallible<A>(
    f: impl Fn(A) -> Result<C64>,
    rule: impl FnOnce(&dyn Fn(A) -> C64) -> Result<QuadratureResult>,
) -> Result<QuadratureResult> {
    let failure = RefCell::new(None);
    let wrapped = |arg: A| match f(arg) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            C64::new(f64::NAN, f64::NAN)
        }
    };
    let out = rule(&wrapped);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => out,
    }
}

fn check_finite(v: C64, x: f64) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Integrand(x))
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one point");
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn panel_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_POINTS))
}

fn gauss_legendre_composite(
    f: &impl Fn(Node) -> C64,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let rule = panel_rule();
    let mut nodes_used = 0;
    let mut previous: Option<C64> = None;
    let mut best = QuadratureResult {
        value: C64::new(0.0, 0.0),
        err_estimate: f64::INFINITY,
        nodes_used: 0,
        converged: false,
    };
    for level in 0..=spec.max_levels {
        let panels = 1usize << level;
        let width = (b - a) / panels as f64;
        let mut sum = C64::new(0.0, 0.0);
        for p in 0..panels {
            let lo = a + p as f64 * width;
            let half = 0.5 * width;
            let mid = lo + half;
            for &(xi, wi) in rule {
                let x = mid + half * xi;
                let from_a = (p as f64 + 0.5 + 0.5 * xi) * width;
                let from_b = (panels as f64 - p as f64 - 0.5 - 0.5 * xi) * width;
                sum += wi * half * check_finite(f(Node { x, from_a, from_b }), x)?;
            }
        }
        nodes_used += panels * rule.len();
        best.value = sum;
        best.nodes_used = nodes_used;
        if let Some(prev) = previous {
            best.err_estimate = (sum - prev).norm();
            if level >= MIN_LEVELS && best.err_estimate <= spec.tolerance_for(sum) {
                best.converged = true;
                return Ok(best);
            }
        }
        previous = Some(sum);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy)]
enum Side {
    Left(C64),
    Right(C64),
}

/// A tanh-sinh node on the unit interval: distances to 0 and to 1, weight.
#[derive(Debug, Clone, Copy)]
struct UnitNode {
    lo: f64,
    hi: f64,
    weight: f64,
}

fn unit_node(t: f64) -> UnitNode {
    let s = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * s.abs()).exp();
    let near = e / (1.0 + e);
    let far = 1.0 / (1.0 + e);
    let weight = FRAC_PI_2 * t.cosh() * 2.0 * e / ((1.0 + e) * (1.0 + e));
    // On (0, 1): the mapped abscissa is (1 + tanh s)/2.
    if s >= 0.0 {
        UnitNode {
            lo: far,
            hi: near,
            weight,
        }
    } else {
        UnitNode {
            lo: near,
            hi: far,
            weight,
        }
    }
}

/// Applies `d = s^q` at the singular end of the unit interval, which turns a
/// `d^σ` singularity with `q = 1/(1 + Re σ)` into a bounded one.
fn compensate(node: UnitNode, q: f64) -> Option<UnitNode> {
    let ln_s = if node.lo < 0.5 {
        node.lo.ln()
    } else {
        (-node.hi).ln_1p()
    };
    let lo = (q * ln_s).exp();
    if lo == 0.0 {
        return None;
    }
    let hi = -(q * ln_s).exp_m1();
    let weight = node.weight * q * ((q - 1.0) * ln_s).exp();
    Some(UnitNode { lo, hi, weight })
}

fn tanh_sinh(
    f: &impl Fn(Node) -> C64,
    a: f64,
    b: f64,
    side: Side,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let len = b - a;
    let exponent = match side {
        Side::Left(s) | Side::Right(s) => s,
    };
    let q = if exponent.re < -0.5 {
        Some(1.0 / (1.0 + exponent.re))
    } else {
        None
    };
    let evaluate = |t: f64| -> Result<C64> {
        let mut node = unit_node(t);
        if let Side::Right(_) = side {
            std::mem::swap(&mut node.lo, &mut node.hi);
        }
        if let Some(q) = q {
            // Compensation acts on the singular end, which `lo` measures
            // after the swap above.
            match compensate(node, q) {
                Some(n) => node = n,
                None => return Ok(C64::new(0.0, 0.0)),
            }
        }
        if let Side::Right(_) = side {
            std::mem::swap(&mut node.lo, &mut node.hi);
        }
        let from_a = len * node.lo;
        let from_b = len * node.hi;
        if from_a == 0.0 || from_b == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let x = if from_a < from_b {
            a + from_a
        } else {
            b - from_b
        };
        let v = check_finite(f(Node { x, from_a, from_b }), x)?;
        Ok(v * (node.weight * len))
    };

    let mut sum = C64::new(0.0, 0.0);
    let mut nodes_used = 0;
    let steps = (DE_T_MAX / DE_BASE_STEP).ceil() as i64;
    for j in -steps..=steps {
        sum += evaluate(j as f64 * DE_BASE_STEP)?;
        nodes_used += 1;
    }
    let mut h = DE_BASE_STEP;
    let mut estimate = sum * h;
    let mut best = QuadratureResult {
        value: estimate,
        err_estimate: f64::INFINITY,
        nodes_used,
        converged: false,
    };
    for level in 1..=spec.max_levels {
        h *= 0.5;
        let odd = (DE_T_MAX / h).ceil() as i64;
        let mut j = -odd;
        if j % 2 == 0 {
            j += 1;
        }
        while j <= odd {
            sum += evaluate(j as f64 * h)?;
            nodes_used += 1;
            j += 2;
        }
        let next = sum * h;
        best = QuadratureResult {
            value: next,
            err_estimate: (next - estimate).norm(),
            nodes_used,
            converged: false,
        };
        if level >= MIN_LEVELS && best.err_estimate <= spec.tolerance_for(next) {
            best.converged = true;
            return Ok(best);
        }
        estimate = next;
    }
    Ok(best)
}

/// `∫_{−π}^{π} f(θ) dθ` for smooth `2π`-periodic `f` by the trapezoid rule.
pub fn trapezoid_periodic(
    f: impl Fn(f64) -> C64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    const BASE: usize = 16;
    let mut sum = C64::new(0.0, 0.0);
    for j in 0..BASE {
        let theta = -PI + 2.0 * PI * j as f64 / BASE as f64;
        sum += check_finite(f(theta), theta)?;
    }
    let mut n = BASE;
    let mut estimate = sum * (2.0 * PI / n as f64);
    let mut best = QuadratureResult {
        value: estimate,
        err_estimate: f64::INFINITY,
        nodes_used: n,
        converged: false,
    };
    for level in 1..=spec.max_levels {
        for j in 0..n {
            let theta = -PI + 2.0 * PI * (j as f64 + 0.5) / n as f64;
            sum += check_finite(f(theta), theta)?;
        }
        n *= 2;
        let next = sum * (2.0 * PI / n as f64);
        best = QuadratureResult {
            value: next,
            err_estimate: (next - estimate).norm(),
            nodes_used: n,
            converged: false,
        };
        if level >= MIN_LEVELS && best.err_estimate <= spec.tolerance_for(next) {
            best.converged = true;
            return Ok(best);
        }
        estimate = next;
    }
    Ok(best)
}

/// `∫_{−π}^{π} f(θ) e^{iℓθ} dθ` for `2π`-periodic `f`.
///
/// Without a declared singularity the trapezoid rule is used; an
/// [`Singularity::Interior`] point splits the period there, and an endpoint
/// declaration routes the whole period through tanh-sinh.
pub fn integrate_fourier_coefficient(
    f: impl Fn(f64) -> C64,
    ell: i64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    let g = |theta: f64| f(theta) * C64::new(0.0, ell as f64 * theta).exp();
    match spec.singularity {
        Singularity::None => trapezoid_periodic(g, spec),
        _ => integrate(g, -PI, PI, spec),
    }
}

/// Fresnel-type integral `F_λ(w) = ∫_0^w exp(iπ s^λ / 2) ds` along the
/// segment from 0 to `w`.
pub fn fresnel_f(lambda: f64, w: C64) -> Result<QuadratureResult> {
    if !(lambda > 0.0) {
        return Err(Error::domain(format!(
            "Fresnel exponent {lambda} must be positive"
        )));
    }
    if w == C64::new(0.0, 0.0) {
        return Ok(QuadratureResult {
            value: w,
            err_estimate: 0.0,
            nodes_used: 0,
            converged: true,
        });
    }
    let integer_power = lambda.fract() == 0.0 && lambda <= 64.0;
    let spec = if integer_power {
        QuadratureSpec::default().with_tolerances(1e-13, 1e-15)
    } else {
        QuadratureSpec::default()
            .with_tolerances(1e-13, 1e-15)
            .with_singularity(Singularity::LeftEndpoint(C64::new(0.0, 0.0)))
    };
    let power = |s: C64| -> C64 {
        if integer_power {
            s.powi(lambda as i32)
        } else {
            principal_power(s, C64::new(lambda, 0.0)).unwrap_or(C64::new(0.0, 0.0))
        }
    };
    let result = integrate(
        |t| (C64::new(0.0, FRAC_PI_2) * power(w * t)).exp(),
        0.0,
        1.0,
        &spec,
    )?;
    Ok(result.scaled(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate(|x| c(x.sin(), 0.0), 0.0, PI, &QuadratureSpec::default()).unwrap();
        assert!(r.converged);
        assert!((r.value - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn plane_wave_over_full_period() {
        let r = integrate(|x| c(0.0, x).exp(), -PI, PI, &QuadratureSpec::default()).unwrap();
        assert!(r.value.norm() < 1e-13);
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        for n in [1usize, 2, 5, 16, 24] {
            let rule = gauss_legendre(n);
            let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            for deg in 0..2 * n {
                let approx: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                assert!(
                    (approx - exact).abs() <= 1e-13 * exact.abs().max(1.0),
                    "n = {n}, degree {deg}"
                );
            }
        }
    }

    #[test]
    fn endpoint_singularity_power_law() {
        for s in [c(-0.49, 0.0), c(-0.25, 0.0), c(-0.1, 0.3), c(-0.9, 0.0)] {
            let spec = QuadratureSpec::default().with_singularity(Singularity::LeftEndpoint(s));
            let r = integrate(|t| principal_power(c(t, 0.0), s).unwrap(), 0.0, 1.0, &spec).unwrap();
            let exact = 1.0 / (s + 1.0);
            assert!(r.converged, "sigma = {s}");
            assert!(
                (r.value - exact).norm() <= 1e-11 * exact.norm(),
                "sigma = {s}: {}",
                r.value
            );
        }
    }

    #[test]
    fn right_endpoint_through_distances() {
        // ∫_0^1 (1 − x)^σ dx with the distance read from the node.
        let s = c(-0.7, 0.2);
        let spec = QuadratureSpec::default().with_singularity(Singularity::RightEndpoint(s));
        let r = integrate_nodes(
            |n| principal_power(c(n.from_b, 0.0), s).unwrap(),
            0.0,
            1.0,
            &spec,
        )
        .unwrap();
        assert!((r.value - 1.0 / (s + 1.0)).norm() < 1e-11);
    }

    #[test]
    fn interior_split() {
        // ∫_{−1}^{1} |x|^{−1/2} dx = 4.
        let spec = QuadratureSpec::default().with_singularity(Singularity::Interior {
            at: 0.0,
            exponent: c(-0.5, 0.0),
        });
        let r = integrate(|x| c(x.abs().powf(-0.5), 0.0), -1.0, 1.0, &spec).unwrap();
        assert!((r.value - c(4.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn graded_mesh_reference() {
        // ∫_0^π (1 − cos θ)^{−0.4} dθ. Reference from a 10⁶-panel graded mesh
        // (8.5812952553, limited by summation rounding), sharpened by the
        // closed form 2^{−0.4} B(1/10, 1/2) at 30 digits.
        let spec =
            QuadratureSpec::default().with_singularity(Singularity::LeftEndpoint(c(-0.8, 0.0)));
        let r = integrate(
            |t| c(2f64.powf(-0.4) * (0.5 * t).sin().powf(-0.8), 0.0),
            0.0,
            PI,
            &spec,
        )
        .unwrap();
        assert!((r.value.re - GRADED_MESH_REFERENCE).abs() < 1e-10 * GRADED_MESH_REFERENCE);
    }

    const GRADED_MESH_REFERENCE: f64 = 8.581_295_256_186_315;

    #[test]
    fn rejects_bad_specs() {
        let f = |x: f64| c(x, 0.0);
        assert!(integrate(f, 1.0, 0.0, &QuadratureSpec::default()).is_err());
        let bad =
            QuadratureSpec::default().with_singularity(Singularity::LeftEndpoint(c(-1.0, 0.0)));
        assert!(integrate(f, 0.0, 1.0, &bad).is_err());
        let bad = QuadratureSpec::default().with_tolerances(0.0, 1e-14);
        assert!(integrate(f, 0.0, 1.0, &bad).is_err());
        let bad = QuadratureSpec {
            max_levels: 0,
            ..QuadratureSpec::default()
        };
        assert!(integrate(f, 0.0, 1.0, &bad).is_err());
    }

    #[test]
    fn nan_integrand_is_an_error() {
        let r = integrate(|_| c(f64::NAN, 0.0), 0.0, 1.0, &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::Integrand(_))));
    }

    #[test]
    fn too_few_levels_reports_unconverged() {
        let spec = QuadratureSpec::default().with_max_levels(1);
        let r = integrate(|x| c((40.0 * x).cos(), 0.0), 0.0, PI, &spec).unwrap();
        assert!(!r.converged);
        assert!(r.err_estimate > 0.0);
    }

    #[test]
    fn error_estimate_shrinks_with_levels() {
        let f = |x: f64| c(0.0, 9.0 * x.cos()).exp() * (1.0 + x * x);
        let mut last = f64::INFINITY;
        for levels in 1..6 {
            let spec = QuadratureSpec::default().with_max_levels(levels);
            let r = integrate(f, 0.0, PI, &spec).unwrap();
            assert!(r.converged || r.err_estimate < last, "levels = {levels}");
            last = r.err_estimate;
        }
        let s = c(-0.45, 0.0);
        let mut last = f64::INFINITY;
        for levels in 1..6 {
            let spec = QuadratureSpec::default()
                .with_max_levels(levels)
                .with_singularity(Singularity::LeftEndpoint(s));
            let r = integrate(
                |t| principal_power(c(t, 0.0), s).unwrap() * c(0.0, 5.0 * t).exp(),
                0.0,
                1.0,
                &spec,
            )
            .unwrap();
            assert!(r.converged || r.err_estimate < last, "levels = {levels}");
            last = r.err_estimate;
        }
    }

    #[test]
    fn fourier_coefficients_of_simple_functions() {
        let spec = QuadratureSpec::default();
        let r = integrate_fourier_coefficient(|t| c(0.0, -t).exp(), 1, &spec).unwrap();
        assert!((r.value - c(2.0 * PI, 0.0)).norm() < 1e-13);
        let r = integrate_fourier_coefficient(|_| c(1.0, 0.0), 3, &spec).unwrap();
        assert!(r.value.norm() < 1e-13);
    }

    #[test]
    fn fresnel_at_origin_and_reference() {
        assert_eq!(fresnel_f(2.0, c(0.0, 0.0)).unwrap().value, c(0.0, 0.0));
        assert_eq!(fresnel_f(0.7, c(0.0, 0.0)).unwrap().value, c(0.0, 0.0));
        assert!(fresnel_f(0.0, c(1.0, 0.0)).is_err());
        // C(1) + i S(1), Maclaurin series of the Fresnel integrals (mpmath).
        let r = fresnel_f(2.0, c(1.0, 0.0)).unwrap();
        assert!((r.value - c(0.779_893_400_376_822_8, 0.438_259_147_390_354_8)).norm() < 1e-13);
    }
}
