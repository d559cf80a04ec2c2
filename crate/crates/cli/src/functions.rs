//! The functions the CLI can evaluate, their parameters and their methods.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use clap::ValueEnum;
use jfourier::bessel::{
    bessel_i_classical, bessel_i_integral_eval, bessel_i_series, bessel_j_classical_eval,
    bessel_j_half_order_eval, bessel_j_integral_eval, bessel_j_series_eval,
    frakj_fourier_coefficient,
};
use jfourier::expansions::{
    erf_bessel_alternating, erf_bessel_general, erf_bessel_sum, erf_maclaurin, fresnel_bessel,
};
use jfourier::gegenbauer::{
    gegenbauer_integral_arc, gegenbauer_integral_vilenkin, gegenbauer_recurrence, ArcVariant,
};
use jfourier::neumann::{
    kelvin_ber_bei_eval, lommel_u_eval, lommel_v_eval, neumann_direct, neumann_integral_eval,
    neumann_integral_halfrange_eval, sequence_from_spec, CoefficientSequence, KelvinMethod,
    LommelMethod, NeumannKernelParams, DIRECT_TOL,
};
use jfourier::quadrature::fresnel_f;
use jfourier::{decompose_order, Diagnostics, Error, Evaluation, C64};

use crate::error::CliError;
use crate::grid::RawPoint;
use crate::report::ParamValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    BesselJ,
    BesselI,
    Gegenbauer,
    Neumann,
    LommelU,
    LommelV,
    Kelvin,
    Erf,
    Fresnel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Real,
    Complex,
    Int,
    Text,
}

struct ParamSpec {
    name: &'static str,
    kind: Kind,
    required: bool,
}

const fn req(name: &'static str, kind: Kind) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        required: true,
    }
}

const fn opt(name: &'static str, kind: Kind) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        required: false,
    }
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::BesselJ => "bessel-j",
            Function::BesselI => "bessel-i",
            Function::Gegenbauer => "gegenbauer",
            Function::Neumann => "neumann",
            Function::LommelU => "lommel-u",
            Function::LommelV => "lommel-v",
            Function::Kelvin => "kelvin",
            Function::Erf => "erf",
            Function::Fresnel => "fresnel",
        }
    }

    /// Available methods; the first one is the reference (oracle) method.
    pub fn methods(self) -> &'static [&'static str] {
        match self {
            Function::BesselJ => &["series", "integral", "classical", "halforder", "fourier"],
            Function::BesselI => &["series", "integral", "classical"],
            Function::Gegenbauer => &["recurrence", "vilenkin", "outer", "inner"],
            Function::Neumann => &["direct", "integral", "halfrange"],
            Function::LommelU | Function::LommelV => &["series", "integral"],
            Function::Kelvin => &["connection", "neumann", "integral", "classical"],
            Function::Erf => &["maclaurin", "general", "sum", "alternating"],
            Function::Fresnel => &["quadrature", "bessel"],
        }
    }

    pub fn oracle(self) -> &'static str {
        self.methods()[0]
    }

    /// The method the benchmark compares against the oracle by default.
    pub fn default_contender(self) -> &'static str {
        match self {
            Function::Gegenbauer => "vilenkin",
            Function::Erf => "sum",
            Function::Fresnel => "bessel",
            f => f
                .methods()
                .iter()
                .find(|m| **m == "integral")
                .copied()
                .unwrap_or(f.oracle()),
        }
    }

    fn params(self) -> &'static [ParamSpec] {
        use Kind::*;
        const NU_Z: &[ParamSpec] = &[req("nu", Complex), req("z", Complex)];
        const GEGENBAUER: &[ParamSpec] = &[req("ell", Int), req("nu", Complex), req("u", Real)];
        const NEUMANN: &[ParamSpec] = &[req("seq", Text), opt("nu", Complex), opt("z", Complex)];
        const LOMMEL: &[ParamSpec] = &[req("nu", Complex), req("w", Complex), req("z", Complex)];
        const KELVIN: &[ParamSpec] = &[req("nu", Complex), req("x", Real)];
        const ERF: &[ParamSpec] = &[req("w", Complex), opt("phi", Real)];
        const FRESNEL: &[ParamSpec] = &[req("a", Real), req("w", Complex)];
        match self {
            Function::BesselJ | Function::BesselI => NU_Z,
            Function::Gegenbauer => GEGENBAUER,
            Function::Neumann => NEUMANN,
            Function::LommelU | Function::LommelV => LOMMEL,
            Function::Kelvin => KELVIN,
            Function::Erf => ERF,
            Function::Fresnel => FRESNEL,
        }
    }

    /// Checks a method name and returns its canonical static form.
    pub fn method(self, name: &str) -> Result<&'static str, CliError> {
        self.methods()
            .iter()
            .find(|m| **m == name)
            .copied()
            .ok_or_else(|| {
                CliError::usage(format!(
                    "unknown method '{name}' for {}; available: {}",
                    self.name(),
                    self.methods().join(", ")
                ))
            })
    }

    /// Types a raw parameter tuple. Unknown, missing or malformed parameters
    /// are usage errors; a coefficient sequence the library rejects is a
    /// numeric one.
    pub fn typed_point(self, raw: &RawPoint) -> Result<Point, CliError> {
        let specs = self.params();
        for name in raw.keys() {
            if !specs.iter().any(|s| s.name == name) {
                return Err(CliError::usage(format!(
                    "{} does not take --{name}",
                    self.name()
                )));
            }
        }
        let mut point = Point::default();
        if self == Function::Neumann {
            let spec = raw
                .get("seq")
                .ok_or_else(|| CliError::usage("neumann needs --seq"))?;
            let named = sequence_from_spec(spec)
                .map_err(|e| CliError::Numeric(format!("sequence '{spec}': {e}")))?;
            if let Some((nu, z)) = named.natural {
                point.values.push(("nu".into(), ParamValue::Complex(nu)));
                point.values.push(("z".into(), ParamValue::Complex(z)));
            }
            point.sequence = Some(named.sequence);
        }
        for spec in specs {
            match raw.get(spec.name) {
                Some(text) => {
                    let v = parse_value(spec.kind, text)
                        .map_err(|e| CliError::usage(format!("--{} {text}: {e}", spec.name)))?;
                    point.set(spec.name, v);
                }
                None if spec.required
                    || (self == Function::Neumann && point.get(spec.name).is_none()) =>
                {
                    return Err(CliError::usage(format!(
                        "{} needs --{}",
                        self.name(),
                        spec.name
                    )));
                }
                None => {}
            }
        }
        point.values.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(point)
    }

    /// Evaluates one point. A quadrature that reports non-convergence is
    /// turned into an error here, so every returned value met its tolerance.
    pub fn evaluate(self, method: &str, p: &Point) -> Result<Evaluation, Error> {
        let e = self.evaluate_unchecked(method, p)?;
        if let Diagnostics::Quadrature {
            converged: false,
            nodes_used,
            err_estimate,
        } = e.diagnostics
        {
            return Err(Error::NotConverged {
                what: "quadrature",
                iterations: nodes_used,
                estimate: format!("{} (error estimate {err_estimate:e})", e.value),
            });
        }
        Ok(e)
    }

    fn evaluate_unchecked(self, method: &str, p: &Point) -> Result<Evaluation, Error> {
        let closed = |value: C64| Evaluation {
            value,
            diagnostics: Diagnostics::Closed,
        };
        match (self, method) {
            (Function::BesselJ, "series") => {
                bessel_j_series_eval(p.c("nu"), p.c("z")).map(Into::into)
            }
            (Function::BesselJ, "integral") => {
                bessel_j_integral_eval(p.c("nu"), p.c("z")).map(Into::into)
            }
            (Function::BesselJ, "classical") => {
                let n = integer_order(p.c("nu"))?;
                bessel_j_classical_eval(n, p.c("z")).map(Into::into)
            }
            (Function::BesselJ, "halforder") => {
                let nu = p.c("nu");
                let n = integer_order(nu - 0.5)
                    .ok()
                    .filter(|n| *n >= 0)
                    .ok_or_else(|| {
                        Error::Domain(format!("half-order route needs nu = n + 1/2, got {nu}"))
                    })?;
                bessel_j_half_order_eval(n as u32, p.c("z")).map(Into::into)
            }
            (Function::BesselJ, "fourier") => frakj_fourier_coefficient(p.c("nu"), p.c("z"), 0),
            (Function::BesselI, "series") => bessel_i_series(p.c("nu"), p.c("z")).map(closed),
            (Function::BesselI, "integral") => bessel_i_integral_eval(p.c("nu"), p.c("z")),
            (Function::BesselI, "classical") => {
                let m = integer_order(p.c("nu"))?;
                bessel_i_classical(m, p.c("z")).map(closed)
            }
            (Function::Gegenbauer, m) => {
                let ell = p.int("ell");
                let ell = u32::try_from(ell)
                    .map_err(|_| Error::Domain(format!("degree {ell} must be >= 0")))?;
                let (nu, u) = (p.c("nu"), p.r("u"));
                match m {
                    "recurrence" => Ok(closed(gegenbauer_recurrence(
                        ell,
                        nu,
                        C64::new(u.cos(), 0.0),
                    ))),
                    "vilenkin" => gegenbauer_integral_vilenkin(ell, nu, u).map(closed),
                    "outer" => gegenbauer_integral_arc(ell, nu, u, ArcVariant::Outer).map(closed),
                    _ => gegenbauer_integral_arc(ell, nu, u, ArcVariant::Inner).map(closed),
                }
            }
            (Function::Neumann, m) => {
                let seq: &dyn CoefficientSequence =
                    p.sequence.as_deref().expect("typed neumann point");
                let params = NeumannKernelParams::new(p.c("nu"), p.c("z"))?;
                match m {
                    "direct" => neumann_direct(&params, seq, DIRECT_TOL).map(|e| Evaluation {
                        value: e.value,
                        diagnostics: e.diagnostics(),
                    }),
                    "integral" => neumann_integral_eval(&params, seq),
                    _ => neumann_integral_halfrange_eval(&params, seq),
                }
            }
            (Function::LommelU | Function::LommelV, m) => {
                let method = if m == "series" {
                    LommelMethod::Series
                } else {
                    LommelMethod::Integral
                };
                let f = if self == Function::LommelU {
                    lommel_u_eval
                } else {
                    lommel_v_eval
                };
                f(p.c("nu"), p.c("w"), p.c("z"), method)
            }
            (Function::Kelvin, m) => {
                let method = match m {
                    "connection" => KelvinMethod::Connection,
                    "neumann" => KelvinMethod::NeumannSeries,
                    "integral" => KelvinMethod::Integral,
                    _ => KelvinMethod::ClassicalInteger,
                };
                kelvin_ber_bei_eval(p.c("nu"), p.r("x"), method)
            }
            (Function::Erf, m) => {
                let phi = p.get("phi").map(|_| p.r("phi")).unwrap_or(FRAC_PI_2);
                let w = p.c("w");
                let expansion = |r: jfourier::expansions::ExpansionResult| Evaluation {
                    value: r.value,
                    diagnostics: r.diagnostics(),
                };
                match m {
                    "maclaurin" => erf_maclaurin(w * phi.sin()).map(closed),
                    "general" => erf_bessel_general(w, phi).map(expansion),
                    "sum" => erf_bessel_sum(w * phi.sin()).map(expansion),
                    _ => erf_bessel_alternating(w * phi.sin()).map(expansion),
                }
            }
            (Function::Fresnel, "quadrature") => {
                let q = fresnel_f(2.0, p.c("w") * p.r("a"))?;
                Ok(Evaluation {
                    value: q.value,
                    diagnostics: Diagnostics::Quadrature {
                        nodes_used: q.nodes_used,
                        err_estimate: q.err_estimate,
                        converged: q.converged,
                    },
                })
            }
            (Function::Fresnel, _) => fresnel_bessel(p.r("a"), p.c("w")).map(|r| Evaluation {
                value: r.value,
                diagnostics: r.diagnostics(),
            }),
            (f, m) => Err(Error::Unsupported(format!("method {m} of {}", f.name()))),
        }
    }
}

fn integer_order(nu: C64) -> Result<i64, Error> {
    decompose_order(nu)?
        .as_integer()
        .ok_or_else(|| Error::Domain(format!("this route needs an integer order, got {nu}")))
}

/// Parses `re,im` or `re` as a complex number.
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{s}' is not a number"))
    };
    match text.split_once(',') {
        Some((re, im)) => Ok(C64::new(parse(re)?, parse(im)?)),
        None => Ok(C64::new(parse(text)?, 0.0)),
    }
}

fn parse_value(kind: Kind, text: &str) -> Result<ParamValue, String> {
    match kind {
        Kind::Complex => parse_complex(text).map(ParamValue::Complex),
        Kind::Real => text
            .trim()
            .parse::<f64>()
            .map(ParamValue::Real)
            .map_err(|_| format!("'{text}' is not a real number")),
        Kind::Int => text
            .trim()
            .parse::<i64>()
            .map(ParamValue::Int)
            .map_err(|_| format!("'{text}' is not an integer")),
        Kind::Text => Ok(ParamValue::Text(text.to_string())),
    }
}

/// A typed parameter tuple, sorted by name.
#[derive(Debug, Clone, Default)]
pub struct Point {
    pub values: Vec<(String, ParamValue)>,
    pub sequence: Option<Arc<dyn CoefficientSequence>>,
}

impl Point {
    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn set(&mut self, name: &str, value: ParamValue) {
        match self.values.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value,
            None => self.values.push((name.to_string(), value)),
        }
    }

    fn c(&self, name: &str) -> C64 {
        match self.get(name) {
            Some(ParamValue::Complex(c)) => *c,
            Some(ParamValue::Real(r)) => C64::new(*r, 0.0),
            other => panic!("parameter {name} is not numeric: {other:?}"),
        }
    }

    fn r(&self, name: &str) -> f64 {
        match self.get(name) {
            Some(ParamValue::Real(r)) => *r,
            other => panic!("parameter {name} is not real: {other:?}"),
        }
    }

    fn int(&self, name: &str) -> i64 {
        match self.get(name) {
            Some(ParamValue::Int(n)) => *n,
            other => panic!("parameter {name} is not an integer: {other:?}"),
        }
    }
}
