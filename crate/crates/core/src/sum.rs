use crate::{Error, Result, C64};

/// A truncated power or Bessel-coefficient series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvaluation {
    pub value: C64,
    /// Number of terms summed.
    pub terms: usize,
    /// Magnitude of the last term that was added.
    pub last_term: f64,
    pub converged: bool,
}

impl SeriesEvaluation {
    pub(crate) fn into_result(self, what: &'static str) -> Result<SeriesEvaluation> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                what,
                iterations: self.terms,
                estimate: self.value.to_string(),
            })
        }
    }
}

/// Stopping rule: `consecutive` successive terms each at most
/// `rel_tol · |partial sum|`, checked only from index `min_terms` on.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Truncation {
    pub rel_tol: f64,
    pub consecutive: usize,
    pub min_terms: usize,
    pub max_terms: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            rel_tol: 1e-16,
            consecutive: 3,
            min_terms: 0,
            max_terms: 10_000,
        }
    }
}

impl Truncation {
    pub fn min_terms(mut self, n: usize) -> Self {
        self.min_terms = n;
        self
    }

    pub fn rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }
}

/// Sums `term(0) + term(1) + …` under `rule`. Returns an unconverged
/// evaluation (not an error) when `max_terms` is exhausted.
pub(crate) fn sum_series(
    rule: Truncation,
    mut term: impl FnMut(usize) -> Result<C64>,
) -> Result<SeriesEvaluation> {
    let mut partial = C64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut last = 0.0;
    for n in 0..rule.max_terms {
        let t = term(n)?;
        partial += t;
        last = t.norm();
        abs_sum += last;
        let scale = if partial.norm() > 0.0 {
            partial.norm()
        } else {
            abs_sum
        };
        if last <= rule.rel_tol * scale {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if n + 1 >= rule.min_terms && small_run >= rule.consecutive {
            return Ok(SeriesEvaluation {
                value: partial,
                terms: n + 1,
                last_term: last,
                converged: true,
            });
        }
    }
    Ok(SeriesEvaluation {
        value: partial,
        terms: rule.max_terms,
        last_term: last,
        converged: false,
    })
}
