//! Certification of the smallness hypothesis
//! `S = sum_{n>=1} |a(n)| e^{-pi n sqrt(3)} < (2 - M) / (2 + M)`.
//!
//! Every quantity that feeds the comparison is rounded in the safe
//! direction: the partial sum and tail bound never round down, the
//! threshold never rounds up. A `true` verdict is therefore conservative —
//! the exact `S` is at most `s_upper` and the exact threshold at least
//! `threshold`.
//!
//! For the stream `a(n) = p(n) - p(n-1)` the tail past the listed terms is
//! bounded through `|a(n)| < p(n)` and the explicit partition bound
//! `p(n) < (5.5/n) e^{pi sqrt(2n/3)}`: beyond `N` the term ratio is at most
//! `r = e^{pi sqrt(2/3) / (2 sqrt(N+1))} e^{-pi sqrt(3)} < 1`, so the tail
//! is dominated by the geometric series `term(N+1) / (1 - r)`.

use crate::error::Error;
use crate::partitions::{kane_bound, CoeffStream, StreamSource};
use crate::rounding::{
    add_up, div_up, down, exp_up, mul_down, mul_up, pi_hi, pi_sqrt3_down, rational_abs_up,
    sqrt_down, sqrt_up,
};

/// Default conservative constant: the arc bound is `M ~ 1.1176...`, known
/// to four decimals; rounding it up only shrinks the threshold.
pub const DEFAULT_M_UPPER: f64 = 1.12;

/// Outcome of the hypothesis check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypothesisReport {
    /// Upward-rounded `sum_{n<=N} |a(n)| e^{-pi n sqrt(3)}`.
    pub partial_sum: f64,
    /// Rigorous upper bound on the sum past the listed terms.
    pub tail_bound: f64,
    /// `partial_sum + tail_bound`, rounded up.
    pub s_upper: f64,
    /// Downward-rounded `(2 - M_upper) / (2 + M_upper)`.
    pub threshold: f64,
    pub m_upper: f64,
    pub terms_used: usize,
    /// `s_upper < threshold`.
    pub verdict: bool,
}

/// `(2 - M_upper) / (2 + M_upper)`, rounded downward.
pub fn threshold(m_upper: f64) -> Result<f64, Error> {
    if !(m_upper > 0.0 && m_upper < 2.0) {
        return Err(Error::VacuousThreshold(m_upper));
    }
    Ok(down(down(2.0 - m_upper) / add_up(2.0, m_upper)))
}

/// Check the hypothesis using the first `n_terms` listed coefficients.
///
/// Witten streams bound the tail through the partition bound; explicit
/// streams are finite, so their tail is exactly zero and all listed
/// coefficients are summed regardless of `n_terms`.
pub fn check_hypothesis(
    stream: &CoeffStream,
    n_terms: usize,
    m_upper: f64,
) -> Result<HypothesisReport, Error> {
    let threshold = threshold(m_upper)?;
    let (used, tail_bound) = match stream.source() {
        StreamSource::Witten => {
            if n_terms < 1 {
                return Err(Error::NonPositive(n_terms as i64));
            }
            if stream.len() < n_terms {
                return Err(Error::InsufficientCoefficients {
                    needed: n_terms,
                    available: stream.len(),
                });
            }
            (n_terms, witten_tail_bound(n_terms)?)
        }
        StreamSource::Explicit => (stream.len(), 0.0),
    };

    let damping = pi_sqrt3_down();
    let mut partial_sum = 0.0f64;
    for n in 1..=used {
        let a = stream.coeff(n).expect("within listed range");
        if num::Zero::is_zero(a) {
            continue;
        }
        let term = mul_up(rational_abs_up(a), exp_up(-mul_down(n as f64, damping)));
        partial_sum = add_up(partial_sum, term);
    }

    let s_upper = add_up(partial_sum, tail_bound);
    Ok(HypothesisReport {
        partial_sum,
        tail_bound,
        s_upper,
        threshold,
        m_upper,
        terms_used: used,
        verdict: s_upper < threshold,
    })
}

/// Upper bound on `sum_{n>N} p(n) e^{-pi n sqrt(3)}` by geometric
/// domination of the Kane-bounded terms.
fn witten_tail_bound(n: usize) -> Result<f64, Error> {
    let n1 = (n + 1) as f64;
    let growth = div_up(
        mul_up(pi_hi(), sqrt_up(div_up(2.0, 3.0))),
        mul_down(2.0, sqrt_down(n1)),
    );
    let ratio = mul_up(exp_up(growth), exp_up(-pi_sqrt3_down()));
    // ratio < 1 for every n >= 1; the first factor is below e at n = 1
    assert!(ratio < 1.0, "term-ratio bound degenerate at N = {n}");
    let first = mul_up(kane_bound(n + 1)?, exp_up(-mul_down(n1, pi_sqrt3_down())));
    Ok(mul_up(first, div_up(1.0, down(1.0 - ratio))))
}
