//! `q`-expansions of the classical level-1 objects — divisor sums, the
//! discriminant product, the `j`-function — plus real evaluation of `j` on
//! the unit arc of the fundamental domain boundary.
//!
//! The arc is parametrized by `theta in [pi/2, 2pi/3]` with `tau = e^{i
//! theta}`. Points are reported through the equivalent representative with
//! `Re(tau) in [0, 1/2]` (the reflection `tau -> -1/tau` fixes `j`), so
//! `tau_re = -cos(theta)` and `tau_im = sin(theta)`. On this arc `|q| <=
//! e^{-pi sqrt(3)} ~ 0.00433`, so the truncated series converges fast and a
//! coefficient-growth majorant turns the discarded tail into an explicit
//! bound.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Zero};

use crate::error::Error;
use crate::qseries::{product_expansion, LaurentQSeries};

/// Exponent bound used in the tail majorant `|c(n)| <= e^{4 pi sqrt(n)}`
/// for the `j`-coefficients, valid for `n >= 1` (checked against the
/// computed coefficients for `n <= 200` in the test suite).
const MAJORANT_RATE: f64 = 4.0 * std::f64::consts::PI;

/// Default series truncation for arc evaluation; leaves the tail bound
/// far below any tolerance in use.
pub const DEFAULT_ARC_TRUNC: i64 = 40;

/// `sigma_k(n) = sum of d^k over divisors d of n`.
pub fn sigma(k: u32, n: u64) -> Result<BigInt, Error> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(k);
            let other = n / d;
            if other != d {
                acc += BigInt::from(other).pow(k);
            }
        }
        d += 1;
    }
    Ok(acc)
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`, exact through `q^trunc`.
fn eisenstein_e4(trunc: i64) -> LaurentQSeries {
    let mut coeffs = vec![BigRational::zero(); (trunc.max(0) + 1) as usize];
    coeffs[0] = BigRational::one();
    for n in 1..=trunc.max(0) as u64 {
        coeffs[n as usize] =
            BigRational::from_integer(sigma(3, n).expect("n >= 1") * BigInt::from(240));
    }
    LaurentQSeries::new(0, coeffs)
}

/// `Delta = q prod (1 - q^n)^24`, exact through `q^trunc`.
fn delta(trunc: i64) -> LaurentQSeries {
    product_expansion(|_| 24, trunc - 1).shifted(1)
}

/// `q`-expansion of the `j`-function, `E4^3 / Delta`, exact through
/// `q^trunc`. Accepts `trunc >= -1`.
pub fn j_expansion(trunc: i64) -> LaurentQSeries {
    assert!(trunc >= -1, "j has a simple pole: need trunc >= -1");
    // headroom so the division lands exactly on the requested truncation
    let m = trunc + 2;
    let numerator = eisenstein_e4(m).pow(3);
    let delta_inv = delta(m).invert().expect("Delta has leading coefficient q");
    &numerator * &delta_inv
}

/// `1 - 24 sum sigma_13(n) q^n`, exact through `q^trunc`.
pub fn e14_numerator(trunc: i64) -> LaurentQSeries {
    assert!(trunc >= 0);
    let mut coeffs = vec![BigRational::zero(); (trunc + 1) as usize];
    coeffs[0] = BigRational::one();
    for n in 1..=trunc as u64 {
        coeffs[n as usize] =
            BigRational::from_integer(sigma(13, n).expect("n >= 1") * BigInt::from(-24));
    }
    LaurentQSeries::new(0, coeffs)
}

/// A point `tau = e^{i theta}` on the unit arc, `theta in [pi/2, 2pi/3]`.
///
/// `|tau| = 1` holds by construction; the stored real part is that of the
/// equivalent point with `Re(tau) in [0, 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcPoint {
    theta: f64,
    tau_re: f64,
    tau_im: f64,
}

impl ArcPoint {
    pub fn new(theta: f64) -> Result<Self, Error> {
        let lo = std::f64::consts::FRAC_PI_2;
        let hi = 2.0 * std::f64::consts::FRAC_PI_3;
        // admit endpoint representations that differ by float rounding
        if !(lo - 1e-9..=hi + 1e-9).contains(&theta) {
            return Err(Error::ThetaOutOfRange(theta));
        }
        let theta = theta.clamp(lo, hi);
        Ok(Self {
            theta,
            tau_re: (-theta.cos()).clamp(0.0, 0.5),
            tau_im: theta.sin(),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `Re(tau)` of the representative on the arc, in `[0, 1/2]`.
    pub fn tau_re(&self) -> f64 {
        self.tau_re
    }

    /// `Im(tau)`, in `[sqrt(3)/2, 1]`.
    pub fn tau_im(&self) -> f64 {
        self.tau_im
    }

    /// `count >= 2` evenly spaced points covering the whole arc, endpoints
    /// included.
    pub fn grid(count: usize) -> Vec<ArcPoint> {
        assert!(count >= 2);
        let lo = std::f64::consts::FRAC_PI_2;
        let hi = 2.0 * std::f64::consts::FRAC_PI_3;
        (0..count)
            .map(|i| {
                let t = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                ArcPoint::new(t).expect("grid point on the arc")
            })
            .collect()
    }
}

/// Result of evaluating the truncated `j`-series at an arc point.
#[derive(Clone, Copy, Debug)]
pub struct ArcEval {
    /// Real part of the truncated evaluation.
    pub value: f64,
    /// Magnitude of the imaginary part (must be noise: `j` is real on the arc).
    pub im_abs: f64,
    /// Majorant bound on the discarded series tail.
    pub tail_bound: f64,
}

/// Evaluator for `j` on the arc: the exact expansion rounded once to `f64`,
/// reusable across many points.
#[derive(Clone, Debug)]
pub struct JArcEvaluator {
    /// Coefficients of `q^0 ... q^trunc` (the `q^{-1}` term is implicit).
    coeffs: Vec<f64>,
    trunc: i64,
}

impl JArcEvaluator {
    pub fn new(trunc: i64) -> Self {
        assert!(trunc >= 1);
        let j = j_expansion(trunc);
        let coeffs = (0..=trunc)
            .map(|n| {
                num::ToPrimitive::to_f64(&j.coeff(n).expect("within truncation"))
                    .expect("j coefficient fits f64")
            })
            .collect();
        Self { coeffs, trunc }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Evaluate at one arc point; reports the value together with the
    /// imaginary residual and the tail bound.
    pub fn eval(&self, p: &ArcPoint) -> ArcEval {
        let q = Complex64::from_polar(
            (-2.0 * std::f64::consts::PI * p.tau_im).exp(),
            2.0 * std::f64::consts::PI * p.tau_re,
        );
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc += q.inv();
        ArcEval {
            value: acc.re,
            im_abs: acc.im.abs(),
            tail_bound: self.tail_bound(q.norm()),
        }
    }

    /// `sum_{n > trunc} e^{4 pi sqrt(n)} |q|^n`, summed by geometric
    /// domination of the term ratio.
    fn tail_bound(&self, q_abs: f64) -> f64 {
        let n1 = (self.trunc + 1) as f64;
        let ratio = (2.0 * std::f64::consts::PI / n1.sqrt()).exp() * q_abs;
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let log_first = MAJORANT_RATE * n1.sqrt() + n1 * q_abs.ln();
        1.000001 * log_first.exp() / (1.0 - ratio)
    }
}

/// Evaluate `j` at an arc point with the series truncated at `q^trunc`.
///
/// Errors with [`Error::ArcInconsistent`] when the imaginary residual or
/// the tail bound exceeds `tol` — both signal a truncation that is too
/// short for the requested tolerance.
pub fn j_on_arc(p: &ArcPoint, trunc: i64, tol: f64) -> Result<f64, Error> {
    let eval = JArcEvaluator::new(trunc).eval(p);
    check_arc_eval(&eval, tol)
}

/// Shared consistency gate for arc evaluations.
pub fn check_arc_eval(eval: &ArcEval, tol: f64) -> Result<f64, Error> {
    if eval.im_abs > tol || eval.tail_bound > tol {
        return Err(Error::ArcInconsistent {
            im: eval.im_abs,
            tail: eval.tail_bound,
            tol,
        });
    }
    Ok(eval.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(3, 1).unwrap(), BigInt::from(1));
        assert_eq!(sigma(3, 2).unwrap(), BigInt::from(9)); // 1 + 8
        assert_eq!(sigma(13, 2).unwrap(), BigInt::from(8193)); // 1 + 2^13
        assert_eq!(sigma(1, 6).unwrap(), BigInt::from(12));
        assert!(sigma(3, 0).is_err());
    }

    #[test]
    fn j_leading_coefficients() {
        let j = j_expansion(2);
        assert_eq!(j.lead(), -1);
        assert_eq!(j.coeff(-1), Some(int(1)));
        assert_eq!(j.coeff(0), Some(int(744)));
        assert_eq!(j.coeff(1), Some(int(196884)));
        assert_eq!(j.coeff(2), Some(int(21493760)));
    }

    #[test]
    fn j_truncated_below_constant_term() {
        assert_eq!(j_expansion(-1), LaurentQSeries::monomial(int(1), -1, -1));
    }

    /// Independent route to the same function: `j = 1728 + E6^2 / Delta`
    /// with `E6 = 1 - 504 sum sigma_5(n) q^n`. Any slip in `E4`, the
    /// product, or the inversion would break the agreement.
    #[test]
    fn j_agrees_with_e6_route() {
        let trunc = 30i64;
        let m = trunc + 2;
        let mut coeffs = vec![BigRational::zero(); (m + 1) as usize];
        coeffs[0] = BigRational::one();
        for n in 1..=m as u64 {
            coeffs[n as usize] =
                BigRational::from_integer(sigma(5, n).unwrap() * BigInt::from(-504));
        }
        let e6 = LaurentQSeries::new(0, coeffs);
        let delta_inv = delta(m).invert().unwrap();
        let alt = (&e6.pow(2) * &delta_inv).plus_scalar(&int(1728));
        let j = j_expansion(trunc);
        for n in -1..=trunc {
            assert_eq!(j.coeff(n), alt.coeff(n), "coefficient of q^{n} differs");
        }
    }

    #[test]
    fn j_coefficients_integral_and_stable_under_truncation() {
        let j = j_expansion(60);
        for (exp, c) in j.terms() {
            assert!(c.denom().is_one(), "coefficient of q^{exp} not integral");
        }
        let j5 = j_expansion(65);
        for n in -1..=60 {
            assert_eq!(j.coeff(n), j5.coeff(n));
        }
    }

    #[test]
    fn majorant_envelope_holds_through_200() {
        let j = j_expansion(200);
        for n in 1..=200i64 {
            let c = j.coeff(n).unwrap().to_f64().unwrap().abs();
            let envelope = (MAJORANT_RATE * (n as f64).sqrt()).exp();
            assert!(
                c <= envelope,
                "majorant fails at n = {n}: {c:e} > {envelope:e}"
            );
        }
    }

    #[test]
    fn e14_leading_coefficients() {
        let e = e14_numerator(2);
        assert_eq!(e.coeff(0), Some(int(1)));
        assert_eq!(e.coeff(1), Some(int(-24)));
        assert_eq!(e.coeff(2), Some(int(-24 * 8193)));
    }

    #[test]
    fn arc_point_geometry() {
        let i_pt = ArcPoint::new(std::f64::consts::FRAC_PI_2).unwrap();
        assert_eq!(i_pt.tau_re(), 0.0);
        assert!((i_pt.tau_im() - 1.0).abs() < 1e-15);
        let rho = ArcPoint::new(2.0 * std::f64::consts::FRAC_PI_3).unwrap();
        assert!((rho.tau_re() - 0.5).abs() < 1e-15);
        assert!((rho.tau_im() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(ArcPoint::new(1.0).is_err());
        assert!(ArcPoint::new(2.2).is_err());
    }

    #[test]
    fn j_classical_values_on_arc() {
        // confirmed against a much higher truncation before freezing
        let at =
            |theta: f64, trunc: i64| j_on_arc(&ArcPoint::new(theta).unwrap(), trunc, 1e-9).unwrap();
        for trunc in [DEFAULT_ARC_TRUNC, 80] {
            assert!((at(std::f64::consts::FRAC_PI_2, trunc) - 1728.0).abs() < 1e-9);
            assert!(at(2.0 * std::f64::consts::FRAC_PI_3, trunc).abs() < 1e-9);
        }
    }

    #[test]
    fn j_real_on_arc_grid() {
        let eval = JArcEvaluator::new(DEFAULT_ARC_TRUNC);
        for p in ArcPoint::grid(100) {
            let e = eval.eval(&p);
            assert!(
                e.im_abs < 1e-9,
                "imaginary residual {} at theta {}",
                e.im_abs,
                p.theta()
            );
            assert!(e.tail_bound < 1e-12);
        }
    }

    #[test]
    fn j_strictly_decreasing_on_arc() {
        let eval = JArcEvaluator::new(DEFAULT_ARC_TRUNC);
        let values: Vec<f64> = ArcPoint::grid(1000)
            .iter()
            .map(|p| eval.eval(p).value)
            .collect();
        for w in values.windows(2) {
            assert!(
                w[0] > w[1],
                "j not strictly decreasing: {} <= {}",
                w[0],
                w[1]
            );
        }
    }

    #[test]
    fn short_truncation_is_rejected() {
        // trunc = 1 leaves a visible tail at 1e-12 tolerance
        let p = ArcPoint::new(1.8).unwrap();
        assert!(matches!(
            j_on_arc(&p, 1, 1e-12),
            Err(Error::ArcInconsistent { .. })
        ));
    }
}
