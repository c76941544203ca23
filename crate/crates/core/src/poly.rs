//! Dense univariate polynomials over exact big rationals.
//!
//! Used for Faber polynomials and the extremal polynomials built from them:
//! exact arithmetic for construction and Sturm sequences, exact evaluation
//! at rational points for sign tests, and a compensated double-precision
//! evaluator for arc sampling where the coefficients dwarf the values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::qseries::LaurentQSeries;

/// Polynomial `sum coeffs[i] * y^i`; trailing coefficient nonzero, empty
/// for the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The monomial `c * y^d`.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficients in ascending degree order.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c;
        }
        acc
    }

    /// Sign of `p(y)`: -1, 0, or 1.
    pub fn sign_at(&self, y: &BigRational) -> i32 {
        let v = self.eval(y);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Substitute a Laurent series for `y` (Horner over the series ring).
    ///
    /// For a degree-`d` polynomial and a series with lead `-1` exact through
    /// `q^N`, the result is exact through `q^{N-d+1}`.
    pub fn eval_series(&self, s: &LaurentQSeries) -> LaurentQSeries {
        match self.coeffs.len() {
            0 => return LaurentQSeries::zero(s.trunc()),
            1 => return LaurentQSeries::constant(self.coeffs[0].clone(), s.trunc()),
            _ => {}
        }
        let mut acc = s.scaled(&self.coeffs[self.coeffs.len() - 1]);
        acc = acc.plus_scalar(&self.coeffs[self.coeffs.len() - 2]);
        for c in self.coeffs.iter().rev().skip(2) {
            acc = &acc * s;
            acc = acc.plus_scalar(c);
        }
        acc
    }

    /// Compensated Horner evaluation in double precision.
    ///
    /// Error-free transformations (two-product via FMA, two-sum) carry the
    /// rounding errors in a parallel accumulator, so the result is as
    /// accurate as Horner evaluated in roughly twice the working precision.
    /// The coefficients themselves are rounded to nearest once.
    pub fn eval_f64(&self, y: f64) -> f64 {
        let cs: Vec<f64> = self.coeffs.iter().map(rational_to_f64).collect();
        eval_f64_compensated(&cs, y)
    }

    /// Coefficients rounded to `f64`, ascending degree; for repeated
    /// compensated evaluation on a grid.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational_to_f64).collect()
    }

    /// `sum |c_i| |y|^i`, the natural scale against which a residual
    /// `|p(y)|` should be compared at this evaluation point.
    pub fn magnitude_at(&self, y: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * y.abs() + rational_to_f64(c).abs();
        }
        acc
    }

    /// Euclidean remainder of `self` by `rhs` over the rationals.
    pub fn rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let d = rhs.coeffs.len() - 1;
        let lead = rhs.coeffs.last().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let q = r.last().unwrap() / lead;
            let shift = r.len() - 1 - d;
            if !q.is_zero() {
                for (i, c) in rhs.coeffs.iter().enumerate() {
                    r[shift + i] -= &q * c;
                }
            }
            r.pop();
        }
        Self::new(r)
    }

    /// Clear denominators and divide by the integer content; the result has
    /// coprime integer coefficients and the same roots and sign pattern
    /// (positive rational multiplier).
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let denom_lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num::integer::lcm(acc, c.denom().clone())
        });
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num::integer::gcd(acc, c.clone()));
        Self {
            coeffs: ints
                .into_iter()
                .map(|c| BigRational::from_integer(c / &content))
                .collect(),
        }
    }
}

fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().expect("coefficient does not fit the f64 range")
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    let e = (a - (s - z)) + (b - z);
    (s, e)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Compensated Horner on `f64` coefficients in ascending degree order.
pub(crate) fn eval_f64_compensated(coeffs: &[f64], y: f64) -> f64 {
    let Some((&last, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let mut s = last;
    let mut comp = 0.0f64;
    for &c in rest.iter().rev() {
        let (p, pe) = two_prod(s, y);
        let (t, se) = two_sum(p, c);
        s = t;
        comp = comp.mul_add(y, pe + se);
    }
    s + comp
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let mut c = BigRational::zero();
                if let Some(a) = self.coeffs.get(i) {
                    c += a;
                }
                if let Some(b) = rhs.coeffs.get(i) {
                    c += b;
                }
                c
            })
            .collect();
        RatPoly::new(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut acc = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        RatPoly::new(acc)
    }
}

impl fmt::Display for RatPoly {
    /// Coefficients degree-descending, space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for c in self.coeffs.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic_and_degree() {
        let p = RatPoly::from_integers(&[-744, 1]); // y - 744
        let q = RatPoly::from_integers(&[1]);
        assert_eq!(p.degree(), Some(1));
        assert!(p.is_monic());
        let sum = &p + &q;
        assert_eq!(sum, RatPoly::from_integers(&[-743, 1]));
        let prod = &p * &p;
        assert_eq!(prod, RatPoly::from_integers(&[553536, -1488, 1]));
    }

    #[test]
    fn eval_exact() {
        let p = RatPoly::from_integers(&[159769, -1488, 1]);
        assert_eq!(p.eval(&rat(0)), rat(159769));
        assert_eq!(p.eval(&rat(1)), rat(159769 - 1488 + 1));
        assert_eq!(p.sign_at(&rat(0)), 1);
        assert_eq!(p.sign_at(&rat(744)), -1);
    }

    #[test]
    fn rem_matches_hand_division() {
        // (y^2 - 1) = (y + 1)(y - 1) + 0
        let p = RatPoly::from_integers(&[-1, 0, 1]);
        let d = RatPoly::from_integers(&[1, 1]);
        assert!(p.rem(&d).is_zero());
        // y^2 rem (y - 2) = 4
        let p = RatPoly::from_integers(&[0, 0, 1]);
        let d = RatPoly::from_integers(&[-2, 1]);
        assert_eq!(p.rem(&d), RatPoly::from_integers(&[4]));
    }

    #[test]
    fn primitive_integer_form() {
        let p = RatPoly::new(vec![
            BigRational::new(3.into(), 2.into()),
            BigRational::new(9.into(), 4.into()),
        ]);
        // (3/2, 9/4) -> (6, 9) -> (2, 3)
        assert_eq!(p.primitive_integer(), RatPoly::from_integers(&[2, 3]));
    }

    #[test]
    fn eval_series_produces_principal_part() {
        // p(y) = y^2 with y = q^{-1} + 1 exact through q^3:
        // y^2 = q^{-2} + 2q^{-1} + 1, exact through q^2
        let s = LaurentQSeries::new(-1, vec![rat(1), rat(1), rat(0), rat(0), rat(0)]);
        let p = RatPoly::from_integers(&[0, 0, 1]);
        let sq = p.eval_series(&s);
        assert_eq!(sq.trunc(), 2);
        assert_eq!(sq.coeff(-2), Some(rat(1)));
        assert_eq!(sq.coeff(-1), Some(rat(2)));
        assert_eq!(sq.coeff(0), Some(rat(1)));
        assert_eq!(sq.coeff(1), Some(rat(0)));
    }

    #[test]
    fn compensated_eval_matches_exact_on_ill_conditioned_input() {
        // (y - 1)^6 expanded; at y close to 1 naive f64 Horner loses most
        // digits, the compensated version tracks the exact value
        let p = RatPoly::from_integers(&[1, -6, 15, -20, 15, -6, 1]);
        let y = 1.0 + 2f64.powi(-26);
        let exact = p.eval(&BigRational::from_float(y).unwrap());
        let exact_f = exact.to_f64().unwrap();
        let got = p.eval_f64(y);
        let scale = p.magnitude_at(y);
        assert!(
            ((got - exact_f) / scale).abs() < 1e-18,
            "compensated eval off: got {got:e}, exact {exact_f:e}"
        );
    }

    #[test]
    fn magnitude_scale() {
        let p = RatPoly::from_integers(&[-1, 0, 1]);
        assert_eq!(p.magnitude_at(2.0), 5.0);
    }
}
