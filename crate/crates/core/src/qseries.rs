//! Exact arithmetic on truncated Laurent series in `q` with big-rational
//! coefficients.
//!
//! A series carries its lowest exponent (`lead`, possibly negative) and the
//! exponent through which its coefficients are known exactly (`trunc`);
//! everything above `trunc` is an unknown `O(q^{trunc+1})`. Arithmetic
//! propagates truncation pessimistically: every coefficient an operation
//! reports is exact given the truncations of its inputs. Coefficients are
//! big rationals throughout; no floating point enters this module.

use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Zero};

use crate::error::Error;

/// Truncated Laurent series `sum_{n >= lead} c_n q^n`, exact through
/// `q^trunc`.
///
/// Normal form: a nonzero series has `coeffs[0] != 0` and
/// `coeffs.len() == trunc - lead + 1`; the zero series has empty `coeffs`
/// and `lead == trunc + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentQSeries {
    lead: i64,
    coeffs: Vec<BigRational>,
    trunc: i64,
}

impl LaurentQSeries {
    /// Series with the given coefficients starting at exponent `lead`;
    /// the truncation is `lead + coeffs.len() - 1`.
    pub fn new(lead: i64, coeffs: Vec<BigRational>) -> Self {
        let trunc = lead + coeffs.len() as i64 - 1;
        Self::normalized(lead, coeffs, trunc)
    }

    /// The zero series, known to vanish through `q^trunc`.
    pub fn zero(trunc: i64) -> Self {
        Self {
            lead: trunc + 1,
            coeffs: Vec::new(),
            trunc,
        }
    }

    /// Constant series `c + O(q^{trunc+1})`.
    pub fn constant(c: BigRational, trunc: i64) -> Self {
        Self::monomial(c, 0, trunc)
    }

    /// The series `1 + O(q^{trunc+1})`.
    pub fn one(trunc: i64) -> Self {
        Self::constant(BigRational::one(), trunc)
    }

    /// The series `c * q^exp + O(q^{trunc+1})`. Requires `exp <= trunc`.
    pub fn monomial(c: BigRational, exp: i64, trunc: i64) -> Self {
        assert!(exp <= trunc, "monomial exponent beyond truncation");
        let mut coeffs = vec![BigRational::zero(); (trunc - exp + 1) as usize];
        coeffs[0] = c;
        Self::normalized(exp, coeffs, trunc)
    }

    fn normalized(lead: i64, mut coeffs: Vec<BigRational>, trunc: i64) -> Self {
        debug_assert_eq!(coeffs.len() as i64, trunc - lead + 1);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(trunc),
            Some(0) => Self {
                lead,
                coeffs,
                trunc,
            },
            Some(k) => {
                coeffs.drain(..k);
                Self {
                    lead: lead + k as i64,
                    coeffs,
                    trunc,
                }
            }
        }
    }

    /// Lowest exponent with a nonzero coefficient (`trunc + 1` for zero).
    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Largest exponent whose coefficient is known exactly.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^exp`; `None` when `exp` lies beyond the truncation.
    pub fn coeff(&self, exp: i64) -> Option<BigRational> {
        if exp > self.trunc {
            return None;
        }
        if exp < self.lead {
            return Some(BigRational::zero());
        }
        Some(self.coeffs[(exp - self.lead) as usize].clone())
    }

    /// Known terms as `(exponent, coefficient)` pairs, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        let lead = self.lead;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (lead + i as i64, c))
    }

    /// Same series with the truncation lowered to `trunc`.
    pub fn truncated(&self, trunc: i64) -> Self {
        assert!(trunc <= self.trunc, "cannot raise a truncation");
        if trunc < self.lead {
            return Self::zero(trunc);
        }
        let len = (trunc - self.lead + 1) as usize;
        Self::normalized(self.lead, self.coeffs[..len].to_vec(), trunc)
    }

    /// Multiply by `q^m`.
    pub fn shifted(&self, m: i64) -> Self {
        Self {
            lead: self.lead + m,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + m,
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        Self {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            trunc: self.trunc,
        }
    }

    /// Add a constant at exponent 0. Requires `trunc >= 0`.
    pub fn plus_scalar(&self, c: &BigRational) -> Self {
        assert!(self.trunc >= 0, "constant term beyond truncation");
        &Self::constant(c.clone(), self.trunc) + self
    }

    /// Integer power by repeated squaring; truncation propagates exactly as
    /// through the equivalent chain of multiplications.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.trunc);
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result.unwrap()
    }

    /// Multiplicative inverse, solving for coefficients recursively.
    ///
    /// For `s = c0 q^L (1 + u)` the result has lead `-L` and is exact
    /// through `trunc - 2L`. Errors with [`Error::NotInvertible`] when the
    /// series is zero through its truncation.
    pub fn invert(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let lead_coeff = &self.coeffs[0];
        let rel_order = (self.trunc - self.lead) as usize;
        // d solves (1 + u) * d = 1 where u_i = coeffs[i] / coeffs[0].
        let mut d = Vec::with_capacity(rel_order + 1);
        d.push(BigRational::one());
        for m in 1..=rel_order {
            let mut acc = BigRational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &d[m - i] / lead_coeff;
                }
            }
            d.push(-acc);
        }
        let coeffs = d.into_iter().map(|c| c / lead_coeff).collect();
        Ok(Self::normalized(
            -self.lead,
            coeffs,
            self.trunc - 2 * self.lead,
        ))
    }
}

impl Add for &LaurentQSeries {
    type Output = LaurentQSeries;

    fn add(self, rhs: &LaurentQSeries) -> LaurentQSeries {
        let trunc = min(self.trunc, rhs.trunc);
        let lead = min(min(self.lead, rhs.lead), trunc + 1);
        if lead > trunc {
            return LaurentQSeries::zero(trunc);
        }
        let coeffs = (lead..=trunc)
            .map(|exp| {
                let mut c = BigRational::zero();
                if exp >= self.lead && exp <= self.trunc {
                    c += &self.coeffs[(exp - self.lead) as usize];
                }
                if exp >= rhs.lead && exp <= rhs.trunc {
                    c += &rhs.coeffs[(exp - rhs.lead) as usize];
                }
                c
            })
            .collect();
        LaurentQSeries::normalized(lead, coeffs, trunc)
    }
}

impl Neg for &LaurentQSeries {
    type Output = LaurentQSeries;

    fn neg(self) -> LaurentQSeries {
        LaurentQSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }
}

impl Sub for &LaurentQSeries {
    type Output = LaurentQSeries;

    fn sub(self, rhs: &LaurentQSeries) -> LaurentQSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentQSeries {
    type Output = LaurentQSeries;

    /// Cauchy product. The result is exact through
    /// `min(s.trunc + t.lead, t.trunc + s.lead)`: a coefficient is reported
    /// only if no unknown term of either factor can reach it.
    fn mul(self, rhs: &LaurentQSeries) -> LaurentQSeries {
        let trunc = min(self.trunc + rhs.lead, rhs.trunc + self.lead);
        if self.is_zero() || rhs.is_zero() {
            return LaurentQSeries::zero(trunc);
        }
        let lead = self.lead + rhs.lead;
        if lead > trunc {
            return LaurentQSeries::zero(trunc);
        }
        let len = (trunc - lead + 1) as usize;
        let mut acc = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let idx = i + j;
                if idx >= len {
                    break;
                }
                if !b.is_zero() {
                    acc[idx] += a * b;
                }
            }
        }
        LaurentQSeries::normalized(lead, acc, trunc)
    }
}

/// Expansion of `prod_{n >= 1} (1 - q^n)^{e_n}` to `O(q^{trunc+1})`, with
/// `e_n = exponent_of(n)`.
///
/// Each factor is expanded by the exact binomial series
/// `(1 - q^n)^e = sum_t C(e, t) (-q^n)^t`, which terminates for `e >= 0`
/// and is cut at the truncation for `e < 0`; factors with `n > trunc`
/// cannot contribute.
pub fn product_expansion(exponent_of: impl Fn(u64) -> i64, trunc: i64) -> LaurentQSeries {
    let mut acc = LaurentQSeries::one(trunc.max(0));
    if trunc < 1 {
        return acc.truncated(trunc);
    }
    for n in 1..=trunc as u64 {
        let e = exponent_of(n);
        if e == 0 {
            continue;
        }
        let t_max = trunc as u64 / n;
        let mut factor = vec![BigRational::zero(); (trunc + 1) as usize];
        let mut c = BigRational::one();
        factor[0] = c.clone();
        for t in 1..=t_max {
            if e >= 0 && t > e as u64 {
                break;
            }
            // C(e, t) (-1)^t = C(e, t-1) (-1)^{t-1} * (t - 1 - e) / t
            c = c * BigRational::from_integer((t as i64 - 1 - e).into())
                / BigRational::from_integer((t as i64).into());
            factor[(t * n) as usize] = c.clone();
        }
        acc = &acc * &LaurentQSeries::new(0, factor);
    }
    acc
}

impl fmt::Display for LaurentQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exp, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{}", fmt_term(c, exp))?;
                first = false;
            } else if c < &BigRational::zero() {
                write!(f, " - {}", fmt_term(&-c, exp))?;
            } else {
                write!(f, " + {}", fmt_term(c, exp))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}

fn fmt_term(c: &BigRational, exp: i64) -> String {
    match exp {
        0 => format!("{c}"),
        1 if c.is_one() => "q".to_string(),
        1 => format!("{c}*q"),
        _ if c.is_one() => format!("q^{exp}"),
        _ => format!("{c}*q^{exp}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn series(lead: i64, coeffs: &[i64]) -> LaurentQSeries {
        LaurentQSeries::new(lead, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Partitions of `n` with every part >= `min_part`, by direct
    /// enumeration; independent of the binomial-product route.
    fn count_partitions_min_part(n: u64, min_part: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (min_part..=n)
            .map(|part| count_partitions_min_part(n - part, part))
            .sum()
    }

    #[test]
    fn add_cancellation() {
        // (1 + q) + (-1 + 0q) = q
        let s = series(0, &[1, 1]);
        let t = series(0, &[-1, 0]);
        assert_eq!(&s + &t, series(1, &[1]));
    }

    #[test]
    fn add_identity() {
        let s = series(-2, &[3, 0, 1, 7]);
        assert_eq!(&s + &LaurentQSeries::zero(s.trunc()), s);
    }

    #[test]
    fn add_doubling() {
        let s = series(-1, &[1]);
        assert_eq!(&s + &s, series(-1, &[2]));
    }

    #[test]
    fn mul_geometric_inverse() {
        let n = 12usize;
        let geo = LaurentQSeries::new(0, vec![BigRational::one(); n + 1]);
        let mut cs = vec![0i64; n + 1];
        cs[0] = 1;
        cs[1] = -1;
        let one_minus_q = series(0, &cs);
        let prod = &one_minus_q * &geo;
        assert_eq!(prod, LaurentQSeries::one(prod.trunc()));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let s = series(-3, &[2, 0, 5, 1, 1]);
        let one = LaurentQSeries::one(s.trunc() - s.lead());
        assert_eq!(&s * &one, s);
    }

    #[test]
    fn mul_monomials() {
        // q^{-1} * q = 1
        let qinv = series(-1, &[1, 0, 0]);
        let q = series(1, &[1]);
        let prod = &qinv * &q;
        assert_eq!(prod.coeff(0), Some(rat(1)));
        assert_eq!(prod.lead(), 0);
    }

    #[test]
    fn invert_geometric() {
        let s = series(0, &[1, -1, 0, 0, 0, 0]);
        let inv = s.invert().unwrap();
        assert_eq!(inv, LaurentQSeries::new(0, vec![BigRational::one(); 6]));
    }

    #[test]
    fn invert_one() {
        let one = LaurentQSeries::one(5);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_zero_fails() {
        assert!(matches!(
            LaurentQSeries::zero(4).invert(),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn invert_tracks_truncation_of_shifted_series() {
        // s = q + q^2 exact through q^5; 1/s must be exact through q^3 only
        let s = series(1, &[1, 1, 0, 0, 0]);
        let inv = s.invert().unwrap();
        assert_eq!(inv.lead(), -1);
        assert_eq!(inv.trunc(), 3);
        let prod = &s * &inv;
        assert_eq!(prod, LaurentQSeries::one(prod.trunc()));
    }

    #[test]
    fn product_expansion_all_parts() {
        // all e_n = -1: partition generating function
        let p = product_expansion(|_| -1, 5);
        let expected: Vec<u64> = (0..=5).map(|n| count_partitions_min_part(n, 1)).collect();
        assert_eq!(expected, vec![1, 1, 2, 3, 5, 7]);
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(p.coeff(n as i64), Some(rat(*want as i64)));
        }
    }

    #[test]
    fn product_expansion_parts_at_least_two() {
        let p = product_expansion(|n| if n >= 2 { -1 } else { 0 }, 4);
        let expected: Vec<u64> = (0..=4).map(|n| count_partitions_min_part(n, 2)).collect();
        assert_eq!(expected, vec![1, 0, 1, 1, 2]);
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(p.coeff(n as i64), Some(rat(*want as i64)));
        }
    }

    #[test]
    fn product_expansion_empty() {
        assert_eq!(product_expansion(|_| 0, 6), LaurentQSeries::one(6));
    }

    #[test]
    fn display_shows_terms_and_truncation() {
        let s = series(-1, &[1, 744, 0, -3]);
        assert_eq!(format!("{s}"), "q^-1 + 744 - 3*q^2 + O(q^3)");
        assert_eq!(format!("{}", LaurentQSeries::zero(4)), "0 + O(q^5)");
    }

    #[test]
    fn product_expansion_positive_exponents() {
        // (1 - q)^2 (1 - q^2) = 1 - 2q + 2q^3 - q^4
        let p = product_expansion(
            |n| match n {
                1 => 2,
                2 => 1,
                _ => 0,
            },
            4,
        );
        assert_eq!(p, series(0, &[1, -2, 0, 2, -1]));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    fn small_series() -> impl Strategy<Value = LaurentQSeries> {
        (-3i64..=3, prop::collection::vec(small_rational(), 1..8))
            .prop_map(|(lead, cs)| LaurentQSeries::new(lead, cs))
    }

    fn unit_series() -> impl Strategy<Value = LaurentQSeries> {
        (
            -3i64..=3,
            (1i64..=5, 1i64..=5, prop::bool::ANY).prop_map(|(n, d, neg)| {
                let c = BigRational::new(n.into(), d.into());
                if neg {
                    -c
                } else {
                    c
                }
            }),
            prop::collection::vec(small_rational(), 0..7),
        )
            .prop_map(|(lead, c0, mut rest)| {
                let mut cs = vec![c0];
                cs.append(&mut rest);
                LaurentQSeries::new(lead, cs)
            })
    }

    proptest! {
        #[test]
        fn prop_add_commutes(a in small_series(), b in small_series()) {
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn prop_mul_commutes(a in small_series(), b in small_series()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn prop_add_associates(a in small_series(), b in small_series(), c in small_series()) {
            let left = &(&a + &b) + &c;
            let right = &a + &(&b + &c);
            prop_assert_eq!(left, right);
        }

        #[test]
        fn prop_mul_associates_up_to_common_truncation(
            a in small_series(), b in small_series(), c in small_series()
        ) {
            let left = &(&a * &b) * &c;
            let right = &a * &(&b * &c);
            let t = left.trunc().min(right.trunc());
            prop_assert_eq!(left.truncated(t), right.truncated(t));
        }

        #[test]
        fn prop_mul_distributes(a in small_series(), b in small_series(), c in small_series()) {
            let left = &a * &(&b + &c);
            let right = &(&a * &b) + &(&a * &c);
            let t = left.trunc().min(right.trunc());
            prop_assert_eq!(left.truncated(t), right.truncated(t));
        }

        // randomized unit series invert back exactly
        #[test]
        fn prop_invert_roundtrip(s in unit_series()) {
            let inv = s.invert().unwrap();
            let prod = &s * &inv;
            prop_assert_eq!(prod.clone(), LaurentQSeries::one(prod.trunc()));
        }
    }
}
