//! Faber polynomials `F_k`: the unique monic degree-`k` polynomials with
//! `F_k(j(tau)) = q^{-k} + O(q)`.
//!
//! Two independent generation algorithms are provided and cross-checked:
//! a reduction against powers of the `j`-expansion that eliminates the
//! exponents `-k+1 .. 0` one at a time, and extraction from the monster
//! denominator formula, whose right-hand side is expanded as a `q`-series
//! with polynomial coefficients. Agreement is exact, no tolerance.

use num::{BigRational, One, Zero};

use crate::modforms::{e14_numerator, j_expansion};
use crate::poly::RatPoly;
use crate::qseries::{product_expansion, LaurentQSeries};

/// Working truncation headroom above `k` for expansions that must pin the
/// exponents through `q^0` and leave room for tail inspection.
pub const TRUNC_HEADROOM: i64 = 10;

/// `F_k` by reduction: start from `j^k` and subtract multiples of lower
/// powers until the expansion is `q^{-k} + O(q)`.
pub fn faber_by_reduction(k: usize) -> RatPoly {
    faber_reduction_prefix(k)
        .pop()
        .expect("prefix includes F_k")
}

/// `F_0 .. F_kmax` by the reduction algorithm, sharing one table of
/// `j`-powers.
pub fn faber_reduction_prefix(kmax: usize) -> Vec<RatPoly> {
    let trunc = kmax as i64 + TRUNC_HEADROOM;
    let j = j_expansion(trunc);
    let mut jpow: Vec<LaurentQSeries> = Vec::with_capacity(kmax + 1);
    jpow.push(LaurentQSeries::one(trunc));
    for _ in 1..=kmax {
        jpow.push(&jpow[jpow.len() - 1] * &j);
    }

    (0..=kmax)
        .map(|k| {
            let mut expansion = jpow[k].clone();
            let mut coeffs = vec![BigRational::zero(); k + 1];
            coeffs[k] = BigRational::one();
            for m in (0..k).rev() {
                let alpha = expansion
                    .coeff(-(m as i64))
                    .expect("power table keeps exponents through 0");
                if !alpha.is_zero() {
                    expansion = &expansion - &jpow[m].scaled(&alpha);
                    coeffs[m] = -alpha;
                }
            }
            let poly = RatPoly::new(coeffs);
            assert!(
                poly.is_integral(),
                "Faber reduction produced a non-integral coefficient at k = {k}"
            );
            poly
        })
        .collect()
}

/// `F_0 .. F_kmax` from the denominator formula
/// `sum_k F_k(y) q^k = (1 - 24 sum sigma_13(n) q^n) / (q prod (1-q^n)^24)
/// * 1 / (j(tau) - y)`.
///
/// `j - y = q^{-1} (1 + (744 - y) q + ...)` is a unit after factoring out
/// `q^{-1}`, so it is inverted as a `q`-series whose coefficients are
/// polynomials in `y`; the other factor is the scalar series
/// `q * E14 / Delta`. The whole prefix comes out of one inversion.
pub fn faber_by_genfun(kmax: usize) -> Vec<RatPoly> {
    let n = kmax;
    // h = E14 * prod (1-q^n)^{-24} = q * E14 / Delta, exact through q^kmax
    let h = &e14_numerator(n as i64) * &product_expansion(|_| -24, n as i64);

    // unit part u of j - y: u_0 = 1, u_1 = 744 - y, u_m = c_{m-1} for m >= 2
    // where c_i is the q^i coefficient of j
    let mut unit: Vec<RatPoly> = Vec::with_capacity(n + 1);
    unit.push(RatPoly::one());
    if n >= 1 {
        unit.push(RatPoly::from_integers(&[744, -1]));
    }
    if n >= 2 {
        let j = j_expansion(n as i64 - 1);
        for m in 2..=n {
            let c = j.coeff(m as i64 - 1).expect("within truncation");
            unit.push(RatPoly::constant(c));
        }
    }

    // v = 1/u by the usual recursion; v_m has degree m in y
    let mut v: Vec<RatPoly> = Vec::with_capacity(n + 1);
    v.push(RatPoly::one());
    for m in 1..=n {
        let mut acc = RatPoly::zero();
        for i in 1..=m {
            if !unit[i].is_zero() {
                acc = &acc + &(&unit[i] * &v[m - i]);
            }
        }
        v.push(-&acc);
    }

    // F_k = sum_{i+j=k} h_i v_j
    (0..=n)
        .map(|k| {
            let mut f = RatPoly::zero();
            for i in 0..=k {
                let hi = h.coeff(i as i64).expect("within truncation");
                if !hi.is_zero() {
                    f = &f + &v[k - i].scaled(&hi);
                }
            }
            assert_eq!(f.degree(), Some(k), "F_{k} must have degree {k}");
            assert!(f.is_monic(), "F_{k} must be monic");
            assert!(
                f.is_integral(),
                "denominator formula produced a non-integral coefficient at k = {k}"
            );
            f
        })
        .collect()
}

/// True iff the two generation algorithms agree exactly for every
/// `k <= kmax`.
pub fn faber_crosscheck(kmax: usize) -> bool {
    faber_reduction_prefix(kmax) == faber_by_genfun(kmax)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_faber_polynomials_by_reduction() {
        assert_eq!(faber_by_reduction(0), RatPoly::one());
        assert_eq!(faber_by_reduction(1), RatPoly::from_integers(&[-744, 1]));
        assert_eq!(
            faber_by_reduction(2),
            RatPoly::from_integers(&[159768, -1488, 1])
        );
    }

    #[test]
    fn first_faber_polynomials_by_genfun() {
        let fs = faber_by_genfun(2);
        assert_eq!(fs[0], RatPoly::one());
        assert_eq!(fs[1], RatPoly::from_integers(&[-744, 1]));
        assert_eq!(fs[2], RatPoly::from_integers(&[159768, -1488, 1]));
    }

    #[test]
    fn crosscheck_small_prefix() {
        assert!(faber_crosscheck(0));
        assert!(faber_crosscheck(12));
    }

    #[test]
    fn faber_monic_integral_through_12() {
        for (k, f) in faber_by_genfun(12).iter().enumerate() {
            assert_eq!(f.degree(), Some(k));
            assert!(f.is_monic());
            assert!(f.is_integral());
        }
    }

    #[test]
    fn cusp_condition_through_12() {
        // F_k(j) = q^{-k} + 0 q^{-k+1} + ... + 0 q^0 + O(q), checked exactly
        for (k, f) in faber_by_genfun(12).iter().enumerate() {
            let j = j_expansion(k as i64 + TRUNC_HEADROOM);
            let expansion = f.eval_series(&j);
            assert!(expansion.trunc() >= 2);
            assert!(expansion.coeff(-(k as i64)).unwrap().is_one());
            for m in (-(k as i64) + 1)..=0 {
                assert!(
                    expansion.coeff(m).unwrap().is_zero(),
                    "F_{k}(j) has a nonzero coefficient at q^{m}"
                );
            }
        }
    }
}
