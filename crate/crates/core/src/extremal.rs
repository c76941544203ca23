//! Extremal modular functions: given a stream `a(n)` with
//! `A(q) = 1 + a(1)q + ...`, build the unique weakly holomorphic modular
//! function with expansion `q^{-k} A(q) + O(q)` as the polynomial
//! `P_k(y) = F_k(y) + sum_{n=0}^{k-1} a(k-n) F_n(y)` in the `j`-invariant,
//! verify the defining expansion exactly, and sample the proof's error
//! term on the arc.

use num::{One, Zero};

use crate::error::Error;
use crate::faber::faber_by_genfun;
use crate::modforms::{check_arc_eval, j_expansion, ArcPoint, JArcEvaluator};
use crate::partitions::CoeffStream;
use crate::poly::{eval_f64_compensated, RatPoly};

/// Validated upper bound on the uniform arc deviation
/// `sup_k sup_{tau in C} |F_k(j(tau)) e^{-2 pi k Im(tau)} - 2 cos(2 pi k
/// Re(tau))|`.
///
/// The supremum is attained at `k = 1` at the corner `j = 0`, where the
/// deviation is `744 e^{-pi sqrt(3)} - 2 = 1.22406...`; for `k >= 2` the
/// corner value drops to `1.000...` and the interior stays below it. The
/// often-quoted four-decimal constant `1.1176` is therefore an upper bound
/// only for `k >= 2`; tests pin both facts.
pub const ARC_DEVIATION_UPPER: f64 = 1.2241;

/// A constructed `P_k` together with the stream that defined it.
#[derive(Clone, Debug)]
pub struct ExtremalFunction {
    k: usize,
    stream: CoeffStream,
    poly: RatPoly,
    verified_expansion: bool,
}

impl ExtremalFunction {
    /// Assemble `P_k = F_k + sum_{n=0}^{k-1} a(k-n) F_n`; the stream must
    /// provide `a(1) .. a(k)`.
    pub fn construct(stream: &CoeffStream, k: usize) -> Result<Self, Error> {
        if k < 1 {
            return Err(Error::NonPositive(k as i64));
        }
        if stream.len() < k {
            return Err(Error::InsufficientCoefficients {
                needed: k,
                available: stream.len(),
            });
        }
        let fabers = faber_by_genfun(k);
        let mut poly = fabers[k].clone();
        for (n, faber) in fabers.iter().enumerate().take(k) {
            let a = stream.coeff(k - n).expect("length checked above");
            if !a.is_zero() {
                poly = &poly + &faber.scaled(a);
            }
        }
        debug_assert_eq!(poly.degree(), Some(k));
        debug_assert!(poly.is_monic());
        Ok(Self {
            k,
            stream: stream.clone(),
            poly,
            verified_expansion: false,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn stream(&self) -> &CoeffStream {
        &self.stream
    }

    /// Whether [`Self::verify_principal_part`] has succeeded on this value.
    pub fn verified_expansion(&self) -> bool {
        self.verified_expansion
    }

    /// Expand `P_k(j(tau))` as a `q`-series and check that the coefficients
    /// of `q^{-k} .. q^0` equal those of `q^{-k} A(q)` exactly — the
    /// coefficient of `q^{-k+i}` must be `a(i)`, with `a(0) = 1`.
    ///
    /// `trunc` is the `j`-series truncation; it must be at least `k - 1`
    /// so the constant term of the expansion is determined.
    pub fn verify_principal_part(&mut self, trunc: i64) -> Result<bool, Error> {
        let k = self.k as i64;
        if trunc < k - 1 {
            return Err(Error::TruncationInsufficient {
                needed: k - 1,
                available: trunc,
            });
        }
        let expansion = self.poly.eval_series(&j_expansion(trunc));
        debug_assert!(expansion.trunc() >= 0);
        let ok = (0..=self.k).all(|i| {
            let got = expansion
                .coeff(-k + i as i64)
                .expect("exact through q^0 by the truncation check");
            if i == 0 {
                got.is_one()
            } else {
                got == *self.stream.coeff(i).expect("stream provides a(1)..a(k)")
            }
        });
        if ok {
            self.verified_expansion = true;
        }
        Ok(ok)
    }

    /// Sampled error term `R_k(tau) = |P_k(j(tau)) e^{-2 pi k Im(tau)} -
    /// 2 cos(2 pi k Re(tau))|` at each grid point.
    ///
    /// This is a numerical check of the proof inequality, not a proof: the
    /// polynomial is evaluated by compensated double-precision Horner and
    /// `j` by its truncated series (tail bound enforced against `tol`).
    pub fn residual_on_arc(
        &self,
        grid: &[ArcPoint],
        arc_trunc: i64,
        tol: f64,
    ) -> Result<Vec<f64>, Error> {
        let evaluator = JArcEvaluator::new(arc_trunc);
        let coeffs = self.poly.coeffs_f64();
        let k = self.k as f64;
        grid.iter()
            .map(|p| {
                let j = check_arc_eval(&evaluator.eval(p), tol)?;
                let damped = eval_f64_compensated(&coeffs, j)
                    * (-2.0 * std::f64::consts::PI * k * p.tau_im()).exp();
                let wave = 2.0 * (2.0 * std::f64::consts::PI * k * p.tau_re()).cos();
                Ok((damped - wave).abs())
            })
            .collect()
    }
}
