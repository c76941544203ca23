//! Certified real-root isolation in `(0, 1728)` and placement of each root
//! on the arc.
//!
//! Counting and isolation are exact: Sturm sequences over the rationals,
//! normalized to primitive integer form at every step (positive scaling
//! only, so sign patterns survive). Only the final refinement to a decimal
//! and the inversion of `j` on the arc are floating-point; the isolating
//! intervals that make up the certificate stay exact.

use num::{BigRational, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::extremal::ExtremalFunction;
use crate::modforms::{ArcPoint, JArcEvaluator, DEFAULT_ARC_TRUNC};
use crate::poly::RatPoly;

/// Sturm sequence of a squarefree polynomial.
///
/// Construction starts from `gcd(p, p')` implicitly: if the remainder
/// sequence bottoms out in a nonconstant polynomial the input had a
/// repeated root, and the chain refuses to exist — the theorems being
/// certified imply simple roots, so this is a tripwire, not a handled case.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Result<Self, Error> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.primitive_integer();
        if p0.degree() == Some(0) {
            return Ok(Self { chain: vec![p0] });
        }
        let p1 = p0.derivative().primitive_integer();
        let mut chain = vec![p0, p1];
        loop {
            let r = chain[chain.len() - 2].rem(&chain[chain.len() - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-&r).primitive_integer());
        }
        if chain.last().expect("nonempty").degree() != Some(0) {
            return Err(Error::RepeatedRoot);
        }
        Ok(Self { chain })
    }

    /// Number of sign variations of the chain at `x`.
    fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| p.sign_at(x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Exact number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_in(&self, lo: &BigRational, hi: &BigRational) -> Result<usize, Error> {
        assert!(lo < hi, "empty interval");
        if self.chain[0].sign_at(lo) == 0 || self.chain[0].sign_at(hi) == 0 {
            return Err(Error::EndpointRoot);
        }
        Ok(self
            .variations(lo)
            .checked_sub(self.variations(hi))
            .expect("variations cannot increase to the right"))
    }

    /// Disjoint isolating intervals, each containing exactly one root of
    /// the chain's polynomial in `(lo, hi)`, in ascending order.
    pub fn isolate(
        &self,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<Vec<(BigRational, BigRational)>, Error> {
        let count = self.count_in(lo, hi)?;
        let mut out = Vec::with_capacity(count);
        self.isolate_rec(lo.clone(), hi.clone(), count, &mut out);
        Ok(out)
    }

    fn isolate_rec(
        &self,
        lo: BigRational,
        hi: BigRational,
        count: usize,
        out: &mut Vec<(BigRational, BigRational)>,
    ) {
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = self.split_point(&lo, &hi);
                let left = self
                    .count_in(&lo, &mid)
                    .expect("split point chosen off the roots");
                self.isolate_rec(lo, mid.clone(), left, out);
                self.isolate_rec(mid, hi, count - left, out);
            }
        }
    }

    /// An interior point that is not a root: try the midpoint, then other
    /// fractions of the interval (a degree-`d` polynomial can block at most
    /// `d` candidates).
    fn split_point(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let width = hi - lo;
        for denom in 2u64.. {
            for numer in 1..denom {
                if num::integer::gcd(numer, denom) != 1 {
                    continue;
                }
                let candidate = lo + &width * BigRational::new(numer.into(), denom.into());
                if self.chain[0].sign_at(&candidate) != 0 {
                    return candidate;
                }
            }
        }
        unreachable!("polynomial has finitely many roots")
    }
}

/// Exact number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, Error> {
    SturmChain::new(p)?.count_in(lo, hi)
}

/// Disjoint exact isolating intervals for all roots of `p` in `(lo, hi)`.
pub fn isolate_roots(
    p: &RatPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<Vec<(BigRational, BigRational)>, Error> {
    SturmChain::new(p)?.isolate(lo, hi)
}

/// Shrink an isolating interval by sign-test bisection until it is
/// narrower than `width`, keeping the endpoints off the root.
///
/// When a bisection point happens to hit the root exactly, a symmetric
/// sub-bracket around it is returned instead.
pub fn refine_interval(
    p: &RatPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let sign_lo = p.sign_at(&lo);
    debug_assert_ne!(sign_lo, 0);
    debug_assert_ne!(p.sign_at(&hi), 0);
    debug_assert_ne!(
        sign_lo,
        p.sign_at(&hi),
        "interval must bracket a sign change"
    );
    let half = BigRational::new(1.into(), 2.into());
    while &hi - &lo >= *width {
        let mid = (&lo + &hi) * &half;
        match p.sign_at(&mid) {
            0 => {
                // exact rational root: bracket it tightly and stop
                let delta = width * BigRational::new(1.into(), 4.into());
                return ((&mid - &delta).max(lo), (&mid + &delta).min(hi));
            }
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

/// Refined root as a double: exact for linear polynomials, otherwise the
/// midpoint of the interval bisected below `tol`.
pub fn refine_root(p: &RatPoly, interval: (BigRational, BigRational), tol: f64) -> f64 {
    if p.degree() == Some(1) {
        let root = -p.coeff(0) / p.coeff(1);
        return root.to_f64().expect("root fits f64");
    }
    let width = BigRational::from_float(tol).expect("tolerance is finite");
    let (lo, hi) = refine_interval(p, interval.0, interval.1, &width);
    let half = BigRational::new(1.into(), 2.into());
    ((lo + hi) * half).to_f64().expect("root fits f64")
}

/// Invert `j` on the arc: the `theta` with `|j(theta) - y| < tol`, found by
/// bisection against the strictly decreasing arc restriction.
pub fn invert_j_on_arc(y: f64, tol: f64, evaluator: &JArcEvaluator) -> Result<ArcPoint, Error> {
    if !(0.0..=1728.0).contains(&y) {
        return Err(Error::JValueOutOfRange(y));
    }
    let mut lo = std::f64::consts::FRAC_PI_2;
    let mut hi = 2.0 * std::f64::consts::FRAC_PI_3;
    let value_at = |theta: f64| -> (ArcPoint, f64) {
        let p = ArcPoint::new(theta).expect("bisection stays on the arc");
        let v = evaluator.eval(&p).value;
        (p, v)
    };
    for &end in &[lo, hi] {
        let (p, v) = value_at(end);
        if (v - y).abs() < tol {
            return Ok(p);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let (p, v) = value_at(mid);
        if (v - y).abs() < tol {
            return Ok(p);
        }
        if v > y {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() < f64::EPSILON {
            break;
        }
    }
    // theta is exhausted at f64 resolution but j still misses y by >= tol:
    // the tolerance is below what the slope of j allows at this point
    Err(Error::RefinePrecision)
}

/// One certified root: exact isolating interval in `j`, refined position,
/// arc coordinates, segment index, and the scaled evaluation residual.
#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub iso_lo: BigRational,
    pub iso_hi: BigRational,
    pub j_approx: f64,
    pub theta: f64,
    pub tau_re: f64,
    pub tau_im: f64,
    /// Segment index `n`: the root's `Re(tau)` lies strictly inside
    /// `((n-1)/(2k), n/(2k))`.
    pub segment: usize,
    /// `|P_k(j_approx)|` relative to `sum |c_i| j_approx^i`.
    pub residual: f64,
}

/// Certificate that `P_k` has exactly `k` simple roots in `(0, 1728)`,
/// none at the corners, one per arc segment.
#[derive(Clone, Debug)]
pub struct RootCertificate {
    pub k: usize,
    /// Ascending in `j`; segment indices then run from `k` down to 1.
    pub roots: Vec<CertifiedRoot>,
    /// Exact nonvanishing at `j = 0` and `j = 1728`.
    pub corner_check: (bool, bool),
    /// Sturm count on `(0, 1728)`; equals `k` in any certificate that
    /// exists.
    pub count_proof: usize,
}

/// Knobs for [`certify`].
#[derive(Clone, Copy, Debug)]
pub struct CertifyConfig {
    /// Target width of the refined isolating intervals and the `j`-match
    /// tolerance of the arc inversion.
    pub tol: f64,
    /// Truncation of the `j`-series used on the arc.
    pub arc_trunc: i64,
    /// How many times to shrink `tol` when a root lands inside the guard
    /// band of a segment boundary.
    pub max_escalations: u32,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            arc_trunc: DEFAULT_ARC_TRUNC,
            max_escalations: 3,
        }
    }
}

/// Floor for the arc-inversion match: at f64 resolution in `theta`, `j`
/// moves by up to `|dj/dtheta| * ulp ~ 1.4e-12` near the steep middle of
/// the arc, so no inversion can promise a tighter match there.
const J_MATCH_FLOOR: f64 = 8e-12;

/// Produce the full certificate for a constructed extremal function.
///
/// Fails loudly — count mismatch, corner root, repeated root, or a segment
/// collision all abort — rather than returning a weakened certificate.
/// The caller is expected to have checked the smallness hypothesis; the
/// certificate itself is unconditional exact arithmetic either way.
pub fn certify(f: &ExtremalFunction, cfg: &CertifyConfig) -> Result<RootCertificate, Error> {
    let p = f.poly();
    let k = f.k();
    let zero = BigRational::zero();
    let top = BigRational::from_integer(1728.into());

    let corner_check = (p.sign_at(&zero) != 0, p.sign_at(&top) != 0);
    if !corner_check.0 || !corner_check.1 {
        return Err(Error::EndpointRoot);
    }
    let chain = SturmChain::new(p)?;
    let count = chain.count_in(&zero, &top)?;
    if count != k {
        return Err(Error::CountMismatch {
            expected: k,
            found: count,
        });
    }

    let evaluator = JArcEvaluator::new(cfg.arc_trunc);
    let mut roots = Vec::with_capacity(k);
    for interval in chain.isolate(&zero, &top)? {
        roots.push(place_root(p, k, interval, &evaluator, cfg)?);
    }

    let mut segments: Vec<usize> = roots.iter().map(|r| r.segment).collect();
    let reported = segments.clone();
    segments.sort_unstable();
    if segments != (1..=k).collect::<Vec<_>>() {
        return Err(Error::SegmentViolation(reported));
    }

    Ok(RootCertificate {
        k,
        roots,
        corner_check,
        count_proof: count,
    })
}

fn place_root(
    p: &RatPoly,
    k: usize,
    interval: (BigRational, BigRational),
    evaluator: &JArcEvaluator,
    cfg: &CertifyConfig,
) -> Result<CertifiedRoot, Error> {
    let mut tol = cfg.tol;
    for _ in 0..=cfg.max_escalations {
        let mut width = BigRational::from_float(tol).expect("tolerance is finite");
        let (mut lo, mut hi) = refine_interval(p, interval.0.clone(), interval.1.clone(), &width);
        // keep the exact interval strictly inside (0, 1728) even for roots
        // hugging an end of the range
        let shrink = BigRational::new(1.into(), 1024.into());
        while lo.is_zero() || hi == BigRational::from_integer(1728.into()) {
            width = &width * &shrink;
            (lo, hi) = refine_interval(p, lo, hi, &width);
        }

        let j_approx = refine_root(p, (lo.clone(), hi.clone()), tol);
        let arc = invert_j_on_arc(j_approx, tol.max(J_MATCH_FLOOR), evaluator)?;
        let scaled = 2.0 * k as f64 * arc.tau_re();
        let boundary_distance = (scaled - scaled.round()).abs() / (2.0 * k as f64);
        if boundary_distance > 10.0 * cfg.tol {
            let segment = scaled.ceil() as usize;
            let inside = segment >= 1
                && segment <= k
                && arc.tau_re() > (segment - 1) as f64 / (2.0 * k as f64)
                && arc.tau_re() < segment as f64 / (2.0 * k as f64);
            if inside {
                let y = BigRational::from_float(j_approx).expect("finite");
                let residual =
                    p.eval(&y).abs().to_f64().unwrap_or(f64::INFINITY) / p.magnitude_at(j_approx);
                return Ok(CertifiedRoot {
                    iso_lo: lo,
                    iso_hi: hi,
                    j_approx,
                    theta: arc.theta(),
                    tau_re: arc.tau_re(),
                    tau_im: arc.tau_im(),
                    segment,
                    residual,
                });
            }
        }
        tol /= 100.0;
    }
    Err(Error::RefinePrecision)
}
