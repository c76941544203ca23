use thiserror::Error;

/// Errors surfaced by the exact and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not invertible: series is zero through its truncation")]
    NotInvertible,

    #[error("argument must be >= 1 (got {0})")]
    NonPositive(i64),

    #[error("insufficient coefficients: need a(1)..a({needed}), stream provides {available}")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("truncation insufficient: need exponents through q^{needed}, series is exact only through q^{available}")]
    TruncationInsufficient { needed: i64, available: i64 },

    #[error("arc evaluation inconsistent: |Im| = {im:.3e}, tail bound = {tail:.3e}, tolerance = {tol:.3e}; increase the truncation")]
    ArcInconsistent { im: f64, tail: f64, tol: f64 },

    #[error("theta = {0} lies outside [pi/2, 2pi/3]")]
    ThetaOutOfRange(f64),

    #[error("y = {0} lies outside [0, 1728]")]
    JValueOutOfRange(f64),

    #[error("cannot bound tail: stream does not come with a tail estimate")]
    CannotBoundTail,

    #[error("M_upper = {0} makes the hypothesis vacuous (need 0 < M_upper < 2)")]
    VacuousThreshold(f64),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("endpoint root: polynomial vanishes at an endpoint of the interval")]
    EndpointRoot,

    #[error("repeated root: gcd(p, p') is nonconstant, certificate aborted")]
    RepeatedRoot,

    #[error("theorem violation or hypothesis unmet: expected {expected} roots in (0, 1728), Sturm count is {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("theorem violation or hypothesis unmet: segment indices {0:?} are not a permutation of 1..=k")]
    SegmentViolation(Vec<usize>),

    #[error(
        "refine precision: root stays within the guard band of a segment boundary after escalation"
    )]
    RefinePrecision,
}
