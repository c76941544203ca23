//! Directed rounding on `f64` for the one place soundness depends on it:
//! upper bounds that must never round down and lower bounds that must never
//! round up.
//!
//! Elementary operations in round-to-nearest are off by at most half an ulp
//! (`exp` by at most one ulp on any mainstream libm), so stepping the result
//! one or two ulps in the safe direction yields a true directed bound. The
//! constants below bracket their irrational values by construction.

use num::{BigRational, Signed, ToPrimitive};

/// The f64 `PI` constant is below the true value, so it is a lower bound.
pub const PI_LO: f64 = std::f64::consts::PI;

pub fn pi_hi() -> f64 {
    up(std::f64::consts::PI)
}

pub fn up(x: f64) -> f64 {
    x.next_up()
}

pub fn down(x: f64) -> f64 {
    x.next_down()
}

/// Addition with a zero operand is exact; everything else gets the step.
pub fn add_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return b;
    }
    if b == 0.0 {
        return a;
    }
    up(a + b)
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    up(a * b)
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    down(a * b)
}

pub fn div_up(a: f64, b: f64) -> f64 {
    up(a / b)
}

/// Upper bound on `sqrt(x)` for `x >= 0`; IEEE sqrt is correctly rounded.
pub fn sqrt_up(x: f64) -> f64 {
    up(x.sqrt())
}

pub fn sqrt_down(x: f64) -> f64 {
    down(x.sqrt()).max(0.0)
}

/// Upper bound on `e^x`: two ulps of slack over a faithfully rounded `exp`.
pub fn exp_up(x: f64) -> f64 {
    up(up(x.exp()))
}

/// Lower bound on `pi * sqrt(3)`.
pub fn pi_sqrt3_down() -> f64 {
    mul_down(PI_LO, sqrt_down(3.0))
}

/// Upper bound on `|r|` as an f64. The nearest-rounded conversion is off by
/// at most half an ulp; two upward steps absorb it. Exact zero stays zero.
pub fn rational_abs_up(r: &BigRational) -> f64 {
    if num::Zero::is_zero(r) {
        return 0.0;
    }
    let v = r.abs().to_f64().expect("|a(n)| does not fit the f64 range");
    up(up(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    #[test]
    fn pi_brackets() {
        // rational bracket 3.14159265358979323 < pi < 3.14159265358979324
        let scale = BigInt::from(10u64.pow(17));
        let pi_below = BigRational::new(BigInt::from(314159265358979323u64), scale.clone());
        let pi_above = BigRational::new(BigInt::from(314159265358979324u64), scale);
        assert!(BigRational::from_float(PI_LO).unwrap() < pi_below);
        assert!(BigRational::from_float(pi_hi()).unwrap() > pi_above);
    }

    #[test]
    fn directed_steps_move_strictly() {
        assert!(up(1.0) > 1.0);
        assert!(down(1.0) < 1.0);
        assert!(exp_up(1.0) > std::f64::consts::E);
        assert!(mul_down(1.0, std::f64::consts::E) < std::f64::consts::E);
    }

    #[test]
    fn rational_bound_never_below() {
        let r = BigRational::new(1.into(), 3.into());
        assert!(rational_abs_up(&r) > 1.0 / 3.0);
        let neg = BigRational::new((-2).into(), 7.into());
        assert!(rational_abs_up(&neg) >= 2.0 / 7.0);
    }
}
