//! Partition numbers, an explicit upper bound on their growth, and the
//! coefficient streams `a(n)` that drive the extremal construction.
//!
//! The flagship stream takes `a(n) = p(n) - p(n-1)`, the coefficients of
//! `prod_{n>=2} (1 - q^n)^{-1}`; in particular `a(1) = 0` and every `a(n)`
//! counts partitions with all parts at least 2.

use num::{BigInt, BigRational, One, Zero};

use crate::error::Error;
use crate::rounding::{div_up, exp_up, mul_up, pi_hi, sqrt_up};

/// `p(0) ... p(n)` by Euler's pentagonal-number recurrence,
/// `p(n) = sum_j (-1)^{j-1} [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]`.
pub fn partition_numbers(n: usize) -> Vec<BigInt> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            j += 1;
        }
        p.push(acc);
    }
    p
}

/// Upper bound `p(n) < (5.5/n) exp(pi sqrt(2n/3))`, rounded upward so the
/// result is a true bound despite f64 arithmetic.
pub fn kane_bound(n: usize) -> Result<f64, Error> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let exponent = mul_up(pi_hi(), sqrt_up(2.0 * n as f64 / 3.0));
    Ok(mul_up(div_up(5.5, n as f64), exp_up(exponent)))
}

/// How the tail of a stream past its listed values is to be treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamSource {
    /// `a(n) = p(n) - p(n-1)`; the tail is bounded by `a(n) < p(n)` and the
    /// explicit partition bound.
    Witten,
    /// A finite list: every coefficient beyond it is zero.
    Explicit,
}

/// The coefficients `a(1) ... a(N)` of a stream `A(q) = 1 + sum a(n) q^n`,
/// together with how the stream continues.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffStream {
    values: Vec<BigRational>,
    source: StreamSource,
}

impl CoeffStream {
    pub fn explicit(values: Vec<BigRational>) -> Self {
        Self {
            values,
            source: StreamSource::Explicit,
        }
    }

    /// Number of listed coefficients.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> StreamSource {
        self.source
    }

    /// `a(n)` for `n >= 1`; `None` beyond the listed range.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        assert!(n >= 1, "streams are indexed from a(1)");
        self.values.get(n - 1)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// True when every listed coefficient is zero.
    pub fn is_zero_stream(&self) -> bool {
        self.values.iter().all(|c| c.is_zero())
    }
}

/// Description of an input stream: a named generator or a finite list.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesSpec {
    Witten,
    Explicit(Vec<BigRational>),
}

impl SeriesSpec {
    /// Materialize at least `n` coefficients. Explicit lists are finite, so
    /// padding with exact zeros is lossless.
    pub fn stream(&self, n: usize) -> CoeffStream {
        match self {
            SeriesSpec::Witten => witten_stream(n.max(1)),
            SeriesSpec::Explicit(values) => {
                let mut values = values.clone();
                while values.len() < n {
                    values.push(BigRational::zero());
                }
                CoeffStream::explicit(values)
            }
        }
    }
}

/// The stream `a(n) = p(n) - p(n-1)` for `1 <= n <= N`.
pub fn witten_stream(n: usize) -> CoeffStream {
    let p = partition_numbers(n);
    let values = (1..=n)
        .map(|m| BigRational::from_integer(&p[m] - &p[m - 1]))
        .collect();
    CoeffStream {
        values,
        source: StreamSource::Witten,
    }
}
