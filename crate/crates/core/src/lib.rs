//! Exact construction of weakly holomorphic modular functions with a
//! prescribed principal part, and certified isolation of their zeros.
//!
//! Given a coefficient stream `a(n)` defining `A(q) = 1 + a(1)q + ...`,
//! the crate builds the unique modular function with `q`-expansion
//! `q^{-k} A(q) + O(q)` as a degree-`k` polynomial in the `j`-invariant,
//! checks an analytic smallness condition on the stream with rigorous
//! directed rounding, and certifies that the polynomial has exactly `k`
//! simple roots in `(0, 1728)` — one per arc segment — using exact
//! rational Sturm sequences. The flagship stream is `a(n) = p(n) - p(n-1)`,
//! whose associated functions are the extremal partition functions of
//! three-dimensional gravity.
//!
//! ```
//! use arczeros::extremal::ExtremalFunction;
//! use arczeros::hypothesis::{check_hypothesis, DEFAULT_M_UPPER};
//! use arczeros::partitions::witten_stream;
//! use arczeros::roots::{certify, CertifyConfig};
//!
//! let stream = witten_stream(50);
//! let report = check_hypothesis(&stream, 50, DEFAULT_M_UPPER).unwrap();
//! assert!(report.verdict);
//!
//! let f = ExtremalFunction::construct(&stream, 5).unwrap();
//! let cert = certify(&f, &CertifyConfig::default()).unwrap();
//! assert_eq!(cert.count_proof, 5);
//! let mut segments: Vec<usize> = cert.roots.iter().map(|r| r.segment).collect();
//! segments.sort_unstable();
//! assert_eq!(segments, vec![1, 2, 3, 4, 5]);
//! ```

pub mod error;
pub mod extremal;
pub mod faber;
pub mod hypothesis;
pub mod modforms;
pub mod partitions;
pub mod poly;
pub mod qseries;
pub mod roots;
mod rounding;

pub use error::Error;
