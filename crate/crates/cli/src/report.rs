//! Report shapes shared by the output formats.
//!
//! The JSON schema is pinned: `{k, count, hypothesis: {S_upper, threshold,
//! verdict}, roots: [{j, theta, tau_re, tau_im, segment}], corners:
//! [bool, bool]}`; `verify` emits an array of these, `roots` a single one.

use serde::{Deserialize, Serialize};

use arczeros::hypothesis::HypothesisReport;
use arczeros::roots::RootCertificate;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HypothesisJson {
    #[serde(rename = "S_upper")]
    pub s_upper: f64,
    pub threshold: f64,
    pub verdict: bool,
}

impl From<&HypothesisReport> for HypothesisJson {
    fn from(r: &HypothesisReport) -> Self {
        Self {
            s_upper: r.s_upper,
            threshold: r.threshold,
            verdict: r.verdict,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootJson {
    pub j: f64,
    pub theta: f64,
    pub tau_re: f64,
    pub tau_im: f64,
    pub segment: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateJson {
    pub k: usize,
    pub count: usize,
    pub hypothesis: HypothesisJson,
    pub roots: Vec<RootJson>,
    pub corners: [bool; 2],
}

impl CertificateJson {
    pub fn new(cert: &RootCertificate, hypothesis: &HypothesisReport) -> Self {
        Self {
            k: cert.k,
            count: cert.count_proof,
            hypothesis: hypothesis.into(),
            roots: cert
                .roots
                .iter()
                .map(|r| RootJson {
                    j: r.j_approx,
                    theta: r.theta,
                    tau_re: r.tau_re,
                    tau_im: r.tau_im,
                    segment: r.segment,
                })
                .collect(),
            corners: [cert.corner_check.0, cert.corner_check.1],
        }
    }
}

/// Fixed-precision decimal for deterministic human/tsv output.
pub fn dec(x: f64, digits: usize) -> String {
    format!("{x:.digits$}")
}

/// Fixed-precision scientific notation for deterministic report lines.
pub fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn hypothesis_line(r: &HypothesisReport) -> String {
    format!(
        "hypothesis: S_upper={} threshold={} verdict={} (partial_sum={}, tail_bound={}, terms={}, M_upper={})",
        sci(r.s_upper),
        sci(r.threshold),
        if r.verdict { "pass" } else { "FAIL" },
        sci(r.partial_sum),
        sci(r.tail_bound),
        r.terms_used,
        r.m_upper,
    )
}

pub fn certificate_lines(cert: &RootCertificate, digits: usize) -> String {
    let mut out = String::new();
    let max_residual = cert.roots.iter().map(|r| r.residual).fold(0.0f64, f64::max);
    out.push_str(&format!(
        "k={} count={} segments={{{}}} corners=({},{}) max_residual={}\n",
        cert.k,
        cert.count_proof,
        {
            let mut segs: Vec<usize> = cert.roots.iter().map(|r| r.segment).collect();
            segs.sort_unstable();
            segs.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        },
        if cert.corner_check.0 { "ok" } else { "ROOT" },
        if cert.corner_check.1 { "ok" } else { "ROOT" },
        sci(max_residual),
    ));
    for r in &cert.roots {
        out.push_str(&format!(
            "  j={} theta={} tau_re={} tau_im={} segment={}\n",
            dec(r.j_approx, digits),
            dec(r.theta, digits),
            dec(r.tau_re, digits),
            dec(r.tau_im, digits),
            r.segment,
        ));
    }
    out
}

pub fn certificate_tsv(cert: &RootCertificate, digits: usize) -> String {
    let mut out = String::new();
    for r in &cert.roots {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            cert.k,
            dec(r.j_approx, digits),
            dec(r.theta, digits),
            dec(r.tau_re, digits),
            dec(r.tau_im, digits),
            r.segment,
        ));
    }
    out
}
