//! Rational-approximation bounds, decay-exponent estimation, and the
//! multiple-access DMT optimality region.
//!
//! The lower-bound side rests on Liouville's theorem for the quadratic
//! irrational τ: |kτ − h| > C/k for every integer pair with k > 0, with
//! the effective constant C = 1/(1+√5) falling out of the textbook proof
//! for x² − x − 1. The sharpness side is the pigeonhole fact that
//! |kτ − h| < 1/k infinitely often; the continued-fraction convergents of
//! τ (ratios of consecutive Fibonacci numbers) realize it, with
//! k·|kτ − h| → 1/√5. Decay exponents are estimated from measured
//! D(N) values by least squares in log-log space, and the DMT analyzer
//! evaluates the optimality condition 2r + δ ≤ r_S(·) in exact rational
//! arithmetic so the r = 1/5 boundary is crisp.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde_json::json;

use crate::ring::QuadInt;
use crate::search::DecayRecord;
use crate::{Error, Result};

/// Exact rational with arbitrary-precision parts.
pub type Rational = BigRational;

/// A continued-fraction convergent h/k of τ with its approximation
/// quality k·|kτ − h|. For τ all partial quotients are 1, so (h, k) run
/// through consecutive Fibonacci pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergent {
    pub h: BigInt,
    pub k: BigInt,
    pub quality: f64,
}

fn convergent_quality(h: &BigInt, k: &BigInt) -> f64 {
    // k(kτ − h) = −hk + k²τ, evaluated exactly before the float view
    QuadInt {
        p: -(h * k),
        q: k * k,
    }
    .to_f64()
    .abs()
}

/// All convergents h/k of τ with k ≤ k_max, starting from 2/1.
pub fn tau_convergents(k_max: u64) -> Result<Vec<Convergent>> {
    if k_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "convergent scan needs k_max ≥ 1, got {k_max}"
        )));
    }
    let mut out = Vec::new();
    let mut h = BigInt::from(2);
    let mut k = BigInt::one();
    while k <= BigInt::from(k_max) {
        out.push(Convergent {
            quality: convergent_quality(&h, &k),
            h: h.clone(),
            k: k.clone(),
        });
        let next_h = &h + &k;
        k = std::mem::replace(&mut h, next_h);
    }
    Ok(out)
}

/// Effective Liouville constant for τ: C = 1/(1+√5) ≈ 0.30902.
///
/// From the classical proof applied to f(x) = x² − x − 1: a rational h/k
/// with |τ − h/k| < 1 satisfies |f(h/k)| ≥ 1/k² while
/// |f(h/k)| = |τ − h/k|·|h/k − (1−τ)| < |τ − h/k|·(1 + √5), and pairs
/// with |τ − h/k| ≥ 1 satisfy the bound trivially. Hence
/// |kτ − h| > C/k for all integers h and k > 0.
pub fn liouville_effective_constant() -> f64 {
    1.0 / (1.0 + 5f64.sqrt())
}

/// Least-squares exponent fit D ≈ constant·N^(−delta).
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentFit {
    pub delta: f64,
    pub constant: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    pub sample_count: usize,
}

impl ExponentFit {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "delta": self.delta,
            "constant": self.constant,
            "residual": self.residual,
            "sample_count": self.sample_count,
        })
    }
}

/// Fit a decay exponent through (N, D) samples: a least-squares line
/// through (ln N, ln D) with delta = −slope and constant = e^intercept.
/// Needs at least two samples with distinct N; every D must be positive.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "exponent fit needs at least 2 samples, got {}",
            points.len()
        )));
    }
    for &(n, d) in points {
        let positive = n > 0.0 && d > 0.0;
        if !positive {
            return Err(Error::InvalidParameter(format!(
                "exponent fit needs positive samples, got ({n}, {d})"
            )));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, d)| (n.ln(), d.ln())).collect();
    let count = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "exponent fit needs at least two distinct N values".into(),
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = (logs
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum::<f64>()
        / count)
        .sqrt();
    Ok(ExponentFit {
        delta: -slope,
        constant: intercept.exp(),
        residual,
        sample_count: points.len(),
    })
}

/// Empirical bound constants extracted from a set of decay records.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    /// min N₁N₂·D(N₁, N₂) over all records (lower-bound direction).
    pub k_emp: f64,
    pub k_emp_at: (u32, u32),
    /// max N·D(N, 1) over the fixed-second records, when present
    /// (pigeonhole upper-bound direction).
    pub c_emp: Option<f64>,
    pub c_emp_at: Option<(u32, u32)>,
    pub record_count: usize,
}

impl BoundsReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "k_emp": self.k_emp,
            "k_emp_at": { "n1": self.k_emp_at.0, "n2": self.k_emp_at.1 },
            "c_emp": self.c_emp,
            "c_emp_at": self.c_emp_at.map(|(n1, n2)| json!({ "n1": n1, "n2": n2 })),
            "record_count": self.record_count,
        })
    }
}

/// Scan decay records for the empirical constants of the two bound
/// directions. Fails if the record set is empty or contains a
/// nonpositive minimum (which would contradict the rank criterion).
pub fn verify_bounds(records: &[DecayRecord]) -> Result<BoundsReport> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no records to verify".into()));
    }
    let mut k_emp = f64::INFINITY;
    let mut k_emp_at = (0, 0);
    let mut c_emp: Option<f64> = None;
    let mut c_emp_at = None;
    for record in records {
        let d = record.decay_value();
        let positive = d > 0.0;
        if !positive {
            return Err(Error::InvalidParameter(format!(
                "record ({}, {}) has nonpositive decay value {d}",
                record.n1, record.n2
            )));
        }
        let k_value = (record.n1 as f64) * (record.n2 as f64) * d;
        if k_value < k_emp {
            k_emp = k_value;
            k_emp_at = (record.n1, record.n2);
        }
        if record.n2 == 1 {
            let c_value = record.n1 as f64 * d;
            if c_emp.is_none_or(|c| c_value > c) {
                c_emp = Some(c_value);
                c_emp_at = Some((record.n1, record.n2));
            }
        }
    }
    Ok(BoundsReport {
        k_emp,
        k_emp_at,
        c_emp,
        c_emp_at,
        record_count: records.len(),
    })
}

/// Parse "a/b" or a plain integer as an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer '{t}': {e}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

fn rational_u32(v: u32) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Point-to-point DMT d*_{p,q}(x): the piecewise-linear curve through
/// (k, (p−k)(q−k)) for k = 0..=min(p, q), in exact rational arithmetic.
pub fn point_to_point_dmt(p: u32, q: u32, x: &Rational) -> Result<Rational> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidParameter("antenna counts must be ≥ 1".into()));
    }
    let m = p.min(q);
    if x < &Rational::zero() || x > &rational_u32(m) {
        return Err(Error::InvalidParameter(format!(
            "multiplexing gain {x} outside [0, {m}]"
        )));
    }
    let diversity_at =
        |k: u32| Rational::from_integer(BigInt::from((p - k) as i64 * (q - k) as i64));
    let k = x.floor().to_integer().to_u32().expect("validated range");
    if k == m {
        return Ok(diversity_at(m));
    }
    let base = diversity_at(k);
    let step = diversity_at(k + 1) - &base;
    Ok(base + step * (x - rational_u32(k)))
}

/// Maximum sum of multiplexing gains compatible with the dominant
/// diversity gain for the two-user code:
/// (2 + 2r)/3 on [0, 1/2] and 2r on [1/2, 1].
pub fn sum_rate_cap(r: &Rational) -> Result<Rational> {
    if r < &Rational::zero() || r > &Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "multiplexing gain {r} outside [0, 1]"
        )));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if r <= &half {
        Ok((Rational::from_integer(BigInt::from(2)) + r * BigInt::from(2)) / BigInt::from(3))
    } else {
        Ok(r * BigInt::from(2))
    }
}

/// Which determinant-decay exponent enters the optimality condition.
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaMode {
    /// The derived SNR exponent δ = 2r of the squared minimum
    /// determinant at N = SNR^{r/2}.
    TwoR,
    /// A measured exponent substituted for exploration; converted to an
    /// exact rational so comparisons stay crisp.
    Empirical(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DmtQuery {
    pub r: Rational,
    pub delta_mode: DeltaMode,
}

/// Outcome of the optimality condition 2r + δ ≤ r_S(·).
#[derive(Debug, Clone, PartialEq)]
pub struct DmtReport {
    pub r: Rational,
    pub delta: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    pub optimal: bool,
}

impl DmtReport {
    pub fn to_json(&self) -> serde_json::Value {
        let rat = |v: &Rational| {
            json!({
                "exact": v.to_string(),
                "float": v.to_f64(),
            })
        };
        json!({
            "r": rat(&self.r),
            "delta": rat(&self.delta),
            "condition_lhs": rat(&self.lhs),
            "condition_rhs": rat(&self.rhs),
            "optimal": self.optimal,
        })
    }
}

/// Evaluate the optimality condition at a multiplexing gain r ∈ [0, 1].
pub fn mac_optimality(query: &DmtQuery) -> Result<DmtReport> {
    let r = &query.r;
    if r < &Rational::zero() || r > &Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "multiplexing gain {r} outside [0, 1]"
        )));
    }
    let delta = match &query.delta_mode {
        DeltaMode::TwoR => r * BigInt::from(2),
        DeltaMode::Empirical(v) => Rational::from_f64(*v).ok_or_else(|| {
            Error::InvalidParameter(format!("empirical exponent {v} is not finite"))
        })?,
    };
    let lhs = r * BigInt::from(2) + &delta;
    let rhs = sum_rate_cap(r)?;
    Ok(DmtReport {
        r: r.clone(),
        delta,
        optimal: lhs <= rhs,
        lhs,
        rhs,
    })
}

/// The exact boundary of the optimality region with δ = 2r: the solution
/// of 4r = (2 + 2r)/3 on the first piece of the sum-rate cap.
pub fn mac_optimality_threshold() -> Rational {
    let two_thirds = Rational::new(BigInt::from(2), BigInt::from(3));
    let threshold = two_thirds.clone() / (Rational::from_integer(BigInt::from(4)) - two_thirds);
    debug_assert!(threshold <= Rational::new(BigInt::one(), BigInt::from(2)));
    threshold
}
