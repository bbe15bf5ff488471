//! Finite-level mean-dimension certificates: a sampled distance-increasing
//! check feeding the lower bound and a sampled epsilon-embedding check
//! feeding the upper bound, plus the exact rational bound arithmetic.

use crate::error::Result;
use crate::ratio::{big_ratio, from_int, to_f64};
use crate::seeding::{stage_rng, Stream};
use crate::symbolic::{generate_segment, metric_rho_n, Construction, FillMode, SkewPoint};
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

/// Truncation used for the weighted shift metric inside certificates; the
/// dropped tail `2^{-T+1}` is far below every tolerance in play.
const METRIC_TRUNC: u32 = 48;

/// Exact finite-level bounds at level `k`:
/// lower `2q·|stars|/(N_k·p)`, upper `(2q/p)(r + 1/N_k)`, and their gap.
pub fn exact_bounds(cons: &Construction, k: u32) -> (BigRational, BigRational, BigRational) {
    let word = cons.word(k);
    let p = cons.params.p as i64;
    let q = cons.params.q as i64;
    let n_len = from_int(word.len());
    let stars = from_int(word.star_count());
    let lower = big_ratio(2 * q, 1) * stars / (&n_len * big_ratio(p, 1));
    let upper = big_ratio(2 * q, p) * (cons.exact_r() + from_int(1) / &n_len);
    let gap = &upper - &lower;
    (lower, upper, gap)
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerEvidence {
    pub k: u32,
    pub trials: u32,
    pub violations: u32,
    /// Smallest observed `rho_{N_k p}(F_k a, F_k b) - ||a-b||_inf` (>= -1e-12 expected).
    pub min_slack: f64,
    /// Implied bound `2q·|stars|/(N_k·p)` via the cube dimension identity.
    pub lower_bound: f64,
}

/// Sampled check of the distance-increasing property of the block embedding
/// `F_k`: members of the level-k block family, embedded into the reference
/// point, never get closer under `rho_{N_k p}` than they start in the sup
/// metric. The weight-1 term of the shift metric makes the inequality exact,
/// so violations beyond floating slack indicate a construction bug.
pub fn lower_certificate(
    cons: &Construction,
    k: u32,
    trials: u32,
    seed: u64,
) -> Result<LowerEvidence> {
    let word = cons.word(k);
    let params = &cons.params;
    let n_len = word.len();
    // shifts reach N_k - 1, so the right side needs N_k + trunc of coverage,
    // plus one block of slack for the block-aligned anchor
    let coverage = 2 * n_len + METRIC_TRUNC as u64 + 8;
    let base = generate_segment(cons, k, 2 * coverage, seed, FillMode::Zero)?;
    let mut rng = stage_rng(seed, Stream::LowerCertificate);
    let mut violations = 0;
    let mut min_slack = f64::INFINITY;
    for _ in 0..trials {
        let a = word.random_member(params.q, &mut rng);
        let b = word.random_member(params.q, &mut rng);
        let lhs = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x.distance(y))
            .fold(0.0, f64::max);
        let mut seg_a = base.clone();
        let mut seg_b = base.clone();
        for (n, (sa, sb)) in a.iter().zip(&b).enumerate() {
            seg_a.set_entry(n as i64, sa.clone())?;
            seg_b.set_entry(n as i64, sb.clone())?;
        }
        let pa = SkewPoint::new(seg_a, 0, params.p);
        let pb = SkewPoint::new(seg_b, 0, params.p);
        let rhs = metric_rho_n(&pa, &pb, n_len * params.p as u64, METRIC_TRUNC)?;
        let slack = rhs - lhs;
        min_slack = min_slack.min(slack);
        if slack < -1e-12 {
            violations += 1;
        }
    }
    let (lower, _, _) = exact_bounds(cons, k);
    Ok(LowerEvidence {
        k,
        trials,
        violations,
        min_slack,
        lower_bound: to_f64(&lower),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UpperEvidence {
    pub k: u32,
    pub m: u64,
    pub epsilon: f64,
    /// Window half-length: agreement on `[-L, L]` forces the shift metric
    /// below epsilon (`2^{-L+1} < eps`).
    pub l_window: u32,
    pub trials: u32,
    pub violations: u32,
    pub max_rho: f64,
    /// Metric truncation tail added to every measured value.
    pub tail: f64,
    /// Dimension-count bound at this `m`, divided by `m·p`.
    pub bound_at_m: f64,
    /// Its `m -> infinity` limit `(2q/p)(r + 1/N_k)`.
    pub bound_limit: f64,
}

/// Window half-length for a target mesh: least `L` with `2^{-L+1} < eps`.
pub fn l_for_epsilon(epsilon: f64) -> u32 {
    assert!(epsilon > 0.0);
    let mut l0 = 0u32;
    while 2.0f64.powi(l0 as i32) < 2.0 / epsilon {
        l0 += 1;
    }
    l0 + 1
}

/// Sampled check of the epsilon-embedding property of the coordinate window
/// map: points of the level-k system agreeing on `[-L, L+m+1]` with equal
/// cyclic index stay `rho_{mp}`-closer than epsilon.
pub fn upper_certificate(
    cons: &Construction,
    k: u32,
    m: u64,
    epsilon: f64,
    trials: u32,
    seed: u64,
) -> Result<UpperEvidence> {
    let params = &cons.params;
    let l_window = l_for_epsilon(epsilon);
    let l = l_window as i64;
    let coverage = (l as u64 + m + 2 + METRIC_TRUNC as u64 + 2 * cons.word(k).len()) * 2;
    let mut rng = stage_rng(seed, Stream::UpperCertificate);
    let mut violations = 0;
    let mut max_rho: f64 = 0.0;
    let tail = 0.5f64.powi(METRIC_TRUNC as i32 - 1);
    for trial in 0..trials {
        let sa = generate_segment(
            cons,
            k,
            coverage,
            seed ^ (2 * trial as u64 + 1),
            FillMode::Random,
        )?;
        let mut sb = generate_segment(
            cons,
            k,
            coverage,
            seed ^ (2 * trial as u64 + 2),
            FillMode::Random,
        )?;
        for abs in -l..=(l + m as i64 + 1) {
            sb.set_entry(abs, sa.get(abs).unwrap().clone())?;
        }
        let i = rng.gen_range(0..params.p);
        let pa = SkewPoint::new(sa, i, params.p);
        let pb = SkewPoint::new(sb, i, params.p);
        let rho = metric_rho_n(&pa, &pb, m * params.p as u64, METRIC_TRUNC)?;
        max_rho = max_rho.max(rho);
        if rho + tail >= epsilon {
            violations += 1;
        }
    }
    let word = cons.word(k);
    let n_len = word.len();
    // ceil((2L + m + 2)/N_k)
    let numer = 2 * l_window as u64 + m + 2;
    let ceil = numer.div_ceil(n_len);
    let bound_at_m = (from_int(ceil) + from_int(1))
        * big_ratio(2, 1)
        * from_int(n_len)
        * big_ratio(params.q as i64, 1)
        * (cons.exact_r() + from_int(1) / from_int(n_len))
        / (from_int(m) * big_ratio(params.p as i64, 1));
    let (_, limit, _) = exact_bounds(cons, k);
    Ok(UpperEvidence {
        k,
        m,
        epsilon,
        l_window,
        trials,
        violations,
        max_rho,
        tail,
        bound_at_m: to_f64(&bound_at_m),
        bound_limit: to_f64(&limit),
    })
}

/// Level summary combining the exact identities and sampled evidence.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub k: u32,
    pub n_len: u64,
    pub stars: u64,
    pub lower_k: f64,
    pub upper_k: f64,
    pub gap: f64,
    pub lower_exact: String,
    pub upper_exact: String,
    pub target_s: f64,
    pub widim_epsilon: f64,
    pub l_window: u32,
    pub violations: Vec<String>,
}

pub fn mdim_report(
    cons: &Construction,
    k: u32,
    lower_ev: &LowerEvidence,
    upper_ev: &UpperEvidence,
) -> CertificateReport {
    let word = cons.word(k);
    let (lower, upper, gap) = exact_bounds(cons, k);
    let mut violations = Vec::new();
    if lower_ev.violations > 0 {
        violations.push(format!(
            "distance-increasing: {} of {} pairs violated (min slack {})",
            lower_ev.violations, lower_ev.trials, lower_ev.min_slack
        ));
    }
    if upper_ev.violations > 0 {
        violations.push(format!(
            "epsilon-embedding: {} of {} collisions exceeded eps={}",
            upper_ev.violations, upper_ev.trials, upper_ev.epsilon
        ));
    }
    let s_exact = cons.exact_r() * big_ratio(2 * cons.params.q as i64, cons.params.p as i64);
    if s_exact >= lower {
        violations.push("sandwich: s >= lower bound".into());
    }
    if lower > upper {
        violations.push("sandwich: lower > upper".into());
    }
    CertificateReport {
        k,
        n_len: word.len(),
        stars: word.star_count(),
        lower_k: to_f64(&lower),
        upper_k: to_f64(&upper),
        gap: to_f64(&gap),
        lower_exact: lower.to_string(),
        upper_exact: upper.to_string(),
        target_s: cons.params.s,
        widim_epsilon: upper_ev.epsilon,
        l_window: upper_ev.l_window,
        violations,
    }
}
