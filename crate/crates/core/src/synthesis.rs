//! Signal synthesis: truncated band-limited lattice expansions of subshift
//! points, the modulation map, skew dynamics on signals, coefficient
//! recovery, realification and integer sampling.

use crate::error::{Error, Result};
use crate::kernel::InterpolationKernel;
use crate::symbolic::SkewPoint;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Sign of the modulation exponent. `Positive` places the spectral line of
/// the phase term at `+c`, matching the stated codomain of the modulation
/// map; `Negative` is the literal formula `e^{-2πi c(x+i)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpSign {
    Positive,
    Negative,
}

impl ExpSign {
    fn factor(self) -> f64 {
        match self {
            ExpSign::Positive => 1.0,
            ExpSign::Negative => -1.0,
        }
    }

    pub fn parse(s: &str) -> Result<ExpSign> {
        match s {
            "positive" | "+" => Ok(ExpSign::Positive),
            "negative" | "-" => Ok(ExpSign::Negative),
            other => Err(Error::InvalidArgument(format!(
                "unknown exp sign `{other}`"
            ))),
        }
    }
}

/// Closed-form summand `scale * e^{sign*2πi*c*(x+i)}`. The cyclic offset `i`
/// is well defined modulo `p` because `c*p` is an integer.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseTerm {
    pub c: f64,
    pub i: u32,
    pub p: u32,
    pub scale: f64,
    pub sign: ExpSign,
}

impl PhaseTerm {
    pub fn eval(&self, x: f64) -> Complex64 {
        let arg = self.sign.factor() * 2.0 * PI * self.c * (x + self.i as f64);
        self.scale * Complex64::new(arg.cos(), arg.sin())
    }

    /// Spectral line frequency of this term.
    pub fn line(&self) -> f64 {
        self.sign.factor() * self.c
    }
}

/// The unit-modulus modulation signal `H(i)`.
pub fn phase_h(i: u32, p: u32, c: f64, sign: ExpSign) -> PhaseTerm {
    assert!(i < p);
    PhaseTerm {
        c,
        i,
        p,
        scale: 1.0,
        sign,
    }
}

/// A truncated lattice expansion
/// `g(x) = (1/C) Σ_{n,j} c_{n,j} f(x - (u/v)(n·q + j) + i) + extra(x)`
/// with a certified truncation error bound.
///
/// `phase_i` is both the frozen lattice phase of the expansion and the
/// skew counter: the skew step keeps the two synchronized exactly.
#[derive(Debug, Clone)]
pub struct BandSignal {
    pub kernel: InterpolationKernel,
    /// Cyclic group order.
    pub p: u32,
    /// Counter in `[0, p)`, equal to the lattice phase of the expansion.
    pub phase_i: u32,
    pub norm_c: f64,
    pub n_min: i64,
    pub n_max: i64,
    /// Dense coefficients, index `(n - n_min) * q + j`.
    pub coeffs: Vec<Complex64>,
    pub extra: Option<PhaseTerm>,
}

impl BandSignal {
    pub fn zero(
        kernel: InterpolationKernel,
        norm_c: f64,
        p: u32,
        phase_i: u32,
        n_min: i64,
        n_max: i64,
    ) -> BandSignal {
        assert!(n_min <= n_max);
        let q = kernel.v as usize;
        let len = (n_max - n_min + 1) as usize * q;
        BandSignal {
            kernel,
            p,
            phase_i,
            norm_c,
            n_min,
            n_max,
            coeffs: vec![Complex64::new(0.0, 0.0); len],
            extra: None,
        }
    }

    pub fn q(&self) -> u32 {
        self.kernel.v
    }

    pub fn coeff(&self, n: i64, j: u32) -> Complex64 {
        debug_assert!(n >= self.n_min && n <= self.n_max && j < self.q());
        self.coeffs[(n - self.n_min) as usize * self.q() as usize + j as usize]
    }

    pub fn set_coeff(&mut self, n: i64, j: u32, value: Complex64) {
        assert!(n >= self.n_min && n <= self.n_max && j < self.q());
        let q = self.q() as usize;
        self.coeffs[(n - self.n_min) as usize * q + j as usize] = value;
    }

    fn node(&self, n: i64, j: u32) -> f64 {
        self.kernel.node_spacing() * (n * self.q() as i64 + j as i64) as f64
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let q = self.q();
        let phase = self.phase_i as f64;
        let mut idx = 0usize;
        for n in self.n_min..=self.n_max {
            for j in 0..q {
                let c = self.coeffs[idx];
                idx += 1;
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                acc += c * self.kernel.eval(x - self.node(n, j) + phase);
            }
        }
        acc /= self.norm_c;
        if let Some(extra) = &self.extra {
            acc += extra.eval(x);
        }
        acc
    }

    /// Certified bound on the truncation error of `eval` at `x`: the dropped
    /// lattice nodes, enveloped by `C1/(1+d^2)` and a worst-case coefficient
    /// modulus `sqrt(2)`, bounded by one term plus the integral tail on each
    /// side. Infinite if `x + phase` falls outside the covered lattice span.
    pub fn truncation_bound(&self, x: f64) -> f64 {
        let spacing = self.kernel.node_spacing();
        let q = self.q() as i64;
        let y = x + self.phase_i as f64;
        let lambda_left = spacing * (self.n_min * q - 1) as f64;
        let lambda_right = spacing * ((self.n_max + 1) * q) as f64;
        let d_left = y - lambda_left;
        let d_right = lambda_right - y;
        if d_left <= 0.0 || d_right <= 0.0 {
            return f64::INFINITY;
        }
        let tail =
            |d: f64| self.kernel.c1 * (1.0 / (1.0 + d * d) + (PI / 2.0 - d.atan()) / spacing);
        (2.0f64).sqrt() / self.norm_c * (tail(d_left) + tail(d_right))
    }

    /// Nominal spectral support: the kernel band, extended by the phase line
    /// when a closed-form term is attached.
    pub fn band_hint(&self) -> (f64, f64) {
        let (mut lo, mut hi) = self.kernel.band();
        if let Some(extra) = &self.extra {
            lo = lo.min(extra.line());
            hi = hi.max(extra.line());
        }
        (lo, hi)
    }

    /// The skew step `T`: `(g, i) -> (g(·+1), i+1 mod p)`. Both branches are
    /// exact relabelings of the expansion: below the wrap the shift is
    /// absorbed by the lattice phase, at the wrap by reindexing coefficients
    /// one node block down.
    pub fn apply_t(&self) -> BandSignal {
        let mut next = self.clone();
        if self.phase_i + 1 < self.p {
            next.phase_i += 1;
        } else {
            next.phase_i = 0;
            next.n_min -= 1;
            next.n_max -= 1;
        }
        if let Some(extra) = &mut next.extra {
            extra.i = (extra.i + 1) % extra.p;
        }
        next
    }
}

/// The synthesis map `F`: read coefficients `a_n^{j,1} + i a_n^{j,2}` off the
/// segment's symbols over the window and attach kernel, normalization and
/// phase. Errors if the segment does not cover the window.
pub fn synth_f(
    point: &SkewPoint,
    kernel: &InterpolationKernel,
    norm_c: f64,
    window_radius: i64,
) -> Result<BandSignal> {
    let (n_min, n_max) = (-window_radius, window_radius);
    if !point.segment.covers(n_min, n_max) {
        return Err(Error::WindowMismatch {
            lo: n_min,
            hi: n_max,
        });
    }
    let mut signal = BandSignal::zero(kernel.clone(), norm_c, point.p, point.i, n_min, n_max);
    for n in n_min..=n_max {
        let symbol = point.segment.get(n).unwrap();
        for (j, pair) in symbol.pairs().iter().enumerate() {
            signal.set_coeff(n, j as u32, Complex64::new(pair[0], pair[1]));
        }
    }
    Ok(signal)
}

/// The modulation map `G`: halve the expansion and attach `H(i)/2`.
pub fn apply_g(signal: &BandSignal, i: u32, c: f64, sign: ExpSign) -> BandSignal {
    assert_eq!(signal.phase_i, i, "modulation index must match the counter");
    let mut out = signal.clone();
    for coeff in &mut out.coeffs {
        *coeff *= 0.5;
    }
    debug_assert!(
        out.extra.is_none(),
        "modulating an already modulated signal"
    );
    out.extra = Some(PhaseTerm {
        c,
        i,
        p: signal.p,
        scale: 0.5,
        sign,
    });
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveredCoeff {
    pub n: i64,
    pub j: u32,
    pub re: f64,
    pub im: f64,
    /// Certified error bound at this node.
    pub bound: f64,
}

/// Invert `F` on its lattice: at node `x = (u/v)(n·q+j) - i` every other
/// in-window kernel translate vanishes, so `C·g(x)` recovers the coefficient
/// up to `C` times the truncation bound.
pub fn recover_coeffs(signal: &BandSignal, window_radius: i64) -> Vec<RecoveredCoeff> {
    assert!(
        signal.extra.is_none(),
        "recovery expects a plain synthesis image"
    );
    let mut out = Vec::new();
    for n in -window_radius..=window_radius {
        for j in 0..signal.q() {
            let x = signal.node(n, j) - signal.phase_i as f64;
            let value = signal.eval(x) * signal.norm_c;
            let bound = signal.norm_c * signal.truncation_bound(x);
            out.push(RecoveredCoeff {
                n,
                j,
                re: value.re,
                im: value.im,
                bound,
            });
        }
    }
    out
}

/// A real-valued view `x ↦ Re g(x) = (g(x) + conj g(x))/2`.
#[derive(Debug, Clone)]
pub struct RealSignal {
    pub inner: BandSignal,
}

impl RealSignal {
    pub fn eval(&self, x: f64) -> f64 {
        self.inner.eval(x).re
    }

    /// Band of the realified signal: symmetrized hull of the input band.
    pub fn band_hint(&self) -> (f64, f64) {
        let (lo, hi) = self.inner.band_hint();
        let m = lo.abs().max(hi.abs());
        (-m, m)
    }

    pub fn truncation_bound(&self, x: f64) -> f64 {
        self.inner.truncation_bound(x)
    }
}

pub fn realify(signal: &BandSignal) -> RealSignal {
    RealSignal {
        inner: signal.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegerSamples {
    pub n_lo: i64,
    pub raw: Vec<f64>,
    /// `(raw + 1)/2`, the affine embedding of `[-1, 1]` into `[0, 1]`.
    pub rescaled: Vec<f64>,
}

/// Restriction to the integer lattice followed by the affine rescale.
pub fn integer_sampling(signal: &RealSignal, n_lo: i64, n_hi: i64) -> IntegerSamples {
    assert!(n_lo <= n_hi);
    let raw: Vec<f64> = (n_lo..=n_hi).map(|n| signal.eval(n as f64)).collect();
    let rescaled = raw.iter().map(|v| (v + 1.0) / 2.0).collect();
    IntegerSamples {
        n_lo,
        raw,
        rescaled,
    }
}

/// Anything evaluable as a complex-valued function of time.
pub trait ComplexSignal {
    fn eval_at(&self, x: f64) -> Complex64;
}

impl ComplexSignal for BandSignal {
    fn eval_at(&self, x: f64) -> Complex64 {
        self.eval(x)
    }
}

impl ComplexSignal for RealSignal {
    fn eval_at(&self, x: f64) -> Complex64 {
        Complex64::new(self.eval(x), 0.0)
    }
}

impl ComplexSignal for PhaseTerm {
    fn eval_at(&self, x: f64) -> Complex64 {
        self.eval(x)
    }
}

impl<T: ComplexSignal> ComplexSignal for &T {
    fn eval_at(&self, x: f64) -> Complex64 {
        (*self).eval_at(x)
    }
}

/// Grid estimate of `D(g1, g2) = Σ_n sup_{[-n,n]} |g1-g2| / 2^n` with an
/// error bound from the geometric tail (`sup <= 2` on the unit ball) and a
/// configured Lipschitz budget for the grid gaps.
pub fn metric_d<S1: ComplexSignal, S2: ComplexSignal>(
    g1: S1,
    g2: S2,
    n_max: u32,
    grid_step: f64,
    lipschitz_budget: f64,
) -> (f64, f64) {
    assert!(n_max >= 1 && grid_step > 0.0);
    let samples_per_unit = (1.0 / grid_step).ceil() as i64;
    let step = 1.0 / samples_per_unit as f64;
    let half = n_max as i64 * samples_per_unit;
    // |difference| sampled on [-n_max, n_max]
    let diffs: Vec<f64> = (-half..=half)
        .map(|k| {
            let x = k as f64 * step;
            (g1.eval_at(x) - g2.eval_at(x)).norm()
        })
        .collect();
    let center = half as usize;
    // running sup over symmetric windows, expanding outward
    let mut sups = vec![0.0f64; (half + 1) as usize];
    let mut cur = diffs[center];
    sups[0] = cur;
    for t in 1..=half as usize {
        cur = cur.max(diffs[center + t]).max(diffs[center - t]);
        sups[t] = cur;
    }
    let mut value = 0.0;
    for n in 1..=n_max {
        let idx = (n as i64 * samples_per_unit) as usize;
        value += sups[idx] * 0.5f64.powi(n as i32);
    }
    let tail = 2.0 * 0.5f64.powi(n_max as i32);
    let grid_error = lipschitz_budget * step / 2.0;
    (value, tail + grid_error)
}
