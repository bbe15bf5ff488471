//! Windowed-DFT band checks standing in for distributional spectral support,
//! plus the sampling-theorem injectivity evidence.

use crate::error::{Error, Result};
use crate::seeding::{stage_rng, Stream};
use crate::synthesis::{BandSignal, RealSignal};
use num_complex::Complex64;
use rand::Rng;
use rustfft::FftPlanner;
use serde::Serialize;
use std::f64::consts::PI;

/// A complex-valued signal with a nominal spectral support.
pub trait Signal {
    fn eval(&self, x: f64) -> Complex64;
    fn band_hint(&self) -> (f64, f64);
}

impl Signal for BandSignal {
    fn eval(&self, x: f64) -> Complex64 {
        BandSignal::eval(self, x)
    }
    fn band_hint(&self) -> (f64, f64) {
        BandSignal::band_hint(self)
    }
}

impl Signal for RealSignal {
    fn eval(&self, x: f64) -> Complex64 {
        Complex64::new(RealSignal::eval(self, x), 0.0)
    }
    fn band_hint(&self) -> (f64, f64) {
        RealSignal::band_hint(self)
    }
}

/// Pure complex exponential, the canonical band-check probe.
#[derive(Debug, Clone, Copy)]
pub struct Tone {
    pub freq: f64,
    pub amplitude: f64,
}

impl Signal for Tone {
    fn eval(&self, x: f64) -> Complex64 {
        let arg = 2.0 * PI * self.freq * x;
        self.amplitude * Complex64::new(arg.cos(), arg.sin())
    }
    fn band_hint(&self) -> (f64, f64) {
        (self.freq, self.freq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    /// Raised cosine, zero at the window ends; sidelobes fall off cubically.
    Hann,
    Rect,
}

impl WindowKind {
    fn weight(self, x: f64, radius: f64) -> f64 {
        match self {
            WindowKind::Hann => 0.5 * (1.0 + (PI * x / radius).cos()),
            WindowKind::Rect => 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEstimate {
    /// Ascending, symmetric about zero, step `1/(2*window_radius)`.
    pub freqs: Vec<f64>,
    pub power: Vec<f64>,
    pub window_kind: WindowKind,
    /// Effective half-span `M*step/2` of the sampled window.
    pub window_radius: f64,
    pub sample_step: f64,
    /// Discrete energy of the windowed samples (equals total power by Parseval).
    pub windowed_energy: f64,
}

impl SpectrumEstimate {
    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }

    pub fn bin_width(&self) -> f64 {
        1.0 / (2.0 * self.window_radius)
    }

    /// Frequency of the strongest bin, `None` for an all-zero spectrum.
    pub fn dominant_frequency(&self) -> Option<f64> {
        let (idx, &max) = self
            .power
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))?;
        (max > 0.0).then(|| self.freqs[idx])
    }
}

/// DFT of the windowed, uniformly sampled signal.
///
/// The sample step must clear the Nyquist limit of the signal's nominal band
/// with a factor-2 margin.
pub fn spectrum_estimate(
    signal: &dyn Signal,
    window_radius: f64,
    sample_step: f64,
    window_kind: WindowKind,
) -> Result<SpectrumEstimate> {
    assert!(window_radius > 0.0 && sample_step > 0.0);
    let (lo, hi) = signal.band_hint();
    let band_max = lo.abs().max(hi.abs());
    let limit = 1.0 / (2.0 * band_max.max(f64::MIN_POSITIVE));
    if band_max > 0.0 && sample_step >= limit {
        return Err(Error::NyquistViolation {
            step: sample_step,
            band_max,
            limit,
        });
    }
    let k = (window_radius / sample_step).round().max(1.0) as i64;
    let m = (2 * k + 1) as usize;
    let radius = k as f64 * sample_step;
    let mut buf: Vec<Complex64> = (-k..=k)
        .map(|j| {
            let x = j as f64 * sample_step;
            signal.eval(x) * window_kind.weight(x, radius)
        })
        .collect();
    let windowed_energy: f64 = buf.iter().map(|z| z.norm_sqr()).sum();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);

    let effective_radius = m as f64 * sample_step / 2.0;
    let freq_step = 1.0 / (m as f64 * sample_step);
    let mut indexed: Vec<(f64, f64)> = buf
        .iter()
        .enumerate()
        .map(|(bin, z)| {
            let signed = if bin as u64 <= (m as u64) / 2 {
                bin as i64
            } else {
                bin as i64 - m as i64
            };
            (signed as f64 * freq_step, z.norm_sqr() / m as f64)
        })
        .collect();
    indexed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (freqs, power) = indexed.into_iter().unzip();
    Ok(SpectrumEstimate {
        freqs,
        power,
        window_kind,
        window_radius: effective_radius,
        sample_step,
        windowed_energy,
    })
}

/// Fraction of total power inside `[lo - guard, hi + guard]`.
/// An all-zero spectrum has nothing outside any band; the ratio is 1.
pub fn band_energy_ratio(est: &SpectrumEstimate, lo: f64, hi: f64, guard: f64) -> f64 {
    let total = est.total_power();
    if total == 0.0 {
        return 1.0;
    }
    let inside: f64 = est
        .freqs
        .iter()
        .zip(&est.power)
        .filter(|(f, _)| **f >= lo - guard && **f <= hi + guard)
        .map(|(_, p)| p)
        .sum();
    inside / total
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplingEvidence {
    pub half_band: f64,
    pub step: f64,
    pub pairs_tested: u32,
    /// Smallest max-over-samples separation among the tested pairs.
    pub min_separation: f64,
    pub floor: f64,
    pub violations: u32,
}

/// Sampling-theorem evidence: distinct real signals band-limited in
/// `[-half_band, half_band]` with `2*half_band*step < 1` must be separated by
/// their lattice samples. Refuses to run when the hypothesis fails.
pub fn sampling_injectivity_check(
    signals: &[RealSignal],
    half_band: f64,
    step: f64,
    sample_range: i64,
    trials: u32,
    seed: u64,
    floor: f64,
) -> Result<SamplingEvidence> {
    let product = 2.0 * half_band * step;
    if product >= 1.0 {
        return Err(Error::HypothesisViolation {
            half_band,
            step,
            product,
        });
    }
    if signals.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two signals to compare".into(),
        ));
    }
    for sig in signals {
        let (lo, hi) = sig.band_hint();
        if lo < -half_band || hi > half_band {
            return Err(Error::InvalidArgument(format!(
                "signal band [{lo}, {hi}] exceeds [-{half_band}, {half_band}]"
            )));
        }
    }
    let mut rng = stage_rng(seed, Stream::Sampling);
    let mut min_separation = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..trials {
        let a = rng.gen_range(0..signals.len());
        let mut b = rng.gen_range(0..signals.len() - 1);
        if b >= a {
            b += 1;
        }
        let mut max_delta: f64 = 0.0;
        for n in -sample_range..=sample_range {
            let x = step * n as f64;
            max_delta = max_delta.max((signals[a].eval(x) - signals[b].eval(x)).abs());
        }
        min_separation = min_separation.min(max_delta);
        if max_delta <= floor {
            violations += 1;
        }
    }
    Ok(SamplingEvidence {
        half_band,
        step,
        pairs_tested: trials,
        min_separation,
        floor,
        violations,
    })
}
