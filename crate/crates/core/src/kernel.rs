//! The band-limited interpolation kernel, its decay envelope and the
//! lattice-sum normalization constant.

use crate::error::{Error, Result};
use crate::params::ConstructionParams;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (PI * t).sin() / (PI * t)
    }
}

/// `f(x) = sinc((v/u)x) * sinc(eps_sharp*(v/u)x) * e^{2πi x0 x}`.
///
/// `f(0) = 1`, `f((u/v)n) = 0` for nonzero integers `n`, the continuum band
/// is `[t1, t1 + (1+eps_sharp)(v/u)]`, and `|f(x)| <= C1/(1+x^2)` with the
/// constant produced by `decay_constant`.
#[derive(Debug, Clone, Serialize)]
pub struct InterpolationKernel {
    /// Lattice numerator (`= p`); nodes sit at multiples of `u/v`.
    pub u: u32,
    /// Lattice denominator (`= q`).
    pub v: u32,
    /// Left end of the admissible band (`= a + eps0`).
    pub t1: f64,
    /// Right end of the admissible band (`= b`).
    pub t2: f64,
    /// Sharpness of the second sinc factor; `u/v` reproduces the strict choice.
    pub eps_sharp: f64,
    /// Modulation center `t1 + (1+eps_sharp)(v/u)/2`.
    pub x0: f64,
    /// Decay envelope constant.
    pub c1: f64,
}

impl InterpolationKernel {
    /// Node spacing `u/v` of the interpolation lattice.
    pub fn node_spacing(&self) -> f64 {
        self.u as f64 / self.v as f64
    }

    /// Continuum band `[t1, t1 + (1+eps_sharp)(v/u)]` of the closed form.
    pub fn band(&self) -> (f64, f64) {
        let alpha = self.v as f64 / self.u as f64;
        (self.t1, self.t1 + (1.0 + self.eps_sharp) * alpha)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let alpha = self.v as f64 / self.u as f64;
        let magnitude = sinc(alpha * x) * sinc(self.eps_sharp * alpha * x);
        let phase = 2.0 * PI * self.x0 * x;
        magnitude * Complex64::new(phase.cos(), phase.sin())
    }

    /// Pointwise envelope `C1 / (1 + x^2)`.
    pub fn envelope(&self, x: f64) -> f64 {
        self.c1 / (1.0 + x * x)
    }
}

const SCAN_RADIUS_DEFAULT: f64 = 50.0;
const GRID_STEP_DEFAULT: f64 = 1e-3;
/// Relative headroom added to the grid supremum; covers the sub-grid-step
/// deficit of a smooth maximum at the default step.
const GRID_SAFETY: f64 = 1e-4;

/// Build the kernel for a parameter set, validating band inclusion and
/// computing the decay constant.
pub fn make_kernel(
    params: &ConstructionParams,
    eps_sharp: Option<f64>,
) -> Result<InterpolationKernel> {
    let u = params.p;
    let v = params.q;
    let t1 = params.a + params.eps0;
    let t2 = params.b;
    let eps_sharp = eps_sharp.unwrap_or_else(|| params.kernel_sharpness());
    let alpha = v as f64 / u as f64;
    let band_hi = t1 + (1.0 + eps_sharp) * alpha;
    // negated form rejects NaN sharpness as well
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(eps_sharp > 0.0) || band_hi > t2 {
        return Err(Error::BandOverflow {
            band_lo: t1,
            band_hi,
            lo: t1,
            hi: t2,
        });
    }
    let mut kernel = InterpolationKernel {
        u,
        v,
        t1,
        t2,
        eps_sharp,
        x0: t1 + (1.0 + eps_sharp) * alpha / 2.0,
        c1: 0.0,
    };
    kernel.c1 = decay_constant(&kernel, SCAN_RADIUS_DEFAULT, GRID_STEP_DEFAULT);
    Ok(kernel)
}

/// Envelope constant: the grid supremum of `(1+x^2)|f(x)|` on `[0, R]`
/// (|f| is even) with a small safety factor, maxed with the analytic tail
/// coefficient valid for all `|x| >= R`:
/// `(1+x^2)|f(x)| <= (1+x^2)/(π^2 eps_sharp (v/u)^2 x^2)`, decreasing in |x|.
pub fn decay_constant(kernel: &InterpolationKernel, scan_radius: f64, grid_step: f64) -> f64 {
    let mut sup: f64 = 0.0;
    let steps = (scan_radius / grid_step).ceil() as u64;
    for i in 0..=steps {
        let x = i as f64 * grid_step;
        let value = (1.0 + x * x) * kernel.eval(x).norm();
        sup = sup.max(value);
    }
    let alpha = kernel.v as f64 / kernel.u as f64;
    let r2 = scan_radius * scan_radius;
    let tail = (1.0 + r2) / (PI * PI * kernel.eps_sharp * alpha * alpha * r2);
    (sup * (1.0 + GRID_SAFETY)).max(tail)
}

/// Supremum over one lattice period of
/// `x ↦ sum_{λ in (u/v)Z} C1 / (1 + (x-λ)^2)`,
/// grid-scanned with the closed-form integral tail added. This is the
/// constant making every normalized lattice expansion land in the unit ball;
/// it is taken against the synthesis lattice `(u/v)Z`.
pub fn normalization_c(kernel: &InterpolationKernel, grid_step: f64) -> f64 {
    let spacing = kernel.node_spacing();
    let terms_radius = 4000usize;
    let mut sup: f64 = 0.0;
    let steps = (spacing / grid_step).ceil() as u64;
    for i in 0..=steps {
        let x = (i as f64 * grid_step).min(spacing);
        let mut total = 0.0;
        for n in -(terms_radius as i64)..=(terms_radius as i64) {
            let d = x - n as f64 * spacing;
            total += kernel.c1 / (1.0 + d * d);
        }
        // integral tail: both one-sided sums beyond the enumerated terms
        let far = (terms_radius as f64 - 1.0) * spacing;
        total += 2.0 * kernel.c1 / spacing * (PI / 2.0 - far.atan());
        sup = sup.max(total);
    }
    sup * (1.0 + GRID_SAFETY)
}
