//! Discrete metrics: the weighted product metric on the shift space, the skew
//! metric on `Y × Z_p`, and its Bowen-style maxima.

use super::segment::SubshiftSegment;
use crate::error::Result;

/// Truncated `D_1(x, y) = sum_n d(x_n, y_n) / 2^|n|` plus its tail bound.
///
/// Symbols have diameter 1, so the dropped tail is at most
/// `sum_{|n|>N} 2^-|n| = 2^{-N+1}`.
pub fn metric_d1(x: &SubshiftSegment, y: &SubshiftSegment, trunc: u32) -> Result<(f64, f64)> {
    d1_shifted(x, y, 0, trunc)
}

fn d1_shifted(
    x: &SubshiftSegment,
    y: &SubshiftSegment,
    shift: i64,
    trunc: u32,
) -> Result<(f64, f64)> {
    let t = trunc as i64;
    x.require_coverage(shift - t, shift + t)?;
    y.require_coverage(shift - t, shift + t)?;
    let mut value = 0.0;
    for n in -t..=t {
        let weight = 0.5f64.powi(n.unsigned_abs() as i32);
        let a = x.get(n + shift).unwrap();
        let b = y.get(n + shift).unwrap();
        value += weight * a.distance(b);
    }
    Ok((value, 0.5f64.powi(trunc as i32 - 1)))
}

/// A point of `Y × Z_p` at desk scale: a finite window plus the cyclic index.
#[derive(Debug, Clone)]
pub struct SkewPoint {
    pub segment: SubshiftSegment,
    pub i: u32,
    pub p: u32,
}

impl SkewPoint {
    pub fn new(segment: SubshiftSegment, i: u32, p: u32) -> SkewPoint {
        assert!(i < p, "cyclic index out of range");
        SkewPoint { segment, i, p }
    }

    /// The skew map `S`: advance the cyclic index; on wrap, shift the base
    /// point once. Pure index bookkeeping on the stored window.
    pub fn apply_s(&self) -> SkewPoint {
        if self.i + 1 < self.p {
            SkewPoint {
                segment: self.segment.clone(),
                i: self.i + 1,
                p: self.p,
            }
        } else {
            SkewPoint {
                segment: self.segment.shifted(1),
                i: 0,
                p: self.p,
            }
        }
    }

    pub fn apply_s_inverse(&self) -> SkewPoint {
        if self.i > 0 {
            SkewPoint {
                segment: self.segment.clone(),
                i: self.i - 1,
                p: self.p,
            }
        } else {
            SkewPoint {
                segment: self.segment.shifted(-1),
                i: self.p - 1,
                p: self.p,
            }
        }
    }
}

/// `rho((x,i),(y,j))`: the product metric, `2` across distinct fibers.
pub fn metric_rho(x: &SkewPoint, y: &SkewPoint, trunc: u32) -> Result<f64> {
    if x.i != y.i {
        return Ok(2.0);
    }
    Ok(metric_d1(&x.segment, &y.segment, trunc)?.0)
}

/// `rho_n = max_{0 <= l < n} rho(S^l x, S^l y)`, evaluated by index
/// bookkeeping: after `l` steps both points carry the same cyclic index, and
/// the base points have been shifted `floor((l + i)/p)` times.
pub fn metric_rho_n(x: &SkewPoint, y: &SkewPoint, n: u64, trunc: u32) -> Result<f64> {
    assert_eq!(x.p, y.p);
    assert!(n >= 1);
    if x.i != y.i {
        // fibers never re-align under simultaneous application of S
        return Ok(2.0);
    }
    let p = x.p as u64;
    let i0 = x.i as u64;
    let mut worst = 0.0f64;
    let mut shift_done: i64 = -1;
    for l in 0..n {
        let shift = ((l + i0) / p) as i64;
        if shift == shift_done {
            continue; // same base configuration as the previous step
        }
        shift_done = shift;
        let (d, _) = d1_shifted(&x.segment, &y.segment, shift, trunc)?;
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Symbol;

    fn seg(offset: i64, symbols: Vec<Symbol>) -> SubshiftSegment {
        SubshiftSegment {
            offset,
            entries: symbols,
            depth: 0,
        }
    }

    fn constant(len: usize, v: f64) -> Vec<Symbol> {
        vec![Symbol::new(vec![[v, v]]); len]
    }

    #[test]
    fn d1_zero_on_equal() {
        let x = seg(-10, constant(21, 0.3));
        let (d, tail) = metric_d1(&x, &x, 10).unwrap();
        assert_eq!(d, 0.0);
        assert_eq!(tail, 0.5f64.powi(9));
    }

    #[test]
    fn d1_weights() {
        // difference only at n=0 gets weight 1
        let x = seg(-5, constant(11, 0.0));
        let mut y = seg(-5, constant(11, 0.0));
        y.set_entry(0, Symbol::new(vec![[0.25, 0.0]])).unwrap();
        let (d, _) = metric_d1(&x, &y, 5).unwrap();
        assert!((d - 0.25).abs() < 1e-15);

        // differences of 1 at n = ±1 sum to 1
        let mut z = seg(-5, constant(11, 0.0));
        z.set_entry(1, Symbol::new(vec![[1.0, 1.0]])).unwrap();
        z.set_entry(-1, Symbol::new(vec![[1.0, 1.0]])).unwrap();
        let (d, _) = metric_d1(&x, &z, 5).unwrap();
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn d1_coverage_error() {
        let x = seg(0, constant(5, 0.0));
        let y = seg(0, constant(5, 0.0));
        assert!(metric_d1(&x, &y, 3).is_err());
    }

    #[test]
    fn rho_distinct_fibers() {
        let x = SkewPoint::new(seg(-5, constant(11, 0.0)), 0, 3);
        let y = SkewPoint::new(seg(-5, constant(11, 0.0)), 1, 3);
        assert_eq!(metric_rho(&x, &y, 5).unwrap(), 2.0);
        assert_eq!(metric_rho_n(&x, &y, 6, 5).unwrap(), 2.0);
    }

    #[test]
    fn rho_same_point() {
        let x = SkewPoint::new(seg(-5, constant(11, 0.7)), 2, 3);
        assert_eq!(metric_rho(&x, &x, 5).unwrap(), 0.0);
    }

    #[test]
    fn s_cycles_and_inverts() {
        let x = SkewPoint::new(seg(-5, constant(11, 0.7)), 0, 3);
        let mut cur = x.clone();
        for _ in 0..3 {
            cur = cur.apply_s();
        }
        // p applications = one shift, index back to 0
        assert_eq!(cur.i, 0);
        assert_eq!(cur.segment.offset, x.segment.offset - 1);
        let back = cur.apply_s_inverse().apply_s();
        assert_eq!(back.i, cur.i);
        assert_eq!(back.segment.offset, cur.segment.offset);
    }

    #[test]
    fn rho_n_sees_shifted_difference() {
        // points differ only at absolute index 1; after one sigma-step the
        // difference sits at weight-1 position
        let x = SkewPoint::new(seg(-8, constant(17, 0.0)), 0, 2);
        let mut ym = seg(-8, constant(17, 0.0));
        ym.set_entry(1, Symbol::new(vec![[0.5, 0.5]])).unwrap();
        let y = SkewPoint::new(ym, 0, 2);
        let rho1 = metric_rho(&x, &y, 6).unwrap();
        assert!((rho1 - 0.25).abs() < 1e-12); // weight 2^-1 at n=1
        let rho_n = metric_rho_n(&x, &y, 4, 6).unwrap(); // includes one shift
        assert!((rho_n - 0.5).abs() < 1e-12, "rho_n = {rho_n}");
    }
}
