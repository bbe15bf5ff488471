//! The symbol space `K = ([0,1]^2)^q` and its 1/m-dense grids.

use crate::error::{Error, Result};
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphabetSpec {
    pub q: u32,
}

/// A point of `K`: `q` coordinate pairs in `[0,1]^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Symbol {
    pairs: Vec<[f64; 2]>,
}

impl Symbol {
    pub fn new(pairs: Vec<[f64; 2]>) -> Symbol {
        Symbol { pairs }
    }

    pub fn zero(q: u32) -> Symbol {
        Symbol {
            pairs: vec![[0.0, 0.0]; q as usize],
        }
    }

    /// Center of the cube; this is also the single point of the m=1 dense set.
    pub fn center(q: u32) -> Symbol {
        Symbol {
            pairs: vec![[0.5, 0.5]; q as usize],
        }
    }

    pub fn random<R: Rng>(q: u32, rng: &mut R) -> Symbol {
        Symbol {
            pairs: (0..q)
                .map(|_| [rng.gen::<f64>(), rng.gen::<f64>()])
                .collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn pairs(&self) -> &[[f64; 2]] {
        &self.pairs
    }

    pub fn pair_mut(&mut self, j: usize) -> &mut [f64; 2] {
        &mut self.pairs[j]
    }

    /// `max_j max(|Δ first|, |Δ second|)`; a metric of diameter 1 on `K`.
    pub fn distance(&self, other: &Symbol) -> f64 {
        assert_eq!(self.pairs.len(), other.pairs.len());
        self.pairs
            .iter()
            .zip(&other.pairs)
            .map(|(x, y)| (x[0] - y[0]).abs().max((x[1] - y[1]).abs()))
            .fold(0.0, f64::max)
    }

    /// Bit-exact key, usable for census maps.
    pub fn bits_key(&self) -> Vec<(u64, u64)> {
        self.pairs
            .iter()
            .map(|p| (p[0].to_bits(), p[1].to_bits()))
            .collect()
    }
}

/// A finite subset of `K` with covering radius at most `1/m`.
#[derive(Debug, Clone)]
pub struct DenseSet {
    pub m: u32,
    pub points: Vec<Symbol>,
}

impl DenseSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Product grid with per-axis points `(2i-1)/(2g)`, `g = ceil(m/2)`, over all
/// `2q` coordinates. Each coordinate is within `1/(2g) <= 1/m` of a grid
/// value, so the covering radius in the max metric is at most `1/m`.
pub fn dense_set(m: u32, alphabet: &AlphabetSpec, cap: u64) -> Result<DenseSet> {
    assert!(m >= 1);
    let g = m.div_ceil(2) as u64;
    let axes = 2 * alphabet.q;
    let count = g
        .checked_pow(axes)
        .filter(|&c| c <= cap)
        .ok_or(Error::SizeOverflow {
            what: "dense set",
            requested: (g as u128).saturating_pow(axes),
            cap: cap as u128,
        })?;
    let axis_values: Vec<f64> = (1..=g)
        .map(|i| (2 * i - 1) as f64 / (2 * g) as f64)
        .collect();
    let mut points = Vec::with_capacity(count as usize);
    // lexicographic over coordinates, first coordinate most significant
    for index in 0..count {
        let mut digits = vec![0usize; axes as usize];
        let mut rest = index;
        for d in (0..axes as usize).rev() {
            digits[d] = (rest % g) as usize;
            rest /= g;
        }
        let pairs = (0..alphabet.q as usize)
            .map(|j| [axis_values[digits[2 * j]], axis_values[digits[2 * j + 1]]])
            .collect();
        points.push(Symbol::new(pairs));
    }
    Ok(DenseSet { m, points })
}
