//! Symbolic layer: alphabet, inductive pattern words, subshift segments and
//! the discrete metrics.

mod alphabet;
mod metric;
mod pattern;
mod segment;

pub use alphabet::{dense_set, AlphabetSpec, DenseSet, Symbol};
pub use metric::{metric_d1, metric_rho, metric_rho_n, SkewPoint};
pub use pattern::{initial_word, membership, next_level, Entry, PatternWord};
pub use segment::{
    generate_segment, minimality_evidence, window_admissible, FillMode, MinimalityReport,
    SubshiftSegment,
};

use crate::error::Result;
use crate::params::ConstructionParams;
use num_rational::BigRational;

/// Size caps for desk-scale construction; exceeding one raises `SizeOverflow`.
#[derive(Debug, Clone, Copy)]
pub struct BuildCaps {
    pub max_word_len: u64,
    pub max_fillings: u64,
    pub max_dense_points: u64,
}

impl Default for BuildCaps {
    fn default() -> Self {
        BuildCaps {
            max_word_len: 2_000_000,
            max_fillings: 4096,
            max_dense_points: 4096,
        }
    }
}

/// The inductive construction up to a fixed depth: one pattern word per level
/// plus the dense sets consumed while building them.
#[derive(Debug, Clone)]
pub struct Construction {
    pub params: ConstructionParams,
    pub alphabet: AlphabetSpec,
    words: Vec<PatternWord>,
    fills: Vec<DenseSet>,
}

impl Construction {
    /// Build levels 1..=k_max. Level k+1 is filled from the 1/k-dense set.
    pub fn build(
        params: &ConstructionParams,
        k_max: u32,
        caps: BuildCaps,
        n1_hint: Option<u64>,
    ) -> Result<Construction> {
        assert!(k_max >= 1, "need at least one level");
        let alphabet = AlphabetSpec { q: params.q };
        let mut words = vec![initial_word(params, n1_hint)];
        let mut fills = Vec::new();
        for k in 2..=k_max {
            let fill = dense_set(k - 1, &alphabet, caps.max_dense_points)?;
            let next = next_level(words.last().unwrap(), &fill, params, caps)?;
            fills.push(fill);
            words.push(next);
        }
        Ok(Construction {
            params: params.clone(),
            alphabet,
            words,
            fills,
        })
    }

    pub fn depth(&self) -> u32 {
        self.words.len() as u32
    }

    /// Pattern word of level `k` (1-based).
    pub fn word(&self, k: u32) -> &PatternWord {
        assert!(k >= 1 && k <= self.depth(), "level {k} not constructed");
        &self.words[(k - 1) as usize]
    }

    /// Dense set used to fill the tail blocks of level `k` (so `P_{k-1}`).
    pub fn fill_for(&self, k: u32) -> &DenseSet {
        assert!(k >= 2 && k <= self.depth());
        &self.fills[(k - 2) as usize]
    }

    pub fn exact_r(&self) -> BigRational {
        self.params.exact_r()
    }

    pub fn levels(&self) -> &[PatternWord] {
        &self.words
    }
}
