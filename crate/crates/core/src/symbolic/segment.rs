//! Finite windows of subshift points.

use super::alphabet::Symbol;
use super::pattern::{membership, Entry, PatternWord};
use super::Construction;
use crate::error::{Error, Result};
use crate::seeding::{stage_rng, Stream};

use serde::Serialize;
use serde_json::{json, Value};

/// A finite array of `K`-symbols anchored at an absolute index.
/// `entries[i]` is the symbol at absolute index `offset + i`.
#[derive(Debug, Clone)]
pub struct SubshiftSegment {
    pub offset: i64,
    pub entries: Vec<Symbol>,
    /// Level this segment is certified against.
    pub depth: u32,
}

impl SubshiftSegment {
    pub fn len(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, abs: i64) -> Option<&Symbol> {
        let idx = abs.checked_sub(self.offset)?;
        if idx < 0 {
            return None;
        }
        self.entries.get(idx as usize)
    }

    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        self.offset <= lo && hi < self.offset + self.entries.len() as i64
    }

    pub fn require_coverage(&self, lo: i64, hi: i64) -> Result<()> {
        if self.covers(lo, hi) {
            Ok(())
        } else {
            Err(Error::CoverageError { lo, hi })
        }
    }

    pub fn set_entry(&mut self, abs: i64, sym: Symbol) -> Result<()> {
        self.require_coverage(abs, abs)?;
        let idx = (abs - self.offset) as usize;
        self.entries[idx] = sym;
        Ok(())
    }

    /// One shift step: the point `σ(y)` with `σ(y)_n = y_{n+1}` is the same
    /// entry array read one index earlier.
    pub fn shifted(&self, steps: i64) -> SubshiftSegment {
        SubshiftSegment {
            offset: self.offset - steps,
            entries: self.entries.clone(),
            depth: self.depth,
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|s| {
                let flat: Vec<f64> = s.pairs().iter().flatten().copied().collect();
                json!(flat)
            })
            .collect();
        json!({
            "offset": self.offset,
            "depth": self.depth,
            "entries": entries,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillMode {
    Random,
    Zero,
}

/// Periodic concatenation of level-`depth` blocks, stars filled per mode.
///
/// The segment starts on a block boundary left of `-length/2`, so zero fill
/// reproduces the reference point (blocks of every level aligned at absolute
/// multiples of their length, free coordinates all zero).
pub fn generate_segment(
    construction: &Construction,
    depth: u32,
    length: u64,
    seed: u64,
    fill_mode: FillMode,
) -> Result<SubshiftSegment> {
    let word = construction.word(depth);
    let n_len = word.len();
    if length < n_len {
        return Err(Error::SegmentTooShort {
            len: length,
            required: n_len,
        });
    }
    let half = (length / 2) as i64;
    // anchor on the block boundary at or right of -length/2, so the right
    // half keeps at least length/2 of coverage
    let blocks_left = half / n_len as i64;
    let offset = -blocks_left * n_len as i64;
    let mut rng = stage_rng(seed, Stream::Construct);
    let q = construction.params.q;
    let zero = Symbol::zero(q);
    let entries: Vec<Symbol> = (0..length as i64)
        .map(|i| {
            let abs = offset + i;
            let local = abs.rem_euclid(n_len as i64) as usize;
            match &word.entries[local] {
                Entry::Sym(s) => s.clone(),
                Entry::Star => match fill_mode {
                    FillMode::Zero => zero.clone(),
                    FillMode::Random => Symbol::random(q, &mut rng),
                },
            }
        })
        .collect();
    Ok(SubshiftSegment {
        offset,
        entries,
        depth,
    })
}

/// Least alignment `m` in `[0, N_k)` such that every complete block at local
/// offset `m + j*N_k` passes membership; `None` if no alignment works.
pub fn window_admissible(
    segment: &SubshiftSegment,
    pattern: &PatternWord,
    tol: f64,
) -> Result<Option<u64>> {
    let n_len = pattern.len();
    if segment.len() < 2 * n_len {
        return Err(Error::SegmentTooShort {
            len: segment.len(),
            required: 2 * n_len,
        });
    }
    'alignment: for m in 0..n_len {
        let mut start = m;
        while start + n_len <= segment.len() {
            let block = &segment.entries[start as usize..(start + n_len) as usize];
            if !membership(block, pattern, tol)? {
                continue 'alignment;
            }
            start += n_len;
        }
        return Ok(Some(m));
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub level: u32,
    pub segment_len: u64,
    /// Syndeticity bound `2 * N_k` on recurrence gaps of the level-(k-1) skeleton.
    pub gap_bound: u64,
    pub occurrences: u64,
    pub max_gap: Option<u64>,
    pub pass_gaps: bool,
    /// Tail-filling census over the level-k word: expected count, distinct
    /// count seen, and whether every filling appears exactly once.
    pub census_expected: u64,
    pub census_distinct: u64,
    pub census_duplicates: u64,
    pub pass_census: bool,
    pub pass: bool,
}

/// Finite-scale minimality evidence: recurrence gaps of the level-(k-1)
/// skeleton inside `segment` are at most `2*N_k`, and the tail blocks of the
/// level-k word enumerate all fillings of the level-(k-1) stars bijectively.
pub fn minimality_evidence(
    construction: &Construction,
    depth: u32,
    segment: &SubshiftSegment,
    tol: f64,
) -> MinimalityReport {
    assert!(depth >= 2, "evidence needs a previous level");
    let word = construction.word(depth);
    let prev = construction.word(depth - 1);
    let n_len = word.len();
    let prev_len = prev.len() as usize;
    let gap_bound = 2 * n_len;

    let mut occurrences = Vec::new();
    if segment.entries.len() >= prev_len {
        for start in 0..=(segment.entries.len() - prev_len) {
            let windowed = &segment.entries[start..start + prev_len];
            if membership(windowed, prev, tol).unwrap_or(false) {
                occurrences.push(start as u64);
            }
        }
    }
    let max_gap = occurrences.windows(2).map(|w| w[1] - w[0]).max();
    let pass_gaps = occurrences.len() >= 2 && max_gap.is_some_and(|g| g <= gap_bound);

    // census of tail-block fillings in the level-k pattern word
    let fill = construction.fill_for(depth);
    let fillings = (fill.points.len() as u64).pow(prev.star_count() as u32);
    let tail_blocks = fillings; // conditions (iii)+(iv): M blocks, all distinct
    let mut seen = std::collections::BTreeMap::new();
    let blocks_total = word.n_mult;
    for j in (blocks_total - tail_blocks)..blocks_total {
        let base = (j * prev.len()) as usize;
        let key: Vec<Vec<(u64, u64)>> = prev
            .star_positions
            .iter()
            .map(|&local| match &word.entries[base + local as usize] {
                Entry::Sym(s) => s.bits_key(),
                Entry::Star => panic!("tail block still carries a star"),
            })
            .collect();
        *seen.entry(key).or_insert(0u64) += 1;
    }
    let census_distinct = seen.len() as u64;
    let census_duplicates = seen.values().filter(|&&v| v > 1).count() as u64;
    let pass_census = census_distinct == fillings && census_duplicates == 0;

    MinimalityReport {
        level: depth,
        segment_len: segment.len(),
        gap_bound,
        occurrences: occurrences.len() as u64,
        max_gap,
        pass_gaps,
        census_expected: fillings,
        census_distinct,
        census_duplicates,
        pass_census,
        pass: pass_gaps && pass_census,
    }
}
