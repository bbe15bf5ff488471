//! Inductive pattern words and their block families.

use super::alphabet::{DenseSet, Symbol};
use super::BuildCaps;
use crate::error::{Error, Result};
use crate::params::ConstructionParams;
use crate::ratio::{floor_u64, from_int};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    Star,
    Sym(Symbol),
}

impl Entry {
    pub fn is_star(&self) -> bool {
        matches!(self, Entry::Star)
    }
}

/// A level-k word over `K ∪ {*}` together with its star-position set.
///
/// The free (star) positions carry the level's dimension budget: the
/// proportion of stars sits in `(r, r + 1/N_k]` at every level.
#[derive(Debug, Clone)]
pub struct PatternWord {
    pub level: u32,
    pub entries: Vec<Entry>,
    pub star_positions: Vec<u64>,
    /// Multiplier used at this level (`N_k = n_k * N_{k-1}`).
    pub n_mult: u64,
}

impl PatternWord {
    pub fn len(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn star_count(&self) -> u64 {
        self.star_positions.len() as u64
    }

    /// Exact proportion check `r < stars/N <= r + 1/N`.
    pub fn proportion_ok(&self, r: &BigRational) -> bool {
        let n = from_int(self.len());
        let stars = from_int(self.star_count());
        let lhs = &stars / &n;
        let upper = r + from_int(1) / &n;
        &lhs > r && lhs <= upper
    }

    /// A block-family member: the skeleton with every star filled by `fill_star`.
    pub fn member_with<F: FnMut(u64) -> Symbol>(&self, mut fill_star: F) -> Vec<Symbol> {
        self.entries
            .iter()
            .enumerate()
            .map(|(n, e)| match e {
                Entry::Star => fill_star(n as u64),
                Entry::Sym(s) => s.clone(),
            })
            .collect()
    }

    pub fn random_member<R: Rng>(&self, q: u32, rng: &mut R) -> Vec<Symbol> {
        self.member_with(|_| Symbol::random(q, rng))
    }

    /// JSON document: level, N_k, star positions, entries (`"*"` or flat 2q array).
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::Star => json!("*"),
                Entry::Sym(s) => {
                    let flat: Vec<f64> = s.pairs().iter().flatten().copied().collect();
                    json!(flat)
                }
            })
            .collect();
        json!({
            "level": self.level,
            "n_len": self.len(),
            "n_mult": self.n_mult,
            "star_positions": self.star_positions,
            "entries": entries,
        })
    }
}

/// Unique admissible star count for a word of length `n`: the only integer in
/// `(r*n, r*n + 1]`.
fn star_target(r: &BigRational, n: u64) -> u64 {
    floor_u64(&(r * from_int(n))) + 1
}

/// Level-1 word: minimal `N_1 >= hint` whose admissible star count leaves at
/// least one non-star entry, stars at the leading indices, the rest filled
/// with the cube center (the m=1 dense point).
pub fn initial_word(params: &ConstructionParams, n1_hint: Option<u64>) -> PatternWord {
    let r = params.exact_r();
    let mut n = n1_hint.unwrap_or(1).max(1);
    loop {
        let target = star_target(&r, n);
        if target < n {
            let entries: Vec<Entry> = (0..n)
                .map(|i| {
                    if i < target {
                        Entry::Star
                    } else {
                        Entry::Sym(Symbol::center(params.q))
                    }
                })
                .collect();
            return PatternWord {
                level: 1,
                entries,
                star_positions: (0..target).collect(),
                n_mult: n,
            };
        }
        n += 1;
    }
}

/// Step-k word from the previous level: `n_k - M` copies of the previous word
/// followed by `M` tail blocks enumerating every star filling from `fill`
/// exactly once (lexicographic), then stars trimmed to the zero symbol from
/// the last index down until the proportion invariant holds.
pub fn next_level(
    prev: &PatternWord,
    fill: &DenseSet,
    params: &ConstructionParams,
    caps: BuildCaps,
) -> Result<PatternWord> {
    let r = params.exact_r();
    let stars_prev = prev.star_count();
    let n_prev = prev.len();
    let fill_size = fill.points.len() as u64;
    let fillings = checked_pow(fill_size, stars_prev, caps.max_fillings)?;

    // least n with (n*stars_prev - fillings*n_prev) / (n*n_prev) > r,
    // i.e. n > fillings*n_prev / (stars_prev - r*n_prev)
    let surplus = from_int(stars_prev) - &r * from_int(n_prev);
    assert!(
        surplus > BigRational::zero(),
        "proportion invariant broken at previous level"
    );
    let bound = from_int(fillings) * from_int(n_prev) / surplus;
    let n_mult = floor_u64(&bound) + 1;
    debug_assert!(n_mult > fillings);

    let n_len = n_mult
        .checked_mul(n_prev)
        .filter(|&n| n <= caps.max_word_len)
        .ok_or(Error::SizeOverflow {
            what: "pattern word",
            requested: n_mult as u128 * n_prev as u128,
            cap: caps.max_word_len as u128,
        })?;

    let mut entries = Vec::with_capacity(n_len as usize);
    for _ in 0..(n_mult - fillings) {
        entries.extend(prev.entries.iter().cloned());
    }
    for tuple in 0..fillings {
        // mixed-radix digits of `tuple`, first star slot most significant
        let mut digits = vec![0u64; stars_prev as usize];
        let mut rest = tuple;
        for d in (0..stars_prev as usize).rev() {
            digits[d] = rest % fill_size;
            rest /= fill_size;
        }
        let mut slot = 0usize;
        for entry in &prev.entries {
            match entry {
                Entry::Star => {
                    entries.push(Entry::Sym(fill.points[digits[slot] as usize].clone()));
                    slot += 1;
                }
                Entry::Sym(s) => entries.push(Entry::Sym(s.clone())),
            }
        }
    }
    debug_assert_eq!(entries.len() as u64, n_len);

    let target = star_target(&r, n_len);
    let current = (n_mult - fillings) * stars_prev;
    assert!(current >= target, "trim cannot reach the proportion target");
    let mut to_trim = current - target;
    for idx in (0..entries.len()).rev() {
        if to_trim == 0 {
            break;
        }
        if entries[idx].is_star() {
            entries[idx] = Entry::Sym(Symbol::zero(params.q));
            to_trim -= 1;
        }
    }
    let star_positions: Vec<u64> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_star())
        .map(|(i, _)| i as u64)
        .collect();
    debug_assert_eq!(star_positions.len() as u64, target);

    Ok(PatternWord {
        level: prev.level + 1,
        entries,
        star_positions,
        n_mult,
    })
}

fn checked_pow(base: u64, exp: u64, cap: u64) -> Result<u64> {
    let overflow = || {
        let mut approx: u128 = 1;
        for _ in 0..exp.min(128) {
            approx = approx.saturating_mul(base as u128);
        }
        Error::SizeOverflow {
            what: "tail fillings",
            requested: approx,
            cap: cap as u128,
        }
    };
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&v| v <= cap)
            .ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// True iff `word` matches the pattern's non-star entries within `tol`.
pub fn membership(word: &[Symbol], pattern: &PatternWord, tol: f64) -> Result<bool> {
    if word.len() as u64 != pattern.len() {
        return Err(Error::LengthMismatch {
            expected: pattern.len(),
            got: word.len() as u64,
        });
    }
    Ok(pattern.entries.iter().zip(word).all(|(e, sym)| match e {
        Entry::Star => true,
        Entry::Sym(expected) => expected.distance(sym) <= tol,
    }))
}
