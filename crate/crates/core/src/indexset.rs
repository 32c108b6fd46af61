//! Subsets of the generator indices `[0, n-1]`, their connected components,
//! and the quotient parameters `m`, `a`, `δ₀` derived from them.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest supported rank. Index sets are stored as `u32` bitmasks.
pub const MAX_RANK: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexSetError {
    #[error("index {index} is outside [0, {}]", .rank.saturating_sub(1))]
    OutOfRange { index: usize, rank: usize },
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("cannot parse `{0}` as a comma-separated list of indices")]
    Syntax(String),
    #[error("type A quotient parameters require 0 ∉ J, got {0}")]
    ContainsZero(IndexSet),
}

/// A subset of `[0, n-1]` in bitmask form (bit `i` ↔ index `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    rank: usize,
    mask: u32,
}

fn rank_mask(rank: usize) -> u32 {
    if rank >= 32 {
        u32::MAX
    } else {
        (1u32 << rank) - 1
    }
}

impl IndexSet {
    pub fn empty(rank: usize) -> Self {
        IndexSet { rank, mask: 0 }
    }

    pub fn new(
        rank: usize,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, IndexSetError> {
        if rank > MAX_RANK {
            return Err(IndexSetError::RankTooLarge(rank));
        }
        let mut mask = 0u32;
        for index in members {
            if index >= rank {
                return Err(IndexSetError::OutOfRange { index, rank });
            }
            mask |= 1 << index;
        }
        Ok(IndexSet { rank, mask })
    }

    pub fn from_mask(rank: usize, mask: u32) -> Result<Self, IndexSetError> {
        if rank > MAX_RANK {
            return Err(IndexSetError::RankTooLarge(rank));
        }
        let stray = mask & !rank_mask(rank);
        if stray != 0 {
            return Err(IndexSetError::OutOfRange {
                index: stray.trailing_zeros() as usize,
                rank,
            });
        }
        Ok(IndexSet { rank, mask })
    }

    pub(crate) fn from_mask_unchecked(rank: usize, mask: u32) -> Self {
        debug_assert!(mask & !rank_mask(rank) == 0);
        IndexSet { rank, mask }
    }

    /// Parses `""`, `"1"`, `"0,2,3"`; whitespace around entries is ignored.
    pub fn parse(rank: usize, text: &str) -> Result<Self, IndexSetError> {
        let text = text.trim();
        if text.is_empty() {
            return IndexSet::new(rank, []);
        }
        let members = text
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| IndexSetError::Syntax(text.to_string()))?;
        IndexSet::new(rank, members)
    }

    /// Every subset of `[0, rank-1]` in ascending bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = IndexSet> {
        assert!(rank < 32, "subset sweeps are limited to rank < 32");
        (0..1u32 << rank).map(move |mask| IndexSet { rank, mask })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 32 && self.mask & (1 << index) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.mask & other.mask == 0
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            rank: self.rank.max(other.rank),
            mask: self.mask | other.mask,
        }
    }

    pub fn with(&self, index: usize) -> Result<IndexSet, IndexSetError> {
        if index >= self.rank {
            return Err(IndexSetError::OutOfRange {
                index,
                rank: self.rank,
            });
        }
        Ok(IndexSet {
            rank: self.rank,
            mask: self.mask | (1 << index),
        })
    }

    pub fn without(&self, index: usize) -> IndexSet {
        let bit = if index < 32 { 1 << index } else { 0 };
        IndexSet {
            rank: self.rank,
            mask: self.mask & !bit,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest index of `[0, rank-1]` not in the set, or `None` when the
    /// set is everything.
    pub fn min_missing(&self) -> Option<usize> {
        let missing = !self.mask & rank_mask(self.rank);
        (missing != 0).then(|| missing.trailing_zeros() as usize)
    }

    /// Maximal runs of consecutive members, ascending.
    pub fn components(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut rest = self.mask;
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let run = (rest >> start).trailing_ones() as usize;
            out.push(Interval {
                start,
                end: start + run - 1,
            });
            rest &= !(rank_mask(run) << start);
        }
        out
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Closed integer interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

#[allow(clippy::len_without_is_empty)]
impl Interval {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(&self, i: usize) -> bool {
        (self.start..=self.end).contains(&i)
    }

    /// `⌊(|I|+1)/2⌋`, the contribution of one component to `m`.
    pub fn half_up(&self) -> usize {
        self.len().div_ceil(2)
    }
}

/// Which closed form the parameters are being prepared for; they differ in
/// which components contribute to `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Symmetric-group quotients: `J ⊆ [n-1]`, every component counts.
    TypeA,
    /// Hyperoctahedral quotients: the component through 0 is excluded from
    /// `m` and instead determines `a`.
    TypeB,
    /// Even-hyperoctahedral tower cofactor: every component counts,
    /// including the one through 0.
    ConjectureD,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientParams {
    pub components: Vec<Interval>,
    /// The component containing 0, if any.
    pub j0: Option<Interval>,
    pub m: usize,
    /// `min([0, n-1] \ J)`; `n` when `J` is everything. Type B only.
    pub a: Option<usize>,
    pub delta0: u8,
}

impl QuotientParams {
    /// `(|J₀|; |J₁|, …, |J_s|)` with `|J₀| = 0` when `0 ∉ J`.
    pub fn signature(&self) -> (usize, Vec<usize>) {
        let j0 = self.j0.map_or(0, |c| c.len());
        let rest = self
            .components
            .iter()
            .filter(|c| Some(**c) != self.j0)
            .map(Interval::len)
            .collect();
        (j0, rest)
    }
}

pub fn quotient_params(set: &IndexSet, flavor: Flavor) -> Result<QuotientParams, IndexSetError> {
    let components = set.components();
    let j0 = components.first().copied().filter(|c| c.start == 0);
    let delta0 = u8::from(set.contains(0));
    let (m, a) = match flavor {
        Flavor::TypeA => {
            if set.contains(0) {
                return Err(IndexSetError::ContainsZero(*set));
            }
            (components.iter().map(Interval::half_up).sum(), None)
        }
        Flavor::TypeB => {
            let m = components
                .iter()
                .filter(|c| Some(**c) != j0)
                .map(Interval::half_up)
                .sum();
            (m, Some(set.min_missing().unwrap_or(set.rank())))
        }
        Flavor::ConjectureD => (components.iter().map(Interval::half_up).sum(), None),
    };
    Ok(QuotientParams {
        components,
        j0,
        m,
        a,
        delta0,
    })
}
