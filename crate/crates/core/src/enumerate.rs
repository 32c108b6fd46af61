//! Exhaustive enumeration of `S_n`, `B_n`, `D_n` and `B_n \ D_n`, quotient
//! membership, and the descent-signature histogram that answers every
//! quotient generating function from a single pass over the group.
//!
//! Enumeration order: the permutations of absolute values `1..=n` in
//! lexicographic order, and for each of them the sign patterns
//! `0, 1, …, 2ⁿ-1` (bit `i` set ⇔ window position `i+1` negative), skipping
//! patterns whose parity the group does not admit.

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::indexset::IndexSet;
use crate::perm::{GroupLabel, PermError, SignedPermutation, StatBundle};
use crate::poly::{BiPoly, IntPoly};

/// In-place lexicographic successor; `false` once `v` is the last one.
fn next_permutation(v: &mut [i32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Deterministic stream over every element of `group` at rank `n`.
pub struct GroupElements {
    inner: Cursor,
}

impl Iterator for GroupElements {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        self.inner
            .advance()
            .map(|w| SignedPermutation::from_window_unchecked(w.to_vec()))
    }
}

/// Every element of `group` at rank `n`, in the documented order.
pub fn enumerate_group(n: usize, group: GroupLabel) -> GroupElements {
    GroupElements {
        inner: Cursor::new(n, group, None),
    }
}

/// The sub-stream of [`enumerate_group`] with `|σ(1)| = first`. The
/// sub-streams for `first = 1..=n` partition the group and each preserves
/// the global order.
pub fn enumerate_group_with_first(n: usize, group: GroupLabel, first: i32) -> GroupElements {
    GroupElements {
        inner: Cursor::new(n, group, Some(first)),
    }
}

/// Lending cursor: yields each window of the stream in turn.
struct Cursor {
    group: GroupLabel,
    abs: Vec<i32>,
    window: Vec<i32>,
    frozen: usize,
    signs: u32,
    last_sign: u32,
    started: bool,
    done: bool,
}

impl Cursor {
    fn new(n: usize, group: GroupLabel, first: Option<i32>) -> Self {
        assert!((1..32).contains(&n), "enumeration rank must lie in 1..32");
        let mut abs: Vec<i32> = (1..=n as i32).collect();
        let mut frozen = 0;
        if let Some(first) = first {
            assert!((1..=n as i32).contains(&first), "first value out of range");
            abs.retain(|&v| v != first);
            abs.insert(0, first);
            frozen = 1;
        }
        let last_sign = if group == GroupLabel::TypeA {
            0
        } else {
            (1u32 << n) - 1
        };
        Cursor {
            group,
            window: abs.clone(),
            abs,
            frozen,
            signs: 0,
            last_sign,
            started: false,
            done: false,
        }
    }

    /// Moves to the next (permutation, sign pattern) state.
    fn step(&mut self) {
        if self.signs < self.last_sign {
            self.signs += 1;
        } else {
            self.signs = 0;
            if !next_permutation(&mut self.abs[self.frozen..]) {
                self.done = true;
            }
        }
    }

    fn advance(&mut self) -> Option<&[i32]> {
        if self.started {
            self.step();
        }
        self.started = true;
        while !self.done
            && !self
                .group
                .admits_neg_count(self.signs.count_ones() as usize)
        {
            self.step();
        }
        if self.done {
            return None;
        }
        for (i, (w, &a)) in self.window.iter_mut().zip(&self.abs).enumerate() {
            *w = if self.signs >> i & 1 == 1 { -a } else { a };
        }
        Some(&self.window)
    }
}

/// `σ(i) < σ(i+1)` for every `i ∈ set`, with `σ(0) = 0` in type B and
/// `σ(0) = -σ(2)` in type D and `B_n \ D_n`.
pub fn is_in_quotient(
    perm: &SignedPermutation,
    set: &IndexSet,
    group: GroupLabel,
) -> Result<bool, PermError> {
    let n = perm.rank();
    if !perm.is_in(group) {
        return Err(PermError::NotInGroup {
            perm: perm.to_string(),
            group,
        });
    }
    if !group.accepts_index_set(n, set) {
        return Err(PermError::InvalidIndexSet {
            set: *set,
            group,
            rank: n,
        });
    }
    let at = |i: usize| -> i32 {
        match (i, group) {
            (0, GroupLabel::TypeB) => 0,
            (0, _) => -perm.value(2),
            (i, _) => perm.value(i as i32),
        }
    };
    Ok(set.iter().all(|i| {
        // D_1 has no generator s_0^D; the condition is vacuous there
        if i == 0 && n < 2 && group != GroupLabel::TypeB {
            return true;
        }
        at(i) < at(i + 1)
    }))
}

/// Per-descent-set sums of `y^ℓ x^L` over a whole group.
///
/// `σ` lies in the quotient `W^I` exactly when its descent set misses `I`,
/// so any quotient's generating function is a sum of buckets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentHistogram {
    n: usize,
    group: GroupLabel,
    buckets: Vec<BiPoly>,
    signed: Vec<IntPoly>,
}

/// Dense counts indexed by `(descent mask, ℓ, L)`.
struct DenseCounts {
    stride: usize,
    counts: Vec<u64>,
}

impl DenseCounts {
    fn new(n: usize, group: GroupLabel) -> Self {
        let max_len = match group {
            GroupLabel::TypeA => n * (n - 1) / 2,
            GroupLabel::TypeB => n * n,
            GroupLabel::TypeD | GroupLabel::BminusD => n * (n - 1),
        };
        let stride = max_len + 1;
        DenseCounts {
            stride,
            counts: vec![0; (1usize << n) * stride * stride],
        }
    }

    fn fill(mut self, n: usize, group: GroupLabel, first: Option<i32>) -> Self {
        let mut cursor = Cursor::new(n, group, first);
        while let Some(w) = cursor.advance() {
            let (len, odd) = group.length_pair(&StatBundle::of_window(w));
            let mask = SignedPermutation::descent_mask_of(w, group) as usize;
            self.counts[(mask * self.stride + len as usize) * self.stride + odd as usize] += 1;
        }
        self
    }

    fn merge(mut self, other: DenseCounts) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

impl DescentHistogram {
    /// Single-threaded build.
    pub fn build(n: usize, group: GroupLabel) -> Self {
        let dense = DenseCounts::new(n, group).fill(n, group, None);
        Self::from_dense(n, group, dense)
    }

    /// Splits the group by `|σ(1)|` across the pool's workers and merges the
    /// per-worker counts by addition, so the result does not depend on the
    /// worker count or on scheduling.
    pub fn build_in(pool: &ThreadPool, n: usize, group: GroupLabel) -> Self {
        let dense = pool.install(|| {
            (1..=n as i32)
                .into_par_iter()
                .map(|first| DenseCounts::new(n, group).fill(n, group, Some(first)))
                .reduce_with(DenseCounts::merge)
                .expect("rank is at least 1")
        });
        Self::from_dense(n, group, dense)
    }

    fn from_dense(n: usize, group: GroupLabel, dense: DenseCounts) -> Self {
        let stride = dense.stride;
        let buckets: Vec<BiPoly> = dense
            .counts
            .chunks(stride * stride)
            .map(|block| {
                let terms = block
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| {
                        let c = i64::try_from(c).expect("count fits in i64");
                        (((k / stride) as u32, (k % stride) as u32), c)
                    });
                BiPoly::from_terms(terms).expect("group orders are far below i64::MAX")
            })
            .collect();
        let signed = buckets.iter().map(BiPoly::signed).collect();
        DescentHistogram {
            n,
            group,
            buckets,
            signed,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> GroupLabel {
        self.group
    }

    /// Bucket for the descent set with bitmask `mask`.
    pub fn bucket(&self, mask: u32) -> &BiPoly {
        &self.buckets[mask as usize]
    }

    pub fn buckets(&self) -> &[BiPoly] {
        &self.buckets
    }

    fn check(&self, set: &IndexSet) -> Result<(), PermError> {
        if self.group.accepts_index_set(self.n, set) {
            Ok(())
        } else {
            Err(PermError::InvalidIndexSet {
                set: *set,
                group: self.group,
                rank: self.n,
            })
        }
    }

    /// `Σ y^ℓ x^L` over the quotient selected by `set`.
    pub fn graded(&self, set: &IndexSet) -> Result<BiPoly, PermError> {
        self.check(set)?;
        let mut out = BiPoly::zero();
        for (mask, b) in self.buckets.iter().enumerate() {
            if mask as u32 & set.mask() == 0 {
                out += b;
            }
        }
        Ok(out)
    }

    /// `Σ (-1)^ℓ x^L` over the quotient selected by `set`.
    pub fn signed(&self, set: &IndexSet) -> Result<IntPoly, PermError> {
        self.check(set)?;
        let mut out = IntPoly::zero();
        for (mask, b) in self.signed.iter().enumerate() {
            if mask as u32 & set.mask() == 0 {
                out += b;
            }
        }
        Ok(out)
    }

    /// Number of elements counted; equals the group order.
    pub fn total(&self) -> i64 {
        self.buckets
            .iter()
            .map(|b| b.eval(1, 1).expect("group orders fit in i64"))
            .sum()
    }
}
