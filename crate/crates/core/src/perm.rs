//! Signed permutations in window notation, and the length, odd-length and
//! descent statistics of the groups `S_n`, `B_n`, `D_n` and the coset `B_n \ D_n`.
//!
//! A signed permutation of rank `n` is stored as its window
//! `[σ(1), …, σ(n)]`; the negative half is recovered on demand from
//! `σ(-j) = -σ(j)`.
//!
//! Right multiplication by generators follows the usual convention for
//! window notation: `s_i` (`i ≥ 1`) swaps window positions `i` and `i+1`,
//! `s_0` negates position 1, and `s_0^D` maps `(σ(1), σ(2))` to
//! `(-σ(2), -σ(1))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::indexset::{IndexSet, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("window is empty")]
    Empty,
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("window entry at position {position} is zero")]
    ZeroEntry { position: usize },
    #[error("window entry {value} at position {position} is outside [-{rank}, {rank}]")]
    OutOfRange {
        position: usize,
        value: i32,
        rank: usize,
    },
    #[error("absolute value {value} appears more than once")]
    RepeatedValue { value: i32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("{perm} is not an element of {group}")]
    NotInGroup { perm: String, group: GroupLabel },
    #[error("generator s_{index} does not exist in {group} of rank {rank}")]
    NoSuchGenerator {
        index: usize,
        group: GroupLabel,
        rank: usize,
    },
    #[error("index set {set} is not valid for {group} of rank {rank}")]
    InvalidIndexSet {
        set: IndexSet,
        group: GroupLabel,
        rank: usize,
    },
}

/// Which group (or coset) a signed permutation is taken to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupLabel {
    /// The symmetric group: all window entries positive.
    TypeA,
    /// The hyperoctahedral group.
    TypeB,
    /// The even hyperoctahedral group: an even number of negative entries.
    TypeD,
    /// Signed permutations with an odd number of negative entries. Carries
    /// the type-D length, odd length and descent conventions.
    BminusD,
}

impl GroupLabel {
    pub const ALL: [GroupLabel; 4] = [
        GroupLabel::TypeA,
        GroupLabel::TypeB,
        GroupLabel::TypeD,
        GroupLabel::BminusD,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            GroupLabel::TypeA => "A",
            GroupLabel::TypeB => "B",
            GroupLabel::TypeD => "D",
            GroupLabel::BminusD => "BminusD",
        }
    }

    /// Number of elements of rank `n`.
    pub fn order(self, n: usize) -> u64 {
        let fact: u64 = (1..=n as u64).product();
        match self {
            GroupLabel::TypeA => fact,
            GroupLabel::TypeB => fact << n,
            GroupLabel::TypeD | GroupLabel::BminusD => (fact << n) / 2,
        }
    }

    /// Whether generator index 0 belongs to this group's generating set.
    pub fn has_zero_generator(self) -> bool {
        self != GroupLabel::TypeA
    }

    /// Lowest generator index: 1 for type A, 0 otherwise.
    pub fn first_generator(self) -> usize {
        if self.has_zero_generator() {
            0
        } else {
            1
        }
    }

    /// Whether the negative-entry count `neg` is allowed in this group.
    pub fn admits_neg_count(self, neg: usize) -> bool {
        match self {
            GroupLabel::TypeA => neg == 0,
            GroupLabel::TypeB => true,
            GroupLabel::TypeD => neg % 2 == 0,
            GroupLabel::BminusD => neg % 2 == 1,
        }
    }

    /// Whether `set` is a valid quotient selector for this group at rank `n`.
    pub fn accepts_index_set(self, n: usize, set: &IndexSet) -> bool {
        set.rank() == n && (self.has_zero_generator() || !set.contains(0))
    }

    /// Length and odd length read off the primitive statistics.
    pub fn length_pair(self, stats: &StatBundle) -> (u32, u32) {
        match self {
            GroupLabel::TypeA => (stats.inv, stats.oinv),
            GroupLabel::TypeB => (
                stats.inv + stats.neg + stats.nsp,
                stats.oinv + stats.oneg + stats.onsp,
            ),
            GroupLabel::TypeD | GroupLabel::BminusD => {
                (stats.inv + stats.nsp, stats.oinv + stats.onsp)
            }
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for GroupLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" | "TypeA" => Ok(GroupLabel::TypeA),
            "B" | "b" | "TypeB" => Ok(GroupLabel::TypeB),
            "D" | "d" | "TypeD" => Ok(GroupLabel::TypeD),
            "BminusD" | "B-D" | "b-d" => Ok(GroupLabel::BminusD),
            other => Err(format!(
                "unknown group `{other}` (expected A, B, D or BminusD)"
            )),
        }
    }
}

/// The six primitive counts of one signed permutation.
///
/// Pair statistics range over `1 ≤ i < j ≤ n`; the odd variants keep only
/// pairs with `i ≢ j (mod 2)`, and `oneg` keeps only odd positions `i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatBundle {
    pub inv: u32,
    pub neg: u32,
    pub nsp: u32,
    pub oinv: u32,
    pub oneg: u32,
    pub onsp: u32,
}

impl StatBundle {
    /// Single O(n²) pass over a window.
    pub fn of_window(window: &[i32]) -> StatBundle {
        let mut s = StatBundle::default();
        for (i, &a) in window.iter().enumerate() {
            if a < 0 {
                s.neg += 1;
                // 0-based even index is a 1-based odd position
                if i % 2 == 0 {
                    s.oneg += 1;
                }
            }
            for (j, &b) in window.iter().enumerate().skip(i + 1) {
                let odd_pair = (j - i) % 2 == 1;
                if a > b {
                    s.inv += 1;
                    s.oinv += odd_pair as u32;
                }
                if a + b < 0 {
                    s.nsp += 1;
                    s.onsp += odd_pair as u32;
                }
            }
        }
        s
    }
}

/// An element of `B_n` in window notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    /// Validates a window: nonzero entries whose absolute values are
    /// exactly `1..=n`.
    pub fn new(window: Vec<i32>) -> Result<Self, PermError> {
        let n = window.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        if n > MAX_RANK {
            return Err(PermError::RankTooLarge(n));
        }
        let mut seen = vec![false; n + 1];
        for (position, &value) in window.iter().enumerate() {
            if value == 0 {
                return Err(PermError::ZeroEntry {
                    position: position + 1,
                });
            }
            let abs = value.unsigned_abs() as usize;
            if abs > n {
                return Err(PermError::OutOfRange {
                    position: position + 1,
                    value,
                    rank: n,
                });
            }
            if std::mem::replace(&mut seen[abs], true) {
                return Err(PermError::RepeatedValue { value: abs as i32 });
            }
        }
        Ok(SignedPermutation { window })
    }

    /// Caller guarantees `window` is a valid signed permutation.
    pub(crate) fn from_window_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(SignedPermutation::new(window.clone()).is_ok());
        SignedPermutation { window }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            window: (1..=n as i32).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i32> {
        self.window
    }

    /// `σ(i)` for any `i ∈ [-n, n]`, with `σ(0) = 0`.
    pub fn value(&self, i: i32) -> i32 {
        match i {
            0 => 0,
            i if i > 0 => self.window[i as usize - 1],
            i => -self.window[(-i) as usize - 1],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as i32 + 1)
    }

    pub fn neg_count(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    pub fn is_in(&self, group: GroupLabel) -> bool {
        group.admits_neg_count(self.neg_count())
    }

    fn require(&self, group: GroupLabel) -> Result<(), PermError> {
        if self.is_in(group) {
            Ok(())
        } else {
            Err(PermError::NotInGroup {
                perm: self.to_string(),
                group,
            })
        }
    }

    /// `(σ∘τ)(i) = σ(τ(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation, PermError> {
        if self.rank() != other.rank() {
            return Err(PermError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let window = other.window.iter().map(|&t| self.value(t)).collect();
        Ok(SignedPermutation { window })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut window = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            // σ(pos) = v  ⇒  σ⁻¹(|v|) = sign(v)·pos
            window[v.unsigned_abs() as usize - 1] = pos * v.signum();
        }
        SignedPermutation { window }
    }

    pub fn stats(&self) -> StatBundle {
        StatBundle::of_window(&self.window)
    }

    /// Coxeter length in `group`: `inv` for A, `inv+neg+nsp` for B,
    /// `inv+nsp` for D and for `B_n \ D_n`.
    pub fn length(&self, group: GroupLabel) -> Result<u32, PermError> {
        self.require(group)?;
        Ok(group.length_pair(&self.stats()).0)
    }

    /// Odd length in `group`: `oinv` for A, `oinv+oneg+onsp` for B,
    /// `oinv+onsp` for D and for `B_n \ D_n`.
    pub fn odd_length(&self, group: GroupLabel) -> Result<u32, PermError> {
        self.require(group)?;
        Ok(group.length_pair(&self.stats()).1)
    }

    /// Pairs `i < j` in `[-n, n]²` with `σ(i) > σ(j)`, optionally only
    /// those with `i ≢ j (mod 2)`.
    fn inverted_pairs(&self, odd_only: bool) -> u32 {
        let n = self.rank() as i32;
        let mut count = 0u32;
        for i in -n..=n {
            let a = self.value(i);
            for j in (i + 1)..=n {
                if odd_only && (j - i) % 2 == 0 {
                    continue;
                }
                if a > self.value(j) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Type-B odd length straight from its definition: half the number of
    /// parity-mixed inverted pairs over `[-n, n]²`.
    pub fn odd_length_b_halfcount(&self) -> u32 {
        let count = self.inverted_pairs(true);
        debug_assert_eq!(count % 2, 0);
        count / 2
    }

    /// All inverted pairs `i < j` over `[-n, n]²`. This is
    /// `2·inv + 2·nsp + 3·neg`: the pairs `(0, k)`, `(-k, 0)` and `(-k, k)`
    /// each see every negative entry once.
    pub fn inverted_pairs_b(&self) -> u32 {
        self.inverted_pairs(false)
    }

    /// Bitmask of descents. Position 0 uses `σ(0) = 0` for type B and
    /// `σ(0) = -σ(2)` for type D and `B_n \ D_n`; type A has no 0 descent.
    pub(crate) fn descent_mask_of(window: &[i32], group: GroupLabel) -> u32 {
        let mut mask = 0u32;
        for i in 1..window.len() {
            if window[i - 1] > window[i] {
                mask |= 1 << i;
            }
        }
        match group {
            GroupLabel::TypeA => {}
            GroupLabel::TypeB => {
                if window[0] < 0 {
                    mask |= 1;
                }
            }
            GroupLabel::TypeD | GroupLabel::BminusD => {
                if window.len() >= 2 && -window[1] > window[0] {
                    mask |= 1;
                }
            }
        }
        mask
    }

    pub fn descent_set(&self, group: GroupLabel) -> Result<IndexSet, PermError> {
        self.require(group)?;
        let mask = Self::descent_mask_of(&self.window, group);
        Ok(IndexSet::from_mask_unchecked(self.rank(), mask))
    }

    /// Right multiplication by the generator `s_index` of `group`.
    pub fn mul_generator(
        &self,
        index: usize,
        group: GroupLabel,
    ) -> Result<SignedPermutation, PermError> {
        let n = self.rank();
        let missing = PermError::NoSuchGenerator {
            index,
            group,
            rank: n,
        };
        if index >= n {
            return Err(missing);
        }
        let mut window = self.window.clone();
        match (index, group) {
            (0, GroupLabel::TypeA) => return Err(missing),
            (0, GroupLabel::TypeB) => window[0] = -window[0],
            (0, GroupLabel::TypeD | GroupLabel::BminusD) => {
                if n < 2 {
                    return Err(missing);
                }
                let (a, b) = (window[0], window[1]);
                window[0] = -b;
                window[1] = -a;
            }
            (i, _) => window.swap(i - 1, i),
        }
        Ok(SignedPermutation { window })
    }

    /// The generator `s_index` of `group` as a signed permutation.
    pub fn generator(
        n: usize,
        index: usize,
        group: GroupLabel,
    ) -> Result<SignedPermutation, PermError> {
        SignedPermutation::identity(n).mul_generator(index, group)
    }

    /// Splits `self = w^J · w_J` with `w^J` having no descents in `J` and
    /// `w_J` in the parabolic subgroup generated by `{s_j : j ∈ J}`.
    ///
    /// Descents in `J` are stripped greedily from the right.
    pub fn parabolic_factorize(
        &self,
        set: &IndexSet,
        group: GroupLabel,
    ) -> Result<(SignedPermutation, SignedPermutation), PermError> {
        self.require(group)?;
        if !group.accepts_index_set(self.rank(), set) {
            return Err(PermError::InvalidIndexSet {
                set: *set,
                group,
                rank: self.rank(),
            });
        }
        let mut head = self.clone();
        let mut tail = SignedPermutation::identity(self.rank());
        loop {
            let descents = Self::descent_mask_of(&head.window, group) & set.mask();
            if descents == 0 {
                return Ok((head, tail));
            }
            let j = descents.trailing_zeros() as usize;
            head = head.mul_generator(j, group)?;
            // s_j is an involution, so w = (w s_j)(s_j tail)
            tail = SignedPermutation::generator(self.rank(), j, group)?.compose(&tail)?;
        }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = PermError;

    fn try_from(window: Vec<i32>) -> Result<Self, Self::Error> {
        SignedPermutation::new(window)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.window.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(w.to_vec()).unwrap()
    }

    fn set(n: usize, members: &[usize]) -> IndexSet {
        IndexSet::new(n, members.iter().copied()).unwrap()
    }

    #[test]
    fn make_perm_examples() {
        assert_eq!(perm(&[-2, 4, 3, -1]).rank(), 4);
        assert!(perm(&[1, 2, 3]).is_identity());
        assert_eq!(
            SignedPermutation::new(vec![2, 2, -1]),
            Err(PermError::RepeatedValue { value: 2 })
        );
        assert_eq!(
            SignedPermutation::new(vec![1, 0]),
            Err(PermError::ZeroEntry { position: 2 })
        );
        assert!(matches!(
            SignedPermutation::new(vec![1, 3]),
            Err(PermError::OutOfRange { value: 3, .. })
        ));
        assert_eq!(SignedPermutation::new(vec![]), Err(PermError::Empty));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            perm(&[2, 1]).compose(&perm(&[-1, 2])).unwrap(),
            perm(&[-2, 1])
        );
        let s = perm(&[3, -1, 2]);
        assert_eq!(s.compose(&SignedPermutation::identity(3)).unwrap(), s);
        assert_eq!(
            perm(&[-1, 2]).compose(&perm(&[-1, 2])).unwrap(),
            SignedPermutation::identity(2)
        );
        assert_eq!(
            perm(&[1, 2]).compose(&perm(&[1])),
            Err(PermError::RankMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(perm(&[2, 3, 1]).inverse(), perm(&[3, 1, 2]));
        assert!(SignedPermutation::identity(4).inverse().is_identity());
        assert_eq!(perm(&[-2, 1]).inverse(), perm(&[2, -1]));
    }

    #[test]
    fn stat_bundle_examples() {
        let tau = perm(&[-2, 4, 3, -1]).stats();
        assert_eq!(
            tau,
            StatBundle {
                inv: 3,
                neg: 2,
                nsp: 1,
                oinv: 2,
                oneg: 1,
                onsp: 1
            }
        );
        assert_eq!(
            SignedPermutation::identity(6).stats(),
            StatBundle::default()
        );
        let sigma = perm(&[2, -1, 5, -4, 3]).stats();
        assert_eq!((sigma.inv, sigma.nsp, sigma.oinv, sigma.onsp), (5, 3, 3, 2));
    }

    #[test]
    fn length_and_odd_length_examples() {
        let tau = perm(&[-2, 4, 3, -1]);
        assert_eq!(tau.length(GroupLabel::TypeB).unwrap(), 6);
        assert_eq!(tau.odd_length(GroupLabel::TypeB).unwrap(), 4);
        let sigma = perm(&[2, -1, 5, -4, 3]);
        assert_eq!(sigma.length(GroupLabel::TypeD).unwrap(), 8);
        assert_eq!(sigma.odd_length(GroupLabel::TypeD).unwrap(), 5);
        for g in GroupLabel::ALL
            .into_iter()
            .filter(|&g| g != GroupLabel::BminusD)
        {
            assert_eq!(SignedPermutation::identity(5).length(g).unwrap(), 0);
            assert_eq!(SignedPermutation::identity(5).odd_length(g).unwrap(), 0);
        }
        assert!(matches!(
            tau.length(GroupLabel::TypeA),
            Err(PermError::NotInGroup { .. })
        ));
        assert!(matches!(
            perm(&[-1, 2]).odd_length(GroupLabel::TypeD),
            Err(PermError::NotInGroup { .. })
        ));
    }

    #[test]
    fn halfcount_examples() {
        assert_eq!(perm(&[-2, 4, 3, -1]).odd_length_b_halfcount(), 4);
        assert_eq!(perm(&[-2, 4, 3, -1]).inverted_pairs_b(), 2 * 3 + 2 + 3 * 2);
        assert_eq!(perm(&[-1]).inverted_pairs_b(), 3);
        assert_eq!(SignedPermutation::identity(4).odd_length_b_halfcount(), 0);
        // σ = [-1,-2] is decreasing on [-2,2], so all 6 parity-mixed pairs
        // are inverted; agrees with oinv + oneg + onsp = 1 + 1 + 1
        assert_eq!(perm(&[-1, -2]).odd_length_b_halfcount(), 3);
    }

    #[test]
    fn descent_set_examples() {
        let sigma = perm(&[2, -1, 5, -4, 3]);
        assert_eq!(
            sigma.descent_set(GroupLabel::TypeD).unwrap(),
            set(5, &[1, 3])
        );
        assert!(SignedPermutation::identity(4)
            .descent_set(GroupLabel::TypeD)
            .unwrap()
            .is_empty());
        assert_eq!(
            perm(&[-1, 2, 3]).descent_set(GroupLabel::TypeB).unwrap(),
            set(3, &[0])
        );
        assert_eq!(
            perm(&[3, 1, 2]).descent_set(GroupLabel::TypeA).unwrap(),
            set(3, &[1])
        );
        // σ(0) = -σ(2) = 2 > σ(1) = 1
        assert_eq!(
            perm(&[1, -2]).descent_set(GroupLabel::BminusD).unwrap(),
            set(2, &[0, 1])
        );
    }

    #[test]
    fn generators() {
        let w = perm(&[3, -1, 2]);
        assert_eq!(
            w.mul_generator(0, GroupLabel::TypeB).unwrap(),
            perm(&[-3, -1, 2])
        );
        assert_eq!(
            w.mul_generator(0, GroupLabel::TypeD).unwrap(),
            perm(&[1, -3, 2])
        );
        assert_eq!(
            w.mul_generator(2, GroupLabel::TypeD).unwrap(),
            perm(&[3, 2, -1])
        );
        assert!(w.mul_generator(0, GroupLabel::TypeA).is_err());
        assert!(w.mul_generator(3, GroupLabel::TypeB).is_err());
        assert_eq!(
            SignedPermutation::generator(3, 0, GroupLabel::TypeD).unwrap(),
            perm(&[-2, -1, 3])
        );
    }

    #[test]
    fn parabolic_factorize_examples() {
        let (head, tail) = perm(&[3, 2, 1])
            .parabolic_factorize(&set(3, &[1]), GroupLabel::TypeA)
            .unwrap();
        assert_eq!(head, perm(&[2, 3, 1]));
        assert_eq!(tail, perm(&[2, 1, 3]));
        assert_eq!(head.length(GroupLabel::TypeA).unwrap(), 2);

        let id = SignedPermutation::identity(4);
        let (head, tail) = id
            .parabolic_factorize(&set(4, &[0, 2, 3]), GroupLabel::TypeD)
            .unwrap();
        assert!(head.is_identity() && tail.is_identity());

        let (head, tail) = perm(&[-2, -1])
            .parabolic_factorize(&set(2, &[0]), GroupLabel::TypeB)
            .unwrap();
        assert_eq!(head, perm(&[2, -1]));
        assert_eq!(tail, perm(&[-1, 2]));
        assert_eq!(head.length(GroupLabel::TypeB).unwrap(), 2);

        assert!(perm(&[2, 1])
            .parabolic_factorize(&set(2, &[0]), GroupLabel::TypeA)
            .is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(GroupLabel::TypeA.order(8), 40320);
        assert_eq!(GroupLabel::TypeB.order(3), 48);
        assert_eq!(GroupLabel::TypeD.order(8), 5_160_960);
        assert_eq!(GroupLabel::BminusD.order(1), 1);
    }
}
