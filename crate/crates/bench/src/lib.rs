//! Fixtures shared by the benchmarks.

use oddlen_core::{IndexSet, IntPoly};

/// Every index set of rank `n` containing 0, the shape scans spend most time on.
pub fn sets_through_zero(n: usize) -> Vec<IndexSet> {
    IndexSet::all_subsets(n).filter(|s| s.contains(0)).collect()
}

/// `(1 - x)^k (1 + x^2)^k`, dense enough to make division do real work.
pub fn dense_poly(k: u32) -> IntPoly {
    let base = IntPoly::from_coeffs(&[1, -1]) * IntPoly::from_coeffs(&[1, 0, 1]);
    (0..k).fold(IntPoly::one(), |acc, _| &acc * &base)
}
