//! Signed and length-graded generating functions over groups, quotients
//! and position-restricted slices of quotients.
//!
//! Unrestricted queries are answered from a cached [`DescentHistogram`];
//! restricted ones fall back to filtered enumeration because fixing a
//! window value does not decompose by descent set.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use serde::Serialize;

use crate::enumerate::{enumerate_group_with_first, is_in_quotient, DescentHistogram};
use crate::indexset::IndexSet;
use crate::perm::{GroupLabel, PermError};
use crate::poly::{BiPoly, IntPoly};
use crate::{Error, Result};

/// Ranks above this are refused: the histogram alone would need gigabytes.
pub const MAX_ENUMERATION_RANK: usize = 10;

/// Restrict a sum to elements with `σ(position) = value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Restriction {
    /// 1-based window position.
    pub position: usize,
    /// `n` or `-n`.
    pub value: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfQuery {
    pub n: usize,
    pub group: GroupLabel,
    pub set: IndexSet,
    pub restriction: Option<Restriction>,
    pub graded: bool,
}

/// Serializes as the bare polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GfValue {
    Signed(IntPoly),
    Graded(BiPoly),
}

impl std::fmt::Display for GfValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GfValue::Signed(p) => p.fmt(f),
            GfValue::Graded(p) => p.fmt(f),
        }
    }
}

/// Evaluates generating functions, caching one histogram per
/// `(rank, group)` and running enumeration on its own worker pool.
pub struct GfEngine {
    pool: ThreadPool,
    workers: usize,
    histograms: Mutex<HashMap<(usize, GroupLabel), Arc<DescentHistogram>>>,
}

impl std::fmt::Debug for GfEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GfEngine")
            .field("workers", &self.workers)
            .finish_non_exhaustive()
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_RANK {
        return Err(Error::Precondition(format!(
            "rank {n} is outside the supported range 1..={MAX_ENUMERATION_RANK}"
        )));
    }
    Ok(())
}

fn check_set(n: usize, group: GroupLabel, set: &IndexSet) -> Result<()> {
    if !group.accepts_index_set(n, set) {
        return Err(PermError::InvalidIndexSet {
            set: *set,
            group,
            rank: n,
        }
        .into());
    }
    Ok(())
}

impl GfEngine {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::Precondition(
                "worker count must be at least 1".into(),
            ));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("oddlen-worker-{i}"))
            .build()
            .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
        Ok(GfEngine {
            pool,
            workers,
            histograms: Mutex::new(HashMap::new()),
        })
    }

    pub fn single_threaded() -> Self {
        GfEngine::new(1).expect("a one-thread pool always starts")
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Runs `f` inside the engine's worker pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    pub fn histogram(&self, n: usize, group: GroupLabel) -> Result<Arc<DescentHistogram>> {
        check_rank(n)?;
        let key = (n, group);
        if let Some(h) = self.histograms.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(h));
        }
        let built = Arc::new(DescentHistogram::build_in(&self.pool, n, group));
        let mut cache = self.histograms.lock().expect("cache lock");
        Ok(Arc::clone(cache.entry(key).or_insert(built)))
    }

    /// `Σ (-1)^ℓ(σ) x^L(σ)` over the quotient of `group` selected by `set`.
    pub fn signed_gf(&self, n: usize, group: GroupLabel, set: &IndexSet) -> Result<IntPoly> {
        Ok(self.histogram(n, group)?.signed(set)?)
    }

    /// `Σ y^ℓ(σ) x^L(σ)` over the quotient of `group` selected by `set`.
    pub fn graded_gf(&self, n: usize, group: GroupLabel, set: &IndexSet) -> Result<BiPoly> {
        Ok(self.histogram(n, group)?.graded(set)?)
    }

    /// Signed generating function over `{σ in the quotient : σ(position) = value}`.
    pub fn restricted_gf(
        &self,
        n: usize,
        group: GroupLabel,
        set: &IndexSet,
        restriction: Restriction,
    ) -> Result<IntPoly> {
        Ok(self
            .filtered_graded(n, group, set, Some(restriction))?
            .signed())
    }

    /// Graded generating function by direct filtered enumeration; the
    /// cross-check for the histogram route.
    pub fn graded_gf_by_filter(
        &self,
        n: usize,
        group: GroupLabel,
        set: &IndexSet,
    ) -> Result<BiPoly> {
        self.filtered_graded(n, group, set, None)
    }

    fn filtered_graded(
        &self,
        n: usize,
        group: GroupLabel,
        set: &IndexSet,
        restriction: Option<Restriction>,
    ) -> Result<BiPoly> {
        check_rank(n)?;
        check_set(n, group, set)?;
        if let Some(r) = restriction {
            if !(1..=n).contains(&r.position) || r.value.unsigned_abs() as usize != n {
                return Err(Error::Precondition(format!(
                    "restriction σ({}) = {} needs a position in [1, {n}] and value ±{n}",
                    r.position, r.value
                )));
            }
        }
        let partial = |first: i32| -> Result<BiPoly> {
            let mut acc = BiPoly::zero();
            for perm in enumerate_group_with_first(n, group, first) {
                if let Some(r) = restriction {
                    if perm.value(r.position as i32) != r.value {
                        continue;
                    }
                }
                if is_in_quotient(&perm, set, group)? {
                    let (len, odd) = group.length_pair(&perm.stats());
                    acc.add_term((len, odd), 1)?;
                }
            }
            Ok(acc)
        };
        let parts: Vec<BiPoly> = self.pool.install(|| {
            (1..=n as i32)
                .into_par_iter()
                .map(partial)
                .collect::<Result<Vec<_>>>()
        })?;
        Ok(parts.into_iter().sum())
    }

    pub fn evaluate(&self, query: &GfQuery) -> Result<GfValue> {
        let graded = match query.restriction {
            None if !query.graded => {
                return Ok(GfValue::Signed(self.signed_gf(
                    query.n,
                    query.group,
                    &query.set,
                )?));
            }
            None => self.graded_gf(query.n, query.group, &query.set)?,
            Some(r) => self.filtered_graded(query.n, query.group, &query.set, Some(r))?,
        };
        Ok(if query.graded {
            GfValue::Graded(graded)
        } else {
            GfValue::Signed(graded.signed())
        })
    }
}
