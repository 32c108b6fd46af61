//! All-subsets scan: one histogram pass, then every quotient of a group
//! with its generating function and, in type D, its tower cofactor.

use serde::{Serialize, Serializer};

use crate::closed_forms::mj_from_gf;
use crate::genfun::GfEngine;
use crate::indexset::{quotient_params, Flavor, IndexSet};
use crate::perm::GroupLabel;
use crate::poly::{IntPoly, PolyError};
use crate::{Error, Result};

/// Result of dividing a type-D quotient gf by its tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MjStatus {
    Cofactor(IntPoly),
    NotDivisible,
    /// Not a type-D scan, or `n < 3`.
    NotApplicable,
}

impl Serialize for MjStatus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MjStatus::Cofactor(p) => p.serialize(serializer),
            MjStatus::NotDivisible => serializer.serialize_str("not_divisible"),
            MjStatus::NotApplicable => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub j0: usize,
    pub rest: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub set: IndexSet,
    pub signature: Signature,
    pub gf: IntPoly,
    pub mj: MjStatus,
}

/// One row per index set valid for `group`, in ascending bitmask order.
pub fn scan_all_subsets(engine: &GfEngine, n: usize, group: GroupLabel) -> Result<Vec<ScanRow>> {
    let hist = engine.histogram(n, group)?;
    let flavor = match group {
        GroupLabel::TypeA => Flavor::TypeA,
        GroupLabel::TypeB => Flavor::TypeB,
        GroupLabel::TypeD | GroupLabel::BminusD => Flavor::ConjectureD,
    };
    IndexSet::all_subsets(n)
        .filter(|s| group.accepts_index_set(n, s))
        .map(|set| {
            let gf = hist.signed(&set)?;
            let (j0, rest) = quotient_params(&set, flavor)?.signature();
            let mj = if group == GroupLabel::TypeD && n >= 3 {
                match mj_from_gf(&gf, n, &set) {
                    Ok(m) => MjStatus::Cofactor(m),
                    Err(Error::Poly(PolyError::NotDivisible { .. })) => MjStatus::NotDivisible,
                    Err(e) => return Err(e),
                }
            } else {
                MjStatus::NotApplicable
            };
            Ok(ScanRow {
                set,
                signature: Signature { j0, rest },
                gf,
                mj,
            })
        })
        .collect()
}
