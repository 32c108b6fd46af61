//! Exact computation of length and odd-length statistics on the Coxeter
//! groups of types A, B and D, their signed and length-graded generating
//! functions over quotients, and exhaustive verification of the product
//! formulas those generating functions satisfy.
//!
//! ```
//! use oddlen_core::{GfEngine, GroupLabel, IndexSet, IntPoly};
//!
//! let engine = GfEngine::single_threaded();
//! let gf = engine.signed_gf(2, GroupLabel::TypeD, &IndexSet::empty(2)).unwrap();
//! assert_eq!(gf, IntPoly::from_coeffs(&[1, -2, 1]));
//! ```

pub mod closed_forms;
pub mod enumerate;
pub mod genfun;
pub mod indexset;
pub mod perm;
pub mod poly;
pub mod scan;
pub mod verify;

pub use closed_forms::ClaimId;
pub use enumerate::{enumerate_group, is_in_quotient, DescentHistogram};
pub use genfun::{GfEngine, GfQuery, GfValue, Restriction};
pub use indexset::{quotient_params, Flavor, IndexSet, IndexSetError, Interval, QuotientParams};
pub use perm::{GroupLabel, PermError, SignedPermutation, StatBundle};
pub use poly::{q_multinomial, tower_factor, BiPoly, IntPoly, PolyError};
pub use scan::{scan_all_subsets, MjStatus, ScanRow, Signature};
pub use verify::{
    check_mj_signatures, claim_instances, verify_claim, verify_suite, ClaimParams, Report,
    SignatureCheck, SignatureMode, Status,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    IndexSet(#[from] IndexSetError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
