//! Claim verification: each [`ClaimId`] is checked by computing its
//! generating functions by enumeration and comparing them exactly with the
//! product formula or identity it asserts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{
    conjecture_formula, formula_a_trivial, formula_d_01, formula_d_02, formula_d_singleton,
    formula_d_trivial, mj_from_gf, type_a_multinomial_guess, type_a_tower, type_b_factors,
    type_b_multinomial_guess, ClaimId,
};
use crate::genfun::{GfEngine, GfValue, Restriction, MAX_ENUMERATION_RANK};
use crate::indexset::{quotient_params, Flavor, IndexSet};
use crate::perm::GroupLabel;
use crate::poly::{IntPoly, PolyError};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Mismatch => "mismatch",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Parameters of one claim instance. Which fields are meaningful depends
/// on the claim; unused ones stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClaimParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<IndexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    /// Window position carrying `±n` (vanishing slices).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<i32>,
    /// Half-length of the shifted component `[i, i+2k]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl ClaimParams {
    pub fn with_set(set: IndexSet) -> Self {
        ClaimParams {
            set: Some(set),
            ..Default::default()
        }
    }

    pub fn with_i(i: usize) -> Self {
        ClaimParams {
            i: Some(i),
            ..Default::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == ClaimParams::default()
    }
}

impl fmt::Display for ClaimParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = &self.set {
            parts.push(format!("set={s}"));
        }
        if let Some(i) = self.i {
            parts.push(format!("i={i}"));
        }
        if let Some(a) = self.a {
            parts.push(format!("a={a}"));
        }
        if let Some(v) = self.value {
            parts.push(format!("value={v}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claim: ClaimId,
    pub n: usize,
    pub params: ClaimParams,
    pub status: Status,
    pub lhs: GfValue,
    pub rhs: GfValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Quotient left after dividing out the explicit factors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor: Option<IntPoly>,
    /// Inapplicability reason, or the non-gating multinomial comparison.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// A report as written out, with or without the timing field.
#[derive(Serialize)]
pub struct ReportRecord<'a> {
    #[serde(flatten)]
    report: &'a Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

impl Report {
    pub fn record(&self, with_timing: bool) -> ReportRecord<'_> {
        ReportRecord {
            report: self,
            elapsed_ms: with_timing.then_some(self.elapsed.as_secs_f64() * 1e3),
        }
    }

    fn inapplicable(claim: ClaimId, n: usize, params: ClaimParams, reason: String) -> Report {
        Report {
            claim,
            n,
            params,
            status: Status::Inapplicable,
            lhs: GfValue::Signed(IntPoly::zero()),
            rhs: GfValue::Signed(IntPoly::zero()),
            counterexample: None,
            cofactor: None,
            note: Some(reason),
            elapsed: Duration::ZERO,
        }
    }
}

/// What one check produced, before it is stamped with claim and timing.
struct Outcome {
    lhs: GfValue,
    rhs: GfValue,
    failure: Option<String>,
    cofactor: Option<IntPoly>,
    note: Option<String>,
}

impl Outcome {
    fn equal(lhs: IntPoly, rhs: IntPoly) -> Outcome {
        let failure = (lhs != rhs).then(|| format!("lhs = {lhs} but rhs = {rhs}"));
        Outcome {
            lhs: GfValue::Signed(lhs),
            rhs: GfValue::Signed(rhs),
            failure,
            cofactor: None,
            note: None,
        }
    }

    /// `lhs` must be an exact multiple of `factor`; the quotient is kept
    /// and compared with `guess`.
    fn divisible(lhs: IntPoly, factor: IntPoly, guess: Option<Result<IntPoly>>) -> Result<Outcome> {
        let (failure, cofactor) = match lhs.exact_div(&factor) {
            Ok(q) => (None, Some(q)),
            Err(PolyError::NotDivisible { .. }) => {
                (Some(format!("{lhs} is not divisible by {factor}")), None)
            }
            Err(e) => return Err(e.into()),
        };
        let note = match (&cofactor, guess) {
            (Some(q), Some(g)) => {
                let g = g?;
                Some(if *q == g {
                    "cofactor matches the q-multinomial hypothesis".to_string()
                } else {
                    format!("warning: cofactor differs from the q-multinomial hypothesis {g}")
                })
            }
            _ => None,
        };
        Ok(Outcome {
            lhs: GfValue::Signed(lhs),
            rhs: GfValue::Signed(factor),
            failure,
            cofactor,
            note,
        })
    }
}

fn d_gf(engine: &GfEngine, n: usize, set: &IndexSet) -> Result<IntPoly> {
    engine.signed_gf(n, GroupLabel::TypeD, set)
}

fn set_of(n: usize, members: &[usize]) -> IndexSet {
    IndexSet::new(n, members.iter().copied()).expect("members below the rank")
}

fn one_minus_x2() -> IntPoly {
    IntPoly::binomial(-1, 2)
}

/// Sets of rank `n` inside `[lo, n-1]`.
fn sets_from(n: usize, lo: usize) -> impl Iterator<Item = IndexSet> {
    IndexSet::all_subsets(n).filter(move |s| s.iter().all(|i| i >= lo))
}

/// `Ĩ = (I \ {i}) ∪ {i+2k+1}`, or why `(I, i, k)` is not a shift configuration.
fn shifted(n: usize, set: &IndexSet, i: usize, k: usize) -> std::result::Result<IndexSet, String> {
    let end = i + 2 * k;
    if !set
        .components()
        .iter()
        .any(|c| c.start == i && c.end == end)
    {
        return Err(format!(
            "[{i}, {end}] is not a connected component of {set}"
        ));
    }
    if end + 1 > n - 1 {
        return Err(format!("{} is outside [0, {}]", end + 1, n - 1));
    }
    if set.contains(end + 2) {
        return Err(format!("{} ∈ {set}", end + 2));
    }
    if !((i >= 1 && !set.contains(0)) || i > 2) {
        return Err(format!(
            "needs i ≥ 1 with 0 ∉ I, or i > 2 (i = {i}, I = {set})"
        ));
    }
    Ok(set.without(i).with(end + 1).expect("checked above"))
}

/// Why a vanishing-slice configuration is not admissible, if it is not.
fn vanishing_admissible(
    n: usize,
    set: &IndexSet,
    a: usize,
    value: i32,
) -> std::result::Result<(), String> {
    let lo = 2 + usize::from(set.contains(0));
    if !(lo..n).contains(&a) {
        return Err(format!("a = {a} is outside [{lo}, {}]", n - 1));
    }
    if let Some(hit) = (a - 2..=a + 1).find(|&j| set.contains(j)) {
        return Err(format!("{hit} ∈ [{}, {}] ∩ I", a - 2, a + 1));
    }
    if value.unsigned_abs() as usize != n {
        return Err(format!("value {value} is not ±{n}"));
    }
    Ok(())
}

/// Checks the shape of `params` against the claim; `Err` carries the
/// reason the instance is inapplicable.
fn admissible(id: ClaimId, n: usize, p: &ClaimParams) -> std::result::Result<(), String> {
    if n < id.min_rank() {
        return Err(format!("{id} needs n ≥ {}", id.min_rank()));
    }
    if n > MAX_ENUMERATION_RANK {
        return Err(format!(
            "n = {n} exceeds the enumeration limit {MAX_ENUMERATION_RANK}"
        ));
    }
    if let Some(s) = &p.set {
        if s.rank() != n {
            return Err(format!("index set {s} has rank {} but n = {n}", s.rank()));
        }
    }
    let extra = |allowed: &[&str]| -> std::result::Result<(), String> {
        let given = [
            ("set", p.set.is_some()),
            ("i", p.i.is_some()),
            ("a", p.a.is_some()),
            ("value", p.value.is_some()),
            ("k", p.k.is_some()),
        ];
        for (name, present) in given {
            if present && !allowed.contains(&name) {
                return Err(format!("{id} takes no `{name}` parameter"));
            }
        }
        for name in allowed {
            if !given.iter().any(|(g, present)| g == name && *present) {
                return Err(format!("{id} needs a `{name}` parameter"));
            }
        }
        Ok(())
    };
    match id {
        ClaimId::CorATrivial
        | ClaimId::ThmDTrivial
        | ClaimId::CorDASquare
        | ClaimId::CorD02
        | ClaimId::ThmD01 => extra(&[]),
        ClaimId::ThmAQuotient => {
            extra(&["set"])?;
            if p.set.is_some_and(|s| s.contains(0)) {
                return Err("type-A index sets lie in [1, n-1]".into());
            }
            Ok(())
        }
        ClaimId::ThmBQuotient | ClaimId::ConjMJ | ClaimId::LemComplement => extra(&["set"]),
        ClaimId::ThmDSingleton => {
            extra(&["i"])?;
            let i = p.i.unwrap_or(0);
            if i >= n {
                return Err(format!("i = {i} is outside [0, {}]", n - 1));
            }
            Ok(())
        }
        ClaimId::ConjZeroI
        | ClaimId::ConjZeroOneI
        | ClaimId::ConjZeroISquare
        | ClaimId::ConjZeroOneISquare => {
            extra(&["i"])?;
            let i = p.i.unwrap_or(0);
            if !(3..n).contains(&i) {
                return Err(format!("i = {i} is outside [3, {}]", n - 1));
            }
            Ok(())
        }
        ClaimId::Prop01Swap => {
            extra(&["set"])?;
            if p.set.is_some_and(|s| s.contains(0) || s.contains(1)) {
                return Err("I must lie in [2, n-1]".into());
            }
            Ok(())
        }
        ClaimId::LemVanishing => {
            extra(&["set", "a", "value"])?;
            vanishing_admissible(n, &p.set.unwrap(), p.a.unwrap(), p.value.unwrap())
        }
        ClaimId::PropShift => {
            extra(&["set", "i", "k"])?;
            shifted(n, &p.set.unwrap(), p.i.unwrap(), p.k.unwrap()).map(|_| ())
        }
    }
}

/// Every admissible parameter choice for `id` at rank `n`, in a fixed
/// order. Empty when the claim says nothing at this rank.
pub fn claim_instances(id: ClaimId, n: usize) -> Vec<ClaimParams> {
    if n < id.min_rank() || n > MAX_ENUMERATION_RANK {
        return Vec::new();
    }
    let candidates: Vec<ClaimParams> = match id {
        ClaimId::CorATrivial
        | ClaimId::ThmDTrivial
        | ClaimId::CorDASquare
        | ClaimId::CorD02
        | ClaimId::ThmD01 => vec![ClaimParams::default()],
        ClaimId::ThmAQuotient => sets_from(n, 1).map(ClaimParams::with_set).collect(),
        ClaimId::Prop01Swap => sets_from(n, 2).map(ClaimParams::with_set).collect(),
        ClaimId::ThmBQuotient | ClaimId::ConjMJ | ClaimId::LemComplement => {
            IndexSet::all_subsets(n)
                .map(ClaimParams::with_set)
                .collect()
        }
        ClaimId::ThmDSingleton => (0..n).map(ClaimParams::with_i).collect(),
        ClaimId::ConjZeroI
        | ClaimId::ConjZeroOneI
        | ClaimId::ConjZeroISquare
        | ClaimId::ConjZeroOneISquare => (3..n).map(ClaimParams::with_i).collect(),
        ClaimId::LemVanishing => {
            let mut out = Vec::new();
            for set in IndexSet::all_subsets(n) {
                for a in 2..n {
                    for value in [n as i32, -(n as i32)] {
                        out.push(ClaimParams {
                            set: Some(set),
                            a: Some(a),
                            value: Some(value),
                            ..Default::default()
                        });
                    }
                }
            }
            out
        }
        ClaimId::PropShift => {
            let mut out = Vec::new();
            for set in IndexSet::all_subsets(n) {
                for c in set.components() {
                    if c.len() % 2 == 1 {
                        out.push(ClaimParams {
                            set: Some(set),
                            i: Some(c.start),
                            k: Some(c.len() / 2),
                            ..Default::default()
                        });
                    }
                }
            }
            out
        }
    };
    candidates
        .into_iter()
        .filter(|p| admissible(id, n, p).is_ok())
        .collect()
}

/// Groups whose histograms `id` reads at any rank.
fn groups_used(id: ClaimId) -> &'static [GroupLabel] {
    match id {
        ClaimId::ThmAQuotient | ClaimId::CorATrivial => &[GroupLabel::TypeA],
        ClaimId::ThmBQuotient => &[GroupLabel::TypeB],
        ClaimId::CorDASquare | ClaimId::ConjZeroISquare | ClaimId::ConjZeroOneISquare => {
            &[GroupLabel::TypeD, GroupLabel::TypeA]
        }
        ClaimId::LemComplement => &[GroupLabel::TypeD, GroupLabel::BminusD],
        ClaimId::LemVanishing => &[],
        _ => &[GroupLabel::TypeD],
    }
}

fn check(engine: &GfEngine, id: ClaimId, n: usize, p: &ClaimParams) -> Result<Outcome> {
    let a_gf = |set: &IndexSet| engine.signed_gf(n, GroupLabel::TypeA, set);
    match id {
        ClaimId::ThmAQuotient => {
            let set = p.set.unwrap();
            Outcome::divisible(
                a_gf(&set)?,
                type_a_tower(n, &set)?,
                Some(type_a_multinomial_guess(&set)),
            )
        }
        ClaimId::CorATrivial => Ok(Outcome::equal(
            a_gf(&IndexSet::empty(n))?,
            formula_a_trivial(n)?,
        )),
        ClaimId::ThmBQuotient => {
            // gf · ∏(1-x^{2i}) must be a multiple of ∏_{j=a+1}^{n} (1-x^j)
            let set = p.set.unwrap();
            let gf = engine.signed_gf(n, GroupLabel::TypeB, &set)?;
            let (numerator, denominator) = type_b_factors(n, &set)?;
            let guess = type_b_multinomial_guess(&set).map_err(Error::from);
            Outcome::divisible(gf.checked_mul(&denominator)?, numerator, Some(guess))
        }
        ClaimId::ThmDTrivial => Ok(Outcome::equal(
            d_gf(engine, n, &IndexSet::empty(n))?,
            formula_d_trivial(n)?,
        )),
        ClaimId::CorDASquare => {
            let a = a_gf(&IndexSet::empty(n))?;
            Ok(Outcome::equal(
                d_gf(engine, n, &IndexSet::empty(n))?,
                a.checked_mul(&a)?,
            ))
        }
        ClaimId::ThmDSingleton => {
            let i = p.i.unwrap();
            let gf = d_gf(engine, n, &set_of(n, &[i]))?;
            let whole = d_gf(engine, n, &IndexSet::empty(n))?;
            let mut out = Outcome::equal(gf.clone(), formula_d_singleton(n)?);
            let scaled = one_minus_x2().checked_mul(&gf)?;
            if out.failure.is_none() && scaled != whole {
                out.failure = Some(format!(
                    "(1 - x^2) * gf = {scaled} but the whole group gives {whole}"
                ));
            }
            Ok(out)
        }
        ClaimId::CorD02 => Ok(Outcome::equal(
            d_gf(engine, n, &set_of(n, &[0, 2]))?,
            formula_d_02(n)?,
        )),
        ClaimId::ThmD01 => Ok(Outcome::equal(
            d_gf(engine, n, &set_of(n, &[0, 1]))?,
            formula_d_01(n)?,
        )),
        ClaimId::ConjZeroI => {
            let i = p.i.unwrap();
            let form = conjecture_formula(id, n, i)?;
            let gf = d_gf(engine, n, &set_of(n, &[0, i]))?;
            Ok(Outcome::equal(form.multiplier.checked_mul(&gf)?, form.rhs))
        }
        ClaimId::ConjZeroOneI => {
            let i = p.i.unwrap();
            let form = conjecture_formula(id, n, i)?;
            let gf = d_gf(engine, n, &set_of(n, &[0, 1, i]))?;
            Ok(Outcome::equal(form.multiplier.checked_mul(&gf)?, form.rhs))
        }
        ClaimId::ConjZeroISquare => {
            let i = p.i.unwrap();
            let s = a_gf(&set_of(n, &[i]))?;
            Ok(Outcome::equal(
                d_gf(engine, n, &set_of(n, &[0, i]))?,
                s.checked_mul(&s)?,
            ))
        }
        ClaimId::ConjZeroOneISquare => {
            let i = p.i.unwrap();
            let s = a_gf(&set_of(n, &[1, i]))?;
            let rhs = IntPoly::binomial(-1, 4).checked_mul(&s.checked_mul(&s)?)?;
            Ok(Outcome::equal(
                d_gf(engine, n, &set_of(n, &[0, 1, i]))?,
                rhs,
            ))
        }
        ClaimId::ConjMJ => {
            let set = p.set.unwrap();
            let gf = d_gf(engine, n, &set)?;
            Outcome::divisible(gf, crate::closed_forms::mj_tower(n, &set), None)
        }
        ClaimId::LemComplement => {
            let set = p.set.unwrap();
            let lhs = engine.graded_gf(n, GroupLabel::TypeD, &set)?;
            let rhs = engine.graded_gf(n, GroupLabel::BminusD, &set)?;
            Ok(graded_equal(lhs, rhs))
        }
        ClaimId::Prop01Swap => {
            let set = p.set.unwrap();
            let lhs = engine.graded_gf(n, GroupLabel::TypeD, &set.with(0)?)?;
            let rhs = engine.graded_gf(n, GroupLabel::TypeD, &set.with(1)?)?;
            Ok(graded_equal(lhs, rhs))
        }
        ClaimId::LemVanishing => {
            let r = Restriction {
                position: p.a.unwrap(),
                value: p.value.unwrap(),
            };
            let gf = engine.restricted_gf(n, GroupLabel::TypeD, &p.set.unwrap(), r)?;
            Ok(Outcome::equal(gf, IntPoly::zero()))
        }
        ClaimId::PropShift => {
            let set = p.set.unwrap();
            let moved =
                shifted(n, &set, p.i.unwrap(), p.k.unwrap()).map_err(Error::Precondition)?;
            let both = set.union(&moved);
            let lhs = d_gf(engine, n, &set)?;
            let mid = d_gf(engine, n, &both)?;
            let mut out = Outcome::equal(lhs.clone(), d_gf(engine, n, &moved)?);
            if out.failure.is_none() && mid != lhs {
                out.failure = Some(format!("gf({set}) = {lhs} but gf({both}) = {mid}"));
            }
            Ok(out)
        }
    }
}

fn graded_equal(lhs: crate::BiPoly, rhs: crate::BiPoly) -> Outcome {
    let failure = (lhs != rhs).then(|| format!("lhs = {lhs} but rhs = {rhs}"));
    Outcome {
        lhs: GfValue::Graded(lhs),
        rhs: GfValue::Graded(rhs),
        failure,
        cofactor: None,
        note: None,
    }
}

/// Checks one claim instance. Parameters outside the claim's domain give
/// an `inapplicable` report; `Err` is reserved for arithmetic failures.
pub fn verify_claim(
    engine: &GfEngine,
    id: ClaimId,
    n: usize,
    params: &ClaimParams,
) -> Result<Report> {
    if let Err(reason) = admissible(id, n, params) {
        return Ok(Report::inapplicable(id, n, params.clone(), reason));
    }
    let start = Instant::now();
    let out = check(engine, id, n, params)?;
    let status = if out.failure.is_some() {
        Status::Mismatch
    } else {
        Status::Verified
    };
    Ok(Report {
        claim: id,
        n,
        params: params.clone(),
        status,
        lhs: out.lhs,
        rhs: out.rhs,
        counterexample: out.failure.map(|f| format!("n={n} {params}: {f}")),
        cofactor: out.cofactor,
        note: out.note,
        elapsed: start.elapsed(),
    })
}

/// How index sets are keyed when checking that `M_J` is a function of
/// the component sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignatureMode {
    /// Components of `J` itself.
    #[default]
    Literal,
    /// A set holding 0 but not 1 is first replaced by `(J \ {0}) ∪ {1}`,
    /// which has the same generating function; `M_J` is recomputed
    /// against that set's tower.
    SwapNormalized,
}

fn normalize(set: &IndexSet, mode: SignatureMode) -> IndexSet {
    match mode {
        SignatureMode::SwapNormalized if set.contains(0) && !set.contains(1) => {
            set.without(0).with(1).expect("1 < n for n ≥ 2")
        }
        _ => *set,
    }
}

/// Outcome of the component-size dependence check at one rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureCheck {
    pub n: usize,
    /// Distinct `(|J₀|; |J₁|, …)` classes seen.
    pub classes: usize,
    /// One line per set whose `M_J` disagrees with the first set of its class.
    pub violations: Vec<String>,
}

/// Checks, over `conj_MJ` reports, that at each rank `M_J` depends only on
/// `(|J₀|; |J₁|, …, |J_s|)` and is symmetric in `|J₁|, …, |J_s|`.
/// Offending reports are downgraded to `mismatch`.
pub fn check_mj_signatures(
    reports: &mut [Report],
    mode: SignatureMode,
) -> Result<Vec<SignatureCheck>> {
    // (n, |J₀|, sizes) -> (first set, its M_J); sizes sorted for the symmetry pass
    type Classes = BTreeMap<(usize, usize, Vec<usize>), (IndexSet, IntPoly)>;
    let mut ordered: Classes = BTreeMap::new();
    let mut sorted: Classes = BTreeMap::new();
    let mut checks: BTreeMap<usize, SignatureCheck> = BTreeMap::new();
    for r in reports.iter_mut() {
        if r.claim != ClaimId::ConjMJ || r.status == Status::Inapplicable {
            continue;
        }
        let (Some(set), GfValue::Signed(gf)) = (r.params.set, &r.lhs) else {
            continue;
        };
        let keyed = normalize(&set, mode);
        let mj = match mj_from_gf(gf, r.n, &keyed) {
            Ok(m) => m,
            Err(Error::Poly(PolyError::NotDivisible { .. })) => continue,
            Err(e) => return Err(e),
        };
        let (j0, rest) = quotient_params(&keyed, Flavor::ConjectureD)?.signature();
        let mut rest_sorted = rest.clone();
        rest_sorted.sort_unstable();
        let entry = checks.entry(r.n).or_insert_with(|| SignatureCheck {
            n: r.n,
            classes: 0,
            violations: Vec::new(),
        });
        let mut problem = None;
        let key = (r.n, j0, rest.clone());
        match ordered.get(&key) {
            Some((first, m)) if *m != mj => {
                problem = Some(format!(
                    "M_J({set}) = {mj} but M_J({first}) = {m}, both with sizes ({j0}; {rest:?})"
                ));
            }
            Some(_) => {}
            None => {
                entry.classes += 1;
                ordered.insert(key, (set, mj.clone()));
            }
        }
        let key = (r.n, j0, rest_sorted);
        match sorted.get(&key) {
            Some((first, m)) if problem.is_none() && *m != mj => {
                problem = Some(format!(
                    "M_J({set}) = {mj} but M_J({first}) = {m}; sizes ({j0}; {rest:?}) are a permutation"
                ));
            }
            Some(_) => {}
            None => {
                sorted.insert(key, (set, mj));
            }
        }
        if let Some(text) = problem {
            let line = format!("n={} {}", r.n, text);
            if r.status == Status::Verified {
                r.status = Status::Mismatch;
                r.counterexample = Some(line.clone());
            }
            entry.violations.push(line);
        }
    }
    Ok(checks.into_values().collect())
}

/// Verifies every instance of every claim in `ids` over `ranks`, in
/// `(claim, n, params)` order whatever the worker count. Ranks at which
/// a claim has no instances produce one `inapplicable` report. `conj_MJ`
/// reports also go through the signature check keyed by `mode`.
pub fn verify_suite(
    engine: &GfEngine,
    ids: &[ClaimId],
    ranks: RangeInclusive<usize>,
    mode: SignatureMode,
) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for &id in ids {
        let mut for_claim = Vec::new();
        for n in ranks.clone() {
            let instances = claim_instances(id, n);
            if instances.is_empty() {
                for_claim.push(verify_claim(engine, id, n, &ClaimParams::default())?);
                continue;
            }
            // build shared histograms once, outside the parallel section
            for &g in groups_used(id) {
                engine.histogram(n, g)?;
            }
            let reports: Vec<Report> = engine.install(|| {
                instances
                    .par_iter()
                    .map(|p| verify_claim(engine, id, n, p))
                    .collect::<Result<Vec<_>>>()
            })?;
            for_claim.extend(reports);
        }
        if id == ClaimId::ConjMJ {
            check_mj_signatures(&mut for_claim, mode)?;
        }
        out.extend(for_claim);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(c)
    }

    fn run(id: ClaimId, n: usize, params: ClaimParams) -> Report {
        verify_claim(&GfEngine::single_threaded(), id, n, &params).unwrap()
    }

    #[test]
    fn verify_examples() {
        let r = run(ClaimId::ThmDTrivial, 2, ClaimParams::default());
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.lhs, GfValue::Signed(p(&[1, -2, 1])));
        assert_eq!(r.rhs, r.lhs);

        let r = run(ClaimId::CorDASquare, 3, ClaimParams::default());
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.lhs, GfValue::Signed(p(&[1, 0, -2, 0, 1])));

        let r = run(
            ClaimId::LemVanishing,
            4,
            ClaimParams {
                set: Some(IndexSet::empty(4)),
                a: Some(2),
                value: Some(4),
                ..Default::default()
            },
        );
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.lhs, GfValue::Signed(IntPoly::zero()));

        // a = 3 next to a zero in I: the slice does not vanish
        let slice = |value| ClaimParams {
            set: Some(IndexSet::new(4, [0]).unwrap()),
            a: Some(3),
            value: Some(value),
            ..Default::default()
        };
        let r = run(ClaimId::LemVanishing, 4, slice(4));
        assert_eq!(r.status, Status::Mismatch);
        assert_eq!(r.lhs, GfValue::Signed(p(&[0, 0, -1, 0, 1])));
        let r = run(ClaimId::LemVanishing, 4, slice(-4));
        assert_eq!(r.lhs, GfValue::Signed(p(&[0, 0, 0, 0, -1, 0, 1])));
    }

    #[test]
    fn out_of_range_is_inapplicable() {
        let r = run(ClaimId::CorD02, 3, ClaimParams::default());
        assert_eq!(r.status, Status::Inapplicable);
        assert!(r.note.unwrap().contains("n ≥ 4"));
        let r = run(ClaimId::ConjZeroI, 6, ClaimParams::with_i(2));
        assert_eq!(r.status, Status::Inapplicable);
        let r = run(ClaimId::ThmDSingleton, 4, ClaimParams::default());
        assert_eq!(r.status, Status::Inapplicable);
        let r = run(ClaimId::ThmDTrivial, 4, ClaimParams::with_i(1));
        assert_eq!(r.status, Status::Inapplicable);
        let r = run(
            ClaimId::ThmAQuotient,
            3,
            ClaimParams::with_set(IndexSet::new(3, [0]).unwrap()),
        );
        assert_eq!(r.status, Status::Inapplicable);
        let r = run(
            ClaimId::ConjMJ,
            4,
            ClaimParams::with_set(IndexSet::empty(3)),
        );
        assert_eq!(r.status, Status::Inapplicable);
    }

    #[test]
    fn shift_configurations() {
        let s = |m: &[usize]| set_of(7, m);
        assert_eq!(shifted(7, &s(&[1]), 1, 0), Ok(s(&[2])));
        assert_eq!(shifted(7, &s(&[3, 4, 5]), 3, 1), Ok(s(&[4, 5, 6])));
        // 0 ∈ I needs i > 2
        assert!(shifted(7, &s(&[0, 1]), 1, 0).is_err());
        assert!(shifted(7, &s(&[0, 3]), 3, 0).is_ok());
        // the landing index must stay in range, and i+2k+2 must be free
        assert!(shifted(7, &s(&[6]), 6, 0).is_err());
        assert!(shifted(7, &s(&[2, 4]), 2, 0).is_err());
        // not a whole component
        assert!(shifted(7, &s(&[2, 3]), 2, 0).is_err());
    }

    #[test]
    fn instances_are_admissible_and_ordered() {
        for id in ClaimId::ALL {
            for n in 1..=5 {
                let inst = claim_instances(id, n);
                for p in &inst {
                    assert!(admissible(id, n, p).is_ok(), "{id} n={n} {p}");
                }
                if n < id.min_rank() {
                    assert!(inst.is_empty());
                }
            }
        }
        assert_eq!(claim_instances(ClaimId::ThmDSingleton, 4).len(), 4);
        assert_eq!(claim_instances(ClaimId::ConjZeroI, 7).len(), 4);
        assert_eq!(claim_instances(ClaimId::ConjMJ, 5).len(), 32);
        assert_eq!(claim_instances(ClaimId::ThmAQuotient, 5).len(), 16);
        // ∅ at n = 4: a ∈ {2, 3}, two values each
        let v = claim_instances(ClaimId::LemVanishing, 4);
        assert_eq!(v.iter().filter(|p| p.set.unwrap().is_empty()).count(), 4);
    }

    #[test]
    fn mismatch_carries_counterexample() {
        // a claim instance that is admissible but false: J = {0,2} against
        // J = {0,3} in the M_J class check at n = 4
        let e = GfEngine::single_threaded();
        let mut reports =
            verify_suite(&e, &[ClaimId::ConjMJ], 4..=4, SignatureMode::Literal).unwrap();
        assert!(reports.iter().all(|r| r.cofactor.is_some()));
        let bad: Vec<_> = reports
            .iter()
            .filter(|r| r.status == Status::Mismatch)
            .collect();
        assert!(!bad.is_empty());
        assert!(bad
            .iter()
            .all(|r| r.counterexample.as_deref().unwrap().starts_with("n=4")));
        let normalized = check_mj_signatures(&mut reports, SignatureMode::SwapNormalized).unwrap();
        assert!(normalized.iter().all(|c| c.violations.is_empty()));
        let fresh =
            verify_suite(&e, &[ClaimId::ConjMJ], 3..=5, SignatureMode::SwapNormalized).unwrap();
        assert!(fresh.iter().all(|r| r.status == Status::Verified));
    }

    #[test]
    fn suite_is_ordered_and_stable_across_workers() {
        let ids = [ClaimId::ThmDSingleton, ClaimId::PropShift, ClaimId::CorD02];
        let one = verify_suite(
            &GfEngine::single_threaded(),
            &ids,
            3..=5,
            SignatureMode::Literal,
        )
        .unwrap();
        let four = verify_suite(
            &GfEngine::new(4).unwrap(),
            &ids,
            3..=5,
            SignatureMode::Literal,
        )
        .unwrap();
        let strip = |rs: &[Report]| {
            rs.iter()
                .map(|r| serde_json::to_string(&r.record(false)).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&one), strip(&four));
        let pos = |c: ClaimId| ids.iter().position(|&x| x == c).unwrap();
        assert!(one
            .windows(2)
            .all(|w| (pos(w[0].claim), w[0].n) <= (pos(w[1].claim), w[1].n)));
        // corD_02 at n = 3 has no instances
        assert!(one
            .iter()
            .any(|r| r.claim == ClaimId::CorD02 && r.n == 3 && r.status == Status::Inapplicable));
    }

    #[test]
    fn report_json_shape() {
        let r = run(ClaimId::ThmDTrivial, 2, ClaimParams::default());
        let text = serde_json::to_string(&r.record(false)).unwrap();
        assert_eq!(
            text,
            r#"{"claim":"thmD_trivial","n":2,"params":{},"status":"verified","lhs":{"0":1,"1":-2,"2":1},"rhs":{"0":1,"1":-2,"2":1}}"#
        );
        let timed = serde_json::to_value(r.record(true)).unwrap();
        assert!(timed.get("elapsed_ms").is_some());
    }
}
