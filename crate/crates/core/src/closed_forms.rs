//! Product formulas for signed generating functions, the conjectural
//! forms, and the tower cofactors recovered by exact division.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::genfun::GfEngine;
use crate::indexset::{quotient_params, Flavor, IndexSet};
use crate::perm::GroupLabel;
use crate::poly::{q_multinomial, tower_factor, IntPoly, PolyError};
use crate::{Error, Result};

/// Every checkable statement, one verification procedure each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// Type-A quotient gf is divisible by its tower factor.
    ThmAQuotient,
    /// Type-A whole-group product formula.
    CorATrivial,
    /// Type-B quotient gf, cross-multiplied, is divisible by `∏(1-x^j)`.
    ThmBQuotient,
    /// Type-D whole-group product formula.
    ThmDTrivial,
    /// Type-D whole-group gf is the square of the type-A one.
    CorDASquare,
    /// Maximal quotients `{i}` of `D_n`.
    ThmDSingleton,
    /// The quotient `{0,2}` of `D_n`.
    CorD02,
    /// The quotient `{0,1}` of `D_n`.
    ThmD01,
    ConjZeroI,
    ConjZeroOneI,
    ConjZeroISquare,
    ConjZeroOneISquare,
    /// Divisibility by the tower and signature dependence of the cofactor.
    ConjMJ,
    /// `D_n^I` and `(B_n \ D_n)^I` share the graded gf.
    LemComplement,
    /// Quotients `I ∪ {0}` and `I ∪ {1}` share the graded gf.
    Prop01Swap,
    /// Slices with `σ(a) = ±n` far from `I` have vanishing signed gf.
    LemVanishing,
    /// Shifting a connected component does not change the signed gf.
    PropShift,
}

impl ClaimId {
    pub const ALL: [ClaimId; 17] = [
        ClaimId::ThmAQuotient,
        ClaimId::CorATrivial,
        ClaimId::ThmBQuotient,
        ClaimId::ThmDTrivial,
        ClaimId::CorDASquare,
        ClaimId::ThmDSingleton,
        ClaimId::CorD02,
        ClaimId::ThmD01,
        ClaimId::ConjZeroI,
        ClaimId::ConjZeroOneI,
        ClaimId::ConjZeroISquare,
        ClaimId::ConjZeroOneISquare,
        ClaimId::ConjMJ,
        ClaimId::LemComplement,
        ClaimId::Prop01Swap,
        ClaimId::LemVanishing,
        ClaimId::PropShift,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::ThmAQuotient => "thmA_quotient",
            ClaimId::CorATrivial => "corA_trivial",
            ClaimId::ThmBQuotient => "thmB_quotient",
            ClaimId::ThmDTrivial => "thmD_trivial",
            ClaimId::CorDASquare => "corDA_square",
            ClaimId::ThmDSingleton => "thmD_singleton",
            ClaimId::CorD02 => "corD_02",
            ClaimId::ThmD01 => "thmD_01",
            ClaimId::ConjZeroI => "conj_0i",
            ClaimId::ConjZeroOneI => "conj_01i",
            ClaimId::ConjZeroISquare => "conj_0i_square",
            ClaimId::ConjZeroOneISquare => "conj_01i_square",
            ClaimId::ConjMJ => "conj_MJ",
            ClaimId::LemComplement => "lem_complement",
            ClaimId::Prop01Swap => "prop_01swap",
            ClaimId::LemVanishing => "lem_vanishing",
            ClaimId::PropShift => "prop_shift",
        }
    }

    /// Smallest rank at which the statement says anything.
    pub fn min_rank(self) -> usize {
        match self {
            ClaimId::ThmAQuotient | ClaimId::ThmBQuotient | ClaimId::LemComplement => 1,
            ClaimId::CorATrivial
            | ClaimId::ThmDTrivial
            | ClaimId::CorDASquare
            | ClaimId::Prop01Swap => 2,
            ClaimId::ThmDSingleton
            | ClaimId::ThmD01
            | ClaimId::ConjMJ
            | ClaimId::LemVanishing
            | ClaimId::PropShift => 3,
            ClaimId::CorD02 => 4,
            ClaimId::ConjZeroI
            | ClaimId::ConjZeroOneI
            | ClaimId::ConjZeroISquare
            | ClaimId::ConjZeroOneISquare => 5,
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            ClaimId::ConjZeroI
                | ClaimId::ConjZeroOneI
                | ClaimId::ConjZeroISquare
                | ClaimId::ConjZeroOneISquare
                | ClaimId::ConjMJ
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!(
            "{what} needs n ≥ {min}, got {n}"
        )));
    }
    Ok(())
}

fn one_minus_x2() -> IntPoly {
    IntPoly::binomial(-1, 2)
}

fn one_plus_x2() -> IntPoly {
    IntPoly::binomial(1, 2)
}

/// `∏_{j=2}^{n} (1 + (-1)^{j-1} x^{⌊j/2⌋})`, the whole of `S_n`.
pub fn formula_a_trivial(n: usize) -> Result<IntPoly> {
    need(n, 2, "the type-A product")?;
    Ok(tower_factor(2, n as u32, 1))
}

/// `∏_{j=2}^{n} (1 + (-1)^{j-1} x^{⌊j/2⌋})²`, the whole of `D_n`.
pub fn formula_d_trivial(n: usize) -> Result<IntPoly> {
    need(n, 2, "the type-D product")?;
    Ok(tower_factor(2, n as u32, 2))
}

/// `(1 - x²) ∏_{j=4}^{n} (…)²`, every maximal quotient `D_n^{{i}}`.
pub fn formula_d_singleton(n: usize) -> Result<IntPoly> {
    need(n, 3, "the maximal-quotient product")?;
    Ok(one_minus_x2() * tower_factor(4, n as u32, 2))
}

/// `(1 + x²) ∏_{j=4}^{n} (…)²`, the quotient `D_n^{{0,1}}`.
pub fn formula_d_01(n: usize) -> Result<IntPoly> {
    need(n, 3, "the {0,1} product")?;
    Ok(one_plus_x2() * tower_factor(4, n as u32, 2))
}

/// `(1 - x²) ∏_{j=4}^{n} (…)²`, the quotient `D_n^{{0,2}}`.
pub fn formula_d_02(n: usize) -> Result<IntPoly> {
    need(n, 4, "the {0,2} product")?;
    Ok(one_minus_x2() * tower_factor(4, n as u32, 2))
}

/// A conjectured identity `multiplier · gf = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossMultiplied {
    pub multiplier: IntPoly,
    pub rhs: IntPoly,
}

/// Product forms for the quotients `{0,i}` and `{0,1,i}`, `i ∈ [3, n-1]`.
/// The `{0,1,i}` form has denominator `1 - x²` and is stated cleared.
pub fn conjecture_formula(id: ClaimId, n: usize, i: usize) -> Result<CrossMultiplied> {
    need(n, 5, "the conjectured products")?;
    if !(3..n).contains(&i) {
        return Err(Error::Precondition(format!(
            "i = {i} is outside [3, {}]",
            n - 1
        )));
    }
    let tower = tower_factor(4, n as u32, 2);
    match id {
        ClaimId::ConjZeroI => Ok(CrossMultiplied {
            multiplier: IntPoly::one(),
            rhs: tower,
        }),
        ClaimId::ConjZeroOneI => Ok(CrossMultiplied {
            multiplier: one_minus_x2(),
            rhs: one_plus_x2() * tower,
        }),
        other => Err(Error::Precondition(format!("{other} has no product form"))),
    }
}

/// `∏_{j=2m+2}^{n} (…)²` with `m` summed over every component of `J`.
pub fn mj_tower(n: usize, set: &IndexSet) -> IntPoly {
    let m = quotient_params(set, Flavor::ConjectureD)
        .expect("every index set has type-D parameters")
        .m;
    tower_factor(2 * m as u32 + 2, n as u32, 2)
}

/// `M_J = D_n^J(x) / tower`; a [`PolyError::NotDivisible`] means the
/// divisibility part of the conjecture fails at `(n, J)`.
pub fn extract_mj(engine: &GfEngine, n: usize, set: &IndexSet) -> Result<IntPoly> {
    need(n, 3, "M_J extraction")?;
    let gf = engine.signed_gf(n, GroupLabel::TypeD, set)?;
    mj_from_gf(&gf, n, set)
}

pub fn mj_from_gf(gf: &IntPoly, n: usize, set: &IndexSet) -> Result<IntPoly> {
    Ok(gf.exact_div(&mj_tower(n, set))?)
}

/// The explicit factors of the type-A quotient formula: the tower
/// `∏_{k=2m+2}^{n} (1 + (-1)^{k-1} x^{⌊k/2⌋})`.
pub fn type_a_tower(n: usize, set: &IndexSet) -> Result<IntPoly> {
    let m = quotient_params(set, Flavor::TypeA)?.m;
    Ok(tower_factor(2 * m as u32 + 2, n as u32, 1))
}

/// Guess for the unexpanded multinomial factor of the type-A quotient
/// formula: `[m; ⌊(|I_1|+1)/2⌋, …, ⌊(|I_s|+1)/2⌋]_{x²}`.
pub fn type_a_multinomial_guess(set: &IndexSet) -> Result<IntPoly> {
    let params = quotient_params(set, Flavor::TypeA)?;
    let parts: Vec<usize> = params.components.iter().map(|c| c.half_up()).collect();
    Ok(q_multinomial(params.m, &parts, 2)?)
}

/// Numerator and denominator of the type-B quotient formula:
/// `∏_{j=a+1}^{n} (1 - x^j)` and `∏_{i=1}^{m} (1 - x^{2i})`.
pub fn type_b_factors(n: usize, set: &IndexSet) -> Result<(IntPoly, IntPoly)> {
    let params = quotient_params(set, Flavor::TypeB)?;
    let a = params.a.expect("type-B parameters always carry a") as u32;
    let numerator = ((a + 1)..=n as u32)
        .map(|j| IntPoly::binomial(-1, j))
        .product_poly();
    let denominator = (1..=params.m as u32)
        .map(|i| IntPoly::binomial(-1, 2 * i))
        .product_poly();
    Ok((numerator, denominator))
}

/// Guess for the unexpanded multinomial factor of the type-B quotient
/// formula: `[m; ⌊(|J_1|+1)/2⌋, …, ⌊(|J_s|+1)/2⌋]_{x²}` over the components
/// other than the one through 0.
pub fn type_b_multinomial_guess(set: &IndexSet) -> Result<IntPoly, PolyError> {
    let params = quotient_params(set, Flavor::TypeB).expect("type-B parameters always exist");
    let parts: Vec<usize> = params
        .components
        .iter()
        .filter(|c| Some(**c) != params.j0)
        .map(|c| c.half_up())
        .collect();
    q_multinomial(params.m, &parts, 2)
}

trait ProductPoly {
    fn product_poly(self) -> IntPoly;
}

impl<I: Iterator<Item = IntPoly>> ProductPoly for I {
    fn product_poly(self) -> IntPoly {
        self.fold(IntPoly::one(), |acc, f| acc * f)
    }
}
