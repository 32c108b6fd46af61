//! Sparse polynomials with checked `i64` coefficients.
//!
//! [`IntPoly`] is univariate in `x`; [`BiPoly`] is bivariate in `(y, x)`
//! and is what length-graded generating functions accumulate into. Both
//! are [`SparsePoly`] over different exponent types and share all ring
//! arithmetic. Stored coefficients are never zero, so equality is
//! structural.
//!
//! The `std::ops` impls panic on coefficient overflow; the `checked_*`
//! methods report it as [`PolyError::Overflow`]. Nothing ever wraps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("integer coefficient overflow")]
    Overflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{num} is not divisible by {den} over the integers")]
    NotDivisible { num: String, den: String },
    #[error("sum of parts {sum} exceeds top {top}")]
    PartsExceedTop { sum: usize, top: usize },
    #[error("q exponent must be positive")]
    ZeroQExponent,
}

/// A monomial exponent: `u32` for one variable, `(u32, u32)` for two.
pub trait Exponent: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn checked_add(self, other: Self) -> Option<Self>;
}

impl Exponent for u32 {
    fn zero() -> Self {
        0
    }

    fn checked_add(self, other: Self) -> Option<Self> {
        u32::checked_add(self, other)
    }
}

impl Exponent for (u32, u32) {
    fn zero() -> Self {
        (0, 0)
    }

    fn checked_add(self, other: Self) -> Option<Self> {
        Some((self.0.checked_add(other.0)?, self.1.checked_add(other.1)?))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<E: Exponent> {
    terms: BTreeMap<E, i64>,
}

/// Polynomial in `x`.
pub type IntPoly = SparsePoly<u32>;
/// Polynomial in `(y, x)`; keys are `(e_y, e_x)`.
pub type BiPoly = SparsePoly<(u32, u32)>;

impl<E: Exponent> Default for SparsePoly<E> {
    fn default() -> Self {
        SparsePoly::zero()
    }
}

impl<E: Exponent> SparsePoly<E> {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(E::zero(), 1)
    }

    pub fn monomial(exp: E, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        SparsePoly { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (E, i64)>) -> Result<Self, PolyError> {
        let mut p = SparsePoly::zero();
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: E) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (E, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: E, coeff: i64) -> Result<(), PolyError> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(PolyError::Overflow)?;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self, PolyError> {
        self.checked_scale(-1)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.checked_neg().ok_or(PolyError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self, PolyError> {
        if k == 0 {
            return Ok(SparsePoly::zero());
        }
        let terms = self
            .terms()
            .map(|(e, c)| c.checked_mul(k).map(|v| (e, v)).ok_or(PolyError::Overflow))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(SparsePoly { terms })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = SparsePoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea.checked_add(eb).ok_or(PolyError::Overflow)?;
                let c = ca.checked_mul(cb).ok_or(PolyError::Overflow)?;
                out.add_term(e, c)?;
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, PolyError> {
        let mut out = SparsePoly::one();
        for _ in 0..k {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> u128 {
        self.terms().map(|(_, c)| c.unsigned_abs() as u128).sum()
    }
}

impl IntPoly {
    /// `x^k`.
    pub fn x_pow(k: u32) -> IntPoly {
        IntPoly::monomial(k, 1)
    }

    /// `1 + sign·x^k`.
    pub fn binomial(sign: i64, k: u32) -> IntPoly {
        let mut p = IntPoly::one();
        p.add_term(k, sign).expect("small coefficients");
        p
    }

    /// Dense coefficients starting at `x^0`.
    pub fn from_coeffs(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as u32, c)))
            .expect("coefficients are stored individually")
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn leading(&self) -> Option<(u32, i64)> {
        self.terms().next_back()
    }

    pub fn eval(&self, x: i64) -> Result<i64, PolyError> {
        let mut acc = 0i64;
        for (e, c) in self.terms() {
            let xe = x.checked_pow(e).ok_or(PolyError::Overflow)?;
            acc = acc
                .checked_add(c.checked_mul(xe).ok_or(PolyError::Overflow)?)
                .ok_or(PolyError::Overflow)?;
        }
        Ok(acc)
    }

    /// Substitutes `x := x^k`.
    pub fn substitute_power(&self, k: u32) -> Result<IntPoly, PolyError> {
        let terms = self
            .terms()
            .map(|(e, c)| e.checked_mul(k).map(|e| (e, c)).ok_or(PolyError::Overflow))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(SparsePoly { terms })
    }

    /// Quotient `q` with `self = q·den` exactly over ℤ, found by repeatedly
    /// cancelling the leading term.
    pub fn exact_div(&self, den: &IntPoly) -> Result<IntPoly, PolyError> {
        let (den_deg, den_lead) = den.leading().ok_or(PolyError::DivisionByZero)?;
        let not_divisible = || PolyError::NotDivisible {
            num: self.to_string(),
            den: den.to_string(),
        };
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        while let Some((deg, lead)) = rem.leading() {
            if deg < den_deg || lead % den_lead != 0 {
                return Err(not_divisible());
            }
            let step = IntPoly::monomial(deg - den_deg, lead / den_lead);
            rem = rem.checked_sub(&step.checked_mul(den)?)?;
            quot = quot.checked_add(&step)?;
        }
        Ok(quot)
    }
}

impl BiPoly {
    /// `y := -1`.
    pub fn signed(&self) -> IntPoly {
        self.specialize_y(-1)
            .expect("specializing at y = -1 cannot overflow a valid sum")
    }

    pub fn specialize_y(&self, y: i64) -> Result<IntPoly, PolyError> {
        let mut out = IntPoly::zero();
        for ((ey, ex), c) in self.terms() {
            let yk = y.checked_pow(ey).ok_or(PolyError::Overflow)?;
            out.add_term(ex, c.checked_mul(yk).ok_or(PolyError::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn eval(&self, y: i64, x: i64) -> Result<i64, PolyError> {
        self.specialize_y(y)?.eval(x)
    }
}

/// `∏_{j=lo}^{hi} (1 + (-1)^{j-1} x^{⌊j/2⌋})^power`; empty products are 1.
pub fn tower_factor(lo: u32, hi: u32, power: u32) -> IntPoly {
    let mut out = IntPoly::one();
    for j in lo..=hi {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let factor = IntPoly::binomial(sign, j / 2)
            .checked_pow(power)
            .expect("tower factor overflow");
        out = out.checked_mul(&factor).expect("tower factor overflow");
    }
    out
}

/// `[k]_q` as a polynomial in `x` with `q := x^q_exp`.
fn q_integer(k: usize, q_exp: u32) -> IntPoly {
    IntPoly::from_terms((0..k as u32).map(|i| (i * q_exp, 1))).expect("unit coefficients")
}

/// The q-multinomial coefficient `[top; parts…, top - Σparts]_q` with
/// `q := x^q_exp`, computed by exact division of q-factorials.
pub fn q_multinomial(top: usize, parts: &[usize], q_exp: u32) -> Result<IntPoly, PolyError> {
    if q_exp == 0 {
        return Err(PolyError::ZeroQExponent);
    }
    let sum: usize = parts.iter().sum();
    if sum > top {
        return Err(PolyError::PartsExceedTop { sum, top });
    }
    let mut acc = IntPoly::one();
    for k in 1..=top {
        acc = acc.checked_mul(&q_integer(k, q_exp))?;
    }
    for &p in parts.iter().chain(std::iter::once(&(top - sum))) {
        for k in 1..=p {
            acc = acc.exact_div(&q_integer(k, q_exp))?;
        }
    }
    Ok(acc)
}

macro_rules! impl_ops {
    ($($trait:ident $method:ident $checked:ident;)*) => {$(
        impl<E: Exponent> $trait<&SparsePoly<E>> for &SparsePoly<E> {
            type Output = SparsePoly<E>;
            fn $method(self, rhs: &SparsePoly<E>) -> SparsePoly<E> {
                self.$checked(rhs).expect("polynomial coefficient overflow")
            }
        }

        impl<E: Exponent> $trait for SparsePoly<E> {
            type Output = SparsePoly<E>;
            fn $method(self, rhs: SparsePoly<E>) -> SparsePoly<E> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

impl_ops! {
    Add add checked_add;
    Sub sub checked_sub;
    Mul mul checked_mul;
}

impl<E: Exponent> AddAssign<&SparsePoly<E>> for SparsePoly<E> {
    fn add_assign(&mut self, rhs: &SparsePoly<E>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c)
                .expect("polynomial coefficient overflow");
        }
    }
}

impl<E: Exponent> Neg for SparsePoly<E> {
    type Output = SparsePoly<E>;
    fn neg(self) -> SparsePoly<E> {
        self.checked_neg().expect("polynomial coefficient overflow")
    }
}

impl<E: Exponent> std::iter::Sum for SparsePoly<E> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(SparsePoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Writes `c·m` in ascending order, e.g. `1 - 2*x + x^2`.
fn write_terms<E: Exponent>(
    f: &mut fmt::Formatter<'_>,
    poly: &SparsePoly<E>,
    monomial: impl Fn(E) -> String,
) -> fmt::Result {
    if poly.is_zero() {
        return f.write_str("0");
    }
    for (k, (e, c)) in poly.terms().enumerate() {
        let m = monomial(e);
        let abs = c.unsigned_abs();
        match (k, c < 0) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        match (m.is_empty(), abs) {
            (true, _) => write!(f, "{abs}")?,
            (false, 1) => f.write_str(&m)?,
            (false, _) => write!(f, "{abs}*{m}")?,
        }
    }
    Ok(())
}

fn power_of(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |e| power_of("x", e))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, |(ey, ex)| {
            let (y, x) = (power_of("y", ey), power_of("x", ex));
            match (y.is_empty(), x.is_empty()) {
                (false, false) => format!("{y}*{x}"),
                _ => y + &x,
            }
        })
    }
}

impl<E: Exponent> fmt::Debug for SparsePoly<E>
where
    SparsePoly<E>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), &c)?;
        }
        map.end()
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.num_terms()))?;
        for ((ey, ex), c) in self.terms() {
            map.serialize_entry(&format!("{ey},{ex}"), &c)?;
        }
        map.end()
    }
}
