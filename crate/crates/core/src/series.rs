//! Degree-truncated formal power series over an exact coefficient ring.
//!
//! A `TruncatedSeries<R>` stores coefficients for degrees `0..=cap` in a
//! fixed formal variable. Binary operations require the same variable and
//! truncate to the minimum cap of the operands; results are never extended.
//! Three coefficient rings are used throughout the crate: [`ExactRational`],
//! [`HbarLaurent`](crate::laurent::HbarLaurent) and [`LambdaPoly`]
//! (a truncated polynomial in the marking variable lambda).

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Formal variable tag. Operations on series with mismatched tags panic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    /// Marks half-edges / leaves (the integration variable of the Wick sum).
    X,
    /// Marks vertices, blocks or trees.
    Lambda,
    /// Marks the negated Euler characteristic.
    Hbar,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Lambda => "lambda",
            Var::Hbar => "hbar",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Commutative ring with exact equality, closed under rational scaling.
///
/// `zero_like`/`one_like` build constants shaped like `self` (same caps and
/// tags), which keeps truncation metadata flowing without a ring context
/// object.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(&self, q: &ExactRational) -> Self;

    fn ring_sub(&self, rhs: &Self) -> Self {
        self.ring_add(&rhs.ring_neg())
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Ring for ExactRational {
    fn zero_like(&self) -> Self {
        ExactRational::zero()
    }

    fn one_like(&self) -> Self {
        ExactRational::one()
    }

    fn is_zero(&self) -> bool {
        ExactRational::is_zero(self)
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn ring_neg(&self) -> Self {
        -self
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, q: &ExactRational) -> Self {
        self * q
    }
}

/// A power series truncated at a fixed degree cap.
///
/// Invariant: `coeffs.len() == cap + 1`, so every degree up to the cap has an
/// explicit coefficient. Access past the cap is an error, never a silent zero.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<R: Ring> {
    var: Var,
    coeffs: Vec<R>,
}

/// Truncated polynomial in lambda with rational coefficients.
pub type LambdaPoly = TruncatedSeries<ExactRational>;

impl<R: Ring> TruncatedSeries<R> {
    /// Builds a series from coefficients for degrees `0..coeffs.len()`.
    pub fn from_coeffs(var: Var, coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the degree-0 coefficient"
        );
        TruncatedSeries { var, coeffs }
    }

    /// A constant series; `value` also supplies the shape of the zero padding.
    pub fn constant(var: Var, cap: usize, value: R) -> Self {
        let zero = value.zero_like();
        let mut coeffs = vec![zero; cap + 1];
        coeffs[0] = value;
        TruncatedSeries { var, coeffs }
    }

    /// The series `value * var^degree`.
    pub fn monomial(var: Var, cap: usize, degree: usize, value: R) -> Self {
        assert!(degree <= cap, "monomial degree {degree} above cap {cap}");
        let zero = value.zero_like();
        let mut coeffs = vec![zero; cap + 1];
        coeffs[degree] = value;
        TruncatedSeries { var, coeffs }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `var^degree`; degrees past the cap are a range error.
    pub fn coeff(&self, degree: usize) -> Result<&R> {
        self.coeffs.get(degree).ok_or(Error::CoefficientOutOfRange {
            degree,
            cap: self.cap(),
        })
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn assert_same_var(&self, rhs: &Self) {
        assert_eq!(
            self.var, rhs.var,
            "series variable mismatch: {} vs {}",
            self.var, rhs.var
        );
    }

    /// Coefficientwise sum, truncated to the smaller cap.
    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_var(rhs);
        let cap = self.cap().min(rhs.cap());
        let coeffs = (0..=cap)
            .map(|d| self.coeffs[d].ring_add(&rhs.coeffs[d]))
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(Ring::ring_neg).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller cap.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_var(rhs);
        let cap = self.cap().min(rhs.cap());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(cap + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].ring_add(&a.ring_mul(b));
            }
        }
        TruncatedSeries {
            var: self.var,
            coeffs: out,
        }
    }

    /// Coefficientwise rational scaling.
    pub fn scale(&self, q: &ExactRational) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Coefficientwise multiplication by a ring element.
    pub fn scale_by(&self, c: &R) -> Self {
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a.ring_mul(c)).collect(),
        }
    }

    /// Adds `c` to the constant term.
    pub fn add_constant(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].ring_add(c);
        out
    }

    /// Restricts to a smaller cap. Panics if `new_cap` exceeds the cap.
    pub fn truncated(&self, new_cap: usize) -> Self {
        assert!(new_cap <= self.cap(), "cannot extend a truncated series");
        TruncatedSeries {
            var: self.var,
            coeffs: self.coeffs[..=new_cap].to_vec(),
        }
    }

    /// exp(S) = sum over j of S^j / j!, truncated. Requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let one = self.coeffs[0].one_like();
        let mut acc = Self::constant(self.var, self.cap(), one);
        let mut term = acc.clone();
        for j in 1..=self.cap() {
            term = term.mul(self).scale(&ExactRational::new(1, j as i64));
            if term.is_zero() {
                // S has zero constant term, so S^j vanishes below degree j;
                // once a power is identically zero all later ones are too.
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// log(S) = sum over j >= 1 of (-1)^(j+1) (S-1)^j / j. Requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let one = self.coeffs[0].one_like();
        let u = self.sub(&Self::constant(self.var, self.cap(), one.clone()));
        let mut acc = Self::constant(self.var, self.cap(), one.zero_like());
        let mut pow = Self::constant(self.var, self.cap(), one);
        for j in 1..=self.cap() {
            pow = pow.mul(&u);
            if pow.is_zero() {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pow.scale(&ExactRational::new(sign, j as i64)));
        }
        Ok(acc)
    }

    /// Substitutes `inner` into `self` (Horner scheme). `self` is treated as
    /// the polynomial it stores; the result is truncated to `inner`'s cap and
    /// lives in `inner`'s variable. Requires `inner` to have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let cap = inner.cap();
        let mut acc = Self::constant(inner.var, cap, self.coeffs[self.cap()].clone());
        for d in (0..self.cap()).rev() {
            acc = acc.mul(inner).add_constant(&self.coeffs[d]);
        }
        Ok(acc)
    }

    /// Formal derivative, with the cap reduced by one.
    pub fn derivative(&self) -> Self {
        assert!(self.cap() >= 1, "derivative needs cap >= 1");
        let coeffs = (1..=self.cap())
            .map(|d| self.coeffs[d].scale(&ExactRational::from_integer(d as i64)))
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }

    /// Substitutes `var -> -var`, i.e. negates odd-degree coefficients.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 1 { c.ring_neg() } else { c.clone() })
            .collect();
        TruncatedSeries {
            var: self.var,
            coeffs,
        }
    }
}

impl TruncatedSeries<ExactRational> {
    /// The zero series over the rationals.
    pub fn zero(var: Var, cap: usize) -> Self {
        Self::constant(var, cap, ExactRational::zero())
    }

    /// The unit series over the rationals.
    pub fn one(var: Var, cap: usize) -> Self {
        Self::constant(var, cap, ExactRational::one())
    }
}

/// Series over a ring form a ring; this is what makes nested series
/// (polynomials in lambda under series in x, bivariate censuses) work.
impl<R: Ring> Ring for TruncatedSeries<R> {
    fn zero_like(&self) -> Self {
        Self::constant(self.var, self.cap(), self.coeffs[0].zero_like())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.var, self.cap(), self.coeffs[0].one_like())
    }

    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }

    fn ring_neg(&self) -> Self {
        self.neg()
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn scale(&self, q: &ExactRational) -> Self {
        TruncatedSeries::scale(self, q)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{d}", self.var)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.cap() + 1)
    }
}
