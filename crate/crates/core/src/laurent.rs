//! Truncated Laurent polynomials in the formal variable hbar.
//!
//! These carry the `hbar^{-1}` bookkeeping of the graph actions: the operand
//! of a Wick sum is an x-series whose coefficients live here. Negative
//! exponents are allowed; exponents above the cap are dropped by arithmetic.
//! Equality compares the stored terms only, so two mathematically equal
//! values with different caps compare equal.
//!
//! Dropping above the cap is not a ring quotient once negative exponents are
//! in play: a product can overflow the cap and a later `hbar^{-1}` factor
//! would have brought it back, so associativity only holds when no
//! intermediate product crosses the cap. The Wick operands maintain the
//! valuation bound `exponent >= -floor(x-degree / 3)`, under which a term
//! above `hbar^N` can never re-enter orders `<= N`, so the pipeline computes
//! exact results with cap N throughout.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::series::Ring;

/// A Laurent polynomial in hbar, truncated above at `cap`.
///
/// Normal form: `coeffs` is empty for zero; otherwise the first and last
/// entries are nonzero and `coeffs[i]` is the coefficient of
/// `hbar^(valuation + i)`, with `valuation + coeffs.len() - 1 <= cap`.
#[derive(Clone, Debug)]
pub struct HbarLaurent {
    valuation: i64,
    coeffs: Vec<ExactRational>,
    cap: i64,
}

impl HbarLaurent {
    pub fn zero(cap: i64) -> Self {
        HbarLaurent {
            valuation: 0,
            coeffs: Vec::new(),
            cap,
        }
    }

    pub fn one(cap: i64) -> Self {
        Self::monomial(0, ExactRational::one(), cap)
    }

    /// `coeff * hbar^exponent`, or zero when the exponent exceeds the cap.
    pub fn monomial(exponent: i64, coeff: ExactRational, cap: i64) -> Self {
        if coeff.is_zero() || exponent > cap {
            return Self::zero(cap);
        }
        HbarLaurent {
            valuation: exponent,
            coeffs: vec![coeff],
            cap,
        }
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents add.
    pub fn from_terms<I>(cap: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, ExactRational)>,
    {
        let mut acc = Self::zero(cap);
        for (e, c) in terms {
            acc = acc.ring_add(&Self::monomial(e, c, cap));
        }
        acc
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// Lowest stored exponent; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// Highest stored exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.valuation + self.coeffs.len() as i64 - 1)
        }
    }

    /// Nonzero terms as (exponent, coefficient), ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Coefficient of `hbar^exponent`. Exponents above the cap are an error,
    /// never a silent zero.
    pub fn coeff_at(&self, exponent: i64) -> Result<ExactRational> {
        if exponent > self.cap {
            return Err(Error::CoefficientOutOfRange {
                degree: exponent.max(0) as usize,
                cap: self.cap.max(0) as usize,
            });
        }
        let idx = exponent - self.valuation;
        if self.coeffs.is_empty() || idx < 0 || idx >= self.coeffs.len() as i64 {
            Ok(ExactRational::zero())
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    fn normalized(valuation: i64, mut coeffs: Vec<ExactRational>, cap: i64) -> Self {
        let mut val = valuation;
        // Drop exponents above the cap.
        let keep = (cap - val + 1).clamp(0, coeffs.len() as i64) as usize;
        coeffs.truncate(keep);
        while coeffs.last().is_some_and(ExactRational::is_zero) {
            coeffs.pop();
        }
        let leading_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if leading_zeros > 0 {
            coeffs.drain(..leading_zeros);
            val += leading_zeros as i64;
        }
        if coeffs.is_empty() {
            val = 0;
        }
        HbarLaurent {
            valuation: val,
            coeffs,
            cap,
        }
    }

    /// exp of an element with strictly positive valuation (so the sum
    /// terminates under the cap). exp(0) = 1.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Ok(Self::one(self.cap));
        }
        if self.valuation <= 0 {
            return Err(Error::NonpositiveValuation);
        }
        let mut acc = Self::one(self.cap);
        let mut term = Self::one(self.cap);
        let mut j: i64 = 0;
        loop {
            j += 1;
            term = term.ring_mul(self).scale(&ExactRational::new(1, j));
            if term.coeffs.is_empty() {
                break;
            }
            acc = acc.ring_add(&term);
        }
        Ok(acc)
    }
}

impl PartialEq for HbarLaurent {
    /// Term equality; the cap is truncation metadata, not part of the value.
    fn eq(&self, other: &Self) -> bool {
        self.valuation == other.valuation && self.coeffs == other.coeffs
    }
}

impl Eq for HbarLaurent {}

impl Ring for HbarLaurent {
    fn zero_like(&self) -> Self {
        Self::zero(self.cap)
    }

    fn one_like(&self) -> Self {
        Self::one(self.cap)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        let cap = self.cap.min(rhs.cap);
        if self.coeffs.is_empty() {
            return Self::normalized(rhs.valuation, rhs.coeffs.clone(), cap);
        }
        if rhs.coeffs.is_empty() {
            return Self::normalized(self.valuation, self.coeffs.clone(), cap);
        }
        let lo = self.valuation.min(rhs.valuation);
        let hi = (self.valuation + self.coeffs.len() as i64)
            .max(rhs.valuation + rhs.coeffs.len() as i64);
        let mut coeffs = vec![ExactRational::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.valuation - lo) as usize + i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.valuation - lo) as usize + i] += c;
        }
        Self::normalized(lo, coeffs, cap)
    }

    fn ring_neg(&self) -> Self {
        HbarLaurent {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            cap: self.cap,
        }
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        let cap = self.cap.min(rhs.cap);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(cap);
        }
        let val = self.valuation + rhs.valuation;
        let mut coeffs = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::normalized(val, coeffs, cap)
    }

    fn scale(&self, q: &ExactRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.cap);
        }
        HbarLaurent {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            cap: self.cap,
        }
    }
}

impl fmt::Display for HbarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*hbar")?,
                _ => write!(f, "({c})*hbar^{e}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn normal_form() {
        let z = HbarLaurent::from_terms(5, [(2, q(1, 2)), (2, q(-1, 2))]);
        assert!(z.is_zero());
        assert_eq!(z.valuation(), None);
        let a = HbarLaurent::from_terms(5, [(3, q(1, 1)), (-2, q(2, 3))]);
        assert_eq!(a.valuation(), Some(-2));
        assert_eq!(a.degree(), Some(3));
    }

    #[test]
    fn cap_drops_high_exponents() {
        let a = HbarLaurent::monomial(3, q(1, 1), 2);
        assert!(a.is_zero());
        let b = HbarLaurent::from_terms(2, [(1, q(1, 1)), (4, q(7, 1))]);
        assert_eq!(b.degree(), Some(1));
        // Multiplication lands above the cap and vanishes.
        let c = HbarLaurent::monomial(2, q(1, 1), 3);
        assert!(c.ring_mul(&c).is_zero());
    }

    #[test]
    fn valuation_is_additive_under_mul() {
        let a = HbarLaurent::from_terms(10, [(-2, q(1, 2)), (1, q(3, 1))]);
        let b = HbarLaurent::from_terms(10, [(-1, q(2, 1)), (0, q(1, 7))]);
        let p = a.ring_mul(&b);
        assert_eq!(p.valuation(), Some(-3));
        assert_eq!(p.coeff_at(-3).unwrap(), q(1, 1));
    }

    #[test]
    fn coeff_at_above_cap_is_error() {
        let a = HbarLaurent::monomial(1, q(1, 1), 4);
        assert_eq!(a.coeff_at(1).unwrap(), q(1, 1));
        assert_eq!(a.coeff_at(0).unwrap(), q(0, 1));
        assert!(a.coeff_at(5).is_err());
    }

    #[test]
    fn exp_terminates_for_positive_valuation() {
        // exp(h) truncated at h^3 = 1 + h + h^2/2 + h^3/6
        let h = HbarLaurent::monomial(1, q(1, 1), 3);
        let e = h.exp().unwrap();
        assert_eq!(e.coeff_at(0).unwrap(), q(1, 1));
        assert_eq!(e.coeff_at(1).unwrap(), q(1, 1));
        assert_eq!(e.coeff_at(2).unwrap(), q(1, 2));
        assert_eq!(e.coeff_at(3).unwrap(), q(1, 6));
        assert!(HbarLaurent::zero(3).exp().unwrap().is_one());
    }

    #[test]
    fn exp_rejects_nonpositive_valuation() {
        let a = HbarLaurent::monomial(0, q(1, 1), 3);
        assert_eq!(a.exp().unwrap_err(), Error::NonpositiveValuation);
        let b = HbarLaurent::monomial(-1, q(1, 1), 3);
        assert_eq!(b.exp().unwrap_err(), Error::NonpositiveValuation);
    }

    #[test]
    fn equality_ignores_cap() {
        let a = HbarLaurent::monomial(1, q(1, 2), 5);
        let b = HbarLaurent::monomial(1, q(1, 2), 9);
        assert_eq!(a, b);
    }
}
