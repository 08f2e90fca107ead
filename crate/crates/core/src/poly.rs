//! Laurent polynomials in `A` with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// An element of `Z[A, A^-1]`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `delta = -A^2 - A^-2`, the value of one extra circle.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Iterates `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e, c * k)).collect(),
        }
    }

    /// The substitution `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `(-A^3)^k` for any integer `k`.
    pub fn kink_factor(k: i32) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(3 * k, sign)
    }

    /// Checks whether `self == (-A^3)^k * other` for some `k`, returning that `k`.
    pub fn unit_ratio(&self, other: &Self) -> Option<i32> {
        let (&e1, _) = self.terms.iter().next()?;
        let (&e2, _) = other.terms.iter().next()?;
        let diff = e1 - e2;
        if diff % 3 != 0 {
            return None;
        }
        let k = diff / 3;
        (Self::kink_factor(k) * other.clone() == *self).then_some(k)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized as sorted `exponent:coefficient` pairs separated by spaces; the
/// zero polynomial is written `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{e}:{c}")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        let mut last: Option<i32> = None;
        for tok in s.split_whitespace() {
            let bad = || Error::Syntax {
                token: tok.to_string(),
                reason: "expected exponent:coefficient".into(),
            };
            let (e, c) = tok.split_once(':').ok_or_else(bad)?;
            let e: i32 = e.parse().map_err(|_| bad())?;
            let c: i64 = c.parse().map_err(|_| bad())?;
            if c == 0 || last.is_some_and(|l| l >= e) {
                return Err(bad());
            }
            last = Some(e);
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squared() {
        let d2 = LaurentPoly::delta().pow(2);
        assert_eq!(d2, LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = LaurentPoly::from_terms([(1, 2), (1, -2), (3, 1)]);
        assert_eq!(p.len(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn text_format() {
        let p = LaurentPoly::from_terms([(-4, 1), (4, -1), (0, 3)]);
        assert_eq!(p.to_string(), "-4:1 0:3 4:-1");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("1:0".parse::<LaurentPoly>().is_err());
        assert!("2:1 1:1".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn kink_factor_and_ratio() {
        assert_eq!(LaurentPoly::kink_factor(1), LaurentPoly::monomial(3, -1));
        assert_eq!(LaurentPoly::kink_factor(-2), LaurentPoly::monomial(-6, 1));
        let p = LaurentPoly::delta();
        let q = LaurentPoly::kink_factor(-3) * p.clone();
        assert_eq!(q.unit_ratio(&p), Some(-3));
        assert_eq!(p.unit_ratio(&LaurentPoly::one()), None);
    }
}
