//! Integer Laurent polynomials in `v` with checked 64-bit coefficients.
//!
//! The same type doubles as a polynomial in `q = v^2` where that is
//! convenient (Kazhdan–Lusztig polynomials are stored that way and turned
//! into `v`-polynomials with [`LaurentPoly::subst_q`]).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};

/// Sparse map exponent -> coefficient. No zero coefficient is ever stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

/// Which substitution to apply to a polynomial in `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QSubst {
    /// `q = v^2`
    VSquared,
    /// `q = v^-2`
    VInverseSquared,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^k`
    pub fn monomial(c: i64, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `v^k`
    pub fn v_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    /// `v^-1 - v`, the off-diagonal coefficient of the quadratic relation.
    pub fn quadratic_coeff() -> Self {
        Self::from_terms([(-1, 1), (1, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed.
    ///
    /// Panics on coefficient overflow.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        Self::try_from_terms(terms).expect("coefficient overflow")
    }

    pub fn try_from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Result<Self> {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c)?;
        }
        Ok(p)
    }

    /// Adds `c * v^k` in place.
    pub fn add_term(&mut self, k: i32, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(k).or_insert(0);
        *entry = entry.checked_add(c).ok_or(Error::CoefficientOverflow)?;
        if *entry == 0 {
            self.terms.remove(&k);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn coeff(&self, k: i32) -> i64 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Sum of all coefficients, i.e. the value at `v = 1`.
    pub fn eval_at_one(&self) -> Result<i64> {
        self.terms
            .values()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::CoefficientOverflow)
    }

    /// Bar involution `v^k -> v^-k`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, &c)| (-k, c)).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Reads `self` as a polynomial in `q` and substitutes `q = v^{±2}`.
    pub fn subst_q(&self, subst: QSubst) -> Result<Self> {
        let factor = match subst {
            QSubst::VSquared => 2,
            QSubst::VInverseSquared => -2,
        };
        let mut terms = BTreeMap::new();
        for (&k, &c) in &self.terms {
            if k < 0 {
                return Err(Error::NegativeQExponent(k));
            }
            terms.insert(k * factor, c);
        }
        Ok(Self { terms })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&k, &c) in &self.terms {
            terms.insert(k, c.checked_neg().ok_or(Error::CoefficientOverflow)?);
        }
        Ok(Self { terms })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign_checked(other)?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.sub_assign_checked(other)?;
        Ok(out)
    }

    pub fn add_assign_checked(&mut self, other: &Self) -> Result<()> {
        for (&k, &c) in &other.terms {
            self.add_term(k, c)?;
        }
        Ok(())
    }

    pub fn sub_assign_checked(&mut self, other: &Self) -> Result<()> {
        for (&k, &c) in &other.terms {
            self.add_term(k, c.checked_neg().ok_or(Error::CoefficientOverflow)?)?;
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                let c = ca.checked_mul(cb).ok_or(Error::CoefficientOverflow)?;
                out.add_term(a + b, c)?;
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self> {
        if c == 0 {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        for (&k, &a) in &self.terms {
            terms.insert(k, a.checked_mul(c).ok_or(Error::CoefficientOverflow)?);
        }
        Ok(Self { terms })
    }

    /// True when every coefficient is nonnegative (membership in `N[v, v^-1]`).
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// True when all exponents are strictly positive (membership in `vZ[v]`).
    pub fn in_positive_part(&self) -> bool {
        self.min_degree().is_none_or(|k| k > 0)
    }

    /// True when all exponents are strictly negative (membership in `v^-1 Z[v^-1]`).
    pub fn in_negative_part(&self) -> bool {
        self.max_degree().is_none_or(|k| k < 0)
    }

    /// Terms with strictly positive exponent.
    pub fn positive_part(&self) -> Self {
        Self {
            terms: self.terms.range(1..).map(|(&k, &c)| (k, c)).collect(),
        }
    }

    /// Writes `self` as a coefficient in front of a basis symbol: `1` is
    /// dropped, a single monomial is written bare, anything longer is
    /// parenthesized. Returns `(negative, text)` so the caller can fold the
    /// sign into a joining ` - `.
    pub fn coefficient_display(&self) -> (bool, Option<String>) {
        if self.len() == 1 {
            let (k, c) = self.terms().next().unwrap();
            let neg = c < 0;
            let mag = c.unsigned_abs();
            let text = match (mag, k) {
                (1, 0) => None,
                (m, 0) => Some(alloc::format!("{m}")),
                (1, k) => Some(monomial_str("v", k)),
                (m, k) => Some(alloc::format!("{m}{}", monomial_str("v", k))),
            };
            (neg, text)
        } else {
            (false, Some(alloc::format!("({self})")))
        }
    }
}

/// Renders `c1·b1 + c2·b2 - ...`, or `0` for an empty sum.
pub(crate) fn render_combination<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a LaurentPoly, String)>,
{
    let mut out = String::new();
    for (coeff, label) in terms {
        let (neg, text) = coeff.coefficient_display();
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if let Some(t) = text {
            out.push_str(&t);
            out.push('\u{b7}');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn monomial_str(var: &str, k: i32) -> String {
    if k == 1 {
        String::from(var)
    } else {
        alloc::format!("{var}^{k}")
    }
}

/// Renders a polynomial in a variable other than `v`.
pub struct InVariable<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

impl LaurentPoly {
    /// Display adapter naming the variable, e.g. `q` for KL polynomials.
    pub fn in_variable<'a>(&'a self, var: &'a str) -> InVariable<'a> {
        InVariable { poly: self, var }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.in_variable("v").fmt(f)
    }
}

impl fmt::Display for InVariable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var;
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.poly.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else if c < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (mag, k) {
                (m, 0) => write!(f, "{m}")?,
                (1, k) => f.write_str(&monomial_str(var, k))?,
                (m, k) => write!(f, "{m}{}", monomial_str(var, k))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Error for [`LaurentPoly::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Laurent polynomial: {0}")]
pub struct ParsePolyError(String);

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Accepts the rendering produced by `Display`, e.g. `v^-1 - 2 + 3v^2`.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let err = || ParsePolyError(String::from(s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        // split into signed terms
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !cur.is_empty() {
                    pieces.push((neg, core::mem::take(&mut cur)));
                } else if prev.is_some() {
                    return Err(err());
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(err());
        }
        pieces.push((neg, cur));

        let mut p = Self::zero();
        for (neg, piece) in pieces {
            let (coeff, exp) = match piece.find('v') {
                None => (piece.parse::<i64>().map_err(|_| err())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        1
                    } else {
                        piece[..pos].parse::<i64>().map_err(|_| err())?
                    };
                    let rest = &piece[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<i32>()
                            .map_err(|_| err())?
                    };
                    (c, k)
                }
            };
            let coeff = if neg { -coeff } else { coeff };
            p.add_term(exp, coeff).map_err(|_| err())?;
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("coefficient overflow")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("coefficient overflow")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("coefficient overflow")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("coefficient overflow")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn v() -> LaurentPoly {
        LaurentPoly::v_pow(1)
    }

    #[test]
    fn add_and_square() {
        assert_eq!(&v() + &LaurentPoly::v_pow(-1), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        let b = LaurentPoly::quadratic_coeff();
        assert_eq!(&b * &b, LaurentPoly::from_terms([(-2, 1), (0, -2), (2, 1)]));
        assert_eq!(&v() - &v(), LaurentPoly::zero());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(v().bar(), LaurentPoly::v_pow(-1));
        assert_eq!(LaurentPoly::constant(3).bar(), LaurentPoly::constant(3));
        assert_eq!(
            LaurentPoly::quadratic_coeff().bar(),
            LaurentPoly::from_terms([(1, 1), (-1, -1)])
        );
    }

    #[test]
    fn substitution() {
        let one_plus_q = LaurentPoly::from_terms([(0, 1), (1, 1)]);
        assert_eq!(
            one_plus_q.subst_q(QSubst::VSquared).unwrap(),
            LaurentPoly::from_terms([(0, 1), (2, 1)])
        );
        assert_eq!(
            LaurentPoly::one().subst_q(QSubst::VInverseSquared).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            one_plus_q.subst_q(QSubst::VInverseSquared).unwrap(),
            LaurentPoly::from_terms([(0, 1), (-2, 1)])
        );
        assert_eq!(
            LaurentPoly::v_pow(-1).subst_q(QSubst::VSquared),
            Err(Error::NegativeQExponent(-1))
        );
    }

    #[test]
    fn coefficients() {
        let p = LaurentPoly::from_terms([(1, 1), (3, 2)]);
        assert_eq!(p.coeff(3), 2);
        assert_eq!(LaurentPoly::one().coeff(5), 0);
        assert_eq!(LaurentPoly::quadratic_coeff().eval_at_one(), Ok(0));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = LaurentPoly::constant(i64::MAX);
        assert_eq!(big.checked_add(&LaurentPoly::one()), Err(Error::CoefficientOverflow));
        assert_eq!(big.checked_mul(&LaurentPoly::constant(2)), Err(Error::CoefficientOverflow));
        assert_eq!(
            LaurentPoly::constant(i64::MIN).checked_neg(),
            Err(Error::CoefficientOverflow)
        );
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::from_terms([(-1, 1), (0, 2), (3, 1)]);
        assert_eq!(p.to_string(), "v^-1 + 2 + v^3");
        assert_eq!(LaurentPoly::quadratic_coeff().to_string(), "v^-1 - v");
        assert_eq!(LaurentPoly::monomial(-2, 1).to_string(), "-2v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn parsing() {
        for s in ["v^-1 + 2 + v^3", "-2v", "v^-1 - v", "0", "v^-2 - 1", "3v^-4 - 7"] {
            let p: LaurentPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2 +".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }
}
