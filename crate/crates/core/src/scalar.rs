//! Exact coefficients: Laurent polynomials in `q` with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finitely supported sum `Σ c_n q^n` with `c_n ∈ ℚ`, never storing a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(n: i32) -> Self {
        Self::monomial(BigRational::one(), n)
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::monomial(BigRational::new(BigInt::from(num), BigInt::from(den)), 0)
    }

    pub fn monomial(c: BigRational, n: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i32) -> BigRational {
        self.terms.get(&n).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `Some((c, n))` when the scalar is a single term `c·q^n`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(n, c)| (c, *n))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    /// Multiplicative inverse; defined only on unit monomials `c·q^n`.
    pub fn inv(&self) -> Result<Scalar> {
        match self.as_monomial() {
            Some((c, n)) => Ok(Scalar::monomial(c.recip(), -n)),
            None => Err(Error::NotAUnit(format_scalar(self))),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(n, a)| (*n, a * c)).collect(),
        }
    }

    pub fn shift(&self, k: i32) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(n, a)| (n + k, a.clone())).collect(),
        }
    }

    /// Lowest exponent present.
    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present.
    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Exact quotient `self / d` inside the Laurent ring, or `None` when it does not exist.
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if let Ok(inv) = d.inv() {
            return Some(self * &inv);
        }
        // Laurent units are monomials, so divide the shifted polynomials.
        let d_low = d.min_exp().unwrap_or(0);
        let d_high = d.max_exp().unwrap_or(0);
        let lead = d.coeff(d_high);
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while let Some(r_high) = rem.max_exp() {
            let r_low = rem.min_exp().unwrap_or(r_high);
            if r_high - r_low < d_high - d_low {
                return None;
            }
            let k = r_high - d_high;
            let c = rem.coeff(r_high) / &lead;
            let step = Scalar::monomial(c, k);
            rem = &rem - &(&step * d);
            quot += &step;
        }
        Some(quot)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn add_term(&mut self, n: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&n);
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (n, c) in &rhs.terms {
            self.add_term(*n, &-c);
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (n, a) in &self.terms {
            for (m, b) in &rhs.terms {
                out.add_term(n + m, &(a * b));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        alloc::format!("{}", c.numer())
    } else {
        alloc::format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(c: &BigRational, n: i32) -> String {
    let power = match n {
        0 => String::new(),
        1 => String::from("q"),
        _ => alloc::format!("q^{}", n),
    };
    if n == 0 {
        fmt_rational(c)
    } else if c.is_one() {
        power
    } else {
        alloc::format!("{}*{}", fmt_rational(c), power)
    }
}

/// Canonical text: exponents descending, e.g. `q^2 - 1`, `-3/2*q^-1`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (n, c)) in s.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        let body = fmt_monomial(&mag, *n);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", format_scalar(self))
    }
}

impl core::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        crate::syntax::parse_scalar(s)
    }
}

/// Rational coefficients as a plain vector, used by tests and the CLI.
pub fn coefficients(s: &Scalar) -> Vec<(i32, BigRational)> {
    s.terms.iter().map(|(n, c)| (*n, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i32) -> Scalar {
        Scalar::q_pow(n)
    }

    #[test]
    fn distributes_over_q_minus_inverse() {
        let lhs = &(&q(1) - &q(-1)) * &q(1);
        assert_eq!(lhs, &q(2) - &Scalar::one());
    }

    #[test]
    fn zero_is_additive_identity() {
        let a = &Scalar::one() - &q(-2);
        assert_eq!(&a + &Scalar::zero(), a);
    }

    #[test]
    fn inverse_monomials_cancel() {
        assert!((&q(2) * &q(-2)).is_one());
    }

    #[test]
    fn inverse_of_monomial() {
        assert_eq!(q(6).inv().unwrap(), q(-6));
        assert!(Scalar::one().inv().unwrap().is_one());
        let half = Scalar::from_ratio(-3, 2).shift(4);
        assert_eq!(half.inv().unwrap(), Scalar::from_ratio(-2, 3).shift(-4));
    }

    #[test]
    fn non_monomial_has_no_inverse() {
        let s = &q(2) - &Scalar::one();
        assert!(matches!(s.inv(), Err(Error::NotAUnit(_))));
        assert!(matches!(Scalar::zero().inv(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn printing_is_descending() {
        let s = &(&q(2) - &Scalar::one()) + &Scalar::from_ratio(-3, 2).shift(-1);
        assert_eq!(format_scalar(&s), "q^2 - 1 - 3/2*q^-1");
        assert_eq!(format_scalar(&-q(1)), "-q");
        assert_eq!(format_scalar(&Scalar::zero()), "0");
    }

    #[test]
    fn exact_division() {
        // (q^2 - 1) / (q - 1) = q + 1
        let a = &q(2) - &Scalar::one();
        let b = &q(1) - &Scalar::one();
        assert_eq!(a.div_exact(&b).unwrap(), &q(1) + &Scalar::one());
        // (q^3 - q) / (q^2 - 1) = q
        let c = &q(3) - &q(1);
        assert_eq!(c.div_exact(&a).unwrap(), q(1));
        assert!(q(1).div_exact(&a).is_none());
        assert!((&q(2) + &Scalar::one()).div_exact(&b).is_none());
    }
}
