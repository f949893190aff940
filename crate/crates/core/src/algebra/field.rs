//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (with a machine-word fast path
//! that promotes to arbitrary precision on overflow) and the field with two
//! elements. Nothing in this crate ever rounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Runtime tag for the coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExactField {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "F2")]
    F2,
}

impl ExactField {
    pub fn name(self) -> &'static str {
        match self {
            ExactField::Rationals => "Q",
            ExactField::F2 => "F2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "Q" | "q" | "QQ" | "rationals" => Some(ExactField::Rationals),
            "F2" | "f2" | "Z2" | "z2" => Some(ExactField::F2),
            _ => None,
        }
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const TAG: ExactField;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// True for `1` and `-1`. Pivot selection prefers these entries.
    fn is_plus_minus_one(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn mul_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct F2(pub bool);

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Field for F2 {
    const TAG: ExactField = ExactField::F2;

    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn from_i64(n: i64) -> Self {
        F2(n.rem_euclid(2) == 1)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn is_plus_minus_one(&self) -> bool {
        self.0
    }
}

/// An exact rational number.
///
/// Small values live in a reduced `i64` pair; any operation whose result
/// does not fit is redone with `BigRational`. Values are always normalized,
/// so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// numerator, denominator; denominator > 0 and gcd = 1.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Self::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer_denom_i64(&self) -> Option<(i64, i64)> {
        match self {
            Rational::Small(n, d) => Some((*n, *d)),
            Rational::Big(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    fn binop(
        &self,
        other: &Self,
        small: impl Fn(i128, i128, i128, i128) -> Option<(i128, i128)>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if let Some((n, m)) = small(*a as i128, *b as i128, *c as i128, *d as i128) {
                return Self::from_i128(n, m);
            }
        }
        Self::from_big(big(self.to_big(), other.to_big()))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::Small(n, 1)
    }
}

impl Field for Rational {
    const TAG: ExactField = ExactField::Rationals;

    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn from_i64(n: i64) -> Self {
        Rational::Small(n, 1)
    }
    fn is_zero(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n == 0,
            Rational::Big(b) => b.is_zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self.binop(
            other,
            |a, b, c, d| {
                if b == d {
                    a.checked_add(c).map(|n| (n, b))
                } else {
                    Some((a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?, b.checked_mul(d)?))
                }
            },
            |x, y| x + y,
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        self.binop(other, |a, b, c, d| Some((a.checked_mul(c)?, b.checked_mul(d)?)), |x, y| x * y)
    }
    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Self::from_big(-self.to_big()),
            },
            Rational::Big(b) => Self::from_big(-(**b).clone()),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        })
    }
    fn is_plus_minus_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1) | Rational::Small(-1, 1))
    }
}

impl Rational {
    pub fn abs(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(n.abs(), *d),
            _ => Self::from_big(self.to_big().abs()),
        }
    }

    pub fn is_one_rational(&self) -> bool {
        self.to_big().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normalizes() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, 5), Rational::zero());
        assert_eq!(Rational::new(3, 6).to_string(), "1/2");
    }

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let big = Rational::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.mul(&big.inv().unwrap());
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
        let m = Rational::from_i64(i64::MIN);
        assert_eq!(m.neg().neg(), m);
    }

    #[test]
    fn rational_field_axioms_small() {
        let xs: Vec<Rational> = [(1, 2), (-3, 7), (5, 1), (0, 1), (-1, 1)].iter().map(|&(n, d)| Rational::new(n, d)).collect();
        for a in &xs {
            for b in &xs {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                assert_eq!(a.add(b).sub(b), *a);
                if let Some(bi) = b.inv() {
                    assert_eq!(a.mul(b).mul(&bi), *a);
                }
            }
        }
    }

    #[test]
    fn f2_arithmetic() {
        let one = F2::one();
        assert!(one.add(&one).is_zero());
        assert_eq!(F2::from_i64(-3), one);
        assert_eq!(F2::zero().inv(), None);
        assert_eq!(F2::from_i64(2), F2::zero());
    }
}
