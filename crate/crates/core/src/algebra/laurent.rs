use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in one variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i32, coef: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coef: i64) {
        if coef == 0 {
            return;
        }
        let c = self.coeffs.entry(exp).or_insert(0);
        *c += coef;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e, c);
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `x -> x^k` (`k` may be negative).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_exp() {
            if top - dhi < rem.min_exp()? - dlo {
                return None;
            }
            let c = rem.coeff(top);
            if c % lead != 0 {
                return None;
            }
            let term = Self::monomial(top - dhi, c / lead);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Value at the imaginary unit, as a Gaussian integer `(re, im)`.
    pub fn eval_at_i(&self) -> (i64, i64) {
        let (mut re, mut im) = (0, 0);
        for (e, c) in self.terms() {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        (re, im)
    }

    pub fn eval_at(&self, x: i64) -> Option<i64> {
        let mut total: i64 = 0;
        for (e, c) in self.terms() {
            let v = if e >= 0 {
                x.checked_pow(e as u32)?
            } else if x.abs() == 1 {
                x.pow(e.unsigned_abs())
            } else {
                return None;
            };
            total = total.checked_add(c.checked_mul(v)?)?;
        }
        Some(total)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if !first {
                f.write_str(" ")?;
            }
            let mag = c.abs();
            let body = match (mag, e) {
                (m, 0) => format!("{m}"),
                (1, 1) => "q".to_string(),
                (1, e) => format!("q^{e}"),
                (m, 1) => format!("{m}q"),
                (m, e) => format!("{m}q^{e}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}
