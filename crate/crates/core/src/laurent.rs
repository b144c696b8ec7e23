//! Exact Laurent polynomials in one variable `t` over arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Map from exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c·t^e`.
    pub fn monomial<C: Into<BigInt>>(coefficient: C, exponent: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponent, coefficient.into());
        p
    }

    /// `t^e`.
    pub fn t_pow(exponent: i64) -> Self {
        LaurentPoly::monomial(1, exponent)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Highest minus lowest exponent.
    pub fn degree_span(&self) -> Result<i64> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(Error::ZeroSpan),
        }
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// `f(t) ↦ f(t^k)`.
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Returns `q` with `self = q·divisor`, or the remainder if none exists.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(g_lo), Some(g_hi)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(f_lo) = self.min_exponent() else {
            return Ok(LaurentPoly::zero());
        };
        let lead = &divisor.terms[&g_hi];
        // Any exact quotient has lowest exponent f_lo - g_lo.
        let q_lo = f_lo - g_lo;
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(r_hi) = rem.max_exponent() {
            let shift = r_hi - g_hi;
            if shift < q_lo {
                break;
            }
            let (q, r) = rem.terms[&r_hi].div_rem(lead);
            if !r.is_zero() {
                break;
            }
            for (e, c) in &divisor.terms {
                rem.add_term(e + shift, -(c * &q));
            }
            quotient.add_term(shift, q);
        }
        if rem.is_zero() {
            Ok(quotient)
        } else {
            Err(Error::InexactDivision {
                remainder: rem.to_string(),
            })
        }
    }

    /// `1 + t^d + t^{2d} + … + t^{n·d}`.
    pub fn geometric(d: i64, n: u64) -> Self {
        let mut p = LaurentPoly::zero();
        for i in 0..=n as i64 {
            p.add_term(i * d, BigInt::one());
        }
        p
    }

    /// Coefficients from lowest to highest exponent, zeros included.
    pub fn dense_coefficients(&self) -> Vec<BigInt> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coefficient(e)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn is_unit_multiple_of(&self, other: &LaurentPoly) -> bool {
        match (self.min_exponent(), other.min_exponent()) {
            (Some(a), Some(b)) => {
                let s = other.shift(a - b);
                s == *self || -s == *self
            }
            (None, None) => true,
            _ => false,
        }
    }

    pub fn abs_max_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

pub fn lp_add(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f + g
}

pub fn lp_mul(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    f * g
}

pub fn lp_neg(f: &LaurentPoly) -> LaurentPoly {
    -f
}

pub fn lp_degree_span(f: &LaurentPoly) -> Result<i64> {
    f.degree_span()
}

pub fn lp_div_exact(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.div_exact(g)
}

/// Ascending exponents: `-1*t^-2 + 3 + 1*t^5`; zero prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*t^{e}")?;
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

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = LaurentPoly::zero();
        if s == "0" {
            return Ok(p);
        }
        let bad = || Error::Parse(format!("bad Laurent polynomial `{s}`"));
        for term in s.split(" + ") {
            let term = term.trim();
            let (coef, exp) = match term.split_once('*') {
                Some((c, rest)) => {
                    let e = rest.trim().strip_prefix("t^").ok_or_else(bad)?;
                    (c.trim(), e.trim().parse::<i64>().map_err(|_| bad())?)
                }
                None => (term, 0),
            };
            let c: BigInt = coef.parse().map_err(|_| bad())?;
            if c.is_zero() {
                return Err(bad());
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn span_examples() {
        assert_eq!(lp(&[(2, 1), (1, -1), (0, 1)]).degree_span().unwrap(), 2);
        assert_eq!(LaurentPoly::zero().degree_span(), Err(Error::ZeroSpan));
        // (t^6 - 1)(t - 1) / ((t^2 - 1)(t^3 - 1))
        let num = &lp(&[(6, 1), (0, -1)]) * &lp(&[(1, 1), (0, -1)]);
        let den = &lp(&[(2, 1), (0, -1)]) * &lp(&[(3, 1), (0, -1)]);
        assert_eq!(num.div_exact(&den).unwrap().degree_span().unwrap(), 2);
    }

    #[test]
    fn arithmetic_examples() {
        let p = &lp(&[(1, 1), (0, -1)]) * &lp(&[(1, 1), (0, 1)]);
        assert_eq!(p, lp(&[(2, 1), (0, -1)]));
        assert!((&p - &p).is_zero());
        assert_eq!(-&p, lp(&[(2, -1), (0, 1)]));
    }

    #[test]
    fn division_examples() {
        let q = lp(&[(2, 1), (0, -1)])
            .div_exact(&lp(&[(1, 1), (0, -1)]))
            .unwrap();
        assert_eq!(q, lp(&[(1, 1), (0, 1)]));
        let err = lp(&[(3, 1), (0, -1)]).div_exact(&lp(&[(2, 1), (0, -1)]));
        assert!(matches!(err, Err(Error::InexactDivision { .. })));
        assert_eq!(
            lp(&[(1, 1)]).div_exact(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
        // non-monic divisor with an inexact leading quotient
        assert!(lp(&[(1, 1)]).div_exact(&lp(&[(0, 2)])).is_err());
        assert_eq!(
            lp(&[(3, 4), (-1, 2)]).div_exact(&lp(&[(0, 2)])).unwrap(),
            lp(&[(3, 2), (-1, 1)])
        );
    }

    #[test]
    fn text_round_trip() {
        let p = lp(&[(-2, -1), (0, 3), (5, 1)]);
        assert_eq!(p.to_string(), "-1*t^-2 + 3 + 1*t^5");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("t^2".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn big_coefficients() {
        let f = LaurentPoly::monomial(BigInt::from(u64::MAX) * 4u32, 3);
        let g = &f * &f;
        assert_eq!(g.div_exact(&f).unwrap(), f);
    }
}
