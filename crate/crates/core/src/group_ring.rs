//! The integral group ring of a free group, Fox derivatives, and the
//! abelianization map into Laurent polynomials.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::word::{Alphabet, ExponentWeights, GroupWord, Syllable};

/// A finite formal sum `Σ c_w · w` with reduced words as keys.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    alphabet: Alphabet,
    terms: BTreeMap<GroupWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero(alphabet: &Alphabet) -> Self {
        GroupRingElement {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        GroupRingElement::from_word(alphabet.identity())
    }

    pub fn from_word(w: GroupWord) -> Self {
        let mut e = GroupRingElement::zero(w.alphabet());
        e.add_term(w, BigInt::one());
        e
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_term(&mut self, w: GroupWord, c: BigInt) {
        debug_assert!(w.alphabet() == &self.alphabet);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &GroupWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `w · self`.
    pub fn left_mul_word(&self, w: &GroupWord) -> Self {
        let mut out = GroupRingElement::zero(&self.alphabet);
        for (u, c) in &self.terms {
            out.add_term(w * u, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = GroupRingElement::zero(&self.alphabet);
        if k.is_zero() {
            return out;
        }
        for (u, c) in &self.terms {
            out.terms.insert(u.clone(), c * k);
        }
        out
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero(&self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({self})")
    }
}

/// `1 + u + u² + … + uⁿ`.
pub fn delta_n(u: &GroupWord, n: i64) -> Result<GroupRingElement> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut out = GroupRingElement::zero(u.alphabet());
    let mut power = u.alphabet().identity();
    for _ in 0..=n {
        out.add_term(power.clone(), BigInt::one());
        power = &power * u;
    }
    Ok(out)
}

/// Fox derivative `∂w/∂g`, one syllable at a time:
/// `∂(P·gᵉ)/∂g = ∂P/∂g + P·∂(gᵉ)/∂g` with `∂(gᵉ)/∂g = 1 + g + … + g^{e-1}` for
/// `e > 0` and `-(g⁻¹ + … + g^{e})` for `e < 0`.
pub fn fox_derivative(w: &GroupWord, generator: &str) -> Result<GroupRingElement> {
    let alphabet = w.alphabet();
    let g = alphabet
        .index_of(generator)
        .ok_or_else(|| Error::UnknownGenerator(generator.to_string()))?;
    let mut out = GroupRingElement::zero(alphabet);
    let mut prefix: Vec<Syllable> = Vec::new();
    for &s in w.syllables() {
        if s.gen == g {
            let (range, sign): (Box<dyn Iterator<Item = i64>>, i64) = if s.exp > 0 {
                (Box::new(0..s.exp), 1)
            } else {
                (Box::new(s.exp..0), -1)
            };
            for j in range {
                // prefix ends on another generator, so appending g^j stays reduced
                let mut syl = prefix.clone();
                if j != 0 {
                    syl.push(Syllable { gen: g, exp: j });
                }
                out.add_term(
                    GroupWord::from_syllables(alphabet.clone(), syl),
                    BigInt::from(sign),
                );
            }
        }
        prefix.push(s);
    }
    Ok(out)
}

/// Abelianization `w ↦ t^{deg w}` extended linearly.
pub fn phi(e: &GroupRingElement, weights: &ExponentWeights) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (w, c) in e.terms() {
        out.add_term(w.abelianize_degree(weights)?, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn elem(a: &Alphabet, terms: &[(&str, i64)]) -> GroupRingElement {
        let mut e = GroupRingElement::zero(a);
        for (w, c) in terms {
            e.add_term(a.parse(w).unwrap(), BigInt::from(*c));
        }
        e
    }

    #[test]
    fn delta_examples() {
        let a = xy();
        let yx = a.parse("y*x").unwrap();
        assert_eq!(delta_n(&yx, 0).unwrap(), GroupRingElement::one(&a));
        assert_eq!(
            delta_n(&yx, 2).unwrap(),
            elem(&a, &[("1", 1), ("y*x", 1), ("y*x*y*x", 1)])
        );
        assert_eq!(
            delta_n(&a.identity(), 3).unwrap(),
            elem(&a, &[("1", 4)])
        );
        assert_eq!(delta_n(&yx, -1), Err(Error::NegativeIndex(-1)));
    }

    #[test]
    fn fox_examples() {
        let a = xy();
        let x = a.parse("x").unwrap();
        let y = a.parse("y").unwrap();
        assert_eq!(fox_derivative(&x, "x").unwrap(), GroupRingElement::one(&a));
        assert!(fox_derivative(&y, "x").unwrap().is_zero());
        assert_eq!(
            fox_derivative(&x.invert(), "x").unwrap(),
            elem(&a, &[("x^-1", -1)])
        );
        let w = a.parse("y*x*y*x").unwrap();
        assert_eq!(
            fox_derivative(&w, "x").unwrap(),
            elem(&a, &[("y", 1), ("y*x*y", 1)])
        );
        assert!(fox_derivative(&a.identity(), "x").unwrap().is_zero());
        assert!(fox_derivative(&x, "q").is_err());
        assert_eq!(
            fox_derivative(&a.parse("x^3").unwrap(), "x").unwrap(),
            elem(&a, &[("1", 1), ("x", 1), ("x^2", 1)])
        );
        assert_eq!(
            fox_derivative(&a.parse("y*x^-2").unwrap(), "x").unwrap(),
            elem(&a, &[("y*x^-1", -1), ("y*x^-2", -1)])
        );
    }

    #[test]
    fn phi_examples() {
        let a = xy();
        for p in 2..6 {
            let w = ExponentWeights::new([("x", 1), ("y", p - 1)]);
            // a = (yx)^{k-1} y with k = 2
            let ak = a.parse("y*x*y").unwrap();
            assert_eq!(
                phi(&fox_derivative(&ak, "x").unwrap(), &w).unwrap(),
                LaurentPoly::t_pow(p - 1)
            );
            let b = a.parse("y*x").unwrap();
            assert_eq!(
                phi(&fox_derivative(&b, "x").unwrap(), &w).unwrap(),
                LaurentPoly::t_pow(p - 1)
            );
            assert_eq!(
                phi(&GroupRingElement::one(&a), &w).unwrap(),
                LaurentPoly::one()
            );
        }
        // general k: Φ(∂a/∂x) = t^{p-1} (t^{p(k-1)} - 1)/(t^p - 1)
        for p in 2..5i64 {
            for k in 1..5i64 {
                let w = ExponentWeights::new([("x", 1), ("y", p - 1)]);
                let yx = a.parse("y*x").unwrap();
                let ak = &yx.power(k - 1) * &a.parse("y").unwrap();
                let lhs = phi(&fox_derivative(&ak, "x").unwrap(), &w).unwrap();
                let num = &LaurentPoly::t_pow(p * (k - 1)) - &LaurentPoly::one();
                let den = &LaurentPoly::t_pow(p) - &LaurentPoly::one();
                let rhs = &num.div_exact(&den).unwrap() * &LaurentPoly::t_pow(p - 1);
                assert_eq!(lhs, rhs, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn ring_ops() {
        let a = xy();
        let e = elem(&a, &[("x", 2), ("y", -1)]);
        assert!((&e - &e).is_zero());
        let sq = &e * &e;
        assert_eq!(sq, elem(&a, &[("x^2", 4), ("x*y", -2), ("y*x", -2), ("y^2", 1)]));
        let f = elem(&a, &[("x", 1), ("x^-1", 1)]);
        assert_eq!(&f * &f, elem(&a, &[("x^2", 1), ("1", 2), ("x^-2", 1)]));
    }
}
