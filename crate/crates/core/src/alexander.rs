//! Alexander polynomials via Fox calculus on the `{x, y}` presentation.
//!
//! With `Φ(x) = t`, `Φ(y) = t^{p-1}` and a relator `r`, the fundamental formula
//! of free calculus gives `Φ(∂r/∂x)(t - 1) + Φ(∂r/∂y)(t^{p-1} - 1) = 0`, and
//! `Δ(t) ≐ (t - 1)·Φ(∂r/∂x) / (t^{p-1} - 1)` up to a unit `±tᶜ`.
//!
//! For `pk - 1` the relator is split as `r₁ = za(zᵐa)^{l-1}`,
//! `r₂ = ax(zᵐax)^{l-1}` (both sides of the `{a, b}` relation after dropping
//! the common prefix and writing `bᵏ = ax`). For `pk + 1` it is
//! `lhs · rhs⁻¹` of the `{x, y}` relation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group_ring::{fox_derivative, phi};
use crate::knot::{KnotSpec, Sign};
use crate::laurent::LaurentPoly;
use crate::presentation::{presentation_xy, XyWords};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderResult {
    pub raw: LaurentPoly,
    /// Symmetric exponents with `Δ(1) = 1`; `None` if the raw polynomial
    /// cannot be normalized (odd span or `Δ(1) ≠ ±1`).
    pub normalized: Option<LaurentPoly>,
    pub degree_span: i64,
}

impl AlexanderResult {
    pub fn from_raw(raw: LaurentPoly) -> Result<Self> {
        let degree_span = raw.degree_span()?;
        let normalized = normalize(&raw);
        Ok(AlexanderResult {
            raw,
            normalized,
            degree_span,
        })
    }
}

/// Multiplies by `±tᶜ` so that exponents are symmetric and the value at 1 is 1.
pub fn normalize(f: &LaurentPoly) -> Option<LaurentPoly> {
    let (lo, hi) = (f.min_exponent()?, f.max_exponent()?);
    if (hi - lo) % 2 != 0 {
        return None;
    }
    let at_one = f.eval_one();
    if at_one.abs() != BigInt::one() {
        return None;
    }
    let centered = f.shift(-(lo + hi) / 2);
    Some(if at_one.is_positive() { centered } else { -centered })
}

pub fn alexander_polynomial(spec: &KnotSpec) -> Result<AlexanderResult> {
    let pres = presentation_xy(spec)?;
    let w = XyWords::new();
    let weights = &pres.weights;
    let derivative = match spec.sign {
        Sign::Minus => {
            let a = &pres.derived["a"];
            let z = &pres.derived["z"];
            let zm = z.power(spec.m);
            let ax = a * &w.x;
            let r1 = w.prod(&[z, a, &(&zm * a).power(spec.l - 1)]);
            let r2 = &ax * &(&zm * &ax).power(spec.l - 1);
            &fox_derivative(&r1, "x")? - &fox_derivative(&r2, "x")?
        }
        Sign::Plus => fox_derivative(&pres.relator(), "x")?,
    };
    let image = phi(&derivative, weights)?;
    let t_minus_one = &LaurentPoly::t_pow(1) - &LaurentPoly::one();
    let phi_y_minus_one = &LaurentPoly::t_pow(spec.p - 1) - &LaurentPoly::one();
    let raw = (&image * &t_minus_one).div_exact(&phi_y_minus_one)?;
    AlexanderResult::from_raw(raw)
}

/// `l(l-1)m + p(p-1)k - (2p-2)` for `pk - 1`; `l(l-1)m + p(p-1)k` for `pk + 1`.
pub fn degree_span_formula(spec: &KnotSpec) -> i64 {
    let KnotSpec { p, k, m, l, sign } = *spec;
    let base = l * (l - 1) * m + p * (p - 1) * k;
    match sign {
        Sign::Minus => base - (2 * p - 2),
        Sign::Plus => base,
    }
}

/// `(t^{pq} - 1)(t - 1) / ((tᵖ - 1)(t^q - 1))`.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly> {
    if p < 1 || q < 1 || p.gcd(&q) != 1 {
        return Err(Error::NonCoprime(p, q));
    }
    let one = LaurentPoly::one();
    let cyc = |n: i64| &LaurentPoly::t_pow(n) - &one;
    let num = &cyc(p * q) * &cyc(1);
    num.div_exact(&cyc(p))?.div_exact(&cyc(q))
}

/// All normalized coefficients are `±1` and alternate in sign.
pub fn lspace_coefficient_check(res: &AlexanderResult) -> bool {
    let Some(n) = &res.normalized else {
        return false;
    };
    let coeffs: Vec<&BigInt> = n.terms().map(|(_, c)| c).collect();
    coeffs.iter().all(|c| c.abs() == BigInt::one())
        && coeffs.windows(2).all(|w| w[0] != w[1])
}

pub fn alexander_json(spec: &KnotSpec, res: &AlexanderResult) -> Value {
    let formula = degree_span_formula(spec);
    json!({
        "spec": spec.to_string(),
        "raw": res.raw.to_string(),
        "normalized": res.normalized.as_ref().map(|n| n.to_string()),
        "span": res.degree_span,
        "formula_span": formula,
        "match": res.degree_span == formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: i64, k: i64, m: i64, l: i64, sign: Sign) -> KnotSpec {
        KnotSpec::new(p, k, m, l, sign).unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn trefoil_and_unknot() {
        let tre = alexander_polynomial(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        assert_eq!(tre.normalized, Some(lp(&[(-1, 1), (0, -1), (1, 1)])));
        assert_eq!(tre.degree_span, 2);
        let unknot = alexander_polynomial(&spec(2, 1, 1, 1, Sign::Minus)).unwrap();
        assert_eq!(unknot.normalized, Some(LaurentPoly::one()));
        assert_eq!(unknot.degree_span, 0);
        let t = alexander_polynomial(&spec(3, 1, 1, 2, Sign::Plus)).unwrap();
        assert_eq!(t.degree_span, 8);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(degree_span_formula(&spec(2, 2, 1, 1, Sign::Minus)), 2);
        assert_eq!(degree_span_formula(&spec(2, 1, 1, 1, Sign::Minus)), 0);
        assert_eq!(degree_span_formula(&spec(3, 1, 1, 2, Sign::Plus)), 8);
    }

    #[test]
    fn torus_examples() {
        assert!(torus_alexander(2, 3)
            .unwrap()
            .is_unit_multiple_of(&lp(&[(2, 1), (1, -1), (0, 1)])));
        assert_eq!(torus_alexander(2, 1).unwrap(), LaurentPoly::one());
        assert_eq!(torus_alexander(3, 4).unwrap().degree_span().unwrap(), 6);
        assert_eq!(torus_alexander(4, 6), Err(Error::NonCoprime(4, 6)));
    }

    #[test]
    fn coefficient_check_examples() {
        let mk = |f: LaurentPoly| AlexanderResult::from_raw(f).unwrap();
        assert!(lspace_coefficient_check(&mk(lp(&[(-1, 1), (0, -1), (1, 1)]))));
        assert!(lspace_coefficient_check(&mk(LaurentPoly::one())));
        assert!(!lspace_coefficient_check(&mk(lp(&[(2, 1), (1, 1), (0, 1)]))));
        // 5_2-like: 2t - 3 + 2t^-1 is not an L-space polynomial
        assert!(!lspace_coefficient_check(&mk(lp(&[(-1, 2), (0, -3), (1, 2)]))));
    }

    #[test]
    fn normalization() {
        let f = lp(&[(3, -1), (4, 1), (5, -1)]);
        assert_eq!(normalize(&f), Some(lp(&[(-1, 1), (0, -1), (1, 1)])));
        assert_eq!(normalize(&lp(&[(0, 1), (1, 1)])), None);
        assert_eq!(normalize(&lp(&[(0, 3)])), None);
    }
}

