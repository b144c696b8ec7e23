//! Twisted torus knots `T(l, m; p, pk ± 1)`, their L-space classification,
//! genus and surgery threshold.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// `-1` or `+1`.
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

/// The twisted torus knot with `l` strands twisted `m` full times in the
/// `(p, pk ± 1)` torus knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KnotSpec {
    pub p: i64,
    pub k: i64,
    pub m: i64,
    pub l: i64,
    pub sign: Sign,
}

impl KnotSpec {
    pub fn new(p: i64, k: i64, m: i64, l: i64, sign: Sign) -> Result<Self> {
        let spec = KnotSpec { p, k, m, l, sign };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let KnotSpec { p, k, m, l, .. } = *self;
        if p < 2 || k < 1 || m < 1 || l < 1 || l > p - 1 {
            return Err(Error::InvalidSpec(format!(
                "need p >= 2, k >= 1, m >= 1, 1 <= l <= p-1; got p={p} k={k} m={m} l={l}"
            )));
        }
        Ok(())
    }

    pub fn q(&self) -> i64 {
        self.p * self.k + self.sign.as_i64()
    }

    /// `(p, k, sign) = (2, 1, minus)` gives `q = 1`, the unknot.
    pub fn is_degenerate(&self) -> bool {
        self.q() == 1
    }

    /// `p(pk ± 1) + l²m`, the meridian power relating `λ` and `λ′`.
    pub fn meridian_power(&self) -> i64 {
        self.p * self.q() + self.l * self.l * self.m
    }

    /// All valid specs in a box, in a fixed order.
    pub fn grid(p_max: i64, k_max: i64, m_max: i64) -> Vec<KnotSpec> {
        let mut out = Vec::new();
        for p in 2..=p_max {
            for k in 1..=k_max {
                for m in 1..=m_max {
                    for l in 1..p {
                        for sign in [Sign::Minus, Sign::Plus] {
                            out.push(KnotSpec { p, k, m, l, sign });
                        }
                    }
                }
            }
        }
        out
    }
}

/// `T[l,m;p,q]` with `q = pk ± 1`.
impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[{},{};{},{}]", self.l, self.m, self.p, self.q())
    }
}

impl FromStr for KnotSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `T[l,m;p,q]`, got `{s}`"));
        let body = s
            .trim()
            .strip_prefix("T[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (lm, pq) = body.split_once(';').ok_or_else(bad)?;
        let pair = |t: &str| -> Result<(i64, i64)> {
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        };
        let (l, m) = pair(lm)?;
        let (p, q) = pair(pq)?;
        if p < 2 {
            return Err(Error::InvalidSpec(format!("p = {p} must be at least 2")));
        }
        // q = pk - 1 or pk + 1 with k >= 1; for p = 2 both can apply and pk - 1 wins.
        let (k, sign) = if (q + 1) % p == 0 && (q + 1) / p >= 1 {
            ((q + 1) / p, Sign::Minus)
        } else if (q - 1) % p == 0 && (q - 1) / p >= 1 {
            ((q - 1) / p, Sign::Plus)
        } else {
            return Err(Error::InvalidSpec(format!(
                "q = {q} is not of the form pk ± 1 with p = {p}, k >= 1"
            )));
        };
        KnotSpec::new(p, k, m, l, sign)
    }
}

/// Which clause of the L-space classification a spec satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LSpaceReason {
    /// `l = p - 1`
    LEqualsPMinusOne,
    /// `l = p - 2` and `m = 1`
    LEqualsPMinusTwo,
    /// `l = 2` and `m = 1`
    LEqualsTwo,
    /// `l = 1`: twisting one strand is trivial, so this is the `(p, q)` torus knot.
    TorusKnot,
}

impl LSpaceReason {
    pub fn code(self) -> &'static str {
        match self {
            LSpaceReason::LEqualsPMinusOne => "l=p-1",
            LSpaceReason::LEqualsPMinusTwo => "l=p-2,m=1",
            LSpaceReason::LEqualsTwo => "l=2,m=1",
            LSpaceReason::TorusKnot => "torus-knot",
        }
    }
}

/// L-space classification; `None` when no clause applies.
pub fn is_lspace(spec: &KnotSpec) -> Option<LSpaceReason> {
    let KnotSpec { p, m, l, .. } = *spec;
    if l == p - 1 {
        Some(LSpaceReason::LEqualsPMinusOne)
    } else if l == p - 2 && m == 1 {
        Some(LSpaceReason::LEqualsPMinusTwo)
    } else if l == 2 && m == 1 {
        Some(LSpaceReason::LEqualsTwo)
    } else if l == 1 {
        Some(LSpaceReason::TorusKnot)
    } else {
        None
    }
}

/// The genus formula for L-space specs:
/// `½l(l-1)m + ½p(p-1)k - (p-1)` for `pk - 1`, `½l(l-1)m + ½p(p-1)k` for `pk + 1`.
pub fn genus(spec: &KnotSpec) -> Result<i64> {
    if is_lspace(spec).is_none() {
        return Err(Error::NotLSpace(spec.to_string()));
    }
    Ok(genus_formula(spec))
}

/// The genus formula evaluated without the L-space check.
pub fn genus_formula(spec: &KnotSpec) -> i64 {
    let KnotSpec { p, k, m, l, sign } = *spec;
    // l(l-1) and p(p-1) are even
    let half = l * (l - 1) / 2 * m + p * (p - 1) / 2 * k;
    match sign {
        Sign::Minus => half - (p - 1),
        Sign::Plus => half,
    }
}

/// `2g - 1`: `r/s`-surgery is an L-space iff `r/s >= 2g - 1`.
pub fn lspace_surgery_threshold(spec: &KnotSpec) -> Result<i64> {
    Ok(2 * genus(spec)? - 1)
}

/// A Dehn surgery slope `r/s` in lowest terms with `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurgerySlope {
    r: i64,
    s: i64,
}

impl SurgerySlope {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if s <= 0 || r.gcd(&s) != 1 {
            return Err(Error::InvalidSlope(r, s));
        }
        Ok(SurgerySlope { r, s })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// Exact comparison `r/s >= threshold`.
    pub fn at_least(&self, threshold: i64) -> bool {
        self.r as i128 >= threshold as i128 * self.s as i128
    }
}

impl fmt::Display for SurgerySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl FromStr for SurgerySlope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `r/s`, got `{s}`"));
        let (r, d) = match s.trim().split_once('/') {
            Some((r, d)) => (
                r.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        SurgerySlope::new(r, d)
    }
}

/// Whether `slope` lies in the L-space surgery range of `spec`.
pub fn slope_in_range(spec: &KnotSpec, slope: &SurgerySlope) -> Result<bool> {
    Ok(slope.at_least(lspace_surgery_threshold(spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: i64, k: i64, m: i64, l: i64, sign: Sign) -> KnotSpec {
        KnotSpec::new(p, k, m, l, sign).unwrap()
    }

    #[test]
    fn validation() {
        assert!(KnotSpec::new(1, 1, 1, 1, Sign::Minus).is_err());
        assert!(KnotSpec::new(3, 1, 1, 3, Sign::Minus).is_err());
        assert!(KnotSpec::new(3, 0, 1, 1, Sign::Minus).is_err());
        assert!(KnotSpec::new(3, 1, 0, 1, Sign::Minus).is_err());
        assert!(spec(2, 1, 1, 1, Sign::Minus).is_degenerate());
        assert!(!spec(2, 2, 1, 1, Sign::Minus).is_degenerate());
    }

    #[test]
    fn text_form() {
        let s: KnotSpec = "T[2,1;3,4]".parse().unwrap();
        assert_eq!(s, spec(3, 1, 1, 2, Sign::Plus));
        assert_eq!(s.to_string(), "T[2,1;3,4]");
        let t: KnotSpec = "T[1,1;2,3]".parse().unwrap();
        assert_eq!(t, spec(2, 2, 1, 1, Sign::Minus));
        let u: KnotSpec = "T[1,1;2,1]".parse().unwrap();
        assert_eq!(u, spec(2, 1, 1, 1, Sign::Minus));
        assert!("T[2,1;5,7]".parse::<KnotSpec>().is_err());
        assert!("T[2,1;5]".parse::<KnotSpec>().is_err());
        assert!("T[5,1;5,4]".parse::<KnotSpec>().is_err());
        for s in KnotSpec::grid(6, 4, 3) {
            let back = s.to_string().parse::<KnotSpec>().unwrap();
            if s.p == 2 && s.sign == Sign::Plus {
                // 2k + 1 = 2(k + 1) - 1: same torus knot, read as the minus form
                assert_eq!(back, KnotSpec { k: s.k + 1, sign: Sign::Minus, ..s });
            } else {
                assert_eq!(back, s);
            }
        }
    }

    #[test]
    fn lspace_examples() {
        for m in 1..4 {
            assert_eq!(
                is_lspace(&spec(5, 1, m, 4, Sign::Minus)),
                Some(LSpaceReason::LEqualsPMinusOne)
            );
        }
        assert_eq!(is_lspace(&spec(5, 1, 2, 3, Sign::Minus)), None);
        assert_eq!(
            is_lspace(&spec(5, 1, 1, 2, Sign::Minus)),
            Some(LSpaceReason::LEqualsTwo)
        );
        assert_eq!(
            is_lspace(&spec(5, 1, 1, 3, Sign::Plus)),
            Some(LSpaceReason::LEqualsPMinusTwo)
        );
        assert_eq!(
            is_lspace(&spec(5, 1, 3, 1, Sign::Plus)),
            Some(LSpaceReason::TorusKnot)
        );
        assert_eq!(is_lspace(&spec(6, 1, 2, 2, Sign::Plus)), None);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&spec(2, 2, 1, 1, Sign::Minus)).unwrap(), 1);
        assert_eq!(genus(&spec(3, 1, 1, 2, Sign::Plus)).unwrap(), 4);
        assert_eq!(genus(&spec(2, 1, 1, 1, Sign::Minus)).unwrap(), 0);
        assert_eq!(
            genus(&spec(5, 1, 2, 3, Sign::Minus)),
            Err(Error::NotLSpace("T[3,2;5,4]".into()))
        );
    }

    #[test]
    fn torus_genus_specialization() {
        for s in KnotSpec::grid(6, 4, 3).into_iter().filter(|s| s.l == 1) {
            assert_eq!(genus(&s).unwrap(), (s.p - 1) * (s.q() - 1) / 2, "{s}");
        }
    }

    #[test]
    fn threshold_examples() {
        let trefoil = spec(2, 2, 1, 1, Sign::Minus);
        assert_eq!(lspace_surgery_threshold(&trefoil).unwrap(), 1);
        let t = spec(3, 1, 1, 2, Sign::Plus);
        assert_eq!(lspace_surgery_threshold(&t).unwrap(), 7);
        assert!(!slope_in_range(&t, &SurgerySlope::new(7, 2).unwrap()).unwrap());
        assert!(slope_in_range(&t, &SurgerySlope::new(7, 1).unwrap()).unwrap());
        assert!(slope_in_range(&t, &SurgerySlope::new(15, 2).unwrap()).unwrap());
        assert_eq!(SurgerySlope::new(14, 2), Err(Error::InvalidSlope(14, 2)));
        assert_eq!(SurgerySlope::new(1, 0), Err(Error::InvalidSlope(1, 0)));
        assert_eq!(lspace_surgery_threshold(&spec(2, 1, 1, 1, Sign::Minus)).unwrap(), -1);
    }

    #[test]
    fn slope_text() {
        let s: SurgerySlope = "7/1".parse().unwrap();
        assert_eq!((s.r(), s.s()), (7, 1));
        assert_eq!("-3/2".parse::<SurgerySlope>().unwrap().to_string(), "-3/2");
        assert!("4/2".parse::<SurgerySlope>().is_err());
    }

    #[test]
    fn meridian_powers() {
        assert_eq!(spec(2, 2, 1, 1, Sign::Minus).meridian_power(), 7);
        assert_eq!(spec(3, 1, 1, 2, Sign::Plus).meridian_power(), 16);
        assert_eq!(spec(2, 1, 1, 1, Sign::Minus).meridian_power(), 3);
    }
}
