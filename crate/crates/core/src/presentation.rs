//! One-relator presentations of the knot groups of `T(l, m; p, pk ± 1)`,
//! meridian and longitude words, and the closed-form longitudes of the
//! L-space families.
//!
//! The `{a, b}` presentation is the primary one. The `{x, y}` presentation is
//! obtained from it by the change of generators
//!
//! * `pk - 1`: `x = a⁻¹bᵏ`, `y = b^{1-k}a`, so `b = yx`, `a = (yx)^{k-1}y`;
//! * `pk + 1`: `x = b⁻ᵏa`, `y = a⁻¹b^{k+1}`, so `b = xy`, `a = (xy)ᵏx`,
//!
//! followed by cancelling a common left factor of both sides (`a` for `pk - 1`,
//! `bᵏ` for `pk + 1`). Construction checks that the cancelled, substituted
//! relation equals the directly built `{x, y}` relation word for word.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::knot::{KnotSpec, Sign};
use crate::word::{Alphabet, ExponentWeights, GroupWord, Homomorphism};

#[derive(Debug, Clone)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relator_lhs: GroupWord,
    pub relator_rhs: GroupWord,
    pub derived: BTreeMap<String, GroupWord>,
    pub weights: ExponentWeights,
}

impl Presentation {
    /// `lhs · rhs⁻¹`.
    pub fn relator(&self) -> GroupWord {
        &self.relator_lhs * &self.relator_rhs.invert()
    }

    pub fn derived(&self, name: &str) -> Option<&GroupWord> {
        self.derived.get(name)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let l = self.relator_lhs.abelianize_degree(&self.weights)?;
        let r = self.relator_rhs.abelianize_degree(&self.weights)?;
        if l != r {
            return Err(Error::Consistency(format!(
                "relator sides abelianize to t^{l} and t^{r}"
            )));
        }
        if let Some(mu) = self.derived.get("mu") {
            let d = mu.abelianize_degree(&self.weights)?;
            if d != 1 {
                return Err(Error::Consistency(format!("meridian abelianizes to t^{d}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let derived: BTreeMap<&str, String> = self
            .derived
            .iter()
            .map(|(k, v)| (k.as_str(), v.to_string()))
            .collect();
        let weights: BTreeMap<&str, i64> = self.weights.iter().collect();
        json!({
            "alphabet": self.alphabet.names(),
            "relator": {
                "lhs": self.relator_lhs.to_string(),
                "rhs": self.relator_rhs.to_string(),
            },
            "derived": derived,
            "weights": weights,
        })
    }

    /// Stable digest of alphabet and relation, used as a cache key.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(self.alphabet.names().join(",").as_bytes());
        h.update(b"|");
        h.update(self.relator_lhs.to_string().as_bytes());
        h.update(b"=");
        h.update(self.relator_rhs.to_string().as_bytes());
        hex::encode(h.finalize())
    }
}

pub fn ab_alphabet() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("static alphabet")
}

pub fn xy_alphabet() -> Alphabet {
    Alphabet::new(["x", "y"]).expect("static alphabet")
}

/// Building blocks over `{x, y}`.
#[derive(Debug, Clone)]
pub struct XyWords {
    pub alphabet: Alphabet,
    pub x: GroupWord,
    pub y: GroupWord,
    pub xy: GroupWord,
    pub yx: GroupWord,
}

impl XyWords {
    pub fn new() -> Self {
        let alphabet = xy_alphabet();
        let x = alphabet.generator("x").expect("x");
        let y = alphabet.generator("y").expect("y");
        XyWords {
            xy: &x * &y,
            yx: &y * &x,
            alphabet,
            x,
            y,
        }
    }

    pub fn one(&self) -> GroupWord {
        self.alphabet.identity()
    }

    /// Product of a list of words.
    pub fn prod(&self, parts: &[&GroupWord]) -> GroupWord {
        parts.iter().fold(self.one(), |acc, w| &acc * w)
    }

    /// `a` after the change of generators.
    pub fn a(&self, spec: &KnotSpec) -> GroupWord {
        match spec.sign {
            Sign::Minus => &self.yx.power(spec.k - 1) * &self.y,
            Sign::Plus => &self.xy.power(spec.k) * &self.x,
        }
    }

    /// `b` after the change of generators.
    pub fn b(&self, spec: &KnotSpec) -> GroupWord {
        match spec.sign {
            Sign::Minus => self.yx.clone(),
            Sign::Plus => self.xy.clone(),
        }
    }
}

impl Default for XyWords {
    fn default() -> Self {
        XyWords::new()
    }
}

fn ab_weights(spec: &KnotSpec) -> ExponentWeights {
    ExponentWeights::new([("a", spec.k * spec.p + spec.sign.as_i64()), ("b", spec.p)])
}

pub fn xy_weights(spec: &KnotSpec) -> ExponentWeights {
    ExponentWeights::new([("x", 1), ("y", spec.p - 1)])
}

/// The change of generators `{a, b} → {x, y}`.
pub fn change_of_generators(spec: &KnotSpec) -> Homomorphism {
    let w = XyWords::new();
    Homomorphism::new(&w.alphabet, [("a", w.a(spec)), ("b", w.b(spec))])
        .expect("images share the xy alphabet")
}

/// The `{a, b}` presentation with derived words `z`, `mu` and `lambda_prime`.
pub fn presentation_ab(spec: &KnotSpec) -> Result<Presentation> {
    spec.validate()?;
    let KnotSpec { p, k, m, l, sign } = *spec;
    let al = ab_alphabet();
    let a = al.generator("a")?;
    let b = al.generator("b")?;
    let bk = b.power(k);
    let (z, lhs, rhs, mu, lambda_prime) = match sign {
        Sign::Minus => {
            let z = &b.power(1 - k * (p - l)) * &a.power(p - l);
            let zm = z.power(m);
            let lhs = &a.power(p - l + 1) * &(&zm * &a).power(l - 1);
            let rhs = &b.power(k * (p - l + 1) - 1) * &(&zm * &bk).power(l - 1);
            let mu = &a.invert() * &bk;
            let lp = &a.power(p - l) * &(&zm * &a).power(l);
            (z, lhs, rhs, mu, lp)
        }
        Sign::Plus => {
            let z = &b.power(k * (p - l) + 1) * &a.power(l - p);
            let zm = z.power(m);
            let lhs = &(&a * &(&zm * &a).power(l - 1)) * &a.power(p - l);
            let rhs = &(&bk * &(&zm * &bk).power(l - 1)) * &b.power(k * (p - l) + 1);
            let mu = &bk.invert() * &a;
            let lp = &(&zm * &a).power(l) * &a.power(p - l);
            (z, lhs, rhs, mu, lp)
        }
    };
    let pres = Presentation {
        alphabet: al,
        relator_lhs: lhs,
        relator_rhs: rhs,
        derived: BTreeMap::from([
            ("z".to_string(), z),
            ("mu".to_string(), mu),
            ("lambda_prime".to_string(), lambda_prime),
        ]),
        weights: ab_weights(spec),
    };
    pres.check_invariants()?;
    Ok(pres)
}

/// The `{x, y}` presentation, checked against the substituted `{a, b}` one.
pub fn presentation_xy(spec: &KnotSpec) -> Result<Presentation> {
    let ab = presentation_ab(spec)?;
    let KnotSpec { p, k, m, l, sign } = *spec;
    let w = XyWords::new();
    let hom = change_of_generators(spec);
    let a = w.a(spec);
    let b = w.b(spec);
    let z = ab.derived["z"].substitute(&hom)?;
    let zm = z.power(m);
    let (lhs, rhs, cancel) = match sign {
        Sign::Minus => {
            let lhs = &a.power(p - l) * &(&zm * &a).power(l - 1);
            let rhs = w.prod(&[
                &w.x,
                &w.yx.power(k * (p - l) - 1),
                &(&zm * &w.yx.power(k)).power(l - 1),
            ]);
            (lhs, rhs, a.clone())
        }
        Sign::Plus => {
            let lhs = w.prod(&[
                &w.prod(&[&w.x, &zm, &w.xy.power(k)]).power(l - 1),
                &w.x,
                &a.power(p - l),
            ]);
            let rhs = &(&zm * &w.xy.power(k)).power(l - 1) * &w.xy.power(k * (p - l) + 1);
            (lhs, rhs, w.xy.power(k))
        }
    };
    let sub_lhs = &cancel.invert() * &ab.relator_lhs.substitute(&hom)?;
    let sub_rhs = &cancel.invert() * &ab.relator_rhs.substitute(&hom)?;
    if sub_lhs != lhs || sub_rhs != rhs {
        return Err(Error::Consistency(format!(
            "{spec}: substituted relation {sub_lhs} = {sub_rhs} differs from {lhs} = {rhs}"
        )));
    }
    let mu = ab.derived["mu"].substitute(&hom)?;
    if mu != w.x {
        return Err(Error::Consistency(format!("{spec}: meridian maps to {mu}, not x")));
    }
    let lambda_prime = ab.derived["lambda_prime"].substitute(&hom)?;
    let pres = Presentation {
        alphabet: w.alphabet.clone(),
        relator_lhs: lhs,
        relator_rhs: rhs,
        derived: BTreeMap::from([
            ("a".to_string(), a),
            ("b".to_string(), b),
            ("z".to_string(), z),
            ("mu".to_string(), mu),
            ("lambda_prime".to_string(), lambda_prime),
        ]),
        weights: xy_weights(spec),
    };
    pres.check_invariants()?;
    Ok(pres)
}

#[derive(Debug, Clone)]
pub struct Longitude {
    /// `λ′` over `{x, y}`.
    pub lambda_prime: GroupWord,
    /// `N` with `λ = μ^{-N} λ′`.
    pub meridian_power: i64,
}

/// `λ′` and the meridian power `p(pk ± 1) + l²m`; checks that `λ = x^{-N}λ′`
/// is nullhomologous.
pub fn longitude(spec: &KnotSpec) -> Result<Longitude> {
    let pres = presentation_xy(spec)?;
    let lambda_prime = pres.derived["lambda_prime"].clone();
    let n = spec.meridian_power();
    let d = lambda_prime.abelianize_degree(&pres.weights)?;
    if d != n {
        return Err(Error::Consistency(format!(
            "{spec}: λ′ abelianizes to t^{d}, expected t^{n}"
        )));
    }
    Ok(Longitude {
        lambda_prime,
        meridian_power: n,
    })
}

/// The three L-space families with a closed-form longitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    /// `l = p - 1`
    PMinusOne,
    /// `l = p - 2`, `m = 1`
    PMinusTwo,
    /// `l = 2`, `m = 1`
    Two,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PMinusOne => "l=p-1",
            Family::PMinusTwo => "l=p-2,m=1",
            Family::Two => "l=2,m=1",
        }
    }
}

/// Every family the spec belongs to (a spec can be in two, e.g. `p = 3, l = 2`).
pub fn families(spec: &KnotSpec) -> Vec<Family> {
    let KnotSpec { p, m, l, .. } = *spec;
    let mut out = Vec::new();
    if l == p - 1 {
        out.push(Family::PMinusOne);
    }
    if l == p - 2 && m == 1 {
        out.push(Family::PMinusTwo);
    }
    if l == 2 && m == 1 {
        out.push(Family::Two);
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub family: Family,
    /// 0 for the first displayed form, 1 for the second (only `l = 2`).
    pub form: usize,
    pub word: GroupWord,
}

/// The closed-form `λ′` words of one family.
pub fn closed_forms_for(spec: &KnotSpec, family: Family) -> Result<Vec<ClosedForm>> {
    spec.validate()?;
    if !families(spec).contains(&family) {
        return Err(Error::NoClosedForm(format!("{spec} in family {}", family.name())));
    }
    let KnotSpec { p, k, m, sign, .. } = *spec;
    let w = XyWords::new();
    let (x, y, xy, yx) = (&w.x, &w.y, &w.xy, &w.yx);
    let words: Vec<GroupWord> = match (family, sign) {
        (Family::PMinusOne, Sign::Minus) => vec![w.prod(&[
            &yx.power(k - 1),
            &y.power(m + 1),
            x,
            &yx.power(k - 1),
            &(&y.power(m) * &yx.power(k)).power(p - 2),
        ])],
        (Family::PMinusOne, Sign::Plus) => vec![w.prod(&[
            &w.prod(&[&xy.power(k), x, &y.power(m)]).power(p - 1),
            &xy.power(k),
            x,
        ])],
        (Family::PMinusTwo, Sign::Minus) => {
            let yk1 = yx.power(k - 1);
            vec![w.prod(&[
                x,
                &yk1,
                &w.prod(&[y, &yk1, y]).power(p - 2),
                &yk1,
                y,
            ])]
        }
        (Family::PMinusTwo, Sign::Plus) => vec![w.prod(&[
            &xy.power(k),
            x,
            &(y * &xy.power(k)).power(p - 2),
            &xy.power(k),
            x,
        ])],
        (Family::Two, Sign::Minus) => {
            let a = &yx.power(k - 1) * y;
            let first = &a.power(p - 2) * &(&yx.power(1 - (p - 2) * k) * &a.power(p - 1)).power(2);
            let u = a.power(p - 1);
            let second = w.prod(&[x, &u, x, &u.invert(), &yx.power(k), &u, x]);
            vec![first, second]
        }
        (Family::Two, Sign::Plus) => {
            let c = &xy.power(k) * x;
            let first = w.prod(&[
                &xy.power((p - 2) * k + 1),
                &c.power(-(p - 3)),
                &xy.power((p - 1) * k + 1),
                x,
            ]);
            let u = xy.power((p - 1) * k + 1);
            let second = w.prod(&[x, &u, x, &u.invert(), &xy.power(k), x, &u, x]);
            vec![first, second]
        }
    };
    Ok(words
        .into_iter()
        .enumerate()
        .map(|(form, word)| ClosedForm { family, form, word })
        .collect())
}

/// Closed forms for every family the spec belongs to.
pub fn longitude_closed_form(spec: &KnotSpec) -> Result<Vec<ClosedForm>> {
    let fams = families(spec);
    if fams.is_empty() {
        return Err(Error::NoClosedForm(spec.to_string()));
    }
    let mut out = Vec::new();
    for f in fams {
        out.extend(closed_forms_for(spec, f)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: i64, k: i64, m: i64, l: i64, sign: Sign) -> KnotSpec {
        KnotSpec::new(p, k, m, l, sign).unwrap()
    }

    #[test]
    fn ab_examples() {
        let s = spec(2, 1, 1, 1, Sign::Minus);
        let pres = presentation_ab(&s).unwrap();
        assert_eq!(pres.relator_lhs.to_string(), "a^2");
        assert_eq!(pres.relator_rhs.to_string(), "b");
        assert_eq!(pres.derived["z"].to_string(), "a");
        let pres = presentation_ab(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        assert_eq!(pres.relator_lhs.to_string(), "a^2");
        assert_eq!(pres.relator_rhs.to_string(), "b^3");
        assert_eq!(pres.weights.get("a"), Some(3));
        assert_eq!(pres.weights.get("b"), Some(2));
    }

    #[test]
    fn xy_examples() {
        let pres = presentation_xy(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        assert_eq!(pres.relator_lhs.to_string(), "y*x*y");
        assert_eq!(pres.relator_rhs.to_string(), "x*y*x");
        let pres = presentation_xy(&spec(2, 1, 1, 1, Sign::Minus)).unwrap();
        assert_eq!(pres.relator_lhs.to_string(), "y");
        assert_eq!(pres.relator_rhs.to_string(), "x");
        let pres = presentation_xy(&spec(3, 1, 1, 2, Sign::Minus)).unwrap();
        let l = pres.relator_lhs.abelianize_degree(&pres.weights).unwrap();
        let r = pres.relator_rhs.abelianize_degree(&pres.weights).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn grid_invariants() {
        for s in KnotSpec::grid(6, 4, 3) {
            let ab = presentation_ab(&s).unwrap();
            assert_eq!(ab.derived["z"].abelianize_degree(&ab.weights).unwrap(), s.l);
            let xy = presentation_xy(&s).unwrap();
            assert_eq!(xy.derived["mu"].to_string(), "x");
            assert_eq!(xy.derived["z"].abelianize_degree(&xy.weights).unwrap(), s.l);
            let lon = longitude(&s).unwrap();
            assert_eq!(lon.meridian_power, s.meridian_power());
        }
    }

    #[test]
    fn longitude_examples() {
        assert_eq!(longitude(&spec(2, 2, 1, 1, Sign::Minus)).unwrap().meridian_power, 7);
        assert_eq!(longitude(&spec(3, 1, 1, 2, Sign::Plus)).unwrap().meridian_power, 16);
        assert_eq!(longitude(&spec(2, 1, 1, 1, Sign::Minus)).unwrap().meridian_power, 3);
    }

    #[test]
    fn closed_form_examples() {
        let forms = closed_forms_for(&spec(3, 2, 2, 2, Sign::Minus), Family::PMinusOne).unwrap();
        // (yx) y^3 x (yx) (y^2 (yx)^2)
        assert_eq!(
            forms[0].word.to_string(),
            "y*x*y^3*x*y*x*y^3*x*y*x"
        );
        let forms = closed_forms_for(&spec(4, 1, 1, 2, Sign::Plus), Family::PMinusTwo).unwrap();
        assert_eq!(forms[0].word.to_string(), "x*y*x*y*x*y^2*x*y*x*y*x");
        assert!(closed_forms_for(&spec(5, 1, 2, 3, Sign::Minus), Family::PMinusTwo).is_err());
        assert!(longitude_closed_form(&spec(6, 1, 2, 3, Sign::Minus)).is_err());
        assert_eq!(longitude_closed_form(&spec(5, 1, 1, 2, Sign::Plus)).unwrap().len(), 2);
        // p = 3, l = 2, m = 1 lies in all of l=p-1 and l=2
        assert_eq!(longitude_closed_form(&spec(3, 1, 1, 2, Sign::Minus)).unwrap().len(), 3);
    }

    #[test]
    fn closed_forms_abelianize_to_meridian_power() {
        for s in KnotSpec::grid(6, 4, 3) {
            let Ok(forms) = longitude_closed_form(&s) else { continue };
            for f in forms {
                let d = f.word.abelianize_degree(&xy_weights(&s)).unwrap();
                assert_eq!(d, s.meridian_power(), "{s} {:?}", f.family);
            }
        }
    }
}
