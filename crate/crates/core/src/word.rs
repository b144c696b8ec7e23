//! Free-group words stored in reduced syllable form.
//!
//! A word is a sequence of syllables `g^e` with `e != 0` and no two adjacent
//! syllables on the same generator. Every constructor reduces, so two words are
//! equal in the free group iff their syllable lists are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of generator names.
#[derive(Clone)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
            if !valid {
                return Err(Error::InvalidAlphabet(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{n}`")));
            }
        }
        Ok(Alphabet(names.into()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn identity(&self) -> GroupWord {
        GroupWord {
            alphabet: self.clone(),
            syllables: Vec::new(),
        }
    }

    /// The one-letter word for `name`.
    pub fn generator(&self, name: &str) -> Result<GroupWord> {
        let g = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(GroupWord {
            alphabet: self.clone(),
            syllables: vec![Syllable { gen: g, exp: 1 }],
        })
    }

    /// Freely reduces a raw list of `(name, exponent)` pairs.
    pub fn reduce<S: AsRef<str>>(&self, raw: &[(S, i64)]) -> Result<GroupWord> {
        let mut syllables = Vec::with_capacity(raw.len());
        for (name, exp) in raw {
            let gen = self
                .index_of(name.as_ref())
                .ok_or_else(|| Error::UnknownGenerator(name.as_ref().to_string()))?;
            syllables.push(Syllable { gen, exp: *exp });
        }
        Ok(GroupWord::from_syllables(self.clone(), syllables))
    }

    /// Parses the canonical text form `y*x^-2*y^3`; `1` is the identity.
    pub fn parse(&self, text: &str) -> Result<GroupWord> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(self.identity());
        }
        let mut raw = Vec::new();
        for token in text.split('*') {
            let token = token.trim();
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (n.trim(), e)
                }
                None => (token, 1),
            };
            if name.is_empty() {
                return Err(Error::Parse(format!("empty syllable in `{text}`")));
            }
            raw.push((name, exp));
        }
        self.reduce(&raw)
    }

    fn same_as(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

#[derive(Clone)]
pub struct GroupWord {
    alphabet: Alphabet,
    syllables: Vec<Syllable>,
}

impl GroupWord {
    pub fn from_syllables<I>(alphabet: Alphabet, raw: I) -> GroupWord
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            debug_assert!(s.gen < alphabet.len());
            push_syllable(&mut out, s);
        }
        GroupWord {
            alphabet,
            syllables: out,
        }
    }

    /// Builds a word from signed letters: `g + 1` for a generator, `-(g + 1)`
    /// for its inverse.
    pub fn from_letters(alphabet: Alphabet, letters: &[i32]) -> GroupWord {
        let syl = letters.iter().map(|&l| Syllable {
            gen: (l.unsigned_abs() - 1) as usize,
            exp: l.signum() as i64,
        });
        GroupWord::from_syllables(alphabet, syl)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length `Σ |e|`.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Expands into signed letters (see [`GroupWord::from_letters`]).
    pub fn letters(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.syllables {
            let l = (s.gen + 1) as i32 * s.exp.signum() as i32;
            out.extend(std::iter::repeat(l).take(s.exp.unsigned_abs() as usize));
        }
        out
    }

    fn check_alphabet(&self, other: &GroupWord) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.names().to_vec(),
                other.alphabet.names().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord> {
        self.check_alphabet(other)?;
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_syllable(&mut out, s);
        }
        Ok(GroupWord {
            alphabet: self.alphabet.clone(),
            syllables: out,
        })
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord {
            alphabet: self.alphabet.clone(),
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    pub fn power(&self, n: i64) -> GroupWord {
        if n < 0 {
            return self.invert().power(-n);
        }
        if n == 0 || self.is_identity() {
            return self.alphabet.identity();
        }
        if self.syllables.len() == 1 {
            let s = self.syllables[0];
            return GroupWord {
                alphabet: self.alphabet.clone(),
                syllables: vec![Syllable {
                    gen: s.gen,
                    exp: s.exp * n,
                }],
            };
        }
        let mut out = Vec::with_capacity(self.syllables.len() * n as usize);
        for _ in 0..n {
            for &s in &self.syllables {
                push_syllable(&mut out, s);
            }
        }
        GroupWord {
            alphabet: self.alphabet.clone(),
            syllables: out,
        }
    }

    /// Applies a homomorphism given by images of generators.
    pub fn substitute(&self, hom: &Homomorphism) -> Result<GroupWord> {
        let mut out = Vec::new();
        for s in &self.syllables {
            let name = self.alphabet.name(s.gen);
            let image = hom
                .images
                .get(name)
                .ok_or_else(|| Error::MissingAssignment(name.to_string()))?;
            for &t in &image.power(s.exp).syllables {
                push_syllable(&mut out, t);
            }
        }
        Ok(GroupWord {
            alphabet: hom.target.clone(),
            syllables: out,
        })
    }

    /// Total exponent under the weight map `g ↦ t^{w(g)}`.
    pub fn abelianize_degree(&self, weights: &ExponentWeights) -> Result<i64> {
        let mut total = 0i64;
        for s in &self.syllables {
            let name = self.alphabet.name(s.gen);
            let w = weights
                .get(name)
                .ok_or_else(|| Error::MissingWeight(name.to_string()))?;
            total += s.exp * w;
        }
        Ok(total)
    }

    /// Exponent sum of one generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp)
            .sum()
    }

    /// Moves the word to another alphabet by generator name.
    pub fn rename_into(&self, target: &Alphabet) -> Result<GroupWord> {
        let mut out = Vec::with_capacity(self.syllables.len());
        for s in &self.syllables {
            let name = self.alphabet.name(s.gen);
            let gen = target
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            out.push(Syllable { gen, exp: s.exp });
        }
        Ok(GroupWord::from_syllables(target.clone(), out))
    }
}

fn push_syllable(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exp == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.gen == s.gen => {
            top.exp += s.exp;
            if top.exp == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

impl PartialEq for GroupWord {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables && self.alphabet == other.alphabet
    }
}

impl Eq for GroupWord {}

impl Hash for GroupWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.syllables.hash(state);
    }
}

/// Shortlex on letter length, then lexicographic on syllables.
impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.alphabet.name(s.gen))?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

/// Panics on alphabet mismatch; use [`GroupWord::multiply`] for the checked form.
impl Mul for &GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: &GroupWord) -> GroupWord {
        self.multiply(rhs).expect("alphabet mismatch in word product")
    }
}

impl Mul for GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: GroupWord) -> GroupWord {
        &self * &rhs
    }
}

impl Mul<&GroupWord> for GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: &GroupWord) -> GroupWord {
        &self * rhs
    }
}

/// Generator name → t-exponent under abelianization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExponentWeights(BTreeMap<String, i64>);

impl ExponentWeights {
    pub fn new<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        ExponentWeights(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn covers(&self, alphabet: &Alphabet) -> bool {
        alphabet.names().iter().all(|n| self.0.contains_key(n))
    }
}

/// A homomorphism from a free group into `target`, given on generators.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub target: Alphabet,
    pub images: BTreeMap<String, GroupWord>,
}

impl Homomorphism {
    pub fn new<I, S>(target: &Alphabet, images: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, GroupWord)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (name, w) in images {
            if w.alphabet() != target {
                return Err(Error::AlphabetMismatch(
                    target.names().to_vec(),
                    w.alphabet().names().to_vec(),
                ));
            }
            map.insert(name.into(), w);
        }
        Ok(Homomorphism {
            target: target.clone(),
            images: map,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = xy();
        let w = a.reduce(&[("x", 1), ("y", 1), ("y", -1), ("x", 1)]).unwrap();
        assert_eq!(w.to_string(), "x^2");
        assert!(a.reduce::<&str>(&[]).unwrap().is_identity());
        let w = a
            .reduce(&[("y", 1), ("x", 1), ("x", -1), ("y", -1)])
            .unwrap();
        assert!(w.is_identity());
        assert_eq!(
            a.reduce(&[("z", 1)]).unwrap_err(),
            Error::UnknownGenerator("z".into())
        );
    }

    #[test]
    fn group_law_examples() {
        let a = xy();
        let x = a.generator("x").unwrap();
        let y = a.generator("y").unwrap();
        assert!((&x * &x.invert()).is_identity());
        assert_eq!((&y * &x).power(2).to_string(), "y*x*y*x");
        assert_eq!((&(&y * &x) * &y).invert().to_string(), "y^-1*x^-1*y^-1");
        assert!(x.power(0).is_identity());
        let other = Alphabet::new(["a", "b"]).unwrap();
        assert!(x.multiply(&other.generator("a").unwrap()).is_err());
    }

    #[test]
    fn substitute_examples() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let a = xy();
        let x = a.generator("x").unwrap();
        let y = a.generator("y").unwrap();
        let yx = &y * &x;
        // k = 1: b ↦ yx, a ↦ y
        let h = Homomorphism::new(&a, [("b", yx.clone()), ("a", y.clone())]).unwrap();
        assert_eq!(ab.generator("b").unwrap().substitute(&h).unwrap(), yx);
        // k = 2: a ↦ (yx)y, a^-1 b^2 ↦ x
        let h = Homomorphism::new(&a, [("b", yx.clone()), ("a", &yx * &y)]).unwrap();
        let mu = ab.parse("a^-1*b^2").unwrap();
        assert_eq!(mu.substitute(&h).unwrap(), x);
        assert!(ab.identity().substitute(&h).unwrap().is_identity());
        let partial = Homomorphism::new(&a, [("a", y.clone())]).unwrap();
        assert_eq!(
            mu.substitute(&partial).unwrap_err(),
            Error::MissingAssignment("b".into())
        );
    }

    #[test]
    fn abelianize_examples() {
        // z = b^{1-k(p-l)} a^{p-l}, Φ(a) = kp-1, Φ(b) = p gives degree l.
        let ab = Alphabet::new(["a", "b"]).unwrap();
        for (p, k, l) in [(2i64, 2i64, 1i64), (5, 3, 2), (4, 1, 3)] {
            let z = ab.reduce(&[("b", 1 - k * (p - l)), ("a", p - l)]).unwrap();
            let w = ExponentWeights::new([("a", k * p - 1), ("b", p)]);
            assert_eq!(z.abelianize_degree(&w).unwrap(), l);
        }
        let a = xy();
        let w = a.parse("y*x*y^2*x*y*x").unwrap();
        let ones = ExponentWeights::new([("x", 1), ("y", 1)]);
        assert_eq!(w.abelianize_degree(&ones).unwrap(), 7);
        assert_eq!(a.identity().abelianize_degree(&ones).unwrap(), 0);
    }

    #[test]
    fn text_form() {
        let a = xy();
        let w = a.parse("y*x^-2*y^3").unwrap();
        assert_eq!(w.to_string(), "y*x^-2*y^3");
        assert_eq!(a.parse("1").unwrap().to_string(), "1");
        assert!(a.parse("x^").is_err());
        assert!(a.parse("x**y").is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["x", "x"]).is_err());
        assert!(Alphabet::new(["x", ""]).is_err());
        assert!(Alphabet::new(["1"]).is_err());
    }

    #[test]
    fn shortlex_order() {
        let a = xy();
        let mut ws: Vec<_> = ["y^2", "x", "x*y", "1", "y"]
            .iter()
            .map(|t| a.parse(t).unwrap())
            .collect();
        ws.sort();
        let printed: Vec<_> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(printed, ["1", "x", "y", "x*y", "y^2"]);
    }
}
