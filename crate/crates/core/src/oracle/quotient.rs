//! Transitive permutation representations of small degree.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::GroupWord;

/// Largest degree [`find_quotients`] accepts.
pub const MAX_QUOTIENT_DEGREE: usize = 7;

/// One-line notation on `0..n`: `i ↦ self.0[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = i;
        }
        Permutation(out)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteQuotient {
    pub degree: usize,
    pub images: BTreeMap<String, Permutation>,
}

impl FiniteQuotient {
    /// Image of `w`, with words acting on the left.
    pub fn evaluate(&self, w: &GroupWord) -> Result<Permutation> {
        let gens = self.generator_images(w.alphabet().names())?;
        Ok(Permutation(eval_letters(&gens, &w.letters(), self.degree)))
    }

    fn generator_images(&self, names: &[String]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        names
            .iter()
            .map(|n| {
                self.images
                    .get(n)
                    .map(|p| (p.0.clone(), p.inverse().0))
                    .ok_or_else(|| Error::MissingAssignment(n.clone()))
            })
            .collect()
    }
}

fn eval_letters(gens: &[(Vec<usize>, Vec<usize>)], letters: &[i32], n: usize) -> Vec<usize> {
    (0..n)
        .map(|mut i| {
            for &l in letters.iter().rev() {
                let (fwd, back) = &gens[l.unsigned_abs() as usize - 1];
                i = if l > 0 { fwd[i] } else { back[i] };
            }
            i
        })
        .collect()
}

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One permutation per cycle type, cycles on consecutive points.
pub fn class_representatives(n: usize) -> Vec<Permutation> {
    partitions(n, n)
        .into_iter()
        .map(|parts| {
            let mut p = vec![0; n];
            let mut start = 0;
            for len in parts {
                for i in 0..len {
                    p[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            Permutation(p)
        })
        .collect()
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation(cur.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation(cur.clone()));
    }
}

fn transitive(gens: &[&Permutation], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g.0[i];
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn quotients_of_degree(pres: &Presentation, n: usize) -> Vec<FiniteQuotient> {
    let names = pres.alphabet.names();
    let relator = pres.relator().letters();
    let reps = class_representatives(n);
    let all = all_permutations(n);
    let mut out = Vec::new();
    let mut choice: Vec<&Permutation> = Vec::with_capacity(names.len());
    fn rec<'a>(
        choice: &mut Vec<&'a Permutation>,
        reps: &'a [Permutation],
        all: &'a [Permutation],
        count: usize,
        visit: &mut dyn FnMut(&[&'a Permutation]),
    ) {
        if choice.len() == count {
            visit(choice);
            return;
        }
        let pool = if choice.is_empty() { reps } else { all };
        for p in pool {
            choice.push(p);
            rec(choice, reps, all, count, visit);
            choice.pop();
        }
    }
    rec(&mut choice, &reps, &all, names.len(), &mut |gens| {
        let pairs: Vec<_> = gens.iter().map(|p| (p.0.clone(), p.inverse().0)).collect();
        let image = eval_letters(&pairs, &relator, n);
        if image.iter().enumerate().all(|(i, &j)| i == j) && transitive(gens, n) {
            out.push(FiniteQuotient {
                degree: n,
                images: names.iter().cloned().zip(gens.iter().map(|p| (*p).clone())).collect(),
            });
        }
    });
    out
}

fn memo() -> &'static Mutex<HashMap<(String, usize), Vec<FiniteQuotient>>> {
    static MEMO: OnceLock<Mutex<HashMap<(String, usize), Vec<FiniteQuotient>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Transitive quotients onto subgroups of `S_n` for `2 ≤ n ≤ max_degree`.
/// The first generator ranges over cycle-type representatives, the others over
/// all of `S_n`. Results are memoized per presentation digest.
pub fn find_quotients(pres: &Presentation, max_degree: usize) -> Result<Vec<FiniteQuotient>> {
    if max_degree > MAX_QUOTIENT_DEGREE {
        return Err(Error::CapExceeded(max_degree, MAX_QUOTIENT_DEGREE));
    }
    let digest = pres.digest();
    let mut out = Vec::new();
    for n in 2..=max_degree {
        let key = (digest.clone(), n);
        let cached = memo().lock().expect("memo lock").get(&key).cloned();
        let qs = match cached {
            Some(qs) => qs,
            None => {
                let qs = quotients_of_degree(pres, n);
                memo().lock().expect("memo lock").insert(key, qs.clone());
                qs
            }
        };
        out.extend(qs);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::{KnotSpec, Sign};
    use crate::presentation::presentation_xy;

    #[test]
    fn counts() {
        assert_eq!(class_representatives(5).len(), 7);
        assert_eq!(class_representatives(7).len(), 15);
        assert_eq!(all_permutations(4).len(), 24);
        let p = Permutation(vec![1, 2, 0]);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn trefoil_has_s3_quotient() {
        let spec = KnotSpec::new(2, 2, 1, 1, Sign::Minus).unwrap();
        let pres = presentation_xy(&spec).unwrap();
        let qs = find_quotients(&pres, 3).unwrap();
        assert!(qs.iter().any(|q| q.degree == 3));
        let x = pres.alphabet.parse("x").unwrap();
        let y = pres.alphabet.parse("y").unwrap();
        let xyx = pres.alphabet.parse("x*y*x").unwrap();
        let yxy = pres.alphabet.parse("y*x*y").unwrap();
        for q in &qs {
            assert_eq!(q.evaluate(&xyx).unwrap(), q.evaluate(&yxy).unwrap());
        }
        assert!(qs
            .iter()
            .any(|q| q.evaluate(&x).unwrap() != q.evaluate(&y).unwrap()));
        assert_eq!(find_quotients(&pres, 3).unwrap(), qs);
        assert!(find_quotients(&pres, 8).is_err());
    }
}
