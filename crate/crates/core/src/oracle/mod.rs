//! Equality of words in a one-relator group.
//!
//! Positive answers come from a bounded breadth-first search: starting from
//! `reduce(w₁·w₂⁻¹)`, each step inserts a cyclic rotation of the relator `R`
//! or of `R⁻¹` at some letter position and freely reduces. Rotations of a
//! cyclically reduced relator are conjugates of it, so every insertion keeps
//! the group element. The last step is always found exactly: a word is one
//! insertion away from the identity iff its cyclic reduction is a rotation of
//! `R^{±1}`.
//!
//! Negative answers come from abelianization or from a finite permutation
//! quotient in which the two images differ.
//!
//! Every `Equal` verdict carries a certificate that [`replay`] checks without
//! using any of the search code.

pub mod cache;
pub mod quotient;
pub mod replay;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knot::KnotSpec;
use crate::presentation::{longitude, longitude_closed_form, presentation_xy, Family, Presentation};
use crate::word::{Alphabet, GroupWord};

pub use quotient::{find_quotients, FiniteQuotient, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of relator insertions.
    pub depth: usize,
    /// Frontier size kept per level.
    pub beam: usize,
    /// Cap on intermediate word length; `None` means `4·(|w₁| + |w₂| + |R|)`.
    pub max_len: Option<usize>,
    /// Largest permutation degree tried for a `Distinct` witness (0 disables).
    pub quotient_degree: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            depth: 4,
            beam: 10_000,
            max_len: None,
            quotient_degree: 5,
        }
    }
}

/// One relator insertion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Insertion {
    /// Letter index in the current word.
    pub position: usize,
    /// Insert a rotation of `R⁻¹` instead of `R`.
    pub inverse: bool,
    /// Rotation offset into `R` (or `R⁻¹`).
    pub rotation: usize,
    /// Reduced word after the insertion.
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityCertificate {
    pub alphabet: Vec<String>,
    /// Cyclically reduced relator the rotations refer to.
    pub relator: String,
    pub lhs: String,
    pub rhs: String,
    /// `reduce(lhs · rhs⁻¹)`.
    pub start: String,
    pub steps: Vec<Insertion>,
}

impl EqualityCertificate {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = serde_json::to_vec(self).expect("certificate serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistinctWitness {
    Abelianization {
        weights: BTreeMap<String, i64>,
        degrees: (i64, i64),
    },
    Quotient {
        quotient: FiniteQuotient,
        images: (Permutation, Permutation),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EqualityVerdict {
    Equal(EqualityCertificate),
    Distinct(DistinctWitness),
    Unknown { explored: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    Equal,
    Distinct,
    Unknown,
}

impl EqualityVerdict {
    pub fn status(&self) -> VerdictStatus {
        match self {
            EqualityVerdict::Equal(_) => VerdictStatus::Equal,
            EqualityVerdict::Distinct(_) => VerdictStatus::Distinct,
            EqualityVerdict::Unknown { .. } => VerdictStatus::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<&EqualityCertificate> {
        match self {
            EqualityVerdict::Equal(c) => Some(c),
            _ => None,
        }
    }
}

type Letters = Vec<i32>;

fn free_reduce(word: impl IntoIterator<Item = i32>) -> Letters {
    let mut out: Letters = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn inverse_letters(w: &[i32]) -> Letters {
    w.iter().rev().map(|l| -l).collect()
}

/// Splits a reduced word as `u · c · u⁻¹` with `c` cyclically reduced.
fn cyclic_core(w: &[i32]) -> (usize, &[i32]) {
    let (mut i, mut j) = (0, w.len());
    while j > i + 1 && w[i] == -w[j - 1] {
        i += 1;
        j -= 1;
    }
    (i, &w[i..j])
}

fn rotate(base: &[i32], r: usize) -> Letters {
    base[r..].iter().chain(&base[..r]).copied().collect()
}

/// Rotations of `R` and `R⁻¹`, with a lookup from rotation to `(inverse, offset)`.
struct Rotations {
    relator: Letters,
    forward: Letters,
    backward: Letters,
    /// Distinct rotations in a fixed order.
    list: Vec<(bool, usize, Letters)>,
    index: std::collections::HashMap<Letters, (bool, usize)>,
}

impl Rotations {
    fn new(relator: Letters) -> Self {
        let forward = relator.clone();
        let backward = inverse_letters(&relator);
        let mut list = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (inv, base) in [(false, &forward), (true, &backward)] {
            for r in 0..base.len() {
                let rot = rotate(base, r);
                if !index.contains_key(&rot) {
                    index.insert(rot.clone(), (inv, r));
                    list.push((inv, r, rot));
                }
            }
        }
        Rotations {
            relator,
            forward,
            backward,
            list,
            index,
        }
    }

    /// The single insertion that turns `w` into the identity, if any.
    fn closing_insertion(&self, w: &[i32]) -> Option<(usize, bool, usize)> {
        if w.is_empty() {
            return None;
        }
        let (offset, core) = cyclic_core(w);
        let needed = inverse_letters(core);
        self.index
            .get(&needed)
            .map(|&(inv, r)| (offset + core.len(), inv, r))
    }

    fn base(&self, inverse: bool) -> &[i32] {
        if inverse {
            &self.backward
        } else {
            &self.forward
        }
    }
}

fn insert(w: &[i32], position: usize, piece: &[i32]) -> Letters {
    free_reduce(
        w[..position]
            .iter()
            .chain(piece)
            .chain(&w[position..])
            .copied(),
    )
}

#[derive(Clone)]
struct Node {
    word: Letters,
    path: Vec<(usize, bool, usize)>,
}

/// Decides `w₁ = w₂` in the group of `pres` within `budget`.
pub fn equal_in_group(
    w1: &GroupWord,
    w2: &GroupWord,
    pres: &Presentation,
    budget: &SearchBudget,
) -> Result<EqualityVerdict> {
    for w in [w1, w2] {
        if w.alphabet() != &pres.alphabet {
            return Err(Error::AlphabetMismatch(
                pres.alphabet.names().to_vec(),
                w.alphabet().names().to_vec(),
            ));
        }
    }
    let d1 = w1.abelianize_degree(&pres.weights)?;
    let d2 = w2.abelianize_degree(&pres.weights)?;
    if d1 != d2 {
        return Ok(EqualityVerdict::Distinct(DistinctWitness::Abelianization {
            weights: pres.weights.iter().map(|(k, v)| (k.to_string(), v)).collect(),
            degrees: (d1, d2),
        }));
    }

    let relator_letters = pres.relator().letters();
    let (_, core) = cyclic_core(&relator_letters);
    let rotations = Rotations::new(core.to_vec());
    let start = (w1 * &w2.invert()).letters();
    let start_inv = inverse_letters(&start);
    // Search from the shortlex-smaller of the start word and its inverse so
    // that swapping w1 and w2 explores the same space.
    let mirrored = start_inv < start;
    let root = if mirrored { start_inv } else { start.clone() };
    let max_len = budget
        .max_len
        .unwrap_or(4 * (w1.len() + w2.len() + rotations.relator.len()));

    let found = search(&root, &rotations, budget, max_len);
    let alphabet = pres.alphabet.clone();
    match found {
        Ok(path) => {
            let path = if mirrored {
                mirror_path(&root, &path, &rotations)
            } else {
                path
            };
            let cert = build_certificate(&alphabet, &rotations, w1, w2, &start, &path);
            Ok(EqualityVerdict::Equal(cert))
        }
        Err(explored) => {
            if budget.quotient_degree >= 2 {
                if let Some(w) = quotient_witness(w1, w2, pres, budget.quotient_degree)? {
                    return Ok(EqualityVerdict::Distinct(w));
                }
            }
            Ok(EqualityVerdict::Unknown { explored })
        }
    }
}

fn search(
    root: &[i32],
    rot: &Rotations,
    budget: &SearchBudget,
    max_len: usize,
) -> std::result::Result<Vec<(usize, bool, usize)>, usize> {
    if root.is_empty() {
        return Ok(Vec::new());
    }
    if budget.depth == 0 {
        return Err(1);
    }
    if let Some(step) = rot.closing_insertion(root) {
        return Ok(vec![step]);
    }
    let mut explored = 1usize;
    let mut frontier = vec![Node {
        word: root.to_vec(),
        path: Vec::new(),
    }];
    let mut seen: HashSet<Letters> = HashSet::from([root.to_vec()]);
    for _level in 1..budget.depth {
        let mut next: Vec<Node> = frontier
            .par_iter()
            .flat_map_iter(|node| expand(node, rot, max_len))
            .collect();
        next.sort_by(|a, b| {
            (a.word.len(), &a.word, &a.path).cmp(&(b.word.len(), &b.word, &b.path))
        });
        next.dedup_by(|b, a| a.word == b.word);
        next.retain(|n| !seen.contains(&n.word));
        next.truncate(budget.beam);
        explored += next.len();
        if next.is_empty() {
            break;
        }
        if next.iter().any(|n| n.word.is_empty()) {
            let n = next.iter().find(|n| n.word.is_empty()).expect("checked");
            return Ok(n.path.clone());
        }
        let hit = next
            .par_iter()
            .find_first(|n| rot.closing_insertion(&n.word).is_some());
        if let Some(n) = hit {
            let mut path = n.path.clone();
            path.push(rot.closing_insertion(&n.word).expect("checked"));
            return Ok(path);
        }
        seen.extend(next.iter().map(|n| n.word.clone()));
        frontier = next;
    }
    Err(explored)
}

fn expand<'a>(node: &'a Node, rot: &'a Rotations, max_len: usize) -> impl Iterator<Item = Node> + 'a {
    let n = node.word.len();
    let grow = rot.relator.len();
    (0..=n).flat_map(move |pos| {
        rot.list.iter().filter_map(move |(inv, r, piece)| {
            let w = &node.word;
            // insertions with no cancellation only lengthen the word
            let touches_left = pos > 0 && w[pos - 1] == -piece[0];
            let touches_right = pos < n && w[pos] == -piece[piece.len() - 1];
            if !touches_left && !touches_right {
                return None;
            }
            let word = insert(w, pos, piece);
            if word.len() > max_len || word.len() >= n + grow {
                return None;
            }
            let mut path = node.path.clone();
            path.push((pos, *inv, *r));
            Some(Node { word, path })
        })
    })
}

/// Converts a path for `w⁻¹` into a path for `w`.
fn mirror_path(
    root: &[i32],
    path: &[(usize, bool, usize)],
    rot: &Rotations,
) -> Vec<(usize, bool, usize)> {
    let mut current = root.to_vec();
    let mut out = Vec::with_capacity(path.len());
    for &(pos, inv, r) in path {
        let base = rot.base(inv);
        let piece = rotate(base, r);
        // (A·ρ·B)⁻¹ = B⁻¹·ρ⁻¹·A⁻¹ and ρ⁻¹ is the rotation of the other base
        // by len - r.
        let len = base.len();
        let mirrored = (current.len() - pos, !inv, (len - r) % len);
        debug_assert_eq!(
            rotate(rot.base(!inv), mirrored.2),
            inverse_letters(&piece)
        );
        current = insert(&current, pos, &piece);
        out.push(mirrored);
    }
    out
}

fn build_certificate(
    alphabet: &Alphabet,
    rot: &Rotations,
    w1: &GroupWord,
    w2: &GroupWord,
    start: &[i32],
    path: &[(usize, bool, usize)],
) -> EqualityCertificate {
    let mut current = start.to_vec();
    let mut steps = Vec::with_capacity(path.len());
    for &(position, inverse, rotation) in path {
        let piece = rotate(rot.base(inverse), rotation);
        current = insert(&current, position, &piece);
        steps.push(Insertion {
            position,
            inverse,
            rotation,
            result: GroupWord::from_letters(alphabet.clone(), &current).to_string(),
        });
    }
    debug_assert!(current.is_empty());
    EqualityCertificate {
        alphabet: alphabet.names().to_vec(),
        relator: GroupWord::from_letters(alphabet.clone(), &rot.relator).to_string(),
        lhs: w1.to_string(),
        rhs: w2.to_string(),
        start: GroupWord::from_letters(alphabet.clone(), start).to_string(),
        steps,
    }
}

fn quotient_witness(
    w1: &GroupWord,
    w2: &GroupWord,
    pres: &Presentation,
    max_degree: usize,
) -> Result<Option<DistinctWitness>> {
    for q in find_quotients(pres, max_degree)? {
        let (i1, i2) = (q.evaluate(w1)?, q.evaluate(w2)?);
        if i1 != i2 {
            return Ok(Some(DistinctWitness::Quotient {
                quotient: q,
                images: (i1, i2),
            }));
        }
    }
    Ok(None)
}

/// Outcome of certifying one longitude identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub family: Family,
    /// Which two words were compared, e.g. `lambda_prime = form0`.
    pub identity: String,
    pub status: VerdictStatus,
    pub depth: Option<usize>,
    pub certificate: Option<EqualityCertificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LongitudeReport {
    pub spec: KnotSpec,
    pub spec_text: String,
    pub identities: Vec<IdentityReport>,
}

impl LongitudeReport {
    pub fn all_equal(&self) -> bool {
        self.identities.iter().all(|i| i.status == VerdictStatus::Equal)
    }

    pub fn max_depth(&self) -> usize {
        self.identities.iter().filter_map(|i| i.depth).max().unwrap_or(0)
    }
}

/// Certifies every closed-form longitude of `spec` against the substituted `λ′`,
/// and the two displayed forms of the `l = 2` family against each other.
pub fn certify_longitudes(spec: &KnotSpec, budget: &SearchBudget) -> Result<LongitudeReport> {
    let pres = presentation_xy(spec)?;
    let lon = longitude(spec)?;
    let forms = longitude_closed_form(spec)?;
    let mut identities = Vec::new();
    let mut push = |family: Family, identity: String, v: EqualityVerdict| {
        let cert = v.certificate().cloned();
        identities.push(IdentityReport {
            family,
            identity,
            status: v.status(),
            depth: cert.as_ref().map(|c| c.depth()),
            certificate: cert,
        });
    };
    for f in &forms {
        let v = equal_in_group(&lon.lambda_prime, &f.word, &pres, budget)?;
        push(f.family, format!("lambda_prime = form{}", f.form), v);
    }
    let two: Vec<_> = forms.iter().filter(|f| f.family == Family::Two).collect();
    if let [first, second] = two.as_slice() {
        let v = equal_in_group(&first.word, &second.word, &pres, budget)?;
        push(Family::Two, "form0 = form1".to_string(), v);
    }
    Ok(LongitudeReport {
        spec: *spec,
        spec_text: spec.to_string(),
        identities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::Sign;

    fn spec(p: i64, k: i64, m: i64, l: i64, sign: Sign) -> KnotSpec {
        KnotSpec::new(p, k, m, l, sign).unwrap()
    }

    #[test]
    fn relation_sides_are_equal_at_depth_one() {
        let pres = presentation_xy(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        let v = equal_in_group(
            &pres.relator_lhs,
            &pres.relator_rhs,
            &pres,
            &SearchBudget::default(),
        )
        .unwrap();
        let cert = v.certificate().expect("equal");
        assert_eq!(cert.depth(), 1);
        replay::replay_certificate(cert, &pres.relator().to_string()).unwrap();
    }

    #[test]
    fn reflexive_is_depth_zero() {
        let pres = presentation_xy(&spec(3, 2, 1, 2, Sign::Plus)).unwrap();
        let w = pres.alphabet.parse("x*y^3*x^-1").unwrap();
        let v = equal_in_group(&w, &w, &pres, &SearchBudget::default()).unwrap();
        assert_eq!(v.certificate().unwrap().depth(), 0);
    }

    #[test]
    fn abelianization_disproof() {
        let pres = presentation_xy(&spec(3, 1, 1, 2, Sign::Minus)).unwrap();
        let x = pres.alphabet.parse("x").unwrap();
        let y = pres.alphabet.parse("y").unwrap();
        let v = equal_in_group(&x, &y, &pres, &SearchBudget::default()).unwrap();
        match v {
            EqualityVerdict::Distinct(DistinctWitness::Abelianization { degrees, .. }) => {
                assert_eq!(degrees, (1, 2))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trefoil_quotient_disproof() {
        let pres = presentation_xy(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        let x = pres.alphabet.parse("x").unwrap();
        let y = pres.alphabet.parse("y").unwrap();
        let budget = SearchBudget {
            depth: 2,
            beam: 200,
            ..SearchBudget::default()
        };
        let v = equal_in_group(&x, &y, &pres, &budget).unwrap();
        let EqualityVerdict::Distinct(w) = v else {
            panic!("expected a quotient witness, got {v:?}")
        };
        replay::verify_distinct(&w, "x", "y", &pres.relator().to_string(), &pres.alphabet)
            .unwrap();
    }

    #[test]
    fn conjugated_relator_is_one_step() {
        let pres = presentation_xy(&spec(3, 1, 1, 2, Sign::Plus)).unwrap();
        let g = pres.alphabet.parse("y^2*x^-3*y").unwrap();
        let w = &(&g * &pres.relator()) * &g.invert();
        let one = pres.alphabet.identity();
        let v = equal_in_group(&w, &one, &pres, &SearchBudget::default()).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.depth(), 1);
        replay::replay_certificate(cert, &pres.relator().to_string()).unwrap();
    }

    #[test]
    fn product_of_two_conjugates_and_symmetry() {
        let pres = presentation_xy(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        let r = pres.relator();
        let g = pres.alphabet.parse("x^2*y").unwrap();
        let h = pres.alphabet.parse("y^-1*x").unwrap();
        let w = &(&(&g * &r) * &g.invert()) * &(&(&h * &r.invert()) * &h.invert());
        let one = pres.alphabet.identity();
        let b = SearchBudget::default();
        let v = equal_in_group(&w, &one, &pres, &b).unwrap();
        let cert = v.certificate().expect("equal");
        assert!(cert.depth() <= 2);
        replay::replay_certificate(cert, &pres.relator().to_string()).unwrap();
        let back = equal_in_group(&one, &w, &pres, &b).unwrap();
        assert_eq!(back.status(), VerdictStatus::Equal);
        replay::replay_certificate(back.certificate().unwrap(), &pres.relator().to_string())
            .unwrap();
    }

    #[test]
    fn longitude_examples() {
        let b = SearchBudget::default();
        for s in [
            spec(3, 2, 2, 2, Sign::Minus),
            spec(4, 1, 1, 2, Sign::Plus),
            spec(5, 1, 1, 2, Sign::Minus),
        ] {
            let rep = certify_longitudes(&s, &b).unwrap();
            assert!(rep.all_equal(), "{s}: {:?}", rep.identities);
            assert!(rep.max_depth() <= 4);
            let rel = presentation_xy(&s).unwrap().relator().to_string();
            for id in &rep.identities {
                replay::replay_certificate(id.certificate.as_ref().unwrap(), &rel).unwrap();
            }
        }
    }

    #[test]
    fn alphabet_mismatch() {
        let pres = presentation_xy(&spec(2, 2, 1, 1, Sign::Minus)).unwrap();
        let other = Alphabet::new(["x", "y", "v"]).unwrap().parse("x").unwrap();
        assert!(equal_in_group(&other, &other, &pres, &SearchBudget::default()).is_err());
    }
}
