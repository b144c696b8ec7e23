#![allow(dead_code)]
//! Naive reference implementations the library is checked against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use ttk::group_ring::GroupRingElement;
use ttk::laurent::LaurentPoly;
use ttk::word::{Alphabet, GroupWord};

/// Free reduction with a stack of signed letters.
pub fn reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(letters: &[i32]) -> Vec<i32> {
    letters.iter().rev().map(|l| -l).collect()
}

pub fn concat(a: &[i32], b: &[i32]) -> Vec<i32> {
    reduce(&[a, b].concat())
}

/// Letter length, then lexicographic on `(generator, exponent)` syllables.
pub fn word_order_key(letters: &[i32]) -> (usize, Vec<(u32, i64)>) {
    let mut syllables: Vec<(u32, i64)> = Vec::new();
    for &l in letters {
        match syllables.last_mut() {
            Some((g, e)) if *g == l.unsigned_abs() => *e += l.signum() as i64,
            _ => syllables.push((l.unsigned_abs(), l.signum() as i64)),
        }
    }
    (letters.len(), syllables)
}

pub type Ring = BTreeMap<Vec<i32>, i64>;

fn add(r: &mut Ring, w: Vec<i32>, c: i64) {
    let e = r.entry(w.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        r.remove(&w);
    }
}

/// `∂w/∂g` letter by letter: `+prefix` for `g`, `-prefix·g⁻¹` for `g⁻¹`.
pub fn fox(letters: &[i32], g: i32) -> Ring {
    let mut out = Ring::new();
    let mut prefix: Vec<i32> = Vec::new();
    for &l in letters {
        if l == g {
            add(&mut out, prefix.clone(), 1);
        } else if l == -g {
            add(&mut out, concat(&prefix, &[-g]), -1);
        }
        prefix = concat(&prefix, &[l]);
    }
    out
}

pub fn ring_of(e: &GroupRingElement) -> Ring {
    let mut out = Ring::new();
    for (w, c) in e.terms() {
        add(&mut out, w.letters(), i64::try_from(c).unwrap());
    }
    out
}

/// `t^{Σ weight}` summed over the ring element.
pub fn phi(r: &Ring, weights: &[i64]) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (w, c) in r {
        let d: i64 = w.iter().map(|&l| l.signum() as i64 * weights[l.unsigned_abs() as usize - 1]).sum();
        *out.entry(d).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn poly_of(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms().map(|(e, c)| (e, i64::try_from(c).unwrap())).collect()
}

/// Schoolbook product on sparse integer maps.
pub fn poly_mul(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (e, c) in a {
        for (f, d) in b {
            *out.entry(e + f).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn laurent(terms: &BTreeMap<i64, i64>) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|(e, c)| (*e, BigInt::from(*c))))
}

pub fn xy() -> Alphabet {
    Alphabet::new(["x", "y"]).unwrap()
}

pub fn word(a: &Alphabet, letters: &[i32]) -> GroupWord {
    GroupWord::from_letters(a.clone(), letters)
}
