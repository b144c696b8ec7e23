//! Certificate checking with its own word handling, so a bug in the search
//! cannot vouch for itself.

use super::{DistinctWitness, EqualityCertificate};
use crate::error::{Error, Result};
use crate::word::Alphabet;

fn bad(msg: impl Into<String>) -> Error {
    Error::UnresolvedCertificate(msg.into())
}

/// Parses `g^e*h*...` into signed letters `±(index + 1)`, already reduced.
fn letters(names: &[String], text: &str) -> Result<Vec<i32>> {
    let text = text.trim();
    let mut out: Vec<i32> = Vec::new();
    if text.is_empty() || text == "1" {
        return Ok(out);
    }
    for token in text.split('*') {
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| bad(format!("bad exponent in {token:?}")))?,
            ),
            None => (token.trim(), 1),
        };
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| bad(format!("unknown generator {name:?}")))?;
        let letter = (idx as i32 + 1) * exp.signum() as i32;
        for _ in 0..exp.unsigned_abs() {
            push_reduced(&mut out, letter);
        }
    }
    Ok(out)
}

fn push_reduced(stack: &mut Vec<i32>, l: i32) {
    if stack.last().map_or(false, |&t| t + l == 0) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

fn reduce_concat(parts: &[&[i32]]) -> Vec<i32> {
    let mut out = Vec::new();
    for p in parts {
        for &l in *p {
            push_reduced(&mut out, l);
        }
    }
    out
}

fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

fn cyclically_reduce(mut w: Vec<i32>) -> Vec<i32> {
    while w.len() >= 2 && w[0] + w[w.len() - 1] == 0 {
        w.pop();
        w.remove(0);
    }
    w
}

fn is_rotation(a: &[i32], b: &[i32]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b)))
}

/// Checks that `cert` proves `lhs = rhs` in `⟨alphabet | relator⟩`.
pub fn replay_certificate(cert: &EqualityCertificate, relator: &str) -> Result<()> {
    let names = &cert.alphabet;
    let presented = cyclically_reduce(letters(names, relator)?);
    let base = letters(names, &cert.relator)?;
    if !is_rotation(&presented, &base) && !is_rotation(&inverse(&presented), &base) {
        return Err(bad("certificate relator is not a cyclic conjugate of the relator"));
    }
    let lhs = letters(names, &cert.lhs)?;
    let rhs = letters(names, &cert.rhs)?;
    let mut current = reduce_concat(&[&lhs, &inverse(&rhs)]);
    if current != letters(names, &cert.start)? {
        return Err(bad("start word is not lhs * rhs^-1"));
    }
    let inv_base = inverse(&base);
    for (i, step) in cert.steps.iter().enumerate() {
        let b = if step.inverse { &inv_base } else { &base };
        if step.rotation >= b.len() || step.position > current.len() {
            return Err(bad(format!("step {i} out of range")));
        }
        let piece: Vec<i32> = b[step.rotation..].iter().chain(&b[..step.rotation]).copied().collect();
        current = reduce_concat(&[&current[..step.position], &piece, &current[step.position..]]);
        if current != letters(names, &step.result)? {
            return Err(bad(format!("step {i} does not produce {}", step.result)));
        }
    }
    if !current.is_empty() {
        return Err(bad("certificate does not end at the identity"));
    }
    Ok(())
}

/// Left action: the word `g₁g₂…` sends `i` to `g₁(g₂(…(i)))`.
fn act(images: &[Vec<usize>], w: &[i32], degree: usize) -> Vec<usize> {
    (0..degree)
        .map(|mut i| {
            for &l in w.iter().rev() {
                let p = &images[l.unsigned_abs() as usize - 1];
                i = if l > 0 {
                    p[i]
                } else {
                    p.iter().position(|&v| v == i).expect("permutation")
                };
            }
            i
        })
        .collect()
}

/// Checks that `witness` separates `lhs` and `rhs` in `⟨alphabet | relator⟩`.
pub fn verify_distinct(
    witness: &DistinctWitness,
    lhs: &str,
    rhs: &str,
    relator: &str,
    alphabet: &Alphabet,
) -> Result<()> {
    let names = alphabet.names();
    let (u, v, r) = (letters(names, lhs)?, letters(names, rhs)?, letters(names, relator)?);
    match witness {
        DistinctWitness::Abelianization { weights, degrees } => {
            let deg = |w: &[i32]| -> Result<i64> {
                w.iter()
                    .map(|&l| {
                        let name = &names[l.unsigned_abs() as usize - 1];
                        weights
                            .get(name)
                            .map(|d| d * l.signum() as i64)
                            .ok_or_else(|| bad(format!("no weight for {name}")))
                    })
                    .sum()
            };
            if deg(&r)? != 0 {
                return Err(bad("relator has nonzero degree"));
            }
            let got = (deg(&u)?, deg(&v)?);
            if got != *degrees || got.0 == got.1 {
                return Err(bad(format!("degrees {got:?} do not separate")));
            }
        }
        DistinctWitness::Quotient { quotient, images } => {
            let n = quotient.degree;
            let mut perms = Vec::new();
            for name in names {
                let p = quotient
                    .images
                    .get(name)
                    .ok_or_else(|| bad(format!("no image for {name}")))?;
                let mut sorted = p.0.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return Err(bad(format!("image of {name} is not a permutation")));
                }
                perms.push(p.0.clone());
            }
            let identity: Vec<usize> = (0..n).collect();
            if act(&perms, &r, n) != identity {
                return Err(bad("relator is not trivial in the quotient"));
            }
            let (iu, iv) = (act(&perms, &u, n), act(&perms, &v, n));
            if iu != images.0 .0 || iv != images.1 .0 || iu == iv {
                return Err(bad("quotient images do not separate"));
            }
        }
    }
    Ok(())
}
