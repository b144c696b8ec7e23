//! Random derivations from `x > 1` and `y > 1`. Every rule of the kernel is
//! sound for a left-ordered group in which `x` and `y` are positive, so no
//! derivation may reach `t > t`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::builder::Builder;
use super::check::{apply, check_script, Context};
use super::{CheckOutcome, Judgment, Kind, ProofScript, Ref, Rel, Rule, Step};
use crate::error::Result;
use crate::presentation::xy_alphabet;
use crate::word::GroupWord;

const CHUNK: usize = 1000;
const MAX_WORD: usize = 40;
const ATTEMPTS: usize = 32;

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub derivations: usize,
    pub depth: usize,
    pub steps: usize,
    /// Steps per rule name.
    pub rule_counts: Vec<(String, usize)>,
    /// Derivations that reached `t > t` or both `t > u` and `t = u`.
    pub contradictions: Vec<ProofScript>,
    /// Derivations the checker did not verify on replay.
    pub replay_failures: usize,
}

impl FuzzReport {
    pub fn is_sound(&self) -> bool {
        self.contradictions.is_empty() && self.replay_failures == 0
    }
}

/// The hypotheses `x > 1` and `y > 1` with no steps.
pub fn positivity_script() -> ProofScript {
    let mut b = Builder::new("positivity only", xy_alphabet());
    let one = b.one();
    let x = b.parse("x");
    let y = b.parse("y");
    b.hypothesis("x_pos", Judgment::global(Rel::Gt, x, one.clone()));
    b.hypothesis("y_pos", Judgment::global(Rel::Gt, y, one));
    b.finish()
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| *[1, -1, 2, -2].choose(rng).unwrap())
        .collect();
    GroupWord::from_letters(xy_alphabet(), &letters)
}

/// `w` with `w^n = h` for some `n ∈ {2, 3}`, tried on the leading letters.
fn root(h: &GroupWord) -> Option<(GroupWord, u32)> {
    let letters = h.letters();
    for n in [2usize, 3] {
        if letters.is_empty() || letters.len() % n != 0 {
            continue;
        }
        let g = GroupWord::from_letters(h.alphabet().clone(), &letters[..letters.len() / n]);
        if &g.power(n as i64) == h {
            return Some((g, n as u32));
        }
    }
    None
}

fn candidate(rng: &mut ChaCha8Rng, facts: &[(Ref, Judgment)]) -> Option<(Rule, Vec<usize>, Judgment)> {
    let i = rng.gen_range(0..facts.len());
    let f = &facts[i].1;
    // words drawn from the facts make chains line up more often
    let word = |rng: &mut ChaCha8Rng| -> GroupWord {
        let other = &facts[rng.gen_range(0..facts.len())].1;
        match rng.gen_range(0..4) {
            0 => other.lhs.clone(),
            1 => other.rhs.invert(),
            _ => random_word(rng, 3),
        }
    };
    let placeholder = |kind: Kind, lhs: GroupWord| Judgment::new(kind, Rel::Eq, lhs.clone(), lhs);
    let pick = rng.gen_range(0..10);
    let rule_refs = match pick {
        0 => (Rule::LeftMul { word: word(rng).to_string() }, vec![i]),
        1 => (Rule::LeftCancel { word: word(rng).to_string() }, vec![i]),
        2 => (Rule::RightMul { word: word(rng).to_string() }, vec![i]),
        3 => (Rule::RightCancel { word: word(rng).to_string() }, vec![i]),
        4 => {
            let mut refs = vec![i];
            let mut end = f.rhs.clone();
            for _ in 0..rng.gen_range(1..=2) {
                let next: Vec<usize> = facts
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| {
                        g.1.kind == f.kind && (g.1.lhs == end || (g.1.rel == Rel::Eq && g.1.rhs == end))
                    })
                    .map(|(k, _)| k)
                    .collect();
                let Some(&k) = next.choose(rng) else { break };
                let g = &facts[k].1;
                end = if g.lhs == end { g.rhs.clone() } else { g.lhs.clone() };
                refs.push(k);
            }
            let stated = placeholder(f.kind, f.lhs.clone());
            return Some((Rule::Trans, refs, stated));
        }
        5 => (Rule::Inv, vec![i]),
        6 => (Rule::Inst { point: random_word(rng, 3).to_string() }, vec![i]),
        7 => (Rule::PosProd, vec![i, rng.gen_range(0..facts.len())]),
        8 => {
            // split the premise as w·up vs down·w
            let letters = f.lhs.letters();
            let (&last, init) = letters.split_last()?;
            let alphabet = f.lhs.alphabet().clone();
            let up = GroupWord::from_letters(alphabet.clone(), &[last]);
            let w = GroupWord::from_letters(alphabet, init);
            let down = &f.rhs * &w.invert();
            let rule = Rule::TrLemma {
                n: rng.gen_range(1..=4),
                w: w.to_string(),
                up: up.to_string(),
                down: down.to_string(),
                mirrored: rng.gen_bool(0.5),
            };
            (rule, vec![i])
        }
        _ => {
            if rng.gen_bool(0.5) {
                let kind = if rng.gen_bool(0.5) { Kind::Global } else { Kind::Pointwise };
                let w = random_word(rng, 3);
                return Some((Rule::Refl { word: w.to_string() }, vec![], placeholder(kind, w)));
            }
            let (g, n) = root(&(&f.rhs * &f.lhs.invert()))?;
            (Rule::PowerRoot { g: g.to_string(), n, s: f.lhs.to_string() }, vec![i])
        }
    };
    let (rule, refs) = rule_refs;
    Some((rule, refs, placeholder(f.kind, f.lhs.clone())))
}

fn contradicts(facts: &[(Ref, Judgment)], j: &Judgment) -> bool {
    j.is_contradiction()
        || facts.iter().any(|(_, f)| {
            f.kind == j.kind
                && (f.rel == Rel::Eq) != (j.rel == Rel::Eq)
                && ((f.lhs == j.lhs && f.rhs == j.rhs) || (f.lhs == j.rhs && f.rhs == j.lhs))
                && (f.rel == Rel::Gt || j.rel == Rel::Gt)
        })
}

/// One derivation of `depth` steps, and whether it reached a contradiction.
pub fn random_derivation(base: &ProofScript, seed: u64, depth: usize) -> Result<(ProofScript, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    derivation(&mut rng, base, depth)
}

fn derivation(rng: &mut ChaCha8Rng, base: &ProofScript, depth: usize) -> Result<(ProofScript, bool)> {
    let ctx = Context::new(base)?;
    let mut script = base.clone();
    let mut facts: Vec<(Ref, Judgment)> = ctx.hypotheses();
    let mut bad = false;
    for _ in 0..depth {
        for _ in 0..ATTEMPTS {
            let Some((rule, refs, stated)) = candidate(rng, &facts) else { continue };
            let premises: Vec<&Judgment> = refs.iter().map(|&k| &facts[k].1).collect();
            let Ok(derived) = apply(&ctx, &rule, &premises, &stated) else { continue };
            if derived.lhs.len() > MAX_WORD || derived.rhs.len() > MAX_WORD {
                continue;
            }
            bad |= contradicts(&facts, &derived);
            let refs = refs.iter().map(|&k| facts[k].0.clone()).collect();
            script.steps.push(Step { rule, refs, conclusion: derived.to_text() });
            facts.push((Ref::Step(script.steps.len() - 1), derived));
            break;
        }
    }
    Ok((script, bad))
}

/// `derivations` random derivations of `depth` steps each, replayed through
/// the checker. Deterministic for a fixed seed.
pub fn soundness_fuzz(derivations: usize, depth: usize, seed: u64) -> Result<FuzzReport> {
    let base = positivity_script();
    let chunks = derivations.div_ceil(CHUNK);
    let per_chunk: Vec<Result<(Vec<ProofScript>, Vec<String>, usize)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(c as u64));
            let count = CHUNK.min(derivations - c * CHUNK);
            let mut bad = Vec::new();
            let mut rules = Vec::new();
            let mut failures = 0;
            for _ in 0..count {
                let (script, hit) = derivation(&mut rng, &base, depth)?;
                if check_script(&script)? != CheckOutcome::Verified {
                    failures += 1;
                }
                rules.extend(script.steps.iter().map(|s| s.rule.name().to_string()));
                if hit {
                    bad.push(script);
                }
            }
            Ok((bad, rules, failures))
        })
        .collect();
    let mut report = FuzzReport {
        derivations,
        depth,
        steps: 0,
        rule_counts: Vec::new(),
        contradictions: Vec::new(),
        replay_failures: 0,
    };
    let mut counts = std::collections::BTreeMap::<String, usize>::new();
    for chunk in per_chunk {
        let (bad, rules, failures) = chunk?;
        report.contradictions.extend(bad);
        report.steps += rules.len();
        report.replay_failures += failures;
        for r in rules {
            *counts.entry(r).or_default() += 1;
        }
    }
    report.rule_counts = counts.into_iter().collect();
    Ok(report)
}
