use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{EqualityHyp, Goal, Judgment, Justification, Kind, ProofScript, Ref, Rel, Rule, Side, Step};
use crate::error::{Error, Result};
use crate::oracle::replay::replay_certificate;
use crate::word::{Alphabet, GroupWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckOutcome {
    Verified,
    /// `step == steps.len()` means every step checked but a goal is missing.
    Rejected { step: usize, reason: String },
}

impl CheckOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, CheckOutcome::Verified)
    }
}

type RuleResult = std::result::Result<Judgment, String>;

pub(crate) fn left_mul(j: &Judgment, w: &GroupWord) -> Judgment {
    Judgment::new(j.kind, j.rel, w * &j.lhs, w * &j.rhs)
}

pub(crate) fn right_mul(j: &Judgment, w: &GroupWord) -> RuleResult {
    if j.kind != Kind::Global {
        return Err("right multiplication needs a global judgment".into());
    }
    Ok(Judgment::new(j.kind, j.rel, &j.lhs * w, &j.rhs * w))
}

/// Follows the chain from `start`; `=` links may be traversed backwards.
pub(crate) fn trans(premises: &[&Judgment], start: &GroupWord) -> RuleResult {
    let first = premises.first().ok_or("Trans needs premises")?;
    let kind = first.kind;
    let mut current = start.clone();
    let mut rel = Rel::Eq;
    for (i, p) in premises.iter().enumerate() {
        if p.kind != kind {
            return Err(format!("premise {i} has a different kind"));
        }
        if p.lhs == current {
            current = p.rhs.clone();
        } else if p.rel == Rel::Eq && p.rhs == current {
            current = p.lhs.clone();
        } else {
            return Err(format!("premise {i} ({p}) does not continue from {current}"));
        }
        rel = rel.chain(p.rel);
    }
    Ok(Judgment::new(kind, rel, start.clone(), current))
}

fn implies(derived: Rel, stated: Rel) -> bool {
    derived == stated || stated == Rel::Ge
}

/// Whether the stated conclusion follows from the derived one.
pub(crate) fn matches(derived: &Judgment, stated: &Judgment) -> bool {
    if derived.kind != stated.kind {
        return false;
    }
    if derived.lhs == stated.lhs && derived.rhs == stated.rhs {
        return implies(derived.rel, stated.rel);
    }
    derived.rel == Rel::Eq
        && derived.lhs == stated.rhs
        && derived.rhs == stated.lhs
        && stated.rel != Rel::Gt
}

/// Checks `P·from·S` reduces to `side` and returns `P·to·S`.
pub(crate) fn rewrite(
    side: &GroupWord,
    from: &GroupWord,
    to: &GroupWord,
    prefix: &GroupWord,
    suffix: &GroupWord,
) -> std::result::Result<GroupWord, String> {
    let before = &(prefix * from) * suffix;
    if &before != side {
        return Err(format!("{prefix} · {from} · {suffix} is not {side}"));
    }
    Ok(&(prefix * to) * suffix)
}

pub(crate) fn tr_lemma(
    premise: &Judgment,
    n: u32,
    w: &GroupWord,
    up: &GroupWord,
    down: &GroupWord,
    mirrored: bool,
) -> RuleResult {
    if premise.kind != Kind::Global {
        return Err("TrLemma needs a global premise".into());
    }
    if n == 0 {
        return Err("TrLemma needs n >= 1".into());
    }
    let wu = w * up;
    let dw = down * w;
    let forward = premise.lhs == wu && premise.rhs == dw;
    let backward = premise.lhs == dw && premise.rhs == wu;
    if !forward && !backward {
        return Err(format!("premise is not {wu} vs {dw}"));
    }
    if mirrored {
        let w1 = &(&up.invert() * w) * up;
        let w2 = &(down * w) * &down.invert();
        if w1 != w2 {
            return Err(format!("mirrored word undefined: {w1} vs {w2}"));
        }
    }
    let mut cur = premise.clone();
    for j in 1..n as i64 {
        let (a, b) = match (mirrored, forward) {
            (false, _) => (right_mul(&cur, up)?, left_mul(premise, &down.power(j))),
            (true, _) => (left_mul(&cur, up), right_mul(premise, &down.power(j))?),
        };
        cur = match (mirrored, forward) {
            (false, true) | (true, true) => trans(&[&a, &b], &a.lhs)?,
            (false, false) | (true, false) => trans(&[&b, &a], &b.lhs)?,
        };
    }
    Ok(cur)
}

pub(crate) fn power_root(premise: &Judgment, g: &GroupWord, n: u32, s: &GroupWord) -> RuleResult {
    if n == 0 || premise.rel == Rel::Eq {
        return Err("PowerRoot needs n >= 1 and a strict or weak inequality".into());
    }
    let gns = &g.power(n as i64) * s;
    let gs = g * s;
    if &premise.lhs == s && premise.rhs == gns {
        Ok(Judgment::new(premise.kind, premise.rel, s.clone(), gs))
    } else if premise.lhs == gns && &premise.rhs == s {
        Ok(Judgment::new(premise.kind, premise.rel, gs, s.clone()))
    } else {
        Err(format!("premise does not compare {s} with {gns}"))
    }
}

pub(crate) fn pos_prod(a: &Judgment, b: &Judgment) -> RuleResult {
    if a.kind != Kind::Global || b.kind != Kind::Global {
        return Err("PosProd needs global premises".into());
    }
    let rel = a.rel.chain(b.rel);
    if a.rhs.is_identity() && b.rhs.is_identity() {
        Ok(Judgment::global(rel, &a.lhs * &b.lhs, a.rhs.clone()))
    } else if a.lhs.is_identity() && b.lhs.is_identity() {
        Ok(Judgment::global(rel, a.lhs.clone(), &a.rhs * &b.rhs))
    } else {
        Err("PosProd premises must both compare with 1 on the same side".into())
    }
}

pub(crate) fn inv(p: &Judgment) -> RuleResult {
    if p.kind != Kind::Global {
        return Err("Inv needs a global premise".into());
    }
    Ok(Judgment::global(p.rel, p.rhs.invert(), p.lhs.invert()))
}

pub(crate) fn inst(p: &Judgment, point: &GroupWord) -> RuleResult {
    if p.kind != Kind::Global {
        return Err("Inst needs a global premise".into());
    }
    Ok(Judgment::pointwise(p.rel, &p.lhs * point, &p.rhs * point))
}

pub(crate) struct Context<'a> {
    alphabet: Alphabet,
    hyps: HashMap<&'a str, Judgment>,
    equalities: HashMap<&'a str, (GroupWord, GroupWord)>,
}

fn resolve_equality(script: &ProofScript, eq: &EqualityHyp, alphabet: &Alphabet) -> Result<(GroupWord, GroupWord)> {
    let lhs = alphabet.parse(&eq.lhs)?;
    let rhs = alphabet.parse(&eq.rhs)?;
    match &eq.justification {
        Justification::Free => {
            if lhs != rhs {
                return Err(Error::Consistency(format!(
                    "equality {} is not free: {lhs} vs {rhs}",
                    eq.name
                )));
            }
        }
        Justification::Axiom { .. } => {}
        Justification::Certified { digest } => {
            let unresolved = |why: &str| Error::UnresolvedCertificate(format!("{}: {why}", eq.name));
            let cert = script
                .certificates
                .iter()
                .find(|c| &c.digest() == digest)
                .ok_or_else(|| unresolved("no certificate with that digest"))?;
            let relator = script
                .relator
                .as_deref()
                .ok_or_else(|| unresolved("script has no relator"))?;
            replay_certificate(cert, relator)?;
            let cl = alphabet.parse(&cert.lhs)?;
            let cr = alphabet.parse(&cert.rhs)?;
            if !((cl == lhs && cr == rhs) || (cl == rhs && cr == lhs)) {
                return Err(unresolved("certificate proves a different equality"));
            }
        }
    }
    Ok((lhs, rhs))
}

/// Checks every step in order and then the goals.
///
/// Errors are reserved for scripts that cannot be read: unknown generators,
/// dangling references, unresolvable certificates.
impl<'a> Context<'a> {
    pub(crate) fn hypotheses(&self) -> Vec<(Ref, Judgment)> {
        let mut out: Vec<_> = self
            .hyps
            .iter()
            .map(|(name, j)| (Ref::Hyp(name.to_string()), j.clone()))
            .collect();
        out.sort_by(|a, b| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)));
        out
    }

    pub(crate) fn new(script: &'a ProofScript) -> Result<Self> {
        let alphabet = Alphabet::new(script.alphabet.iter().cloned())?;
        let mut ctx = Context {
            alphabet: alphabet.clone(),
            hyps: HashMap::new(),
            equalities: HashMap::new(),
        };
        for h in &script.hypotheses {
            ctx.hyps.insert(&h.name, h.judgment.parse(&alphabet)?);
        }
        for e in &script.equalities {
            let pair = resolve_equality(script, e, &alphabet)?;
            ctx.equalities.insert(&e.name, pair);
        }
        Ok(ctx)
    }
}

pub fn check_script(script: &ProofScript) -> Result<CheckOutcome> {
    let ctx = Context::new(script)?;
    let alphabet = ctx.alphabet.clone();
    let mut proved: Vec<Judgment> = Vec::with_capacity(script.steps.len());
    for (i, step) in script.steps.iter().enumerate() {
        let stated = step.conclusion.parse(&alphabet)?;
        let mut premises = Vec::with_capacity(step.refs.len());
        for r in &step.refs {
            let j = match r {
                Ref::Hyp(name) => ctx
                    .hyps
                    .get(name.as_str())
                    .ok_or_else(|| Error::Parse(format!("step {i}: unknown hypothesis {name}")))?,
                Ref::Step(k) if *k < i => &proved[*k],
                Ref::Step(k) => {
                    return Err(Error::Parse(format!("step {i}: reference to step {k}")))
                }
            };
            premises.push(j);
        }
        let derived = match apply(&ctx, &step.rule, &premises, &stated) {
            Ok(d) => d,
            Err(reason) => {
                return Ok(CheckOutcome::Rejected {
                    step: i,
                    reason: format!("{}: {reason}", step.rule.name()),
                })
            }
        };
        if !matches(&derived, &stated) {
            return Ok(CheckOutcome::Rejected {
                step: i,
                reason: format!(
                    "{}: derives {derived}, not {stated}",
                    step.rule.name()
                ),
            });
        }
        proved.push(stated);
    }
    for goal in &script.goals {
        let reached = match goal {
            Goal::Contradiction => proved.iter().any(Judgment::is_contradiction),
            Goal::Judgment(t) => {
                let g = t.parse(&alphabet)?;
                proved.iter().any(|p| matches(p, &g))
            }
        };
        if !reached {
            let what = match goal {
                Goal::Contradiction => "contradiction".to_string(),
                Goal::Judgment(t) => t.parse(&alphabet)?.to_string(),
            };
            return Ok(CheckOutcome::Rejected {
                step: script.steps.len(),
                reason: format!("goal not reached: {what}"),
            });
        }
    }
    Ok(CheckOutcome::Verified)
}

/// What `step` derives when appended to `script`, taking the stated
/// conclusions of the existing steps as proved. Only the kind and left side
/// of `step.conclusion` are consulted (by `Refl` and `Trans`).
pub fn derive_step(script: &ProofScript, step: &Step) -> Result<std::result::Result<Judgment, String>> {
    let ctx = Context::new(script)?;
    let alphabet = ctx.alphabet.clone();
    let proved = script
        .steps
        .iter()
        .map(|s| s.conclusion.parse(&alphabet))
        .collect::<Result<Vec<_>>>()?;
    let mut premises = Vec::with_capacity(step.refs.len());
    for r in &step.refs {
        let j = match r {
            Ref::Hyp(name) => ctx.hyps.get(name.as_str()),
            Ref::Step(k) => proved.get(*k),
        };
        match j {
            Some(j) => premises.push(j),
            None => return Ok(Err(format!("unknown reference {r:?}"))),
        }
    }
    let stated = step.conclusion.parse(&alphabet)?;
    Ok(apply(&ctx, &step.rule, &premises, &stated))
}

fn arity(rule: &Rule, n: usize) -> std::result::Result<(), String> {
    let ok = match rule {
        Rule::Hyp { .. } | Rule::Refl { .. } => n == 0,
        Rule::Trans => n >= 1,
        Rule::PosProd => n == 2,
        _ => n == 1,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("wrong number of premises ({n})"))
    }
}

pub(crate) fn apply(ctx: &Context<'_>, rule: &Rule, premises: &[&Judgment], stated: &Judgment) -> RuleResult {
    arity(rule, premises.len())?;
    let word = |t: &str| ctx.alphabet.parse(t).map_err(|e| e.to_string());
    match rule {
        Rule::Hyp { name } => ctx
            .hyps
            .get(name.as_str())
            .cloned()
            .ok_or_else(|| format!("unknown hypothesis {name}")),
        Rule::Refl { word: w } => {
            let w = word(w)?;
            Ok(Judgment::new(stated.kind, Rel::Eq, w.clone(), w))
        }
        Rule::LeftMul { word: w } => Ok(left_mul(premises[0], &word(w)?)),
        Rule::LeftCancel { word: w } => Ok(left_mul(premises[0], &word(w)?.invert())),
        Rule::RightMul { word: w } => right_mul(premises[0], &word(w)?),
        Rule::RightCancel { word: w } => right_mul(premises[0], &word(w)?.invert()),
        Rule::Trans => trans(premises, &stated.lhs),
        Rule::RewriteEq {
            equality,
            side,
            reverse,
            prefix,
            suffix,
        } => {
            let (a, b) = ctx
                .equalities
                .get(equality.as_str())
                .ok_or_else(|| format!("unknown equality {equality}"))?;
            let (from, to) = if *reverse { (b, a) } else { (a, b) };
            let p = premises[0];
            let (prefix, suffix) = (word(prefix)?, word(suffix)?);
            let mut out = p.clone();
            match side {
                Side::Lhs => out.lhs = rewrite(&p.lhs, from, to, &prefix, &suffix)?,
                Side::Rhs => out.rhs = rewrite(&p.rhs, from, to, &prefix, &suffix)?,
            }
            Ok(out)
        }
        Rule::Inst { point } => inst(premises[0], &word(point)?),
        Rule::Inv => inv(premises[0]),
        Rule::PosProd => pos_prod(premises[0], premises[1]),
        Rule::TrLemma {
            n,
            w,
            up,
            down,
            mirrored,
        } => tr_lemma(premises[0], *n, &word(w)?, &word(up)?, &word(down)?, *mirrored),
        Rule::PowerRoot { g, n, s } => power_root(premises[0], &word(g)?, *n, &word(s)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Hypothesis, JudgmentText, Step, SCHEMA_VERSION};

    fn jt(kind: Kind, rel: Rel, lhs: &str, rhs: &str) -> JudgmentText {
        JudgmentText {
            kind,
            rel,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    fn script(steps: Vec<Step>, goal: JudgmentText) -> ProofScript {
        ProofScript {
            schema_version: SCHEMA_VERSION,
            title: "test".into(),
            alphabet: vec!["x".into(), "y".into()],
            relator: None,
            hypotheses: vec![Hypothesis {
                name: "x_pos".into(),
                judgment: jt(Kind::Global, Rel::Gt, "x", "1"),
            }],
            equalities: vec![],
            steps,
            goals: vec![Goal::Judgment(goal)],
            certificates: vec![],
        }
    }

    #[test]
    fn one_rule_script() {
        let step = Step {
            rule: Rule::LeftMul { word: "y".into() },
            refs: vec![Ref::Hyp("x_pos".into())],
            conclusion: jt(Kind::Global, Rel::Gt, "y*x", "y"),
        };
        let s = script(vec![step.clone()], jt(Kind::Global, Rel::Gt, "y*x", "y"));
        assert_eq!(check_script(&s).unwrap(), CheckOutcome::Verified);

        let mut bad = step;
        bad.conclusion = jt(Kind::Global, Rel::Gt, "y*x", "x");
        let s = script(vec![bad], jt(Kind::Global, Rel::Gt, "y*x", "x"));
        assert!(matches!(
            check_script(&s).unwrap(),
            CheckOutcome::Rejected { step: 0, .. }
        ));
    }

    #[test]
    fn right_mul_is_global_only() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let j = Judgment::pointwise(Rel::Gt, a.parse("x").unwrap(), a.identity());
        assert!(right_mul(&j, &a.parse("y").unwrap()).is_err());
    }

    #[test]
    fn trans_chains_and_reverses_equalities() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let w = |s: &str| a.parse(s).unwrap();
        let p1 = Judgment::global(Rel::Eq, w("y"), w("x"));
        let p2 = Judgment::global(Rel::Gt, w("y"), w("1"));
        let d = trans(&[&p1, &p2], &w("x")).unwrap();
        assert_eq!(d, Judgment::global(Rel::Gt, w("x"), w("1")));
        let p3 = Judgment::global(Rel::Gt, w("x"), w("y"));
        assert!(trans(&[&p3, &p3], &w("x")).is_err());
    }

    #[test]
    fn tr_lemma_matches_explicit_chain() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let w = |s: &str| a.parse(s).unwrap();
        let (ww, up, down) = (w("y*x"), w("y"), w("x"));
        let prem = Judgment::global(Rel::Gt, &ww * &up, &down * &ww);
        for n in 1..=10u32 {
            let got = tr_lemma(&prem, n, &ww, &up, &down, false).unwrap();
            let n = n as i64;
            assert_eq!(got, Judgment::global(Rel::Gt, &ww * &up.power(n), &down.power(n) * &ww));
            let got = tr_lemma(&prem, n as u32, &ww, &up, &down, true).unwrap();
            let wm = w("x*y");
            assert_eq!(got, Judgment::global(Rel::Gt, &up.power(n) * &wm, &wm * &down.power(n)));
        }
    }

    #[test]
    fn power_root_orientations() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let w = |s: &str| a.parse(s).unwrap();
        let (g, s) = (w("y*x"), w("y^2"));
        let p = Judgment::pointwise(Rel::Gt, s.clone(), &g.power(3) * &s);
        assert_eq!(
            power_root(&p, &g, 3, &s).unwrap(),
            Judgment::pointwise(Rel::Gt, s.clone(), &g * &s)
        );
        let q = Judgment::pointwise(Rel::Ge, &g.power(2) * &s, s.clone());
        assert_eq!(
            power_root(&q, &g, 2, &s).unwrap(),
            Judgment::pointwise(Rel::Ge, &g * &s, s.clone())
        );
        assert!(power_root(&q, &g, 3, &s).is_err());
    }
}
