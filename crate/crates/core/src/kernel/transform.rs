//! Script-to-script transforms: reversing the order, and single-step
//! mutations that a sound checker has to reject.

use serde::Serialize;

use super::{Goal, JudgmentText, ProofScript, Rel, Rule};
use crate::word::{Alphabet, GroupWord};

fn swap(j: &JudgmentText) -> JudgmentText {
    if j.rel == Rel::Eq {
        return j.clone();
    }
    JudgmentText {
        lhs: j.rhs.clone(),
        rhs: j.lhs.clone(),
        ..j.clone()
    }
}

/// The same proof for the reversed order: every inequality has its sides
/// exchanged, chains run backwards and rewrites move to the other side.
/// Equalities and contradictions are unchanged.
pub fn mirror_order(script: &ProofScript) -> ProofScript {
    let mut out = script.clone();
    out.title = format!("{} (reversed order)", script.title);
    for h in &mut out.hypotheses {
        h.judgment = swap(&h.judgment);
    }
    for step in &mut out.steps {
        let strict = step.conclusion.rel != Rel::Eq;
        step.conclusion = swap(&step.conclusion);
        match &mut step.rule {
            Rule::Trans if strict => step.refs.reverse(),
            Rule::RewriteEq { side, .. } if strict => *side = side.other(),
            _ => {}
        }
    }
    for g in &mut out.goals {
        if let Goal::Judgment(j) = g {
            *j = swap(j);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Mutation {
    pub step: usize,
    pub description: String,
    pub script: ProofScript,
}

/// `w·g` for the generator of the last syllable and for another generator.
fn perturb(text: &str, alphabet: &Alphabet) -> Vec<String> {
    let Ok(w) = alphabet.parse(text) else {
        return Vec::new();
    };
    let last = w.syllables().last().map(|s| s.gen).unwrap_or(0);
    let other = (last + 1) % alphabet.len();
    let mut out = Vec::new();
    for g in [last, other] {
        let gen = GroupWord::from_letters(alphabet.clone(), &[g as i32 + 1]);
        let text2 = (&w * &gen).to_string();
        if text2 != text && !out.contains(&text2) {
            out.push(text2);
        }
    }
    out
}

fn word_params(rule: &mut Rule) -> Vec<&mut String> {
    match rule {
        Rule::Refl { word }
        | Rule::LeftMul { word }
        | Rule::LeftCancel { word }
        | Rule::RightMul { word }
        | Rule::RightCancel { word } => vec![word],
        Rule::RewriteEq { prefix, .. } => vec![prefix],
        Rule::Inst { point } => vec![point],
        Rule::TrLemma { w, .. } => vec![w],
        Rule::PowerRoot { s, .. } => vec![s],
        Rule::Hyp { .. } | Rule::Trans | Rule::Inv | Rule::PosProd => vec![],
    }
}

/// Every single-step mutation: the relation of each conclusion flipped
/// (`>`/`≥` sides exchanged, `=` made strict), one syllable added to either
/// side of each conclusion, and one syllable added to each word parameter.
pub fn mutations(script: &ProofScript) -> Vec<Mutation> {
    let Ok(alphabet) = Alphabet::new(script.alphabet.iter().cloned()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut push = |step: usize, description: String, edit: &dyn Fn(&mut ProofScript)| {
        let mut m = script.clone();
        edit(&mut m);
        if m != *script {
            out.push(Mutation {
                step,
                description,
                script: m,
            });
        }
    };
    for (i, step) in script.steps.iter().enumerate() {
        let c = &step.conclusion;
        if c.rel == Rel::Eq {
            push(i, "equality made strict".into(), &|m| m.steps[i].conclusion.rel = Rel::Gt);
        } else {
            push(i, "sides exchanged".into(), &|m| {
                let c = &mut m.steps[i].conclusion;
                std::mem::swap(&mut c.lhs, &mut c.rhs);
            });
        }
        for text in perturb(&c.lhs, &alphabet) {
            push(i, format!("lhs -> {text}"), &|m| m.steps[i].conclusion.lhs = text.clone());
        }
        for text in perturb(&c.rhs, &alphabet) {
            push(i, format!("rhs -> {text}"), &|m| m.steps[i].conclusion.rhs = text.clone());
        }
        let mut rule = step.rule.clone();
        let params: Vec<String> = word_params(&mut rule).into_iter().map(|s| s.clone()).collect();
        for (k, param) in params.iter().enumerate() {
            for text in perturb(param, &alphabet) {
                push(i, format!("{} parameter -> {text}", step.rule.name()), &|m| {
                    *word_params(&mut m.steps[i].rule)[k] = text.clone();
                });
            }
        }
    }
    out
}
