//! Incremental construction of proof scripts. Conclusions are computed with
//! the kernel's own rule functions, so a builder method that panics points at
//! a generator bug; `claim` records a conclusion verbatim for the kernel to
//! judge.

use std::collections::HashMap;

use super::check::{inv, left_mul, power_root, rewrite, right_mul, tr_lemma, trans};
use super::{
    EqualityHyp, Goal, Hypothesis, Judgment, Justification, Kind, ProofScript, Ref, Rel, Rule, Side,
    Step, SCHEMA_VERSION,
};
use crate::error::Result;
use crate::oracle::{equal_in_group, EqualityCertificate, EqualityVerdict, SearchBudget};
use crate::presentation::Presentation;
use crate::word::{Alphabet, GroupWord};

pub(crate) struct Builder {
    pub alphabet: Alphabet,
    title: String,
    relator: Option<String>,
    hypotheses: Vec<Hypothesis>,
    hyp_judgments: HashMap<String, Judgment>,
    equalities: Vec<EqualityHyp>,
    eq_words: HashMap<String, (GroupWord, GroupWord)>,
    steps: Vec<Step>,
    proved: Vec<Judgment>,
    goals: Vec<Goal>,
    certificates: Vec<EqualityCertificate>,
}

impl Builder {
    pub fn new(title: impl Into<String>, alphabet: Alphabet) -> Self {
        Builder {
            alphabet,
            title: title.into(),
            relator: None,
            hypotheses: Vec::new(),
            hyp_judgments: HashMap::new(),
            equalities: Vec::new(),
            eq_words: HashMap::new(),
            steps: Vec::new(),
            proved: Vec::new(),
            goals: Vec::new(),
            certificates: Vec::new(),
        }
    }

    /// Brings a word over another alphabet into this one by generator name.
    pub fn word(&self, w: &GroupWord) -> GroupWord {
        w.rename_into(&self.alphabet).expect("generator missing from script alphabet")
    }

    pub fn parse(&self, text: &str) -> GroupWord {
        self.alphabet.parse(text).expect("generator word")
    }

    pub fn one(&self) -> GroupWord {
        self.alphabet.identity()
    }

    pub fn judgment(&self, r: &Ref) -> &Judgment {
        match r {
            Ref::Hyp(name) => &self.hyp_judgments[name],
            Ref::Step(i) => &self.proved[*i],
        }
    }

    pub fn hypothesis(&mut self, name: &str, j: Judgment) -> Ref {
        let j = Judgment::new(j.kind, j.rel, self.word(&j.lhs), self.word(&j.rhs));
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            judgment: j.to_text(),
        });
        self.hyp_judgments.insert(name.to_string(), j);
        Ref::Hyp(name.to_string())
    }

    fn add_equality(&mut self, name: &str, lhs: &GroupWord, rhs: &GroupWord, justification: Justification) {
        let (lhs, rhs) = (self.word(lhs), self.word(rhs));
        self.equalities.push(EqualityHyp {
            name: name.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            justification,
        });
        self.eq_words.insert(name.to_string(), (lhs, rhs));
    }

    pub fn axiom(&mut self, name: &str, lhs: &GroupWord, rhs: &GroupWord, note: &str) {
        self.add_equality(name, lhs, rhs, Justification::Axiom { note: note.into() });
    }

    /// Certifies `lhs = rhs` in `pres` with the word oracle and bundles the certificate.
    pub fn certified(
        &mut self,
        name: &str,
        lhs: &GroupWord,
        rhs: &GroupWord,
        pres: &Presentation,
        budget: &SearchBudget,
    ) -> Result<()> {
        let verdict = equal_in_group(lhs, rhs, pres, budget)?;
        let EqualityVerdict::Equal(cert) = verdict else {
            return Err(crate::Error::UnresolvedCertificate(format!(
                "{name}: {lhs} = {rhs} not certified ({:?})",
                verdict.status()
            )));
        };
        let relator = pres.relator().to_string();
        match &self.relator {
            Some(r) => assert_eq!(r, &relator, "one relator per script"),
            None => self.relator = Some(relator),
        }
        let digest = cert.digest();
        if !self.certificates.iter().any(|c| c.digest() == digest) {
            self.certificates.push(cert);
        }
        self.add_equality(name, lhs, rhs, Justification::Certified { digest });
        Ok(())
    }

    pub fn claim(&mut self, rule: Rule, refs: Vec<Ref>, conclusion: Judgment) -> Ref {
        self.steps.push(Step {
            rule,
            refs,
            conclusion: conclusion.to_text(),
        });
        self.proved.push(conclusion);
        Ref::Step(self.proved.len() - 1)
    }

    fn j(&self, r: &Ref) -> Judgment {
        self.judgment(r).clone()
    }

    pub fn refl(&mut self, kind: Kind, w: &GroupWord) -> Ref {
        let c = Judgment::new(kind, Rel::Eq, w.clone(), w.clone());
        self.claim(Rule::Refl { word: w.to_string() }, vec![], c)
    }

    pub fn left_mul(&mut self, r: &Ref, w: &GroupWord) -> Ref {
        if w.is_identity() {
            return r.clone();
        }
        let c = left_mul(&self.j(r), w);
        self.claim(Rule::LeftMul { word: w.to_string() }, vec![r.clone()], c)
    }

    pub fn left_cancel(&mut self, r: &Ref, w: &GroupWord) -> Ref {
        if w.is_identity() {
            return r.clone();
        }
        let c = left_mul(&self.j(r), &w.invert());
        self.claim(Rule::LeftCancel { word: w.to_string() }, vec![r.clone()], c)
    }

    pub fn right_mul(&mut self, r: &Ref, w: &GroupWord) -> Ref {
        if w.is_identity() {
            return r.clone();
        }
        let c = right_mul(&self.j(r), w).expect("RightMul");
        self.claim(Rule::RightMul { word: w.to_string() }, vec![r.clone()], c)
    }

    pub fn right_cancel(&mut self, r: &Ref, w: &GroupWord) -> Ref {
        if w.is_identity() {
            return r.clone();
        }
        let c = right_mul(&self.j(r), &w.invert()).expect("RightCancel");
        self.claim(Rule::RightCancel { word: w.to_string() }, vec![r.clone()], c)
    }

    /// `P·(L R R')·S` for a global fact, or `P·(L R R')` for a pointwise one.
    pub fn in_context(&mut self, r: &Ref, prefix: &GroupWord, suffix: &GroupWord) -> Ref {
        let s = self.right_mul(r, suffix);
        self.left_mul(&s, prefix)
    }

    pub fn trans_from(&mut self, refs: &[Ref], start: &GroupWord) -> Ref {
        if refs.len() == 1 && &self.judgment(&refs[0]).lhs == start {
            return refs[0].clone();
        }
        let premises: Vec<Judgment> = refs.iter().map(|r| self.j(r)).collect();
        let c = trans(&premises.iter().collect::<Vec<_>>(), start).expect("Trans");
        self.claim(Rule::Trans, refs.to_vec(), c)
    }

    pub fn trans(&mut self, refs: &[Ref]) -> Ref {
        let start = self.judgment(&refs[0]).lhs.clone();
        self.trans_from(refs, &start)
    }

    pub fn rewrite(
        &mut self,
        r: &Ref,
        equality: &str,
        side: Side,
        reverse: bool,
        prefix: &GroupWord,
        suffix: &GroupWord,
    ) -> Ref {
        let (a, b) = self.eq_words[equality].clone();
        let (from, to) = if reverse { (&b, &a) } else { (&a, &b) };
        let mut c = self.j(r);
        let target = match side {
            Side::Lhs => &mut c.lhs,
            Side::Rhs => &mut c.rhs,
        };
        *target = rewrite(target, from, to, prefix, suffix).expect("RewriteEq");
        self.claim(
            Rule::RewriteEq {
                equality: equality.to_string(),
                side,
                reverse,
                prefix: prefix.to_string(),
                suffix: suffix.to_string(),
            },
            vec![r.clone()],
            c,
        )
    }

    pub fn inv(&mut self, r: &Ref) -> Ref {
        let c = inv(&self.j(r)).expect("Inv");
        self.claim(Rule::Inv, vec![r.clone()], c)
    }

    pub fn tr_lemma(
        &mut self,
        r: &Ref,
        n: u32,
        w: &GroupWord,
        up: &GroupWord,
        down: &GroupWord,
        mirrored: bool,
    ) -> Ref {
        let c = tr_lemma(&self.j(r), n, w, up, down, mirrored).expect("TrLemma");
        self.claim(
            Rule::TrLemma {
                n,
                w: w.to_string(),
                up: up.to_string(),
                down: down.to_string(),
                mirrored,
            },
            vec![r.clone()],
            c,
        )
    }

    pub fn power_root(&mut self, r: &Ref, g: &GroupWord, n: u32, s: &GroupWord) -> Ref {
        let c = power_root(&self.j(r), g, n, s).expect("PowerRoot");
        self.claim(
            Rule::PowerRoot {
                g: g.to_string(),
                n,
                s: s.to_string(),
            },
            vec![r.clone()],
            c,
        )
    }

    /// `E R F ⟹ Eⁿ R Fⁿ` for a global fact.
    pub fn powers(&mut self, r: &Ref, n: i64) -> Ref {
        assert!(n >= 1);
        let base = self.j(r);
        let mut cur = r.clone();
        for j in 1..n {
            let a = self.left_mul(&cur, &base.lhs);
            let b = self.right_mul(r, &base.rhs.power(j));
            cur = self.trans(&[a, b]);
        }
        cur
    }

    pub fn goal(&mut self, j: Judgment) {
        let j = Judgment::new(j.kind, j.rel, self.word(&j.lhs), self.word(&j.rhs));
        self.goals.push(Goal::Judgment(j.to_text()));
    }

    pub fn goal_contradiction(&mut self) {
        self.goals.push(Goal::Contradiction);
    }

    pub fn finish(self) -> ProofScript {
        ProofScript {
            schema_version: SCHEMA_VERSION,
            title: self.title,
            alphabet: self.alphabet.names().to_vec(),
            relator: self.relator,
            hypotheses: self.hypotheses,
            equalities: self.equalities,
            steps: self.steps,
            goals: self.goals,
            certificates: self.certificates,
        }
    }
}
