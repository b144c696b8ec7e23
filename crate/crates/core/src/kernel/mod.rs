//! A small deduction kernel for inequalities between words acting on a line.
//!
//! A `Global` judgment `u > v` means `u·α > v·α` for every point `α`; a
//! `Pointwise` judgment compares two point terms `u·α₀` and `v·α₀` at one
//! distinguished point. Words act on the left by order-preserving
//! homeomorphisms, which gives the rules:
//!
//! * `LeftMul(w)`: `u R v ⟹ wu R wv`, both kinds (`w` is increasing).
//! * `RightMul(w)`: `u R v ⟹ uw R vw`, global only (substitute `α := wα`).
//! * `LeftCancel(w)`, `RightCancel(w)`: the same with `w⁻¹`.
//! * `Trans`: chains `a₁ R₁ a₂ R₂ … aₙ`; `>` absorbs `≥` and `=`, and `=` links
//!   may be used in either direction.
//! * `RewriteEq`: replaces `P·A·S` by `P·B·S` in one side, for a hypothesis
//!   `A = B` that holds in the group (free, certified by a replayable relator
//!   insertion certificate, or a stated axiom).
//! * `Inst(w)`: a global `u R v` gives the pointwise `uw R vw`.
//! * `Inv`: global `u R v ⟹ v⁻¹ R u⁻¹` (left-multiply by `u⁻¹`, right-multiply
//!   by `v⁻¹`).
//! * `PosProd`: global `u R 1`, `v R 1` ⟹ `uv R 1` (or all three reversed).
//! * `TrLemma(n, w, up, down)`: global `w·up R down·w ⟹ w·upⁿ R downⁿ·w`, or
//!   the mirrored `upⁿ·w′ R w′·downⁿ` with `w′ = up⁻¹·w·up = down·w·down⁻¹`.
//!   Each instance is checked by unrolling the induction into `LeftMul`,
//!   `RightMul` and `Trans` steps.
//! * `PowerRoot(g, n, s)`: `s R gⁿs ⟹ s R gs` (or both reversed), for `R` one
//!   of `>`/`≥`: if `gβ` were on the other side of `β`, so would every `gⁿβ`.
//!
//! Words are kept freely reduced, so free equality is syntactic. Statements
//! universally quantified over `n` are only checked up to the `n` a script
//! asks for.

mod builder;
mod check;
pub mod final_chain;
pub mod fixedpoint;
pub mod fuzz;
pub mod key;
pub mod lemma;
pub mod transform;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::oracle::EqualityCertificate;
use crate::word::{Alphabet, GroupWord};

pub use check::{check_script, derive_step, CheckOutcome};
pub use final_chain::twist_exponent;
pub use final_chain::gen_final_contradiction;
pub use fuzz::{soundness_fuzz, FuzzReport};
pub use fixedpoint::{gen_prop_fixedpoint, gen_prop_fixedpoint_family};
pub use key::{gen_prop_key0, gen_prop_key0_family};
pub use lemma::gen_lemma_ineq;
pub use transform::{mirror_order, mutations, Mutation};

pub const SCHEMA_VERSION: u32 = 1;

/// Bound on `n` used when a statement holds for all `n ≥ 1`.
pub const DEFAULT_N_MAX: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Global,
    Pointwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Rel {
    /// Relation of a chain `a R₁ b R₂ c`.
    pub fn chain(self, other: Rel) -> Rel {
        match (self, other) {
            (Rel::Gt, _) | (_, Rel::Gt) => Rel::Gt,
            (Rel::Ge, _) | (_, Rel::Ge) => Rel::Ge,
            _ => Rel::Eq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub kind: Kind,
    pub rel: Rel,
    pub lhs: GroupWord,
    pub rhs: GroupWord,
}

impl Judgment {
    pub fn new(kind: Kind, rel: Rel, lhs: GroupWord, rhs: GroupWord) -> Self {
        Judgment { kind, rel, lhs, rhs }
    }

    pub fn global(rel: Rel, lhs: GroupWord, rhs: GroupWord) -> Self {
        Judgment::new(Kind::Global, rel, lhs, rhs)
    }

    pub fn pointwise(rel: Rel, lhs: GroupWord, rhs: GroupWord) -> Self {
        Judgment::new(Kind::Pointwise, rel, lhs, rhs)
    }

    /// `t > t`.
    pub fn is_contradiction(&self) -> bool {
        self.rel == Rel::Gt && self.lhs == self.rhs
    }

    pub fn to_text(&self) -> JudgmentText {
        JudgmentText {
            kind: self.kind,
            rel: self.rel,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::Global => "global",
            Kind::Pointwise => "at a0",
        };
        write!(f, "{} {} {} ({kind})", self.lhs, self.rel.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgmentText {
    pub kind: Kind,
    pub rel: Rel,
    pub lhs: String,
    pub rhs: String,
}

impl JudgmentText {
    pub fn parse(&self, alphabet: &Alphabet) -> Result<Judgment> {
        Ok(Judgment::new(
            self.kind,
            self.rel,
            alphabet.parse(&self.lhs)?,
            alphabet.parse(&self.rhs)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "params")]
pub enum Rule {
    Hyp { name: String },
    Refl { word: String },
    LeftMul { word: String },
    LeftCancel { word: String },
    RightMul { word: String },
    RightCancel { word: String },
    Trans,
    RewriteEq {
        equality: String,
        side: Side,
        /// Rewrite `rhs → lhs` of the equality instead of `lhs → rhs`.
        reverse: bool,
        prefix: String,
        suffix: String,
    },
    Inst { point: String },
    Inv,
    PosProd,
    TrLemma {
        n: u32,
        w: String,
        up: String,
        down: String,
        mirrored: bool,
    },
    PowerRoot { g: String, n: u32, s: String },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Hyp { .. } => "Hyp",
            Rule::Refl { .. } => "Refl",
            Rule::LeftMul { .. } => "LeftMul",
            Rule::LeftCancel { .. } => "LeftCancel",
            Rule::RightMul { .. } => "RightMul",
            Rule::RightCancel { .. } => "RightCancel",
            Rule::Trans => "Trans",
            Rule::RewriteEq { .. } => "RewriteEq",
            Rule::Inst { .. } => "Inst",
            Rule::Inv => "Inv",
            Rule::PosProd => "PosProd",
            Rule::TrLemma { .. } => "TrLemma",
            Rule::PowerRoot { .. } => "PowerRoot",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ref {
    Hyp(String),
    Step(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub rule: Rule,
    pub refs: Vec<Ref>,
    pub conclusion: JudgmentText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub judgment: JudgmentText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Justification {
    /// Both sides reduce to the same word.
    Free,
    /// A relator-insertion certificate in the script's bundle.
    Certified { digest: String },
    /// Taken as given, e.g. the surgery relations.
    Axiom { note: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityHyp {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Goal {
    Judgment(JudgmentText),
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofScript {
    pub schema_version: u32,
    pub title: String,
    pub alphabet: Vec<String>,
    /// Defining relator `lhs·rhs⁻¹` that certificates are replayed against.
    pub relator: Option<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub equalities: Vec<EqualityHyp>,
    pub steps: Vec<Step>,
    pub goals: Vec<Goal>,
    pub certificates: Vec<EqualityCertificate>,
}

impl ProofScript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("script serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}
