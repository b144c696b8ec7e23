//! From `x > 1` and the defining relation: the power inequality, the two
//! twisted families `w·yⁿ R xⁿ·w`, `yⁿ·w′ R w′·xⁿ`, and `y > 1`.
//!
//! With `l = 1` the relation itself is the power comparison, so the first
//! inequality holds only as an equality; when additionally `p = 2` the base
//! comparison and both families are equalities too. Goals carry the relation
//! the derivation actually reaches.

use super::builder::Builder;
use super::{Judgment, Kind, ProofScript, Ref, Rel, Side};
use crate::error::{Error, Result};
use crate::knot::{KnotSpec, Sign};
use crate::oracle::SearchBudget;
use crate::presentation::{presentation_xy, xy_alphabet, Presentation, XyWords};
use crate::word::GroupWord;

/// Name of the relation equality in generated scripts.
pub(crate) const RELATION: &str = "relation";

pub(crate) struct LemmaFacts {
    /// `A^{p-l} R Q` (minus) or `(xy)^{k(p-l)+1} R x·a^{p-l}` (plus).
    pub power: Ref,
    /// `w·y R x·w`.
    pub base: Ref,
    pub y_pos: Ref,
    /// `w` of the twisted families: `(yx)^{k-1}` or `(yx)^k`.
    pub w: GroupWord,
}

impl LemmaFacts {
    /// `w·yⁿ R xⁿ·w`, or the mirrored `yⁿ·w′ R w′·xⁿ`.
    pub fn twisted(&self, b: &mut Builder, n: u32, mirrored: bool) -> Ref {
        let (x, y) = (b.parse("x"), b.parse("y"));
        b.tr_lemma(&self.base, n, &self.w, &y, &x, mirrored)
    }
}

/// Relation of the power inequality and of the twisted families.
pub(crate) fn lemma_relations(spec: &KnotSpec) -> (Rel, Rel) {
    let power = if spec.l >= 2 { Rel::Gt } else { Rel::Eq };
    let twisted = if spec.l == 1 && spec.p == 2 { Rel::Eq } else { Rel::Gt };
    (power, twisted)
}

/// Adds the relation as a certified equality and derives the lemma's facts
/// from `x_pos: x > 1`.
pub(crate) fn lemma_steps(b: &mut Builder, spec: &KnotSpec, x_pos: &Ref) -> Result<LemmaFacts> {
    let pres = presentation_xy(spec)?;
    b.certified(
        RELATION,
        &pres.relator_lhs,
        &pres.relator_rhs,
        &pres,
        &SearchBudget::default(),
    )?;
    let lhs = b.word(&pres.relator_lhs);
    let rhs = b.word(&pres.relator_rhs);
    let one = b.one();
    let refl = b.refl(Kind::Global, &lhs);
    let rel_eq = b.rewrite(&refl, RELATION, Side::Rhs, false, &one, &one);
    match spec.sign {
        Sign::Minus => Ok(minus_steps(b, spec, &pres, x_pos, &rel_eq)),
        Sign::Plus => Ok(plus_steps(b, spec, &pres, x_pos, &rel_eq, &rhs)),
    }
}

fn minus_steps(b: &mut Builder, spec: &KnotSpec, pres: &Presentation, x_pos: &Ref, rel_eq: &Ref) -> LemmaFacts {
    let KnotSpec { p, k, m, l, .. } = *spec;
    let x = b.parse("x");
    let y = b.parse("y");
    let yx = &y * &x;
    let w = yx.power(k - 1);
    let zm = b.word(&pres.derived["z"]).power(m);
    let q = &x * &yx.power(k * (p - l) - 1);
    let a = &w * &y;
    let d = &zm * &a;
    // z^m (yx)^k > z^m A
    let c_gt_d = b.left_mul(x_pos, &(&zm * &a));
    let power = if l >= 2 {
        let pw = b.powers(&c_gt_d, l - 1);
        let qpw = b.left_mul(&pw, &q);
        let t = b.trans(&[rel_eq.clone(), qpw]);
        b.right_cancel(&t, &d.power(l - 1))
    } else {
        rel_eq.clone()
    };
    let j = p - l - 1;
    let base = if j >= 1 {
        let yk_gt_a = b.left_mul(x_pos, &a);
        let pw = b.powers(&yk_gt_a, j);
        let f2 = b.left_mul(&pw, &(&x * &w));
        let t = b.trans(&[power.clone(), f2]);
        b.right_cancel(&t, &a.power(j))
    } else {
        power.clone()
    };
    let y_pos = y_positive(b, &base, x_pos, &w);
    LemmaFacts { power, base, y_pos, w }
}

fn plus_steps(
    b: &mut Builder,
    spec: &KnotSpec,
    pres: &Presentation,
    x_pos: &Ref,
    rel_eq: &Ref,
    rhs: &GroupWord,
) -> LemmaFacts {
    let KnotSpec { p, k, m, l, .. } = *spec;
    let x = b.parse("x");
    let y = b.parse("y");
    let xy = &x * &y;
    let xyk = xy.power(k);
    let a = &xyk * &x;
    let zm = b.word(&pres.derived["z"]).power(m);
    let d = &zm * &xyk;
    let big_x = &x * &a.power(p - l);
    // x z^m (xy)^k > z^m (xy)^k
    let c_gt_d = b.right_mul(x_pos, &d);
    let power = if l >= 2 {
        let pw = b.powers(&c_gt_d, l - 1);
        let t1 = b.right_mul(&pw, &big_x);
        let t = b.trans_from(&[rel_eq.clone(), t1], rhs);
        b.left_cancel(&t, &d.power(l - 1))
    } else {
        b.trans_from(&[rel_eq.clone()], rhs)
    };
    let j = p - l - 1;
    let base0 = if j >= 1 {
        let a_gt = b.left_mul(x_pos, &xyk);
        let pw = b.powers(&a_gt, j);
        let f2 = b.left_mul(&pw, &(&x * &a));
        let t = b.trans(&[power.clone(), f2]);
        b.right_cancel(&t, &xyk.power(j))
    } else {
        power.clone()
    };
    let base = b.left_cancel(&base0, &x);
    let w = (&y * &x).power(k);
    let y_pos = y_positive(b, &base, x_pos, &w);
    LemmaFacts { power, base, y_pos, w }
}

/// `w·y R x·w > w` gives `y > 1`.
fn y_positive(b: &mut Builder, base: &Ref, x_pos: &Ref, w: &GroupWord) -> Ref {
    let xw = b.right_mul(x_pos, w);
    let t = b.trans(&[base.clone(), xw]);
    b.left_cancel(&t, w)
}

/// The lemma's statements written out from their closed forms.
pub(crate) fn lemma_goals(spec: &KnotSpec, n_max: u32) -> Vec<Judgment> {
    let KnotSpec { p, k, l, .. } = *spec;
    let xw = XyWords::new();
    let (x, y) = (&xw.x, &xw.y);
    let (power_rel, twisted_rel) = lemma_relations(spec);
    let mut goals = vec![Judgment::global(Rel::Gt, y.clone(), xw.one())];
    let (j, w) = match spec.sign {
        Sign::Minus => {
            let a = &xw.yx.power(k - 1) * y;
            let q = x * &xw.yx.power(k * (p - l) - 1);
            goals.push(Judgment::global(power_rel, a.power(p - l), q));
            (k - 1, xw.yx.power(k - 1))
        }
        Sign::Plus => {
            let lhs = xw.xy.power(k * (p - l) + 1);
            let rhs = x * &(&xw.xy.power(k) * x).power(p - l);
            goals.push(Judgment::global(power_rel, lhs, rhs));
            (k, xw.yx.power(k))
        }
    };
    let w_mirror = xw.xy.power(j);
    for n in 1..=n_max as i64 {
        goals.push(Judgment::global(twisted_rel, &w * &y.power(n), &x.power(n) * &w));
        goals.push(Judgment::global(twisted_rel, &y.power(n) * &w_mirror, &w_mirror * &x.power(n)));
    }
    goals
}

pub(crate) fn x_positive(b: &mut Builder) -> Ref {
    let x = b.parse("x");
    b.hypothesis("x_pos", Judgment::global(Rel::Gt, x, b.one()))
}

/// Script deriving the inequalities from `x > 1` for `n = 1..=n_max`.
pub fn gen_lemma_ineq(spec: &KnotSpec, n_max: u32) -> Result<ProofScript> {
    spec.validate()?;
    if n_max == 0 {
        return Err(Error::InvalidSpec("n_max must be at least 1".into()));
    }
    let mut b = Builder::new(format!("inequalities for {spec}"), xy_alphabet());
    let x_pos = x_positive(&mut b);
    let facts = lemma_steps(&mut b, spec, &x_pos)?;
    for n in 1..=n_max {
        facts.twisted(&mut b, n, false);
        facts.twisted(&mut b, n, true);
    }
    for g in lemma_goals(spec, n_max) {
        b.goal(g);
    }
    Ok(b.finish())
}
