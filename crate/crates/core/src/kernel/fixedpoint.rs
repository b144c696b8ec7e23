//! Refutes a common fixed point of `x` and `λ′` at which `y` moves the point
//! up. The branch where `y` moves it down is the order mirror of this one.

use super::builder::Builder;
use super::{Judgment, Kind, ProofScript, Ref, Rel, Side};
use crate::error::{Error, Result};
use crate::knot::{is_lspace, KnotSpec, Sign};
use crate::oracle::SearchBudget;
use crate::presentation::{closed_forms_for, families, presentation_xy, xy_alphabet, Family, XyWords};
use crate::word::GroupWord;

/// Pointwise facts `x = 1`, `x⁻¹ = 1` and `y > 1` at the fixed point.
struct Fixed {
    x_fix: Ref,
    x_inv_fix: Ref,
    y_pos: Ref,
}

impl Fixed {
    /// `c·S R 1` from `S R 1`, one letter `c ∈ {x, x⁻¹, y}` at a time.
    fn prepend(&self, b: &mut Builder, fact: &Ref, prefix: &GroupWord) -> Result<Ref> {
        let mut cur = fact.clone();
        let letters = prefix.letters();
        for &c in letters.iter().rev() {
            let letter = GroupWord::from_letters(b.alphabet.clone(), &[c]);
            let lifted = b.left_mul(&cur, &letter);
            let step = match (b.alphabet.name(c.unsigned_abs() as usize - 1), c > 0) {
                ("x", true) => self.x_fix.clone(),
                ("x", false) => self.x_inv_fix.clone(),
                ("y", true) => self.y_pos.clone(),
                _ => {
                    return Err(Error::Consistency(format!(
                        "{prefix} has a negative power of y"
                    )))
                }
            };
            let start = &letter * &b.judgment(&cur).lhs;
            cur = b.trans_from(&[lifted, step], &start);
        }
        Ok(cur)
    }

    /// `W > 1` for a word with only positive powers of `y`.
    fn positive(&self, b: &mut Builder, w: &GroupWord) -> Result<Ref> {
        let one = b.one();
        let refl = b.refl(Kind::Pointwise, &one);
        self.prepend(b, &refl, w)
    }
}

/// Script for the first family the spec belongs to; specs outside the three
/// families (torus knots) have no closed-form longitude.
pub fn gen_prop_fixedpoint(spec: &KnotSpec) -> Result<ProofScript> {
    let family = *families(spec)
        .first()
        .ok_or_else(|| Error::NoClosedForm(spec.to_string()))?;
    gen_prop_fixedpoint_family(spec, family)
}

pub fn gen_prop_fixedpoint_family(spec: &KnotSpec, family: Family) -> Result<ProofScript> {
    spec.validate()?;
    if is_lspace(spec).is_none() {
        return Err(Error::NotLSpace(spec.to_string()));
    }
    let forms = closed_forms_for(spec, family)?;
    let pres = presentation_xy(spec)?;
    let lambda = pres.derived["lambda_prime"].clone();
    let mut b = Builder::new(format!("no common fixed point for {spec} ({})", family.name()), xy_alphabet());
    let one = b.one();
    let x = b.parse("x");
    let y = b.parse("y");
    let x_fix = b.hypothesis("x_fixed", Judgment::pointwise(Rel::Eq, x.clone(), one.clone()));
    let y_pos = b.hypothesis("y_moves_up", Judgment::pointwise(Rel::Gt, y, one.clone()));
    let lam_fix = b.hypothesis("longitude_fixed", Judgment::pointwise(Rel::Eq, lambda.clone(), one.clone()));
    let budget = SearchBudget::default();
    for f in &forms {
        b.certified(&format!("closed_form{}", f.form), &lambda, &f.word, &pres, &budget)?;
    }
    let x_inv_fix = b.left_mul(&x_fix, &x.invert());
    let fixed = Fixed { x_fix, x_inv_fix, y_pos };
    let form0 = &forms[0].word;
    let form0_fixed = b.rewrite(&lam_fix, "closed_form0", Side::Lhs, false, &one, &one);

    let form0_pos = match (family, spec.sign) {
        (Family::PMinusOne | Family::PMinusTwo, _) => fixed.positive(&mut b, form0)?,
        (Family::Two, sign) => {
            let xw = XyWords::new();
            let KnotSpec { p, k, .. } = *spec;
            // u and the element g with g·u = u·x⁻¹·u⁻¹ at the point
            let (u, g, root) = match sign {
                Sign::Minus => {
                    let a = &xw.yx.power(k - 1) * &xw.y;
                    (a.power(p - 1), xw.yx.clone(), k)
                }
                Sign::Plus => (xw.xy.power((p - 1) * k + 1), &xw.xy.power(k) * &xw.x, 1),
            };
            let (u, g) = (b.word(&u), b.word(&g));
            let u_pos = fixed.positive(&mut b, &u)?;
            let form1_fixed = b.rewrite(&lam_fix, "closed_form1", Side::Lhs, false, &one, &one);
            // x·W·x = 1 ⟹ W = 1
            let w_word = &(&x.invert() * &forms[1].word.clone()) * &x.invert();
            let w_word = b.word(&w_word);
            let a = b.left_mul(&form1_fixed, &x.invert());
            let c = b.left_mul(&fixed.x_fix, &w_word);
            let w_fixed = b.trans_from(&[c, a, fixed.x_inv_fix.clone()], &w_word);
            // g^root·u = u·x⁻¹·u⁻¹
            let conj = &(&u * &x.invert()) * &u.invert();
            let gu = b.left_mul(&w_fixed, &conj);
            // u = u·x⁻¹ > u·x⁻¹·u⁻¹
            let below = b.left_mul(&u_pos, &u.invert());
            let below = b.left_mul(&below, &(&u * &x.invert()));
            let u_shift = b.left_mul(&fixed.x_inv_fix, &u);
            let u_gt = b.trans_from(&[u_shift, below, gu], &u);
            let u_gt = if root > 1 { b.power_root(&u_gt, &g, root as u32, &u) } else { u_gt };
            // g⁻¹·u > u, iterated
            let g_inv = g.invert();
            let step = b.left_mul(&u_gt, &g_inv);
            let iterations = match sign {
                Sign::Minus => (p - 2) * k - 1,
                Sign::Plus => p - 3,
            };
            let mut v_gt_u = None::<Ref>;
            for i in 0..iterations {
                v_gt_u = Some(match v_gt_u {
                    None => step.clone(),
                    Some(cur) => {
                        let lifted = b.left_mul(&step, &g_inv.power(i));
                        b.trans(&[lifted, cur])
                    }
                });
            }
            let v = &g_inv.power(iterations) * &u;
            let v_pos = match v_gt_u {
                Some(r) => b.trans(&[r, u_pos]),
                None => u_pos,
            };
            match sign {
                Sign::Minus => {
                    let sq = b.left_mul(&v_pos, &v);
                    let sq = b.trans(&[sq, v_pos]);
                    let a = &xw.yx.power(k - 1) * &xw.y;
                    let prefix = b.word(&a.power(p - 2));
                    fixed.prepend(&mut b, &sq, &prefix)?
                }
                Sign::Plus => {
                    let vx = b.left_mul(&fixed.x_fix, &v);
                    let vx = b.trans(&[vx, v_pos]);
                    let prefix = b.word(&xw.xy.power((p - 2) * k + 1));
                    fixed.prepend(&mut b, &vx, &prefix)?
                }
            }
        }
    };
    debug_assert_eq!(&b.judgment(&form0_pos).lhs, &b.word(form0));
    b.trans(&[form0_pos, form0_fixed]);
    b.goal_contradiction();
    Ok(b.finish())
}
