//! `x > y` against the twisted inequality `y·(xy)^j R (xy)^j·x` closes a
//! strict cycle at `(xy)^j`.

use super::builder::Builder;
use super::lemma::lemma_relations;
use super::{Judgment, ProofScript, Rel};
use crate::error::{Error, Result};
use crate::knot::{is_lspace, KnotSpec, Sign};
use crate::presentation::xy_alphabet;

/// `j = k - 1` for `pk - 1` and `j = k` for `pk + 1`.
pub fn twist_exponent(spec: &KnotSpec) -> i64 {
    match spec.sign {
        Sign::Minus => spec.k - 1,
        Sign::Plus => spec.k,
    }
}

pub fn gen_final_contradiction(spec: &KnotSpec) -> Result<ProofScript> {
    spec.validate()?;
    if is_lspace(spec).is_none() {
        return Err(Error::NotLSpace(spec.to_string()));
    }
    let mut b = Builder::new(format!("final cycle for {spec}"), xy_alphabet());
    let x = b.parse("x");
    let y = b.parse("y");
    let j = twist_exponent(spec);
    let xyj = (&x * &y).power(j);
    let yxj = (&y * &x).power(j);
    let x_inv = x.invert();
    let (_, twisted_rel) = lemma_relations(spec);

    let x_gt_y = b.hypothesis("x_above_y", Judgment::global(Rel::Gt, x.clone(), y.clone()));
    let twisted = b.hypothesis(
        "twisted",
        Judgment::global(twisted_rel, &y * &xyj, &xyj * &x),
    );
    // (xy)^j > x⁻¹y(xy)^j R (yx)^j > y(xy)^j x⁻¹ R (xy)^j
    let s1 = b.in_context(&x_gt_y, &x_inv, &xyj);
    let s2 = b.left_mul(&twisted, &x_inv);
    let s3 = b.in_context(&x_gt_y, &yxj, &x_inv);
    let s4 = b.right_mul(&twisted, &x_inv);
    b.trans(&[s1, s2, s3, s4]);
    b.goal_contradiction();
    Ok(b.finish())
}
