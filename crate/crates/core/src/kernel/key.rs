//! `x > y > 1` from `v > 1`, `x = v^s`, `λ = v^{-r}` and a slope at or above
//! the surgery threshold.
//!
//! The opening turns `x ≥ v^e·x`, `e = -r + (2g-1)s ≤ 0`, into
//! `x ≥ x^a·λ′·x^b` by splitting `v^{e+s}` around `v^{-r}`. Each displayed
//! line of the case chain is then stated as a `Trans` claim `x R line`, after
//! the fact applications that should lead to it; a line that does not follow
//! is left for the kernel to reject.

use std::collections::HashMap;

use super::builder::Builder;
use super::lemma::{lemma_steps, LemmaFacts};
use super::{Judgment, Kind, ProofScript, Ref, Rel, Rule, Side};
use crate::error::{Error, Result};
use crate::knot::{genus, is_lspace, lspace_surgery_threshold, KnotSpec, Sign, SurgerySlope};
use crate::oracle::SearchBudget;
use crate::presentation::{closed_forms_for, families, presentation_xy, Family};
use crate::word::{Alphabet, GroupWord};

const X_ROOT: &str = "x_root";
const LONGITUDE: &str = "longitude_root";
const CLOSED_FORM: &str = "closed_form";

/// A running chain `start R current` of global facts.
struct Chain {
    cur: Ref,
}

impl Chain {
    fn word(&self, b: &Builder) -> GroupWord {
        b.judgment(&self.cur).rhs.clone()
    }

    /// Replaces `L` by `R` right after `prefix`, for a fact `L R' R`.
    fn apply(&mut self, b: &mut Builder, fact: &Ref, prefix: &GroupWord) {
        let w = self.word(b);
        let lhs = b.judgment(fact).lhs.clone();
        let suffix = &(&lhs.invert() * &prefix.invert()) * &w;
        let placed = b.in_context(fact, prefix, &suffix);
        self.cur = b.trans(&[self.cur.clone(), placed]);
    }

    /// Deletes letters `y` until `head·middle·tail` is reached, each by
    /// `y > 1`; the current word is compared with `middle` after stripping
    /// `head` and `tail`. Gives up without emitting anything when no such
    /// deletion exists.
    fn lower(&mut self, b: &mut Builder, y_pos: &Ref, head: &GroupWord, middle: &GroupWord, tail: &GroupWord) -> bool {
        let w = &(&head.invert() * &self.word(b)) * &tail.invert();
        let Some(deleted) = y_deletions(&w.letters(), &middle.letters(), y_letter(b)) else {
            return false;
        };
        let letters = w.letters();
        for &i in deleted.iter().rev() {
            let prefix = head * &GroupWord::from_letters(b.alphabet.clone(), &letters[..i]);
            self.apply(b, y_pos, &prefix);
        }
        self.word(b) == &(head * middle) * tail
    }

    /// States `start R line` with the relation derived so far.
    fn claim(&mut self, b: &mut Builder, line: &GroupWord) {
        let j = b.judgment(&self.cur).clone();
        let stated = Judgment::global(j.rel, j.lhs, line.clone());
        self.cur = b.claim(Rule::Trans, vec![self.cur.clone()], stated);
    }
}

fn y_letter(b: &Builder) -> i32 {
    b.alphabet.index_of("y").expect("y") as i32 + 1
}

/// Indices of `w` whose removal leaves `t`, all of them the letter `y`.
fn y_deletions(w: &[i32], t: &[i32], y: i32) -> Option<Vec<usize>> {
    let (n, m) = (w.len(), t.len());
    if m > n {
        return None;
    }
    // ok[i][j]: w[i..] reduces to t[j..]
    let mut ok = vec![vec![false; m + 1]; n + 1];
    ok[n][m] = true;
    for i in (0..n).rev() {
        for j in (0..=m).rev() {
            ok[i][j] = (j < m && w[i] == t[j] && ok[i + 1][j + 1]) || (w[i] == y && ok[i + 1][j]);
        }
    }
    if !ok[0][0] {
        return None;
    }
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < n {
        if j < m && w[i] == t[j] && ok[i + 1][j + 1] {
            j += 1;
        } else {
            out.push(i);
        }
        i += 1;
    }
    Some(out)
}

struct Words {
    one: GroupWord,
    x: GroupWord,
    y: GroupWord,
    xy: GroupWord,
    yx: GroupWord,
}

impl Words {
    fn new(b: &Builder) -> Self {
        let x = b.parse("x");
        let y = b.parse("y");
        Words {
            one: b.one(),
            xy: &x * &y,
            yx: &y * &x,
            x,
            y,
        }
    }

    fn xp(&self, n: i64) -> GroupWord {
        self.x.power(n)
    }

    fn prod(&self, parts: &[&GroupWord]) -> GroupWord {
        parts.iter().fold(self.one.clone(), |acc, w| &acc * w)
    }
}

/// Twisted facts by `(n, mirrored)`, emitted on first use.
struct Twisted<'a> {
    facts: &'a LemmaFacts,
    made: HashMap<(u32, bool), Ref>,
}

impl Twisted<'_> {
    fn get(&mut self, b: &mut Builder, n: i64, mirrored: bool) -> Ref {
        let key = (n as u32, mirrored);
        if let Some(r) = self.made.get(&key) {
            return r.clone();
        }
        let r = self.facts.twisted(b, n as u32, mirrored);
        self.made.insert(key, r.clone());
        r
    }
}

/// `(a, b)` with `x^a·λ′·x^b` the first line of each case's chain.
fn split(spec: &KnotSpec, family: Family) -> (i64, i64) {
    let KnotSpec { p, k, m, sign, .. } = *spec;
    match (family, sign) {
        (Family::PMinusOne, Sign::Minus) => (-(m + 1), -(p - 2) * m - p * k - (p - 3)),
        (Family::PMinusOne, Sign::Plus) => (-(p - 1) * m - p * k - (p - 1), -1),
        (Family::PMinusTwo, Sign::Minus) => (-(p * k + 2 * p - 4), 0),
        (Family::PMinusTwo, Sign::Plus) => (-1, -(p * k + 2 * p - 3)),
        (Family::Two, Sign::Minus) => (-2, -(p * k + p - 2)),
        (Family::Two, Sign::Plus) => (-(p * k + p + 1), -1),
    }
}

/// Case chain for the first family the spec belongs to.
pub fn gen_prop_key0(spec: &KnotSpec, slope: &SurgerySlope) -> Result<ProofScript> {
    let family = *families(spec)
        .first()
        .ok_or_else(|| Error::NoClosedForm(spec.to_string()))?;
    gen_prop_key0_family(spec, slope, family)
}

pub fn gen_prop_key0_family(spec: &KnotSpec, slope: &SurgerySlope, family: Family) -> Result<ProofScript> {
    spec.validate()?;
    if is_lspace(spec).is_none() {
        return Err(Error::NotLSpace(spec.to_string()));
    }
    let threshold = lspace_surgery_threshold(spec)?;
    if !slope.at_least(threshold) {
        return Err(Error::SlopeBelowThreshold {
            slope: slope.to_string(),
            threshold,
        });
    }
    let forms = closed_forms_for(spec, family)?;
    let closed = forms
        .iter()
        .find(|f| f.form == forms.len() - 1)
        .expect("closed form")
        .word
        .clone();
    let pres = presentation_xy(spec)?;
    let alphabet = Alphabet::new(["x", "y", "v"])?;
    let mut b = Builder::new(
        format!("x > y > 1 for {spec} at slope {slope} ({})", family.name()),
        alphabet,
    );
    let w = Words::new(&b);
    let v = b.parse("v");
    let (r, s) = (slope.r(), slope.s());
    let n_mer = spec.meridian_power();
    let g = genus(spec)?;
    let lambda = b.word(&pres.derived["lambda_prime"]);

    let v_pos = b.hypothesis("v_pos", Judgment::global(Rel::Gt, v.clone(), w.one.clone()));
    b.axiom(X_ROOT, &w.x, &v.power(s), "x = v^s");
    b.axiom(
        LONGITUDE,
        &v.power(-r),
        &(&w.xp(-n_mer) * &lambda),
        "λ = v^-r and λ′ = x^N·λ",
    );
    b.certified(CLOSED_FORM, &pres.derived["lambda_prime"], &closed, &pres, &SearchBudget::default())?;

    // x > 1
    let vs = b.powers(&v_pos, s);
    let x_pos = b.rewrite(&vs, X_ROOT, Side::Lhs, true, &w.one, &w.one);
    let facts = lemma_steps(&mut b, spec, &x_pos)?;
    let y_pos = facts.y_pos.clone();

    // x ≥ v^e·x
    let e = -r + (2 * g - 1) * s;
    let start = if e == 0 {
        b.refl(Kind::Global, &w.x)
    } else {
        let pw = b.powers(&v_pos, -e);
        let inv = b.inv(&pw);
        b.right_mul(&inv, &w.x)
    };
    let ve = v.power(e);
    let mut cur = b.rewrite(&start, X_ROOT, Side::Rhs, false, &ve, &w.one);
    // v^{e+s} = (v^s)^{a+N}·v^{-r}·(v^s)^b
    let (a, bb) = split(spec, family);
    let big_a = a + n_mer;
    let vsw = v.power(s);
    let left = vsw.power(big_a);
    let right = vsw.power(bb);
    cur = b.rewrite(&cur, LONGITUDE, Side::Rhs, false, &left, &right);
    let mid = &w.xp(-n_mer) * &lambda;
    for i in 0..big_a.abs() {
        let done = w.xp(i * big_a.signum());
        let rest = &vsw.power(big_a - (i + 1) * big_a.signum()) * &(&mid * &right);
        cur = rewrite_x_block(&mut b, &cur, big_a > 0, &done, &rest, &w.x, &vsw);
    }
    let head = w.xp(big_a);
    for i in 0..bb.abs() {
        let done = &(&head * &mid) * &w.xp(i * bb.signum());
        let rest = vsw.power(bb - (i + 1) * bb.signum());
        cur = rewrite_x_block(&mut b, &cur, bb > 0, &done, &rest, &w.x, &vsw);
    }
    let cur = b.rewrite(&cur, CLOSED_FORM, Side::Rhs, false, &w.xp(a), &w.xp(bb));

    let mut chain = Chain { cur };
    let mut tw = Twisted {
        facts: &facts,
        made: HashMap::new(),
    };
    let ctx = Ctx {
        spec: *spec,
        a,
        b: bb,
        x_pos,
        y_pos: y_pos.clone(),
        power: facts.power.clone(),
    };
    match (family, spec.sign) {
        (Family::PMinusOne, Sign::Minus) => case_1a(&mut b, &w, &ctx, &mut tw, &mut chain),
        (Family::PMinusOne, Sign::Plus) => case_1b(&mut b, &w, &ctx, &mut tw, &mut chain),
        (Family::PMinusTwo, Sign::Minus) => case_2a(&mut b, &w, &ctx, &mut tw, &mut chain),
        (Family::PMinusTwo, Sign::Plus) => case_2b(&mut b, &w, &ctx, &mut chain),
        (Family::Two, Sign::Minus) => case_3a(&mut b, &w, &ctx, &mut tw, &mut chain),
        (Family::Two, Sign::Plus) => case_3b(&mut b, &w, &ctx, &mut chain),
    }
    b.goal(Judgment::global(Rel::Gt, w.x.clone(), w.y.clone()));
    b.goal(Judgment::global(Rel::Gt, w.y.clone(), w.one.clone()));
    Ok(b.finish())
}

/// Rewrites one block `v^{±s}` after `done` into `x^{±1}`.
fn rewrite_x_block(
    b: &mut Builder,
    cur: &Ref,
    positive: bool,
    done: &GroupWord,
    rest: &GroupWord,
    x: &GroupWord,
    vs: &GroupWord,
) -> Ref {
    if positive {
        b.rewrite(cur, X_ROOT, Side::Rhs, true, done, rest)
    } else {
        // P·v^{-s}·S = (P·x⁻¹)·x·(v^{-s}·S) ↦ (P·x⁻¹)·v^s·(v^{-s}·S)
        let prefix = done * &x.invert();
        let suffix = &vs.invert() * rest;
        b.rewrite(cur, X_ROOT, Side::Rhs, false, &prefix, &suffix)
    }
}

struct Ctx {
    spec: KnotSpec,
    a: i64,
    b: i64,
    x_pos: Ref,
    y_pos: Ref,
    power: Ref,
}

/// Lowers to the last displayed line `head·middle·tail`, which equals `y`.
fn finish_chain(b: &mut Builder, w: &Words, ctx: &Ctx, chain: &mut Chain, parts: [&GroupWord; 3]) {
    let [head, middle, tail] = parts;
    chain.lower(b, &ctx.y_pos, head, middle, tail);
    chain.claim(b, &w.prod(&[head, middle, tail]));
    chain.claim(b, &w.y);
}

fn case_1a(b: &mut Builder, w: &Words, ctx: &Ctx, tw: &mut Twisted, chain: &mut Chain) {
    let KnotSpec { p, k, m, .. } = ctx.spec;
    let (xa, xb) = (w.xp(ctx.a), w.xp(ctx.b));
    let (y, yk1, xyk1) = (&w.y, w.yx.power(k - 1), w.xy.power(k - 1));
    let copy = w.prod(&[&y.power(m + 1), &xyk1, &w.x]);
    chain.claim(
        b,
        &w.prod(&[&xa, &yk1, &y.power(m + 1), &w.x, &yk1, &copy.power(p - 2), &xb]),
    );
    let t = tw.get(b, m + 1, false);
    chain.apply(b, &t, &xa);
    let mm = tw.get(b, m + 1, true);
    let head = w.prod(&[&xa, &w.xp(m + 1), &yk1, &w.x, &yk1]);
    let done = w.prod(&[&xyk1, &w.xp(m + 1), &w.x]);
    for i in 0..p - 2 {
        chain.apply(b, &mm, &(&head * &done.power(i)));
    }
    chain.claim(b, &w.prod(&[&head, &done.power(p - 2), &xb]));
    let last = w.prod(&[
        y,
        &w.xp(k - 1),
        &w.x,
        &w.xp(k - 1),
        &(&w.xp(k - 1) * &w.xp(m + 2)).power(p - 2),
    ]);
    finish_chain(b, w, ctx, chain, [&w.one, &last, &xb]);
}

fn case_1b(b: &mut Builder, w: &Words, ctx: &Ctx, tw: &mut Twisted, chain: &mut Chain) {
    let KnotSpec { p, k, m, .. } = ctx.spec;
    let (xa, xb) = (w.xp(ctx.a), w.xp(ctx.b));
    let (yk, xyk) = (w.yx.power(k), w.xy.power(k));
    let copy = w.prod(&[&w.x, &yk, &w.y.power(m)]);
    chain.claim(b, &w.prod(&[&xa, &copy.power(p - 1), &xyk, &w.x, &xb]));
    let t = tw.get(b, m, false);
    let done = w.prod(&[&w.x, &w.xp(m), &yk]);
    for i in 0..p - 1 {
        chain.apply(b, &t, &w.prod(&[&xa, &done.power(i), &w.x]));
    }
    chain.claim(b, &w.prod(&[&xa, &done.power(p - 1), &xyk]));
    let last = w.prod(&[&(&w.xp(m + 1) * &w.xp(k)).power(p - 1), &w.xp(k), &w.y]);
    finish_chain(b, w, ctx, chain, [&xa, &last, &w.one]);
}

fn case_2a(b: &mut Builder, w: &Words, ctx: &Ctx, tw: &mut Twisted, chain: &mut Chain) {
    let KnotSpec { p, k, .. } = ctx.spec;
    let y = &w.y;
    let (yk1, xyk1, yk) = (w.yx.power(k - 1), w.xy.power(k - 1), w.yx.power(k));
    let xc = w.xp(ctx.a + 1);
    chain.claim(
        b,
        &w.prod(&[&w.xp(ctx.a), &w.x, &yk1, &w.prod(&[y, &yk1, y]).power(p - 2), &yk1, y]),
    );
    // y·(yx)^{k-1}·y R (yx)^{-(k-1)}·x·(yx)^{2k-1}
    let g = b.left_cancel(&ctx.power, &yk1);
    let g_rhs = w.prod(&[&yk1.invert(), &w.x, &yk, &yk1]);
    for i in 0..p - 2 {
        chain.apply(b, &g, &w.prod(&[&xc, &yk1, &g_rhs.power(i)]));
    }
    chain.claim(b, &w.prod(&[&xc, &yk1, &g_rhs.power(p - 2), &yk1, y]));
    chain.claim(b, &w.prod(&[&xc, &(&w.x * &yk).power(p - 2), &yk1, &yk1, y]));
    chain.claim(
        b,
        &w.prod(&[&xc, &w.prod(&[&w.x, &yk1, y, &w.x]).power(p - 2), &yk1, y, &xyk1]),
    );
    let t1 = tw.get(b, 1, false);
    let done = w.prod(&[&w.x, &w.x, &yk1, &w.x]);
    for i in 0..p - 2 {
        chain.apply(b, &t1, &w.prod(&[&xc, &done.power(i), &w.x]));
    }
    chain.apply(b, &t1, &(&xc * &done.power(p - 2)));
    chain.claim(b, &w.prod(&[&xc, &done.power(p - 2), &w.x, &yk1, &xyk1]));
    let last = w.prod(&[
        &w.prod(&[&w.xp(2), &w.xp(k - 1), &w.x]).power(p - 2),
        &w.x,
        &w.xp(k - 1),
        &w.xp(k - 1),
        y,
    ]);
    finish_chain(b, w, ctx, chain, [&xc, &last, &w.one]);
}

fn case_2b(b: &mut Builder, w: &Words, ctx: &Ctx, chain: &mut Chain) {
    let KnotSpec { p, k, .. } = ctx.spec;
    let (yk, xyk) = (w.yx.power(k), w.xy.power(k));
    let xb1 = w.xp(ctx.b + 1);
    chain.claim(
        b,
        &w.prod(&[
            &w.xp(ctx.a),
            &w.x,
            &yk,
            &(&w.y * &xyk).power(p - 2),
            &xyk,
            &w.x,
            &w.xp(ctx.b),
        ]),
    );
    // y·(xy)^k R ((xy)^k·x)²·(xy)^{-k}
    let g = b.left_cancel(&ctx.power, &w.x);
    let g = b.right_cancel(&g, &xyk);
    let g_rhs = w.prod(&[&xyk, &w.x, &xyk, &w.x, &xyk.invert()]);
    for i in 0..p - 2 {
        chain.apply(b, &g, &(&yk * &g_rhs.power(i)));
    }
    chain.claim(b, &w.prod(&[&yk, &g_rhs.power(p - 2), &xyk, &xb1]));
    chain.claim(
        b,
        &w.prod(&[&yk, &xyk, &w.prod(&[&w.x, &xyk, &w.x]).power(p - 2), &xb1]),
    );
    let last = w.prod(&[
        &w.y,
        &w.xp(k),
        &w.xp(k),
        &w.prod(&[&w.x, &w.xp(k), &w.x]).power(p - 2),
    ]);
    finish_chain(b, w, ctx, chain, [&w.one, &last, &xb1]);
}

fn case_3a(b: &mut Builder, w: &Words, ctx: &Ctx, tw: &mut Twisted, chain: &mut Chain) {
    let KnotSpec { p, k, .. } = ctx.spec;
    let y = &w.y;
    let (yk1, yk) = (w.yx.power(k - 1), w.yx.power(k));
    let u = (&yk1 * y).power(p - 1);
    let xb = w.xp(ctx.b);
    let x_inv = w.xp(-1);
    chain.claim(
        b,
        &w.prod(&[&w.xp(-2), &w.x, &u, &w.x, &u.invert(), &yk, &u, &w.x, &xb]),
    );
    chain.apply(b, &ctx.x_pos, &(&x_inv * &u));
    chain.claim(b, &w.prod(&[&x_inv, &yk, &u, &w.x, &xb]));
    // ((yx)^{k-1}y)^{p-1}·x R x·(yx)^{k-1}·(yx)^{k(p-2)}
    let g = b.right_mul(&ctx.power, &yk);
    chain.apply(b, &g, &(&x_inv * &yk));
    chain.claim(
        b,
        &w.prod(&[&x_inv, &yk, &w.x, &yk1, &w.yx.power(k * (p - 2)), &xb]),
    );
    // (yx)^k = (yx)^{k-1}·y·x R x·(yx)^{k-1}·x R x·y·x^k
    let t1 = tw.get(b, 1, false);
    let t1x = b.right_mul(&t1, &w.x);
    let xyxk = w.prod(&[&w.x, y, &w.xp(k)]);
    let mut aux = Chain { cur: t1x };
    aux.lower(b, &ctx.y_pos, &w.one, &xyxk, &w.one);
    aux.claim(b, &xyxk);
    let aux = aux.cur;
    chain.apply(b, &aux, &x_inv);
    for i in 0..p - 2 {
        chain.apply(b, &aux, &w.prod(&[&x_inv, &xyxk, &w.x, &yk1, &xyxk.power(i)]));
    }
    let line5 = w.prod(&[&xyxk, &w.x, &w.xp(k - 1), &xyxk.power(p - 2)]);
    chain.lower(b, &ctx.y_pos, &x_inv, &line5, &xb);
    chain.claim(b, &w.prod(&[&x_inv, &line5, &xb]));
    let last = w.prod(&[y, &w.xp(2 * k), &w.xp((k + 1) * (p - 2))]);
    finish_chain(b, w, ctx, chain, [&w.one, &last, &xb]);
}

fn case_3b(b: &mut Builder, w: &Words, ctx: &Ctx, chain: &mut Chain) {
    let KnotSpec { p, k, .. } = ctx.spec;
    let xyk = w.xy.power(k);
    let u = w.xy.power((p - 1) * k + 1);
    let xa = w.xp(ctx.a);
    chain.claim(
        b,
        &w.prod(&[&xa, &w.x, &u, &w.x, &xyk, &u.invert(), &w.x, &u, &w.x, &w.xp(ctx.b)]),
    );
    chain.apply(b, &ctx.x_pos, &w.prod(&[&xa, &w.x, &u, &w.x, &xyk, &u.invert()]));
    chain.claim(b, &w.prod(&[&xa, &w.x, &u, &w.x, &xyk]));
    // (xy)^{k(p-1)+1} R ((xy)^k·x)^{p-1}
    let g = b.left_mul(&ctx.power, &xyk);
    chain.apply(b, &g, &(&xa * &w.x));
    let c = &xyk * &w.x;
    chain.claim(b, &w.prod(&[&xa, &w.x, &c.power(p - 1), &w.x, &xyk]));
    let last = w.prod(&[&w.x, &(&w.xp(k) * &w.x).power(p - 1), &w.x, &w.xp(k), &w.y]);
    finish_chain(b, w, ctx, chain, [&xa, &last, &w.one]);
}
