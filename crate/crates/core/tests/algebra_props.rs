mod common;

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use ttk::group_ring::{delta_n, fox_derivative, phi, GroupRingElement};
use ttk::laurent::LaurentPoly;
use ttk::word::{Alphabet, ExponentWeights, GroupWord};

fn letters(max: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..max)
}

fn poly() -> impl Strategy<Value = std::collections::BTreeMap<i64, i64>> {
    prop::collection::btree_map(-6i64..6, -9i64..9, 0..6).prop_map(|mut m| {
        m.retain(|_, c| *c != 0);
        m
    })
}

fn weights() -> ExponentWeights {
    ExponentWeights::new([("x", 2), ("y", 3)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_matches_stack(l in letters(24)) {
        let a = xy();
        prop_assert_eq!(word(&a, &l).letters(), reduce(&l));
    }

    #[test]
    fn group_laws(u in letters(12), v in letters(12), w in letters(12)) {
        let a = xy();
        let (u, v, w) = (word(&a, &u), word(&a, &v), word(&a, &w));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert!((&u * &u.invert()).is_identity());
        prop_assert_eq!((&u * &v).invert(), &v.invert() * &u.invert());
        prop_assert_eq!(u.invert().invert(), u.clone());
        prop_assert_eq!(&u * &a.identity(), u.clone());
    }

    #[test]
    fn text_round_trip(l in letters(20)) {
        let a = xy();
        let w = word(&a, &l);
        prop_assert_eq!(a.parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn word_order_matches_reference(u in letters(8), v in letters(8)) {
        let a = xy();
        let (wu, wv) = (word(&a, &u), word(&a, &v));
        let (ru, rv) = (reduce(&u), reduce(&v));
        prop_assert_eq!(wu.cmp(&wv), word_order_key(&ru).cmp(&word_order_key(&rv)));
    }

    #[test]
    fn powers_add(l in letters(8), m in -5i64..5, n in -5i64..5) {
        let w = word(&xy(), &l);
        prop_assert_eq!(&w.power(m) * &w.power(n), w.power(m + n));
    }

    #[test]
    fn fox_matches_reference(l in letters(20)) {
        let a = xy();
        let w = word(&a, &l);
        for (name, g) in [("x", 1), ("y", 2)] {
            prop_assert_eq!(ring_of(&fox_derivative(&w, name).unwrap()), fox(&reduce(&l), g));
        }
    }

    #[test]
    fn fox_fundamental_identity(l in letters(20)) {
        let a = xy();
        let w = word(&a, &l);
        let one = GroupRingElement::one(&a);
        let mut sum = GroupRingElement::zero(&a);
        for name in ["x", "y"] {
            let g = GroupRingElement::from_word(a.generator(name).unwrap());
            sum = &sum + &(&fox_derivative(&w, name).unwrap() * &(&g - &one));
        }
        prop_assert_eq!(sum, &GroupRingElement::from_word(w) - &one);
    }

    #[test]
    fn fox_product_rule(u in letters(12), v in letters(12)) {
        let a = xy();
        let (u, v) = (word(&a, &u), word(&a, &v));
        for name in ["x", "y"] {
            let lhs = fox_derivative(&(&u * &v), name).unwrap();
            let rhs = &fox_derivative(&u, name).unwrap()
                + &fox_derivative(&v, name).unwrap().left_mul_word(&u);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fox_of_power(l in letters(8), n in 1i64..6) {
        let a = xy();
        let u = word(&a, &l);
        for name in ["x", "y"] {
            let lhs = fox_derivative(&u.power(n), name).unwrap();
            let rhs = &delta_n(&u, n - 1).unwrap() * &fox_derivative(&u, name).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_phi_closed_form(l in letters(10), n in 0i64..8) {
        let a = xy();
        let u = word(&a, &l);
        let d = u.abelianize_degree(&weights()).unwrap();
        let got = phi(&delta_n(&u, n).unwrap(), &weights()).unwrap();
        prop_assert_eq!(&got, &LaurentPoly::geometric(d, n as u64));
        if d != 0 {
            // (t^{(n+1)d} - 1) / (t^d - 1)
            let num = &LaurentPoly::t_pow((n + 1) * d) - &LaurentPoly::one();
            let den = &LaurentPoly::t_pow(d) - &LaurentPoly::one();
            prop_assert_eq!(num.div_exact(&den).unwrap(), got);
        } else {
            prop_assert_eq!(got, LaurentPoly::monomial(n + 1, 0));
        }
    }

    #[test]
    fn phi_matches_reference(l in letters(16)) {
        let a = xy();
        let w = word(&a, &l);
        let e = fox_derivative(&w, "x").unwrap();
        prop_assert_eq!(poly_of(&phi(&e, &weights()).unwrap()), common::phi(&ring_of(&e), &[2, 3]));
    }

    #[test]
    fn laurent_ring_laws(f in poly(), g in poly(), h in poly()) {
        let (pf, pg, ph) = (laurent(&f), laurent(&g), laurent(&h));
        prop_assert_eq!(poly_of(&(&pf * &pg)), poly_mul(&f, &g));
        prop_assert_eq!(&(&pf + &pg) * &ph, &(&pf * &ph) + &(&pg * &ph));
        prop_assert!((&pf - &pf).is_zero());
    }

    #[test]
    fn div_exact_inverts_mul(f in poly(), g in poly()) {
        prop_assume!(!g.is_empty());
        let (pf, pg) = (laurent(&f), laurent(&g));
        prop_assert_eq!((&pf * &pg).div_exact(&pg).unwrap(), pf);
    }

    #[test]
    fn laurent_text_round_trip(f in poly()) {
        let p = laurent(&f);
        prop_assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
    }

    #[test]
    fn substitution_is_a_homomorphism(u in letters(10), v in letters(10)) {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let t = xy();
        let images = [("a", t.parse("y*x").unwrap()), ("b", t.parse("x^-1*y^2").unwrap())];
        let hom = ttk::word::Homomorphism::new(&t, images).unwrap();
        let (u, v) = (word(&ab, &u), word(&ab, &v));
        let s = |w: &GroupWord| w.substitute(&hom).unwrap();
        prop_assert_eq!(s(&(&u * &v)), &s(&u) * &s(&v));
        prop_assert_eq!(s(&u.invert()), s(&u).invert());
    }
}

#[test]
fn big_coefficients_stay_exact() {
    let base = &LaurentPoly::t_pow(1) + &LaurentPoly::monomial(3, 0);
    let mut p = LaurentPoly::one();
    for _ in 0..60 {
        p = &p * &base;
    }
    assert_eq!(p.coefficient(0), BigInt::from(3).pow(60));
    assert_eq!(p.eval_one(), BigInt::from(4).pow(60));
}
