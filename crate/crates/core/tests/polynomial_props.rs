use comaxdom_core::analysis::{enestrom_kakeya, shape_analyze};
use comaxdom_core::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-1_000_000i64..=1_000_000, 0..=21).prop_map(|c| IntPoly::from_i64s(&c))
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, IntPoly::zero());
        prop_assert_eq!(&a * IntPoly::one(), a.clone());
        prop_assert_eq!(&a + IntPoly::zero(), a.clone());
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), num in -50i64..50, den in 1i64..20) {
        let x = BigRational::new(num.into(), den.into());
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
    }

    #[test]
    fn canonical_form_has_nonzero_lead(a in poly(), b in poly()) {
        let s = &a - &b + &b;
        prop_assert_eq!(&s, &a);
        if let Some(lead) = s.leading() {
            prop_assert!(!lead.is_zero());
        }
    }

    #[test]
    fn degree_of_product(a in poly(), b in poly()) {
        let p = &a * &b;
        match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => prop_assert_eq!(p.degree(), Some(da + db)),
            _ => prop_assert!(p.is_zero()),
        }
    }

    #[test]
    fn shift_roundtrip(a in poly(), k in 0usize..10) {
        prop_assert_eq!(a.shift(k).unshift(k), a.clone());
        prop_assert_eq!(a.shift(k), &a * IntPoly::monomial(k));
    }
}

#[test]
fn pascal_rows_match_factorials() {
    for k in [0usize, 1, 2, 7, 32, 60, 97] {
        let row = IntPoly::binomial_power(k);
        for i in 0..=k {
            let expect = factorial(k as u64) / (factorial(i as u64) * factorial((k - i) as u64));
            assert_eq!(row.coeff(i), expect, "C({k},{i})");
        }
    }
}

#[test]
fn pascal_row_is_repeated_product() {
    let base = IntPoly::from_i64s(&[1, 1]);
    let mut acc = IntPoly::one();
    for k in 0..=40 {
        assert_eq!(IntPoly::binomial_power(k), acc);
        acc = acc * &base;
    }
}

#[test]
fn binomial_rows_are_log_concave() {
    for k in 1..=500 {
        let r = shape_analyze(&IntPoly::binomial_power(k)).unwrap();
        assert!(r.unimodal && r.log_concave, "k = {k}");
        assert!(r.newton_satisfied, "k = {k}");
    }
}

#[test]
fn constant_ratio_annulus_is_unit() {
    for len in 2..12 {
        let p = IntPoly::from_i64s(&vec![7; len]);
        let b = enestrom_kakeya(&p).unwrap();
        assert!(b.r.is_one() && b.big_r.is_one(), "len = {len}");
    }
}

proptest! {
    #[test]
    fn log_concave_positive_implies_unimodal(c in prop::collection::vec(1i64..1000, 1..15)) {
        let r = shape_analyze(&IntPoly::from_i64s(&c)).unwrap();
        if r.log_concave {
            prop_assert!(r.unimodal);
        }
    }
}
