use proptest::prelude::*;

use lg_mirror::clifford::{antisymmetrize, antisymmetrize_brute, antisymmetrize_inv, clifford_to_end, CliffordElement, ExteriorElement};
use lg_mirror::partitions::{StrictPartition, Subset};
use lg_mirror::scalars::{rat, QSqrt2, ScalarRing};
use lg_mirror::superpotential::{
    plucker_spin_all, plucker_spin_dense, plucker_subword_all, verify_em_formula, verify_fj, verify_fm, verify_sym_to_minor,
    verify_theorem_w, SubwordTable,
};
use lg_mirror::weyl::{is_min_coset_rep, min_in_coset, n_of, simple_reflection, word_product};

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-12i64..=12, 1i64..=7)
}

fn field() -> impl Strategy<Value = QSqrt2> {
    (small_rational(), small_rational()).prop_map(|((a, b), (c, d))| QSqrt2::new(rat(a, b), rat(c, d)))
}

fn nonzero_rational() -> impl Strategy<Value = QSqrt2> {
    ((-9i64..=9).prop_filter("nonzero", |n| *n != 0), 1i64..=9).prop_map(|(n, d)| QSqrt2::from_ratio(n, d))
}

fn point(m: usize) -> impl Strategy<Value = Vec<QSqrt2>> {
    proptest::collection::vec(nonzero_rational(), n_of(m))
}

/// Homogeneous-parity element of `∧•V` with at most six terms.
fn exterior(m: usize) -> impl Strategy<Value = ExteriorElement> {
    let dim = 2 * m + 1;
    (any::<bool>(), proptest::collection::vec((0u32..1 << dim, -5i64..=5), 1..6)).prop_map(move |(odd, terms)| {
        let mut x = ExteriorElement::zero(m);
        for (mask, c) in terms {
            if (mask.count_ones() % 2 == 1) == odd {
                x.add_term(mask, QSqrt2::from_int(c));
            }
        }
        x
    })
}

fn clifford(m: usize) -> impl Strategy<Value = CliffordElement> {
    let dim = 2 * m + 1;
    proptest::collection::vec((0u32..1 << dim, field()), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(CliffordElement::zero(m), |acc, (s, c)| acc.add(&CliffordElement::monomial(s, c, m)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(x in field(), y in field(), z in field()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inv().unwrap(), QSqrt2::one());
        }
    }

    #[test]
    fn string_round_trip(x in field()) {
        prop_assert_eq!(x.to_string().parse::<QSqrt2>().unwrap(), x);
    }

    #[test]
    fn subset_bijection(m in 1usize..9, raw in any::<u32>()) {
        let s: Subset = raw & ((1 << m) - 1);
        let lambda = StrictPartition::from_subset(s, m).unwrap();
        prop_assert_eq!(lambda.to_subset(), s);
        prop_assert_eq!(lambda.pd().pd(), lambda.clone());
        prop_assert_eq!(lambda.size() + lambda.pd().size(), m * (m + 1) / 2);
    }

    #[test]
    fn alpha_round_trip(x in exterior(2)) {
        let c = antisymmetrize(&x);
        prop_assert_eq!(&c, &antisymmetrize_brute(&x));
        prop_assert_eq!(antisymmetrize_inv(&c).unwrap(), x);
    }

    #[test]
    fn alpha_round_trip_m3(x in exterior(3)) {
        prop_assert_eq!(antisymmetrize_inv(&antisymmetrize(&x)).unwrap(), x);
    }

    #[test]
    fn spin_action_is_multiplicative(x in clifford(2), y in clifford(2)) {
        prop_assert_eq!(clifford_to_end(&x.mul(&y)), clifford_to_end(&x).mul(&clifford_to_end(&y)));
    }

    #[test]
    fn simple_reflections_change_length_by_one(m in 2usize..6, word in proptest::collection::vec(1usize..=5, 0..14)) {
        let word: Vec<usize> = word.into_iter().map(|i| 1 + (i - 1) % m).collect();
        let w = word_product(&word, m);
        let l = w.length();
        prop_assert!(l <= word.len());
        prop_assert_eq!(l % 2, word.len() % 2);
        prop_assert_eq!(w.inverse().length(), l);
        for i in 1..=m {
            let ws = &w * &simple_reflection(i, m).unwrap();
            prop_assert!(ws.length() + 1 == l || ws.length() == l + 1);
        }
        let floor = min_in_coset(&w);
        prop_assert!(is_min_coset_rep(&floor));
        prop_assert!(floor.length() <= l);
    }

    #[test]
    fn plucker_routes_agree_m3(b in point(3)) {
        let t = SubwordTable::new(3);
        let spin = plucker_spin_all(&b, 3).unwrap();
        prop_assert_eq!(&spin, &plucker_subword_all(&b, &t).unwrap());
        prop_assert_eq!(&spin, &plucker_spin_dense(&b, 3).unwrap());
        prop_assert_eq!(spin.at(0), &QSqrt2::one());
        let prod = b.iter().fold(QSqrt2::one(), |a, x| a * x.clone());
        prop_assert_eq!(spin.at(7), &prod);
    }

    #[test]
    fn theorem_w_m3(b in point(3), q in nonzero_rational()) {
        let t = SubwordTable::new(3);
        if let Ok(c) = verify_theorem_w(&q, &b, &t) {
            prop_assert!(c.holds(), "{:?}", c);
        }
    }

    #[test]
    fn minors_and_em_m3(b in point(3)) {
        let m = 3;
        for j in 2..=m {
            let (den, num) = verify_sym_to_minor(j, &b, m).unwrap();
            prop_assert!(den.holds() && num.holds(), "j={}", j);
        }
        for j in 1..m {
            if let Ok((ratio, vanish)) = verify_fj(j, &b, m) {
                prop_assert!(ratio.holds() && vanish.holds(), "j={}", j);
            }
        }
        prop_assert!(verify_fm(&b, m).unwrap().holds());
        prop_assert!(verify_em_formula(&b, &SubwordTable::new(m)).unwrap().holds());
    }
}
