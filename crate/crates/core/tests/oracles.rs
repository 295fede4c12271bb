//! Cross-module checks against independent oracles written here.

use num_complex::Complex64;

use lg_mirror::jacobi::{expected_spectrum, find_critical_points};
use lg_mirror::partitions::StrictPartition;
use lg_mirror::qchevalley::SchubertBasis;
use lg_mirror::scalars::{QSqrt2, ScalarRing};
use lg_mirror::superpotential::{eval_w_tilde, plucker_spin_all, plucker_subword, SubwordTable};
use lg_mirror::weyl::{canonical_wp_word, coset_min_rep, n_of, reduced_subwords};

/// Every subword monomial has coefficient one, so at `b = 1` the spin route
/// counts the reduced subwords.
#[test]
fn subword_counts_match_spin_evaluation_at_one() {
    for m in 2..6 {
        let word = canonical_wp_word(m);
        let ones = vec![QSqrt2::one(); n_of(m)];
        let p = plucker_spin_all(&ones, m).unwrap();
        let mut total = 0;
        for lambda in StrictPartition::all(m) {
            let n = reduced_subwords(&word, &coset_min_rep(&lambda)).len();
            assert_eq!(p.get(&lambda), &QSqrt2::from_int(n as i64), "m={m} {lambda}");
            assert_eq!(plucker_subword(&lambda, &ones).unwrap(), QSqrt2::from_int(n as i64));
            total += n;
        }
        assert_eq!(SubwordTable::new(m).monomial_count(), total);
    }
}

/// The m = 2 Laurent form `b₁ + b₂ + b₃ + q(b₁ + b₃)/(b₁b₂b₃)`.
#[test]
fn laurent_form_m2() {
    let t = SubwordTable::new(2);
    let grid = [-3i64, -1, 2, 5];
    for &x in &grid {
        for &y in &grid {
            for &z in &grid {
                let b = [x, y, z].map(QSqrt2::from_int);
                let q = QSqrt2::from_ratio(5, 7);
                let want = QSqrt2::from_ratio(x + y + z, 1) + q.clone() * QSqrt2::from_ratio(x + z, x * y * z);
                assert_eq!(eval_w_tilde(&q, &b, &t).unwrap(), want);
            }
        }
    }
}

/// Characteristic polynomial by Faddeev–LeVerrier over the integers at q = 1.
fn char_poly(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mul = |x: &Vec<Vec<i64>>, y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let mut coeffs = vec![1i64];
    let mut mk: Vec<Vec<i64>> = vec![vec![0; n]; n];
    let mut c = 1i64;
    for k in 1..=n {
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += c;
        }
        mk = mul(&a.to_vec(), &mk);
        let tr: i64 = (0..n).map(|i| mk[i][i]).sum();
        assert_eq!(tr % k as i64, 0);
        c = -tr / k as i64;
        coeffs.push(c);
    }
    coeffs
}

fn horner(coeffs: &[i64], x: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c as f64)
}

#[test]
fn sigma1_eigenvalues_are_roots_of_integer_char_poly() {
    for m in 2..5 {
        let a = SchubertBasis::new(m).sigma1_matrix(Complex64::new(1.0, 0.0));
        let ints: Vec<Vec<i64>> = (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[(i, j)].re as i64).collect()).collect();
        let poly = char_poly(&ints);
        for e in expected_spectrum(m, Complex64::new(1.0, 0.0)) {
            let x = e / (m as f64 + 1.0);
            let scale = (0..=poly.len()).map(|k| x.norm().powi(k as i32)).fold(1.0, f64::max);
            assert!(horner(&poly, x).norm() < 1e-9 * scale, "m={m} x={x}");
        }
    }
}

/// For m = 2, `σ_1⁴ = 4q σ_1`: the spectrum is 0 and the three cube roots
/// of `4q`.
#[test]
fn m2_spectrum_closed_form() {
    let q = Complex64::new(2.0, 0.0);
    let mut want: Vec<Complex64> = (0..3)
        .map(|k| Complex64::from_polar((4.0 * q.re).cbrt(), 2.0 * std::f64::consts::PI * k as f64 / 3.0) * 3.0)
        .collect();
    want.push(Complex64::new(0.0, 0.0));
    let got = expected_spectrum(2, q);
    for w in &want {
        assert!(got.iter().any(|g| (g - w).norm() < 1e-9), "{w} missing from {got:?}");
    }
    let search = find_critical_points(2, q, 100, 3);
    assert_eq!(search.points.len(), 4);
    for w in &want {
        assert!(search.points.iter().any(|p| (p.value - w).norm() < 1e-8), "{w}");
    }
}
