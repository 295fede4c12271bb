//! Matrix models of `Spin(2m+1)` elements on `V` (dimension `2m+1`) and on
//! `V_Spin` (dimension `2^m`), the factorized `ū₂`, and minors.

use thiserror::Error;

use crate::clifford::{chevalley_e_cl, chevalley_f_cl, spin_matrix_of};
use crate::matrix::Matrix;
use crate::scalars::ScalarRing;
use crate::weyl::{canonical_wp_word, n_of};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("expected {expected} parameters, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("row set has {rows} indices, column set has {cols}")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("denominator minor vanishes")]
    Singular,
}

/// Element of `Spin(V)` (or of its Lie algebra) acting on `V`.
pub type GroupElement<T> = Matrix<T>;
/// Element acting on `V_Spin`, rows and columns indexed by subset mask.
pub type SpinGroupElement<T> = Matrix<T>;

fn unit<T: ScalarRing>(n: usize, i: usize, j: usize, c: T) -> Matrix<T> {
    let mut a = Matrix::zeros(n, n);
    a.set(i - 1, j - 1, c);
    a
}

/// `e_i = E_{i,i+1} + E_{2m+1−i,2m+2−i}`; `e_m = √2 E_{m,m+1} + √2 E_{m+1,m+2}`.
pub fn chevalley_e<T: ScalarRing>(i: usize, m: usize) -> GroupElement<T> {
    assert!((1..=m).contains(&i), "Chevalley index {i} outside 1..={m}");
    let n = 2 * m + 1;
    if i < m {
        unit(n, i, i + 1, T::one()).add(&unit(n, n - i, n + 1 - i, T::one()))
    } else {
        unit(n, m, m + 1, T::sqrt2()).add(&unit(n, m + 1, m + 2, T::sqrt2()))
    }
}

/// `f_i = e_iᵀ`.
pub fn chevalley_f<T: ScalarRing>(i: usize, m: usize) -> GroupElement<T> {
    chevalley_e::<T>(i, m).transpose()
}

fn exp_nilpotent<T: ScalarRing>(x: &Matrix<T>, a: &T) -> Matrix<T> {
    let n = x.rows();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(x).scale(&a.try_div(&T::from_i64(k as i64)).expect("k > 0"));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// `x_i(a) = exp(a e_i)`.
pub fn one_param_x<T: ScalarRing>(i: usize, a: &T, m: usize) -> GroupElement<T> {
    exp_nilpotent(&chevalley_e(i, m), a)
}

/// `y_i(a) = exp(a f_i) = I + a f_i + a² f_i²/2`.
pub fn one_param_y<T: ScalarRing>(i: usize, a: &T, m: usize) -> GroupElement<T> {
    exp_nilpotent(&chevalley_f(i, m), a)
}

fn check_len<T>(b: &[T], m: usize) -> Result<(), GroupError> {
    if b.len() == n_of(m) {
        Ok(())
    } else {
        Err(GroupError::WrongLength { expected: n_of(m), got: b.len() })
    }
}

/// `ū₂ = y_{i_N}(b_N) ⋯ y_{i_1}(b_1)` for the canonical word `i_1 … i_N`.
pub fn build_u2bar<T: ScalarRing>(b: &[T], m: usize) -> Result<GroupElement<T>, GroupError> {
    check_len(b, m)?;
    let word = canonical_wp_word(m);
    let mut g = Matrix::identity(2 * m + 1);
    for k in (0..word.len()).rev() {
        g = g.mul(&one_param_y(word[k], &b[k], m));
    }
    Ok(g)
}

/// Spin matrices of `f_1, …, f_m`.
pub fn spin_f_matrices<T: ScalarRing>(m: usize) -> Vec<SpinGroupElement<T>> {
    (1..=m).map(|i| spin_matrix_of(&chevalley_f_cl(i, m))).collect()
}

/// Spin matrices of `e_1, …, e_m`.
pub fn spin_e_matrices<T: ScalarRing>(m: usize) -> Vec<SpinGroupElement<T>> {
    (1..=m).map(|i| spin_matrix_of(&chevalley_e_cl(i, m))).collect()
}

/// The same product as [`build_u2bar`], acting on `V_Spin`.
pub fn build_u2bar_spin<T: ScalarRing>(b: &[T], m: usize) -> Result<SpinGroupElement<T>, GroupError> {
    check_len(b, m)?;
    let f = spin_f_matrices::<T>(m);
    let word = canonical_wp_word(m);
    let mut g = Matrix::identity(1 << m);
    for k in (0..word.len()).rev() {
        g = g.mul(&exp_nilpotent(&f[word[k] - 1], &b[k]));
    }
    Ok(g)
}

/// `Δ^I_J(g)`: determinant of the submatrix on 1-based rows `I`, columns `J`.
pub fn minor<T: ScalarRing>(g: &Matrix<T>, rows: &[usize], cols: &[usize]) -> Result<T, GroupError> {
    if rows.len() != cols.len() {
        return Err(GroupError::SizeMismatch { rows: rows.len(), cols: cols.len() });
    }
    for (&k, n) in rows.iter().map(|k| (k, g.rows())).chain(cols.iter().map(|k| (k, g.cols()))) {
        if !(1..=n).contains(&k) {
            return Err(GroupError::IndexOutOfRange { index: k, n });
        }
    }
    let r: Vec<usize> = rows.iter().map(|k| k - 1).collect();
    let c: Vec<usize> = cols.iter().map(|k| k - 1).collect();
    Ok(determinant(g.submatrix(&r, &c)))
}

/// Fraction-free (Bareiss) elimination with the largest-modulus pivot.
pub fn determinant<T: ScalarRing>(mut a: Matrix<T>) -> T {
    let n = a.rows();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        let best = (k..n)
            .filter(|&i| !a.get(i, k).is_zero())
            .max_by(|&i, &j| a.get(i, k).to_complex().norm().total_cmp(&a.get(j, k).to_complex().norm()));
        let Some(p) = best else {
            return T::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        let piv = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = piv.clone() * a.get(i, j).clone() - a.get(i, k).clone() * a.get(k, j).clone();
                a.set(i, j, v.try_div(&prev).expect("previous pivot is nonzero"));
            }
        }
        prev = piv;
    }
    if n == 0 {
        T::one()
    } else {
        sign * a.get(n - 1, n - 1).clone()
    }
}

/// `f_j*(ū₂)`: entry `(j+1, j)` for `j < m`, entry `(m+1, m)/√2` for `j = m`.
pub fn extract_f_coeff<T: ScalarRing>(u: &GroupElement<T>, j: usize, m: usize) -> T {
    if j < m {
        u.get(j, j - 1).clone()
    } else {
        u.get(m, m - 1).try_div(&T::sqrt2()).expect("sqrt2 is invertible")
    }
}

/// Gram matrix of the bilinear form: `⟨v_i, v_{2m+2−j}⟩ = (−1)^{m+1−i} δ_{ij}`.
pub fn gram_matrix<T: ScalarRing>(m: usize) -> Matrix<T> {
    let n = 2 * m + 1;
    Matrix::from_fn(n, n, |r, c| {
        if r + c + 2 != n + 1 {
            return T::zero();
        }
        let k = (r + 1).min(c + 1);
        T::from_i64(if (m + 1 - k).is_multiple_of(2) { 1 } else { -1 })
    })
}

/// Rows `m+1, …, 2m+1`.
pub fn bottom_rows(m: usize) -> Vec<usize> {
    (m + 1..=2 * m + 1).collect()
}

/// Right-hand side of the `f_j*` minor identity (`1 ≤ j ≤ m−1`):
/// `Δ^{m+1..2m+1}_{j, j+2, …, j+m+1} / Δ^{m+1..2m+1}_{j+1, …, j+m+1}`.
pub fn fj_minor_ratio<T: ScalarRing>(u: &GroupElement<T>, j: usize, m: usize) -> Result<T, GroupError> {
    let mut num_cols = vec![j];
    num_cols.extend(j + 2..=j + m + 1);
    let den_cols: Vec<usize> = (j + 1..=j + m + 1).collect();
    let num = minor(u, &bottom_rows(m), &num_cols)?;
    let den = minor(u, &bottom_rows(m), &den_cols)?;
    num.try_div(&den).map_err(|_| GroupError::Singular)
}

/// `Δ^{j+1, m+1, …, 2m+1}_{j, …, j+m+1}`, which vanishes on `ū₂`.
pub fn fj_vanishing_minor<T: ScalarRing>(u: &GroupElement<T>, j: usize, m: usize) -> Result<T, GroupError> {
    let mut rows = vec![j + 1];
    rows.extend(bottom_rows(m));
    let cols: Vec<usize> = (j..=j + m + 1).collect();
    minor(u, &rows, &cols)
}
