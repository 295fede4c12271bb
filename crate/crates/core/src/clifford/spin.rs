//! The spin representation `V_Spin = ∧•W`, basis `w_L` for `L ⊆ {1,…,m}`.

use std::collections::BTreeMap;

use super::{bar, bits, epsilon, CliffordElement, CliffordError, Monomial};
use crate::matrix::Matrix;
use crate::partitions::Subset;
use crate::scalars::{rat, QSqrt2, ScalarRing};

/// Sparse vector in `V_Spin`, or in its dual when `dual` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinVector {
    pub m: usize,
    pub terms: BTreeMap<Subset, QSqrt2>,
    pub dual: bool,
}

impl SpinVector {
    pub fn zero(m: usize) -> Self {
        SpinVector { m, terms: BTreeMap::new(), dual: false }
    }

    pub fn basis(l: Subset, m: usize) -> Self {
        let mut v = Self::zero(m);
        v.add_term(l, QSqrt2::one());
        v
    }

    pub fn add_term(&mut self, l: Subset, c: QSqrt2) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l).or_default();
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn coeff(&self, l: Subset) -> QSqrt2 {
        self.terms.get(&l).cloned().unwrap_or_default()
    }
}

fn count_below(l: Subset, i: usize) -> u32 {
    (l & ((1u32 << (i - 1)) - 1)).count_ones()
}

fn signed(neg: bool) -> QSqrt2 {
    QSqrt2::from_int(if neg { -1 } else { 1 })
}

/// Action of the generator `v_k` on the basis vector `w_L`: the image is a
/// single basis vector times a scalar, or zero.
pub(crate) fn generator_on_basis(k: usize, l: Subset, m: usize) -> Option<(Subset, QSqrt2)> {
    if k <= m {
        let bit = 1u32 << (k - 1);
        if l & bit != 0 {
            return None;
        }
        Some((l | bit, signed(count_below(l, k) % 2 == 1)))
    } else if k == m + 1 {
        // (−1)^{|L|}/√2 = ±½√2
        let half = rat(if l.count_ones() % 2 == 1 { -1 } else { 1 }, 2);
        Some((l, QSqrt2::new(rat(0, 1), half)))
    } else {
        let i = bar(k, m);
        let bit = 1u32 << (i - 1);
        if l & bit == 0 {
            return None;
        }
        let s = signed(count_below(l, i) % 2 == 1) * QSqrt2::from_int(epsilon(i, m));
        Some((l & !bit, s))
    }
}

/// Action of the monomial `v_S` on `w_L` (rightmost generator first).
pub fn monomial_action(s: Monomial, l: Subset, m: usize) -> Option<(Subset, QSqrt2)> {
    let mut cur = l;
    let mut coef = QSqrt2::one();
    for k in bits(s).into_iter().rev() {
        let (next, c) = generator_on_basis(k, cur, m)?;
        cur = next;
        coef = coef * c;
    }
    Some((cur, coef))
}

pub fn spin_generator_action(k: usize, s: &SpinVector) -> Result<SpinVector, CliffordError> {
    let m = s.m;
    if !(1..=2 * m + 1).contains(&k) {
        return Err(CliffordError::IndexOutOfRange(k));
    }
    let mut out = SpinVector::zero(m);
    for (l, c) in &s.terms {
        if let Some((l2, d)) = generator_on_basis(k, *l, m) {
            out.add_term(l2, c * &d);
        }
    }
    Ok(out)
}

/// Matrix of the action of a Clifford element on `V_Spin`; rows and columns
/// are indexed by subset masks.
pub fn clifford_to_end(x: &CliffordElement) -> Matrix<QSqrt2> {
    let m = x.m();
    let n = 1usize << m;
    let mut out = Matrix::zeros(n, n);
    for l in 0..n as Subset {
        for (s, c) in x.terms() {
            if let Some((l2, d)) = monomial_action(*s, l, m) {
                out.add_at(l2 as usize, l as usize, c * &d);
            }
        }
    }
    out
}

/// `n_i = ε(i) v_i v̄_i`, acting as the indicator of `i ∈ L`.
fn number_op(i: usize, m: usize) -> CliffordElement {
    CliffordElement::word(&[i, bar(i, m)], m).scale(&QSqrt2::from_int(epsilon(i, m)))
}

/// Even element acting as the projector onto `w_L`.
fn projector(l: Subset, m: usize) -> CliffordElement {
    let mut p = CliffordElement::one(m);
    for i in 1..=m {
        let n = number_op(i, m);
        let factor = if l >> (i - 1) & 1 == 1 { n } else { CliffordElement::one(m).sub(&n) };
        p = p.mul(&factor);
    }
    p
}

/// Preimage of an endomorphism in the even (`parity = 0`) or odd
/// (`parity = 1`) part of `Cl(V)`.
///
/// Built from matrix units: `E_{K,L}` is a creation/annihilation monomial
/// moving `L` to `K` times the projector onto `w_L`; the odd variant is
/// multiplied on the right by `√2 v_{m+1}`, which acts as `(−1)^{|L|}`.
pub fn end_to_clifford(mat: &Matrix<QSqrt2>, m: usize, parity: u32) -> Result<CliffordElement, CliffordError> {
    let n = 1usize << m;
    assert_eq!((mat.rows(), mat.cols()), (n, n));
    let odd_unit = CliffordElement::generator(m + 1, m).scale(&QSqrt2::sqrt2());
    let mut out = CliffordElement::zero(m);
    for l in 0..n as Subset {
        let targets: Vec<usize> = (0..n).filter(|&k| !mat.get(k, l as usize).is_zero()).collect();
        if targets.is_empty() {
            continue;
        }
        let proj = projector(l, m);
        for k in targets {
            let k = k as Subset;
            let mut idx: Vec<usize> = (1..=m).filter(|&i| k >> (i - 1) & 1 == 1 && l >> (i - 1) & 1 == 0).collect();
            idx.extend((1..=m).filter(|&i| l >> (i - 1) & 1 == 1 && k >> (i - 1) & 1 == 0).map(|i| bar(i, m)));
            let mut unit = CliffordElement::word(&idx, m).mul(&proj);
            if (idx.len() as u32) % 2 != parity {
                let s = QSqrt2::from_int(if l.count_ones() % 2 == 1 { -1 } else { 1 });
                unit = unit.mul(&odd_unit).scale(&s);
            }
            let c = action_coeff(&unit, l, k, m);
            let coef = mat.get(k as usize, l as usize).clone() * c.inv().expect("unit coefficient is nonzero");
            out = out.add(&unit.scale(&coef));
        }
    }
    Ok(out)
}

fn action_coeff(x: &CliffordElement, l: Subset, k: Subset, m: usize) -> QSqrt2 {
    let mut c = QSqrt2::zero();
    for (s, d) in x.terms() {
        if let Some((t, e)) = monomial_action(*s, l, m) {
            if t == k {
                c = c + d * &e;
            }
        }
    }
    c
}

/// Spin-representation matrix of a Clifford element, converted to `T`.
pub fn spin_matrix_of<T: ScalarRing>(x: &CliffordElement) -> Matrix<T> {
    clifford_to_end(x).map(crate::matrix::lift)
}
