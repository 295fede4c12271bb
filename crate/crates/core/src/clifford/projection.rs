//! The projection `π : Sym²(V_Spin) → ∧^{m+1}V` and its stages.
//!
//! `π = d ∘ c ∘ pr_{∧^m} ∘ κ⁻¹ ∘ ι`, where `ι` identifies a symmetric tensor
//! with an endomorphism through the duality `δ`, `κ⁻¹` lifts it to the even
//! (m even) or odd (m odd) Clifford algebra, `pr` keeps the degree-`m` part of
//! its exterior preimage, `c` contracts with the volume form and `d` is the
//! quadratic-form isomorphism `V* ≅ V`.

use std::collections::BTreeMap;

use super::exterior::{antisymmetrize_inv, wedge_sort, ExteriorElement};
use super::spin::{end_to_clifford, SpinVector};
use super::{bar, bits, epsilon, CliffordElement, CliffordError, Monomial};
use crate::matrix::Matrix;
use crate::partitions::{mu_added, mu_plus_added, rho_plus_removed, rho_removed, subsets, term_sign, StrictPartition, Subset};
use crate::scalars::{QSqrt2, ScalarRing};

/// Element of `Sym²(V_Spin)`, keyed by unordered pairs of subset masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSquare {
    pub m: usize,
    pub terms: BTreeMap<(Subset, Subset), QSqrt2>,
}

impl SymSquare {
    pub fn zero(m: usize) -> Self {
        SymSquare { m, terms: BTreeMap::new() }
    }

    /// Adds `c · w_a w_b`.
    pub fn add_term(&mut self, a: Subset, b: Subset, c: QSqrt2) {
        if c.is_zero() {
            return;
        }
        let key = (a.min(b), a.max(b));
        let e = self.terms.entry(key).or_default();
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

fn weight(l: Subset, m: usize) -> usize {
    StrictPartition::from_subset(l, m).expect("subset in range").size()
}

fn parity_sign(k: usize) -> QSqrt2 {
    QSqrt2::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn build(j: usize, m: usize, plus: bool) -> Result<SymSquare, CliffordError> {
    if !(2..=m).contains(&j) {
        return Err(CliffordError::JOutOfRange { j, m });
    }
    let l = m + 1 - j;
    let mut out = SymSquare::zero(m);
    for jj in subsets(l) {
        let (a, b) = if plus {
            (rho_plus_removed(l, jj, m), mu_plus_added(l, jj, m))
        } else {
            (rho_removed(l, jj, m), mu_added(l, jj, m))
        };
        let a = a.expect("level in range");
        if let Some(b) = b.expect("level in range") {
            out.add_term(a.to_subset(), b.to_subset(), QSqrt2::from_int(term_sign(l, jj)));
        }
    }
    Ok(out)
}

/// `𝒟_(j) = Σ_I ± w_{ρ_l^I} w_{μ_l^I}` with `l = m+1−j`.
pub fn build_d(j: usize, m: usize) -> Result<SymSquare, CliffordError> {
    build(j, m, false)
}

/// `𝒩_(j) = Σ_I ± w_{ρ_{l,+}^I} w_{μ_{l,+}^I}` with `l = m+1−j`.
pub fn build_n(j: usize, m: usize) -> Result<SymSquare, CliffordError> {
    build(j, m, true)
}

/// `δ(w_λ) = (−1)^{|λ|} w*_{PD(λ)}`.
pub fn delta(s: &SpinVector) -> SpinVector {
    let m = s.m;
    let full = (1u32 << m) - 1;
    let mut out = SpinVector { m, terms: BTreeMap::new(), dual: true };
    for (l, c) in &s.terms {
        out.add_term(full & !l, c * &parity_sign(weight(*l, m)));
    }
    out
}

/// Matrix of `δ` from `V_Spin` to `V_Spin*` in the basis / dual basis.
pub fn delta_matrix(m: usize) -> Matrix<QSqrt2> {
    let n = 1usize << m;
    let mut d = Matrix::zeros(n, n);
    for l in 0..n {
        d.set((n - 1) & !l, l, parity_sign(weight(l as Subset, m)));
    }
    d
}

/// `ι(w_a w_b) = ½(δ(w_a) ⊗ w_b + δ(w_b) ⊗ w_a)` as a matrix on `V_Spin`.
pub fn iota(x: &SymSquare) -> Matrix<QSqrt2> {
    let m = x.m;
    let n = 1usize << m;
    let full = (n - 1) as Subset;
    let half = QSqrt2::from_ratio(1, 2);
    let mut out = Matrix::zeros(n, n);
    for ((a, b), c) in &x.terms {
        for (s, t) in [(*a, *b), (*b, *a)] {
            let v = c * &half * parity_sign(weight(s, m));
            out.add_at(t as usize, (full & !s) as usize, v);
        }
    }
    out
}

/// Action of a Lie algebra element with spin matrix `g` on `Sym²(V_Spin)`.
pub fn sym_square_action(g: &Matrix<QSqrt2>, x: &SymSquare) -> SymSquare {
    let mut out = SymSquare::zero(x.m);
    for ((a, b), c) in &x.terms {
        for (s, t) in [(*a, *b), (*b, *a)] {
            for r in 0..g.rows() {
                let e = g.get(r, s as usize);
                if !e.is_zero() {
                    out.add_term(r as Subset, t, c * e);
                }
            }
        }
    }
    out
}

/// Contraction `c : ∧^m V → ∧^{m+1} V*` with `(−1)^{m(m+1)/2} v₁* ∧ … ∧ v*_{2m+1}`.
pub fn contract(x: &ExteriorElement) -> ExteriorElement {
    let m = x.m;
    let n = 2 * m + 1;
    let global = parity_sign(m * (m + 1) / 2);
    let mut out = ExteriorElement { m, terms: BTreeMap::new(), dual: true };
    for (s, c) in &x.terms {
        let a = bits(*s);
        let comp: Vec<usize> = (1..=n).filter(|k| !a.contains(k)).collect();
        let full: Vec<usize> = a.iter().chain(&comp).copied().collect();
        let (sg, _) = wedge_sort(&full).expect("disjoint");
        let mask: Monomial = comp.iter().fold(0, |acc, &k| acc | 1 << (k - 1));
        out.add_term(mask, c * &global * QSqrt2::from_int(sg));
    }
    out
}

/// `d : ∧•V* → ∧•V` induced by `v*_k ↦ ε(k) v̄_k` (k ≤ m), `v*_{m+1} ↦ v_{m+1}`,
/// `v*_{ī} ↦ ε(i) v_i`.
pub fn dual_map(y: &ExteriorElement) -> ExteriorElement {
    let m = y.m;
    let mut out = ExteriorElement::zero(m);
    for (s, c) in &y.terms {
        let mut coef = c.clone();
        let mut img = Vec::new();
        for k in bits(*s) {
            if k <= m {
                img.push(bar(k, m));
                coef = coef * QSqrt2::from_int(epsilon(k, m));
            } else if k == m + 1 {
                img.push(k);
            } else {
                let i = bar(k, m);
                img.push(i);
                coef = coef * QSqrt2::from_int(epsilon(i, m));
            }
        }
        let (sg, mask) = wedge_sort(&img).expect("d is a bijection on indices");
        out.add_term(mask, coef * QSqrt2::from_int(sg));
    }
    out
}

/// Intermediate images of `π`.
#[derive(Clone, Debug)]
pub struct PiStages {
    pub endomorphism: Matrix<QSqrt2>,
    pub clifford: CliffordElement,
    pub exterior: ExteriorElement,
    pub middle: ExteriorElement,
    pub contracted: ExteriorElement,
    pub result: ExteriorElement,
}

pub fn pi_stages(x: &SymSquare) -> PiStages {
    let m = x.m;
    let endomorphism = iota(x);
    let clifford = end_to_clifford(&endomorphism, m, (m % 2) as u32).expect("parity component is bijective");
    let exterior = antisymmetrize_inv(&clifford).expect("homogeneous parity");
    let middle = exterior.degree_part(m as u32);
    let contracted = contract(&middle);
    let result = dual_map(&contracted);
    PiStages { endomorphism, clifford, exterior, middle, contracted, result }
}

pub fn pi_map(x: &SymSquare) -> ExteriorElement {
    pi_stages(x).result
}

/// `v_j ∧ v_{j+1} ∧ … ∧ v_{j+m}`.
pub fn wedge_j(j: usize, m: usize) -> ExteriorElement {
    let idx: Vec<usize> = (j..=j + m).collect();
    ExteriorElement::wedge(&idx, QSqrt2::one(), m)
}

/// `v_{j−1} ∧ v_{j+1} ∧ … ∧ v_{j+m}`.
pub fn wedge_j_plus(j: usize, m: usize) -> ExteriorElement {
    let mut idx = vec![j - 1];
    idx.extend(j + 1..=j + m);
    ExteriorElement::wedge(&idx, QSqrt2::one(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(parts: &[usize], m: usize) -> Subset {
        StrictPartition::new(parts.to_vec(), m).unwrap().to_subset()
    }

    #[test]
    fn build_examples() {
        let m = 2;
        let mut d = SymSquare::zero(m);
        d.add_term(sub(&[1], m), sub(&[2], m), QSqrt2::one());
        d.add_term(sub(&[], m), sub(&[2, 1], m), QSqrt2::from_int(-1));
        assert_eq!(build_d(2, m).unwrap(), d);
        let mut n = SymSquare::zero(m);
        n.add_term(sub(&[2], m), sub(&[2], m), QSqrt2::one());
        assert_eq!(build_n(2, m).unwrap(), n);
        let m = 3;
        let mut d3 = SymSquare::zero(m);
        d3.add_term(sub(&[1], m), sub(&[3], m), QSqrt2::one());
        d3.add_term(sub(&[], m), sub(&[3, 1], m), QSqrt2::from_int(-1));
        assert_eq!(build_d(3, m).unwrap(), d3);
        assert!(build_d(1, m).is_err());
    }

    #[test]
    fn delta_examples() {
        for m in 2..5 {
            let rho_m = (1u32 << m) - 1;
            let d = delta(&SpinVector::basis(0, m));
            assert!(d.dual);
            assert_eq!(d.coeff(rho_m), QSqrt2::one());
            let e = delta(&SpinVector::basis(rho_m, m));
            assert_eq!(e.coeff(0), parity_sign(m * (m + 1) / 2));
        }
    }

    #[test]
    fn iota_square_and_rank() {
        let m = 2;
        let mut x = SymSquare::zero(m);
        x.add_term(0, 0, QSqrt2::one());
        let e = iota(&x);
        let mut want = Matrix::zeros(4, 4);
        want.set(0, 3, QSqrt2::one());
        assert_eq!(e, want);
        for m in 2..4usize {
            let n = 1usize << m;
            let mut cols = Vec::new();
            for a in 0..n as Subset {
                for b in a..n as Subset {
                    let mut s = SymSquare::zero(m);
                    s.add_term(a, b, QSqrt2::one());
                    cols.push(iota(&s));
                }
            }
            let big = Matrix::from_fn(n * n, cols.len(), |r, c| cols[c].get(r / n, r % n).clone());
            assert_eq!(big.rank(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn denominators_project_to_consecutive_wedges_m2() {
        let m = 2;
        assert_eq!(pi_map(&build_d(2, m).unwrap()), wedge_j(2, m));
        assert_eq!(pi_map(&build_n(2, m).unwrap()), wedge_j_plus(2, m));
    }
}
