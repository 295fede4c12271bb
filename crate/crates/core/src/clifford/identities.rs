//! Closed-form images of the projection stages, and the equivariance checks
//! for `α`, `δ`, `ι` and `π`.

use super::exterior::{antisymmetrize, ExteriorElement};
use super::projection::{delta_matrix, iota, pi_map, pi_stages, sym_square_action, wedge_j, wedge_j_plus, SymSquare};
use super::spin::clifford_to_end;
use super::{bar, build_d, build_n, chevalley_e_cl, chevalley_f_cl, epsilon, CliffordElement, CliffordError};
use crate::grouprep::{chevalley_e, chevalley_f};
use crate::matrix::Matrix;
use crate::partitions::{elements, Subset};
use crate::scalars::{QSqrt2, ScalarRing};

fn qs(n: i64) -> QSqrt2 {
    QSqrt2::from_int(n)
}

fn pm(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// `v_S` for an index set given in any order, multiplied in increasing order.
fn ascending(mut idx: Vec<usize>, m: usize) -> CliffordElement {
    idx.sort_unstable();
    CliffordElement::word(&idx, m)
}

fn i_and_bar(i_set: Subset, m: usize) -> Vec<usize> {
    elements(i_set).into_iter().flat_map(|i| [i, bar(i, m)]).collect()
}

/// `(∏_{i∈I} ε(i)) Σ_{L ⊇ I} w_L* ⊗ w_L`.
pub fn i_ibar_expected(i_set: Subset, m: usize) -> Matrix<QSqrt2> {
    let n = 1usize << m;
    let c: i64 = elements(i_set).iter().map(|&i| epsilon(i, m)).product();
    Matrix::from_fn(n, n, |r, k| if r == k && k as Subset & i_set == i_set { qs(c) } else { QSqrt2::zero() })
}

/// Action of `v_{I ∪ Ī}` compared with [`i_ibar_expected`].
pub fn check_i_ibar(i_set: Subset, m: usize) -> bool {
    clifford_to_end(&ascending(i_and_bar(i_set, m), m)) == i_ibar_expected(i_set, m)
}

fn check_half(j: usize, m: usize) -> Result<(), CliffordError> {
    if (2..=m).contains(&j) && 2 * j >= m + 2 {
        Ok(())
    } else {
        Err(CliffordError::JOutOfRange { j, m })
    }
}

/// `t_(j) = v_{2m+3−j} ⋯ v_{m+j}` (empty for `2j = m+2`).
pub fn t_j(j: usize, m: usize) -> CliffordElement {
    ascending((2 * m + 3 - j..=m + j).collect(), m)
}

/// `(∏_{p=m+2−j}^{j−1} ε(p)) Σ (−1)^{m|K₁|} w*_{K₁ ∪ {m+2−j,…,j−1} ∪ K₂} ⊗ w_{K₁ ∪ K₂}`,
/// `K₁ ⊆ {1,…,m+1−j}`, `K₂ ⊆ {j,…,m}`; requires `2j ≥ m+2`.
pub fn t_j_expected(j: usize, m: usize) -> Result<Matrix<QSqrt2>, CliffordError> {
    check_half(j, m)?;
    let n = 1usize << m;
    let mid: Subset = (m + 2 - j..j).fold(0, |acc, p| acc | 1 << (p - 1));
    let c: i64 = (m + 2 - j..j).map(|p| epsilon(p, m)).product();
    let mut out = Matrix::zeros(n, n);
    for l in 0..n as Subset {
        if l & mid != mid {
            continue;
        }
        let k1 = (l & !mid) & ((1 << (m + 1 - j)) - 1);
        let sign = pm(m * k1.count_ones() as usize % 2 == 1);
        out.set((l & !mid) as usize, l as usize, qs(c * sign));
    }
    Ok(out)
}

pub fn check_tj(j: usize, m: usize) -> Result<bool, CliffordError> {
    Ok(clifford_to_end(&t_j(j, m)) == t_j_expected(j, m)?)
}

/// Closed-form Clifford preimage of `ι(𝒟_(j))`:
/// `(−1)^{m(m+1)/2}/2 · [2 v_{1,…,m+1−j,2m+3−j,…,2m+1} + Σ_{I ⊊ {1,…,m+1−j}} (∏_{l∉I} (−1)^l) v_{I ∪ {2m+3−j,…,m+j} ∪ Ī}]`.
/// Valid for `2j ≥ m+2`.
pub fn din_cl_expected(j: usize, m: usize) -> Result<CliffordElement, CliffordError> {
    check_half(j, m)?;
    let l = m + 1 - j;
    let mut lead: Vec<usize> = (1..=l).collect();
    lead.extend(2 * m + 3 - j..=2 * m + 1);
    let mut sum = ascending(lead, m).scale(&qs(2));
    let full: Subset = (1 << l) - 1;
    for i_set in 0..full {
        let sign: i64 = elements(full & !i_set).iter().map(|&x| pm(x % 2 == 1)).product();
        let mut idx = i_and_bar(i_set, m);
        idx.extend(2 * m + 3 - j..=m + j);
        sum = sum.add(&ascending(idx, m).scale(&qs(sign)));
    }
    Ok(sum.scale(&QSqrt2::from_ratio(pm((m * (m + 1) / 2) % 2 == 1), 2)))
}

pub fn check_din_cl(j: usize, m: usize) -> Result<bool, CliffordError> {
    let expected = din_cl_expected(j, m)?;
    Ok(pi_stages(&build_d(j, m)?).clifford == expected)
}

/// `(−1)^{m(m+1)/2} v_1 ∧ … ∧ v_{m+1−j} ∧ v_{2m+3−j} ∧ … ∧ v_{2m+1}`.
pub fn sym_to_wedge_expected(j: usize, m: usize) -> ExteriorElement {
    let mut idx: Vec<usize> = (1..=m + 1 - j).collect();
    idx.extend(2 * m + 3 - j..=2 * m + 1);
    ExteriorElement::wedge(&idx, qs(pm((m * (m + 1) / 2) % 2 == 1)), m)
}

pub fn check_sym_to_wedge(j: usize, m: usize) -> Result<bool, CliffordError> {
    Ok(pi_stages(&build_d(j, m)?).middle == sym_to_wedge_expected(j, m))
}

/// `π(𝒟_(j)) = v_j ∧ … ∧ v_{j+m}` and `π(𝒩_(j)) = v_{j−1} ∧ v_{j+1} ∧ … ∧ v_{j+m}`.
pub fn check_denom_proj(j: usize, m: usize) -> Result<(bool, bool), CliffordError> {
    let d = pi_map(&build_d(j, m)?) == wedge_j(j, m);
    let n = pi_map(&build_n(j, m)?) == wedge_j_plus(j, m);
    Ok((d, n))
}

/// A Chevalley generator in its three models: Clifford element, matrix on
/// `V`, and matrix on `V_Spin`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub clifford: CliffordElement,
    pub vector: Matrix<QSqrt2>,
    pub spin: Matrix<QSqrt2>,
}

/// `e_1, …, e_m, f_1, …, f_m`.
pub fn generators(m: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 1..=m {
        let cl = chevalley_e_cl(i, m);
        out.push(Generator { name: format!("e{i}"), spin: clifford_to_end(&cl), clifford: cl, vector: chevalley_e(i, m) });
    }
    for i in 1..=m {
        let cl = chevalley_f_cl(i, m);
        out.push(Generator { name: format!("f{i}"), spin: clifford_to_end(&cl), clifford: cl, vector: chevalley_f(i, m) });
    }
    out
}

/// `α(g·x) = [g, α(x)]`.
pub fn alpha_equivariant(g: &Generator, x: &ExteriorElement) -> bool {
    antisymmetrize(&x.derivation(&g.vector)) == g.clifford.commutator(&antisymmetrize(x))
}

/// `δ ∘ g = −gᵀ ∘ δ` on `V_Spin → V_Spin*`.
pub fn delta_equivariant(g: &Generator, m: usize) -> bool {
    let d = delta_matrix(m);
    d.mul(&g.spin) == g.spin.transpose().mul(&d).scale(&qs(-1))
}

/// `ι(g·x) = [g, ι(x)]`.
pub fn iota_equivariant(g: &Generator, x: &SymSquare) -> bool {
    iota(&sym_square_action(&g.spin, x)) == g.spin.commutator(&iota(x))
}

/// `π(g·x) = g·π(x)`.
pub fn pi_equivariant(g: &Generator, x: &SymSquare) -> bool {
    pi_map(&sym_square_action(&g.spin, x)) == pi_map(x).derivation(&g.vector)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matrices() {
        for m in 2..5 {
            for i_set in 0..1u32 << m {
                assert!(check_i_ibar(i_set, m), "m={m} I={i_set:b}");
            }
            for j in 2..=m {
                match check_tj(j, m) {
                    Ok(ok) => assert!(ok, "m={m} j={j}"),
                    Err(_) => assert!(2 * j < m + 2),
                }
            }
        }
    }

    #[test]
    fn projection_stages_m3() {
        let m = 3;
        for j in 2..=m {
            assert!(check_sym_to_wedge(j, m).unwrap());
            assert_eq!(check_denom_proj(j, m).unwrap(), (true, true));
            if 2 * j >= m + 2 {
                assert!(check_din_cl(j, m).unwrap());
            }
        }
    }

    #[test]
    fn delta_commutes_with_generators() {
        for m in 2..5 {
            for g in generators(m) {
                assert!(delta_equivariant(&g, m), "m={m} {}", g.name);
            }
        }
    }

    #[test]
    fn alpha_on_generators() {
        let m = 2;
        for g in generators(m) {
            for k in 1..=2 * m + 1 {
                let x = ExteriorElement::wedge(&[k], QSqrt2::one(), m);
                assert!(alpha_equivariant(&g, &x), "{} on v{k}", g.name);
            }
        }
    }
}
