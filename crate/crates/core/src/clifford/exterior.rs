//! Exterior algebra `∧•V` and the antisymmetrization isomorphism onto `Cl(V)`.

use std::collections::BTreeMap;
use std::fmt;

use super::{bar, bits, epsilon, CliffordElement, CliffordError, Monomial};
use crate::matrix::Matrix;
use crate::scalars::{QSqrt2, ScalarRing};

/// Sparse element of `∧•V` (or of `∧•V*` when `dual` is set), keyed by the
/// ascending index set of each wedge monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    pub m: usize,
    pub terms: BTreeMap<Monomial, QSqrt2>,
    pub dual: bool,
}

/// Terms as `(c)v1^v2^v5`, or `w` for the dual basis; `0` when empty.
impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let letter = if self.dual { "w" } else { "v" };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let word: Vec<String> = bits(*s).iter().map(|k| format!("{letter}{k}")).collect();
                format!("({c}){}", word.join("^"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Sort a wedge word; returns the sign of the sorting permutation and the
/// mask, or `None` if an index repeats.
pub fn wedge_sort(idx: &[usize]) -> Option<(i64, Monomial)> {
    let mut mask = 0u32;
    let mut inversions = 0usize;
    for (p, &a) in idx.iter().enumerate() {
        if mask >> (a - 1) & 1 == 1 {
            return None;
        }
        mask |= 1 << (a - 1);
        inversions += idx[..p].iter().filter(|&&b| b > a).count();
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, mask))
}

impl ExteriorElement {
    pub fn zero(m: usize) -> Self {
        ExteriorElement { m, terms: BTreeMap::new(), dual: false }
    }

    /// `c · v_{k_1} ∧ … ∧ v_{k_r}` for indices in any order.
    pub fn wedge(idx: &[usize], c: QSqrt2, m: usize) -> Self {
        let mut x = Self::zero(m);
        if let Some((s, mask)) = wedge_sort(idx) {
            x.add_term(mask, c * QSqrt2::from_int(s));
        }
        x
    }

    pub fn add_term(&mut self, s: Monomial, c: QSqrt2) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_default();
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(*s, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        let mut r = ExteriorElement { m: self.m, terms: BTreeMap::new(), dual: self.dual };
        for (s, d) in &self.terms {
            r.add_term(*s, d * c);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_part(&self, k: u32) -> Self {
        let mut r = ExteriorElement { m: self.m, terms: BTreeMap::new(), dual: self.dual };
        for (s, c) in &self.terms {
            if s.count_ones() == k {
                r.add_term(*s, c.clone());
            }
        }
        r
    }

    /// Action of a Lie algebra element given by its matrix `g` on `V`
    /// (1-based basis `v_k` ↦ column `k−1`), extended as a derivation.
    pub fn derivation(&self, g: &Matrix<QSqrt2>) -> Self {
        let mut out = ExteriorElement { m: self.m, terms: BTreeMap::new(), dual: self.dual };
        for (s, c) in &self.terms {
            let idx = bits(*s);
            for p in 0..idx.len() {
                for r in 0..g.rows() {
                    let a = g.get(r, idx[p] - 1);
                    if a.is_zero() {
                        continue;
                    }
                    let mut w = idx.clone();
                    w[p] = r + 1;
                    if let Some((sg, mask)) = wedge_sort(&w) {
                        out.add_term(mask, c * a * QSqrt2::from_int(sg));
                    }
                }
            }
        }
        out
    }
}

/// Block order for a sorted index set: each pair `(i, ī)` becomes adjacent.
fn block_order(list: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    let mut used = Vec::new();
    for &k in list {
        if used.contains(&k) {
            continue;
        }
        if k <= m && list.contains(&bar(k, m)) {
            blocks.push(vec![k, bar(k, m)]);
            used.extend([k, bar(k, m)]);
        } else {
            blocks.push(vec![k]);
            used.push(k);
        }
    }
    blocks
}

/// `α(v_S)` for one wedge monomial.
fn antisymmetrize_monomial(s: Monomial, m: usize) -> CliffordElement {
    let list = bits(s);
    let blocks = block_order(&list, m);
    let flat: Vec<usize> = blocks.iter().flatten().copied().collect();
    let (sg, _) = wedge_sort(&flat).expect("distinct indices");
    let mut r = CliffordElement::scalar(m, QSqrt2::from_int(sg));
    for b in blocks {
        let factor = if b.len() == 2 {
            // v_i ∧ v̄_i ↦ v_i v̄_i − ε(i)/2
            CliffordElement::word(&b, m).sub(&CliffordElement::scalar(m, QSqrt2::from_ratio(epsilon(b[0], m), 2)))
        } else {
            CliffordElement::generator(b[0], m)
        };
        r = r.mul(&factor);
    }
    r
}

/// The antisymmetrization map `∧•V → Cl(V)`.
pub fn antisymmetrize(x: &ExteriorElement) -> CliffordElement {
    let mut out = CliffordElement::zero(x.m);
    for (s, c) in &x.terms {
        out = out.add(&antisymmetrize_monomial(*s, x.m).scale(c));
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Reference antisymmetrization `(1/k!) Σ_σ sgn(σ) v_{i_σ(1)} ⋯ v_{i_σ(k)}`.
pub fn antisymmetrize_brute(x: &ExteriorElement) -> CliffordElement {
    let mut out = CliffordElement::zero(x.m);
    for (s, c) in &x.terms {
        let list = bits(*s);
        let perms = permutations(list.len());
        let inv_fact = QSqrt2::from_ratio(1, perms.len() as i64);
        for p in perms {
            let w: Vec<usize> = p.iter().map(|&t| list[t]).collect();
            let (sg, _) = wedge_sort(&w).unwrap();
            let term = CliffordElement::word(&w, x.m).scale(&(c * &inv_fact * QSqrt2::from_int(sg)));
            out = out.add(&term);
        }
    }
    out
}

/// Inverse of [`antisymmetrize`] on a homogeneous-parity element, by peeling
/// off the top degree (the map is unitriangular in degree).
pub fn antisymmetrize_inv(x: &CliffordElement) -> Result<ExteriorElement, CliffordError> {
    if x.parity().is_none() {
        return Err(CliffordError::MixedParity);
    }
    let m = x.m();
    let mut rest = x.clone();
    let mut out = ExteriorElement::zero(m);
    while let Some(top) = rest.terms().keys().map(|s| s.count_ones()).max() {
        let lead: Vec<(Monomial, QSqrt2)> = rest
            .terms()
            .iter()
            .filter(|(s, _)| s.count_ones() == top)
            .map(|(s, c)| (*s, c.clone()))
            .collect();
        for (s, c) in lead {
            out.add_term(s, c.clone());
            rest = rest.sub(&antisymmetrize_monomial(s, m).scale(&c));
        }
    }
    Ok(out)
}
